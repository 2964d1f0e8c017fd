#include "pit/linalg.hpp"

#include <algorithm>
#include <utility>

namespace pit {

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = FieldElement{1};
  return m;
}

bool Matrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(),
                     [](FieldElement x) { return x.is_zero(); });
}

Matrix multiply(const PrimeField& F, const Matrix& a, const Matrix& b) {
  Matrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      FieldElement aik = a(i, k);
      if (aik.is_zero()) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) {
        c(i, j) = F.add(c(i, j), F.mul(aik, b(k, j)));
      }
    }
  }
  return c;
}

Matrix matrix_power(const PrimeField& F, const Matrix& a, std::size_t e) {
  Matrix result = Matrix::identity(a.rows());
  Matrix base = a;
  while (e) {
    if (e & 1) result = multiply(F, result, base);
    e >>= 1;
    if (e) base = multiply(F, base, base);
  }
  return result;
}

RowEchelon row_reduce(const PrimeField& F, const Matrix& input) {
  Matrix m = input;
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t pr = r;
    while (pr < m.rows() && m(pr, c).is_zero()) ++pr;
    if (pr == m.rows()) continue;
    if (pr != r) {
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(pr, j), m(r, j));
    }
    FieldElement inv = F.inv(m(r, c));
    for (std::size_t j = 0; j < m.cols(); ++j) m(r, j) = F.mul(m(r, j), inv);
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == r || m(i, c).is_zero()) continue;
      FieldElement f = m(i, c);
      for (std::size_t j = 0; j < m.cols(); ++j) {
        m(i, j) = F.sub(m(i, j), F.mul(f, m(r, j)));
      }
    }
    pivots.push_back(c);
    ++r;
  }
  Matrix reduced(r, m.cols());
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) reduced(i, j) = m(i, j);
  }
  return {std::move(reduced), std::move(pivots)};
}

FieldElement determinant(const PrimeField& F, Matrix m) {
  const std::size_t n = m.rows();
  FieldElement det = F.one();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t pr = c;
    while (pr < n && m(pr, c).is_zero()) ++pr;
    if (pr == n) return F.zero();
    if (pr != c) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m(pr, j), m(c, j));
      det = F.neg(det);
    }
    det = F.mul(det, m(c, c));
    FieldElement inv = F.inv(m(c, c));
    for (std::size_t i = c + 1; i < n; ++i) {
      if (m(i, c).is_zero()) continue;
      FieldElement f = F.mul(m(i, c), inv);
      for (std::size_t j = c; j < n; ++j) {
        m(i, j) = F.sub(m(i, j), F.mul(f, m(c, j)));
      }
    }
  }
  return det;
}

std::optional<std::vector<FieldElement>> solve(
    const PrimeField& F, const Matrix& a, std::span<const FieldElement> b) {
  Matrix aug(a.rows(), a.cols() + 1);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) aug(i, j) = a(i, j);
    aug(i, a.cols()) = b[i];
  }
  RowEchelon re = row_reduce(F, aug);
  std::vector<FieldElement> x(a.cols());
  for (std::size_t i = 0; i < re.rank(); ++i) {
    if (re.pivots[i] == a.cols()) return std::nullopt;
    x[re.pivots[i]] = re.reduced(i, a.cols());
  }
  return x;
}

}  // namespace pit
