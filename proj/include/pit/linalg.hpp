#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "pit/field.hpp"

namespace pit {

/// Dense row-major matrix over F_p.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols) {}
  static Matrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  FieldElement& operator()(std::size_t r, std::size_t c) {
    return data_[r * cols_ + c];
  }
  FieldElement operator()(std::size_t r, std::size_t c) const {
    return data_[r * cols_ + c];
  }
  std::span<const FieldElement> row(std::size_t r) const {
    return {data_.data() + r * cols_, cols_};
  }

  bool is_zero() const;
  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<FieldElement> data_;
};

Matrix multiply(const PrimeField& F, const Matrix& a, const Matrix& b);
Matrix matrix_power(const PrimeField& F, const Matrix& a, std::size_t e);

struct RowEchelon {
  Matrix reduced;                     // reduced row-echelon form, zero rows dropped
  std::vector<std::size_t> pivots;    // pivot column of each kept row
  std::size_t rank() const { return pivots.size(); }
};

/// Gauss-Jordan elimination; pivot search takes the lowest row index.
RowEchelon row_reduce(const PrimeField& F, const Matrix& m);

FieldElement determinant(const PrimeField& F, Matrix m);

/// Some solution x of a x = b, or nullopt if the system is inconsistent.
std::optional<std::vector<FieldElement>> solve(
    const PrimeField& F, const Matrix& a, std::span<const FieldElement> b);

}  // namespace pit
