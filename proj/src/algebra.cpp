#include "pit/algebra.hpp"

#include <algorithm>
#include <sstream>
#include <string>

#include "pit/errors.hpp"

namespace pit {

namespace {

void require_dim(const AlgebraBasis& b, const AlgebraElement& x) {
  if (x.dim() != b.dim()) {
    throw DimensionMismatch("element of dimension " + std::to_string(x.dim()) +
                            " used with a " + std::to_string(b.dim()) +
                            "-dimensional algebra");
  }
}

std::string coords_to_string(const AlgebraElement& x) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < x.dim(); ++i) os << (i ? " " : "") << x.coords[i];
  os << ')';
  return os.str();
}

bool compute_commutative(std::size_t k, const std::vector<AlgebraElement>& t) {
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i + 1; j < k; ++j) {
      if (!(t[i * k + j] == t[j * k + i])) return false;
    }
  }
  return true;
}

// Sub-algebra coordinates of x, which must lie in the row span of `basis`.
AlgebraElement coordinates_in(const std::vector<std::size_t>& pivots,
                              const AlgebraElement& x) {
  AlgebraElement y{std::vector<FieldElement>(pivots.size())};
  for (std::size_t r = 0; r < pivots.size(); ++r) y.coords[r] = x.coords[pivots[r]];
  return y;
}

}  // namespace

bool AlgebraElement::is_zero() const {
  return std::all_of(coords.begin(), coords.end(),
                     [](FieldElement c) { return c.is_zero(); });
}

const char* to_string(ElementClass c) {
  switch (c) {
    case ElementClass::Invertible:
      return "Invertible";
    case ElementClass::Nilpotent:
      return "Nilpotent";
    case ElementClass::ZeroDivisorNonNilpotent:
      return "ZeroDivisorNonNilpotent";
  }
  return "?";
}

AlgebraBasis::AlgebraBasis(PrimeField field,
                           std::vector<std::vector<AlgebraElement>> structure,
                           AlgebraElement identity)
    : field_(field), k_(structure.size()), identity_(std::move(identity)) {
  if (k_ == 0) {
    throw ValidationError(ValidationError::Kind::Malformed,
                          "algebra dimension must be positive");
  }
  if (identity_.dim() != k_) {
    throw ValidationError(ValidationError::Kind::Malformed,
                          "identity has wrong number of coordinates");
  }
  table_.reserve(k_ * k_);
  for (auto& row : structure) {
    if (row.size() != k_) {
      throw ValidationError(ValidationError::Kind::Malformed,
                            "structure table is not k x k");
    }
    for (auto& e : row) {
      if (e.dim() != k_) {
        throw ValidationError(ValidationError::Kind::Malformed,
                              "structure constant has wrong length");
      }
      for (auto& c : e.coords) c = field_.from_u64(c.value);
      table_.push_back(std::move(e));
    }
  }
  for (auto& c : identity_.coords) c = field_.from_u64(c.value);
  commutative_ = compute_commutative(k_, table_);
}

AlgebraElement AlgebraBasis::zero() const {
  return AlgebraElement{std::vector<FieldElement>(k_)};
}

AlgebraElement AlgebraBasis::basis_element(std::size_t i) const {
  AlgebraElement e = zero();
  e.coords.at(i) = field_.one();
  return e;
}

void AlgebraBasis::set_structure_constant(std::size_t i, std::size_t j,
                                          std::size_t c, FieldElement value) {
  table_.at(i * k_ + j).coords.at(c) = field_.from_u64(value.value);
  commutative_ = compute_commutative(k_, table_);
}

void validate_basis(const AlgebraBasis& b) {
  const std::size_t k = b.dim();
  for (std::size_t i = 0; i < k; ++i) {
    AlgebraElement e = b.basis_element(i);
    if (!(algebra_mul(b, b.identity(), e) == e) ||
        !(algebra_mul(b, e, b.identity()) == e)) {
      throw ValidationError(ValidationError::Kind::BadIdentity,
                            "BadIdentity(" + std::to_string(i + 1) + ")");
    }
  }
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      const AlgebraElement& ij = b.product(i, j);
      for (std::size_t m = 0; m < k; ++m) {
        AlgebraElement lhs = algebra_mul(b, ij, b.basis_element(m));
        AlgebraElement rhs = algebra_mul(b, b.basis_element(i), b.product(j, m));
        if (!(lhs == rhs)) {
          throw ValidationError(
              ValidationError::Kind::NotAssociative,
              "NotAssociative(" + std::to_string(i + 1) + "," +
                  std::to_string(j + 1) + "," + std::to_string(m + 1) +
                  "): (e_i e_j) e_m = " + coords_to_string(lhs) +
                  ", e_i (e_j e_m) = " + coords_to_string(rhs));
        }
      }
    }
  }
}

AlgebraElement algebra_add(const AlgebraBasis& b, const AlgebraElement& x,
                           const AlgebraElement& y) {
  require_dim(b, x);
  require_dim(b, y);
  AlgebraElement r = x;
  for (std::size_t i = 0; i < r.dim(); ++i) {
    r.coords[i] = b.field().add(r.coords[i], y.coords[i]);
  }
  return r;
}

AlgebraElement algebra_sub(const AlgebraBasis& b, const AlgebraElement& x,
                           const AlgebraElement& y) {
  return algebra_add(b, x, algebra_scale(b, y, b.field().neg(b.field().one())));
}

AlgebraElement algebra_scale(const AlgebraBasis& b, const AlgebraElement& x,
                             FieldElement c) {
  require_dim(b, x);
  AlgebraElement r = x;
  for (auto& v : r.coords) v = b.field().mul(v, c);
  return r;
}

AlgebraElement algebra_mul(const AlgebraBasis& b, const AlgebraElement& x,
                           const AlgebraElement& y) {
  require_dim(b, x);
  require_dim(b, y);
  const PrimeField& F = b.field();
  const std::size_t k = b.dim();
  AlgebraElement r = b.zero();
  for (std::size_t i = 0; i < k; ++i) {
    if (x.coords[i].is_zero()) continue;
    for (std::size_t j = 0; j < k; ++j) {
      if (y.coords[j].is_zero()) continue;
      FieldElement c = F.mul(x.coords[i], y.coords[j]);
      const AlgebraElement& eij = b.product(i, j);
      for (std::size_t m = 0; m < k; ++m) {
        if (eij.coords[m].is_zero()) continue;
        r.coords[m] = F.add(r.coords[m], F.mul(c, eij.coords[m]));
      }
    }
  }
  return r;
}

AlgebraElement algebra_pow(const AlgebraBasis& b, const AlgebraElement& x,
                           std::size_t t) {
  AlgebraElement result = b.identity();
  AlgebraElement base = x;
  while (t) {
    if (t & 1) result = algebra_mul(b, result, base);
    t >>= 1;
    if (t) base = algebra_mul(b, base, base);
  }
  return result;
}

Matrix regular_rep(const AlgebraBasis& b, const AlgebraElement& a) {
  require_dim(b, a);
  const std::size_t k = b.dim();
  Matrix m(k, k);
  for (std::size_t j = 0; j < k; ++j) {
    AlgebraElement col = algebra_mul(b, a, b.basis_element(j));
    for (std::size_t i = 0; i < k; ++i) m(i, j) = col.coords[i];
  }
  return m;
}

ElementClass classify(const AlgebraBasis& b, const AlgebraElement& a) {
  Matrix rep = regular_rep(b, a);
  if (!determinant(b.field(), rep).is_zero()) return ElementClass::Invertible;
  if (matrix_power(b.field(), rep, b.dim()).is_zero()) {
    return ElementClass::Nilpotent;
  }
  return ElementClass::ZeroDivisorNonNilpotent;
}

AlgebraElement find_idempotent(const AlgebraBasis& b, const AlgebraElement& z) {
  if (!b.is_commutative()) throw NotCommutative();
  ElementClass cls = classify(b, z);
  if (cls != ElementClass::ZeroDivisorNonNilpotent) {
    throw NotAZeroDivisor(std::string("find_idempotent: element is ") +
                          to_string(cls));
  }
  const PrimeField& F = b.field();
  const std::size_t k = b.dim();
  std::ostringstream trace;
  for (std::size_t t = 1; t < k; ++t) {
    AlgebraElement w = algebra_pow(b, z, t);
    // Basis of R w from e_1 w, ..., e_k w.
    Matrix gens(k, k);
    for (std::size_t i = 0; i < k; ++i) {
      AlgebraElement ew = algebra_mul(b, b.basis_element(i), w);
      for (std::size_t c = 0; c < k; ++c) gens(i, c) = ew.coords[c];
    }
    RowEchelon re = row_reduce(F, gens);
    const std::size_t kp = re.rank();
    std::vector<AlgebraElement> basis(kp);
    for (std::size_t r = 0; r < kp; ++r) {
      auto row = re.reduced.row(r);
      basis[r].coords.assign(row.begin(), row.end());
    }
    // (sum_j nu_j b_j) b_i = b_i for every i: k' * k equations in k' unknowns.
    Matrix system(kp * k, kp);
    std::vector<FieldElement> rhs(kp * k);
    for (std::size_t i = 0; i < kp; ++i) {
      for (std::size_t j = 0; j < kp; ++j) {
        AlgebraElement bjbi = algebra_mul(b, basis[j], basis[i]);
        for (std::size_t c = 0; c < k; ++c) system(i * k + c, j) = bjbi.coords[c];
      }
      for (std::size_t c = 0; c < k; ++c) rhs[i * k + c] = basis[i].coords[c];
    }
    auto nu = solve(F, system, rhs);
    trace << " t=" << t << " rank=" << kp << (nu ? " solvable" : " unsolvable");
    if (!nu) continue;
    AlgebraElement v = b.zero();
    for (std::size_t j = 0; j < kp; ++j) {
      v = algebra_add(b, v, algebra_scale(b, basis[j], (*nu)[j]));
    }
    if (algebra_mul(b, v, v) == v && !v.is_zero() && !(v == b.identity())) {
      return v;
    }
    trace << " (rejected " << coords_to_string(v) << ")";
  }
  throw NoIdempotentFound("find_idempotent failed for z = " +
                          coords_to_string(z) + ":" + trace.str());
}

AlgebraElement SubAlgebra::project(const AlgebraBasis& parent,
                                   const AlgebraElement& x) const {
  return coordinates_in(pivots,
                        algebra_mul(parent, x, unit_in_parent));
}

AlgebraElement SubAlgebra::lift(const AlgebraElement& y) const {
  const PrimeField& F = algebra.field();
  AlgebraElement x{std::vector<FieldElement>(basis_in_parent.cols())};
  for (std::size_t r = 0; r < y.dim(); ++r) {
    for (std::size_t c = 0; c < x.dim(); ++c) {
      x.coords[c] = F.add(x.coords[c], F.mul(y.coords[r], basis_in_parent(r, c)));
    }
  }
  return x;
}

namespace {

SubAlgebra ideal_subalgebra(const AlgebraBasis& b, const AlgebraElement& e) {
  const PrimeField& F = b.field();
  const std::size_t k = b.dim();
  Matrix gens(k, k);
  for (std::size_t i = 0; i < k; ++i) {
    AlgebraElement ee = algebra_mul(b, b.basis_element(i), e);
    for (std::size_t c = 0; c < k; ++c) gens(i, c) = ee.coords[c];
  }
  RowEchelon re = row_reduce(F, gens);
  const std::size_t kp = re.rank();
  std::vector<AlgebraElement> basis(kp);
  for (std::size_t r = 0; r < kp; ++r) {
    auto row = re.reduced.row(r);
    basis[r].coords.assign(row.begin(), row.end());
  }
  std::vector<std::vector<AlgebraElement>> table(kp,
                                                 std::vector<AlgebraElement>(kp));
  for (std::size_t i = 0; i < kp; ++i) {
    for (std::size_t j = 0; j < kp; ++j) {
      table[i][j] = coordinates_in(re.pivots,
                                   algebra_mul(b, basis[i], basis[j]));
    }
  }
  AlgebraElement unit = coordinates_in(re.pivots, e);
  return SubAlgebra{AlgebraBasis(F, std::move(table), std::move(unit)),
                    std::move(re.reduced), std::move(re.pivots), e};
}

}  // namespace

SplitResult split(const AlgebraBasis& b, const AlgebraElement& v) {
  if (!b.is_commutative()) throw NotCommutative();
  require_dim(b, v);
  if (!(algebra_mul(b, v, v) == v)) throw NotIdempotent();
  if (v.is_zero() || v == b.identity()) throw TrivialIdempotent();
  AlgebraElement w = algebra_sub(b, b.identity(), v);
  return SplitResult{v, ideal_subalgebra(b, v), ideal_subalgebra(b, w)};
}

}  // namespace pit
