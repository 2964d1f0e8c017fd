#pragma once

#include <cstddef>
#include <vector>

#include "pit/linalg.hpp"

namespace pit {

/// Coordinates with respect to the basis e_1..e_k of some algebra.
struct AlgebraElement {
  std::vector<FieldElement> coords;

  std::size_t dim() const { return coords.size(); }
  bool is_zero() const;
  friend bool operator==(const AlgebraElement&, const AlgebraElement&) = default;
};

/// Finite-dimensional associative F-algebra in basis form: the product
/// e_i * e_j is stored as a coordinate vector.
class AlgebraBasis {
 public:
  /// structure[i][j] = coordinates of e_i e_j (0-based i, j). Shapes are
  /// checked here; associativity and the unit are checked by validate_basis.
  AlgebraBasis(PrimeField field,
               std::vector<std::vector<AlgebraElement>> structure,
               AlgebraElement identity);

  const PrimeField& field() const { return field_; }
  std::size_t dim() const { return k_; }
  const AlgebraElement& product(std::size_t i, std::size_t j) const {
    return table_[i * k_ + j];
  }
  const AlgebraElement& identity() const { return identity_; }
  bool is_commutative() const { return commutative_; }

  AlgebraElement zero() const;
  AlgebraElement basis_element(std::size_t i) const;

  /// Replaces one structure constant; used for fault injection.
  void set_structure_constant(std::size_t i, std::size_t j, std::size_t c,
                              FieldElement value);

 private:
  PrimeField field_;
  std::size_t k_;
  std::vector<AlgebraElement> table_;
  AlgebraElement identity_;
  bool commutative_ = true;
};

/// Throws ValidationError (NotAssociative / BadIdentity) with 1-based
/// witnesses. O(k^4) field operations.
void validate_basis(const AlgebraBasis& b);

AlgebraElement algebra_add(const AlgebraBasis& b, const AlgebraElement& x,
                           const AlgebraElement& y);
AlgebraElement algebra_sub(const AlgebraBasis& b, const AlgebraElement& x,
                           const AlgebraElement& y);
AlgebraElement algebra_scale(const AlgebraBasis& b, const AlgebraElement& x,
                             FieldElement c);
AlgebraElement algebra_mul(const AlgebraBasis& b, const AlgebraElement& x,
                           const AlgebraElement& y);
AlgebraElement algebra_pow(const AlgebraBasis& b, const AlgebraElement& x,
                           std::size_t t);

/// Left-multiplication matrix: column j holds the coordinates of a * e_j.
Matrix regular_rep(const AlgebraBasis& b, const AlgebraElement& a);

enum class ElementClass { Invertible, Nilpotent, ZeroDivisorNonNilpotent };
const char* to_string(ElementClass c);

ElementClass classify(const AlgebraBasis& b, const AlgebraElement& a);

/// Nontrivial idempotent in the ideal generated by z: the identity of R z^t
/// for the first t that admits one. Requires a commutative algebra and a
/// non-nilpotent zero divisor z.
AlgebraElement find_idempotent(const AlgebraBasis& b, const AlgebraElement& z);

/// R e for an idempotent e, with its own basis and structure constants.
struct SubAlgebra {
  AlgebraBasis algebra;
  Matrix basis_in_parent;            // row r = parent coordinates of b_r (RREF)
  std::vector<std::size_t> pivots;   // pivot column of each row
  AlgebraElement unit_in_parent;     // e

  /// Coordinates of x e in this sub-algebra's basis.
  AlgebraElement project(const AlgebraBasis& parent,
                         const AlgebraElement& x) const;
  /// Parent coordinates of a sub-algebra element.
  AlgebraElement lift(const AlgebraElement& y) const;
};

/// R = R v (+) R (1 - v).
struct SplitResult {
  AlgebraElement v;
  SubAlgebra left;
  SubAlgebra right;
};

SplitResult split(const AlgebraBasis& b, const AlgebraElement& v);

}  // namespace pit
