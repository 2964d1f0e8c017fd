#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "pit/field.hpp"

namespace pit {

/// Variable index 0 is the homogenizing variable z; x_1, x_2, ... are 1-based.
using VarIndex = std::uint32_t;
inline constexpr VarIndex kHomogenizingVar = 0;

/// Power product stored as (variable, exponent) pairs, variables ascending,
/// exponents positive.
class Monomial {
 public:
  using Factor = std::pair<VarIndex, std::uint32_t>;

  Monomial() = default;
  /// Accepts unsorted factors with possible repeats and zero exponents.
  explicit Monomial(std::vector<Factor> factors);
  static Monomial var(VarIndex v, std::uint32_t e = 1);

  const std::vector<Factor>& factors() const { return factors_; }
  std::uint32_t degree() const { return degree_; }
  bool is_one() const { return factors_.empty(); }
  std::uint32_t exponent(VarIndex v) const;
  /// Largest variable index present, or nullopt for 1.
  std::optional<VarIndex> max_var() const;

  Monomial operator*(const Monomial& other) const;
  friend bool operator==(const Monomial&, const Monomial&) = default;

 private:
  std::vector<Factor> factors_;
  std::uint32_t degree_ = 0;
};

/// Graded lexicographic order with x_0 > x_1 > x_2 > ...; as a map comparator
/// it sorts greatest monomial first.
struct GradedLexGreater {
  bool operator()(const Monomial& a, const Monomial& b) const;
};

/// Strict graded-lex comparison: negative, zero or positive.
int graded_lex_compare(const Monomial& a, const Monomial& b);

class SparsePoly;

/// a0 + sum_i a_i x_i. Index 0 in the coefficient map is z.
class LinearFunction {
 public:
  explicit LinearFunction(PrimeField field = PrimeField()) : field_(field) {}
  static LinearFunction constant(PrimeField field, FieldElement c);
  static LinearFunction variable(PrimeField field, VarIndex v,
                                 FieldElement c = FieldElement{1});

  const PrimeField& field() const { return field_; }
  FieldElement constant_term() const { return constant_; }
  const std::map<VarIndex, FieldElement>& coefficients() const {
    return coeffs_;
  }
  FieldElement coefficient(VarIndex v) const;

  void set_constant(FieldElement c) { constant_ = c; }
  void set_coefficient(VarIndex v, FieldElement c);

  bool is_zero() const { return constant_.is_zero() && coeffs_.empty(); }
  bool is_constant() const { return coeffs_.empty(); }
  bool is_homogeneous() const { return constant_.is_zero(); }
  std::optional<VarIndex> max_var() const;

  LinearFunction operator+(const LinearFunction& o) const;
  LinearFunction operator-(const LinearFunction& o) const;
  LinearFunction scaled(FieldElement c) const;

  /// xs[i-1] is the value of x_i; z is the value of the homogenizing variable.
  FieldElement eval(std::span<const FieldElement> xs,
                    FieldElement z = FieldElement{1}) const;

  /// a0 + sum a_i x_i  ->  a0 z + sum a_i x_i.
  LinearFunction homogenized() const;

  SparsePoly to_poly() const;

  friend bool operator==(const LinearFunction&, const LinearFunction&) = default;

 private:
  PrimeField field_;
  FieldElement constant_;
  std::map<VarIndex, FieldElement> coeffs_;
};

/// Exact multivariate polynomial over F_p. The zero polynomial has no terms.
class SparsePoly {
 public:
  using TermMap = std::map<Monomial, FieldElement, GradedLexGreater>;

  explicit SparsePoly(PrimeField field = PrimeField()) : field_(field) {}
  static SparsePoly constant(PrimeField field, FieldElement c);
  static SparsePoly one(PrimeField field) {
    return constant(field, FieldElement{1});
  }
  static SparsePoly variable(PrimeField field, VarIndex v);
  static SparsePoly monomial(PrimeField field, Monomial m, FieldElement c);

  const PrimeField& field() const { return field_; }
  const TermMap& terms() const { return terms_; }
  std::size_t num_terms() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  /// Total degree; -1 for the zero polynomial.
  int degree() const;
  std::optional<VarIndex> max_var() const;
  FieldElement coefficient(const Monomial& m) const;

  /// Adds c*m in place.
  void add_term(const Monomial& m, FieldElement c);

  SparsePoly operator+(const SparsePoly& o) const;
  SparsePoly operator-(const SparsePoly& o) const;
  SparsePoly operator-() const;
  SparsePoly operator*(const SparsePoly& o) const;
  SparsePoly& operator+=(const SparsePoly& o);
  SparsePoly& operator-=(const SparsePoly& o);
  SparsePoly scaled(FieldElement c) const;
  SparsePoly pow(std::uint32_t e) const;

  /// Value at xs (xs[i-1] = x_i) with the homogenizing variable set to z.
  /// Throws ArityMismatch when xs is shorter than the largest x index.
  FieldElement eval(std::span<const FieldElement> xs,
                    FieldElement z = FieldElement{1}) const;

  /// Replace variable v by the polynomial g.
  SparsePoly substitute(VarIndex v, const SparsePoly& g) const;

  friend bool operator==(const SparsePoly& a, const SparsePoly& b) {
    return a.field_ == b.field_ && a.terms_ == b.terms_;
  }

 private:
  void check_field(const SparsePoly& o) const;

  PrimeField field_;
  TermMap terms_;
};

/// Sum of the degree-d monomials of f.
SparsePoly homogeneous_part(const SparsePoly& f, std::uint32_t d);

/// z^target * f(x/z): every monomial padded with z to total degree `target`.
/// Throws InvalidArgument if f has degree above target or already uses z.
SparsePoly homogenize(const SparsePoly& f, std::uint32_t target);

/// f modulo the ideal (l1, l2), represented by substituting pivot variables
/// (lowest index first, l1 before l2). nullopt when 1 is in the ideal.
/// Throws InvalidArgument if both l1 and l2 are zero.
std::optional<SparsePoly> reduce_mod_two_linears(const SparsePoly& f,
                                                 const LinearFunction& l1,
                                                 const LinearFunction& l2);

/// Product of the given linear functions (1 for an empty list).
SparsePoly product_of(PrimeField field, std::span<const LinearFunction> ls);

}  // namespace pit
