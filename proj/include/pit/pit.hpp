#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "pit/circuit.hpp"
#include "pit/term_circuit.hpp"

namespace pit {

enum class Verdict { Zero, NonZero };
const char* to_string(Verdict v);

struct PitStats {
  std::size_t splits = 0;
  std::size_t terms_filtered = 0;       // terms dropped for an invertible coefficient
  std::size_t final_product_terms = 0;  // monomials in the last local product
  std::size_t max_depth = 0;            // deepest recursion level reached
};

/// Verdict of the deterministic path plus a human-readable derivation.
struct PitVerdict {
  Verdict verdict = Verdict::NonZero;
  std::vector<std::string> trace;
  PitStats stats;
};

struct PitOptions {
  /// Local products with more nilpotent terms than this are refused.
  std::size_t max_terms = 8;
  ExpandOptions expand;
};

/// Deterministic zero test over a commutative algebra: split along
/// idempotents until every coefficient is invertible or nilpotent, drop
/// terms with an invertible coefficient, then decide the remaining product.
PitVerdict commutative_pit(const AlgebraTermCircuit& c,
                           const PitOptions& opts = {});

/// Polynomial with algebra-element coefficients.
using AlgebraPoly = std::map<Monomial, AlgebraElement, GradedLexGreater>;

/// Full symbolic expansion in the circuit's algebra.
AlgebraPoly expand_term_circuit(const AlgebraTermCircuit& c,
                                const ExpandOptions& opts = {});

Verdict brute_force_zero(const DepthThreeCircuit& c, const ExpandOptions& opts = {});
Verdict brute_force_zero(const LinearMatrixSequence& s,
                         const ExpandOptions& opts = {});
Verdict brute_force_zero(const Abp& a, const ExpandOptions& opts = {});
Verdict brute_force_zero(const Formula& f, const ExpandOptions& opts = {});
Verdict brute_force_zero(const AlgebraTermCircuit& c,
                         const ExpandOptions& opts = {});

/// Point at which a circuit is evaluated: x_1..x_n and the value of z.
struct EvalPoint {
  std::vector<FieldElement> xs;
  FieldElement z{1};
};

/// "v1,v2,...,vn" with ";z=v" appended when with_z; no spaces.
std::string format_point(const EvalPoint& p, bool with_z);

/// Returns true when the circuit is nonzero at the point.
using NonzeroAt = std::function<bool(const EvalPoint&)>;

struct SzResult {
  bool nonzero = false;            // ProbablyNonZero; otherwise ZeroAtAllSamples
  std::optional<EvalPoint> witness;
  std::size_t trials_run = 0;
  u64 seed = 0;
  bool small_field_warning = false;  // p <= degree bound
};

/// Draws x_1..x_n (then z when uses_z) per trial from splitmix64(seed),
/// each uniform in [0, p); stops at the first nonzero evaluation.
SzResult schwartz_zippel(const NonzeroAt& probe, const PrimeField& field,
                         std::size_t num_vars, bool uses_z,
                         std::size_t degree_bound, std::size_t trials, u64 seed);

SzResult schwartz_zippel(const DepthThreeCircuit& c, std::size_t trials, u64 seed);
SzResult schwartz_zippel(const LinearMatrixSequence& s, std::size_t trials,
                         u64 seed);
SzResult schwartz_zippel(const Abp& a, std::size_t trials, u64 seed);
SzResult schwartz_zippel(const Formula& f, std::size_t trials, u64 seed);

inline constexpr std::size_t kDefaultRobustnessBudget = 100'000'000;

/// Every normalized pair (l1, l2) over f's field with 1 not in (l1, l2)
/// such that f mod (l1, l2) has degree at most 1. A linear function is
/// normalized when its first nonzero coefficient in the order
/// x_1, ..., x_n, constant equals 1. Pairs are unordered (l1 <= l2 in
/// enumeration order). Throws BudgetExceeded when the pair count is larger
/// than `budget`.
std::vector<std::pair<LinearFunction, LinearFunction>> robustness_search(
    const SparsePoly& f, std::size_t budget = kDefaultRobustnessBudget);

/// Normalized linear functions in x_1..x_n over the field, in enumeration order.
std::vector<LinearFunction> normalized_linear_functions(const PrimeField& field,
                                                        std::size_t n);

}  // namespace pit
