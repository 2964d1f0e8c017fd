#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "pit/circuit.hpp"
#include "pit/random.hpp"
#include "pit/term_circuit.hpp"

namespace pit::suite {

// ------------------------------------------------------------- generators

/// Random affine function in x_1..x_n; each coefficient is zero with
/// probability 1/2, otherwise uniform.
LinearFunction random_linear(SplitMix64& rng, const PrimeField& F, std::size_t n);

/// Like random_linear but never the zero function.
LinearFunction random_nonzero_linear(SplitMix64& rng, const PrimeField& F,
                                     std::size_t n);

/// s products of exactly d random linear functions in n variables.
DepthThreeCircuit random_sps(SplitMix64& rng, const PrimeField& F, std::size_t n,
                             std::size_t d, std::size_t s);

/// Identically zero circuit with at most max_s summands built from explicit
/// cancellations; products have length d (d >= 2 for the difference of
/// squares shape).
DepthThreeCircuit random_zero_sps(SplitMix64& rng, const PrimeField& F,
                                  std::size_t n, std::size_t d, std::size_t max_s);

/// Random formula of depth at most max_depth over x_1..x_n.
Formula random_formula(SplitMix64& rng, const PrimeField& F, std::size_t max_depth,
                       std::size_t n);

/// Random element; each coordinate is zero with probability 1/2.
AlgebraElement random_element(SplitMix64& rng, const AlgebraBasis& b);

/// Random combination of the given vectors.
AlgebraElement random_combination(SplitMix64& rng, const AlgebraBasis& b,
                                  const std::vector<AlgebraElement>& span);

// -------------------------------------------------------------------- zoo

struct ZooAlgebra {
  std::string name;
  AlgebraBasis basis;
  /// Basis of the nil radical.
  std::vector<AlgebraElement> radical;
};

/// Direct product of two algebras in basis form.
AlgebraBasis direct_product(const AlgebraBasis& a, const AlgebraBasis& b);

/// F[y]/(y^m) on the basis 1, y, ..., y^(m-1).
AlgebraBasis truncated_poly_algebra(const PrimeField& F, std::size_t m);

/// F[y]/(y^2 - y) on the basis 1, y.
AlgebraBasis idempotent_poly_algebra(const PrimeField& F);

/// Upper-triangular 2x2 matrices on E11, E12, E22.
AlgebraBasis upper_triangular_algebra(const PrimeField& F);

/// Commutative algebras of dimension at most 5 used by the agreement suites.
std::vector<ZooAlgebra> commutative_zoo(const PrimeField& F);

// --------------------------------------------------------------- criteria

struct Sizes {
  std::size_t max_n = 4;
  std::size_t max_d = 4;
  std::size_t max_s = 4;
  std::size_t random_circuits = 500;
  std::size_t zero_circuits = 50;
  std::size_t abp_points = 100;
  std::size_t zoo_instances = 500;
  std::size_t count_rule_instances = 50;
  std::size_t local_ring_circuits = 20;
  std::size_t formulas = 200;
  std::size_t max_formula_depth = 4;
};

/// Sizes scaled down for quick runs.
Sizes small_sizes();

struct Faults {
  /// Flip one structure constant of every zoo algebra handed to the
  /// deterministic engine and the local-ring validator.
  bool flip_structure_constant = false;
};

struct CriterionResult {
  int id = 0;
  std::string name;
  std::size_t checks = 0;
  std::size_t failures = 0;
  /// Deterministic text: one line per instance plus a summary line.
  std::string report;
  bool passed() const { return failures == 0; }
};

inline constexpr int kCriterionCount = 8;

/// Runs property suite `id` (1..8). Never throws for instance failures;
/// exceptions inside an instance are recorded as failures.
CriterionResult run_criterion(int id, u64 seed, const Sizes& sizes = {},
                              const Faults& faults = {});

}  // namespace pit::suite
