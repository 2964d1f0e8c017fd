#pragma once

#include <cstddef>
#include <vector>

#include "pit/circuit.hpp"
#include "pit/term_circuit.hpp"

namespace pit {

/// Depth-2 circuit over 2x2 upper-triangular matrices whose top-right entry
/// is (prod l_factors) * f for the source depth-3 circuit f.
struct LoweredU2 {
  struct Stats {
    std::size_t n = 0;  // variables
    std::size_t d = 0;  // degree after padding
    std::size_t s = 0;  // top fan-in of the source
  };

  LinearMatrixSequence seq;
  std::vector<LinearFunction> l_factors;
  Stats source;
  /// Every summand contained an identically-zero factor.
  bool syntactic_zero = false;

  /// (d + n) * 4^ceil(log2 s).
  std::size_t length_bound() const;
};

/// ceil(log2 s) for s >= 1.
std::size_t ceil_log2(std::size_t s);

LoweredU2 sps_to_u2(const DepthThreeCircuit& c);

/// Sandwiches the lowering between [[1,0],[0,0]] and [[0,0],[0,1]] so that the
/// product is [[0, L f],[0, 0]].
LinearMatrixSequence mask_offdiagonal(const LoweredU2& l);

/// The three entries of an upper-triangular 2x2 product as depth-3 circuits.
struct U2Entries {
  DepthThreeCircuit top_left;
  DepthThreeCircuit bottom_right;
  DepthThreeCircuit top_right;
};

/// Masks, if present, are treated as constant factors. Throws
/// NotUpperTriangular unless k = 2 and every factor is upper-triangular.
U2Entries u2_to_sps(const LinearMatrixSequence& s);

/// Width-2 ABP: one source, (len + 1) core levels of two vertices, one sink.
/// Core gap j is the z-homogenized j-th matrix used as an adjacency matrix;
/// the source feeds vertex 0 and vertex 1 feeds the sink with label 1.
/// Throws UnsupportedShape for a matrix that is neither diagonal nor
/// [[z, c x_i],[0, z]] after homogenization.
Abp homogenize_and_abp(const LoweredU2& l);

/// Slot of the formula value in the Ben-Or/Cleve product (row 3, column 1).
inline constexpr std::size_t kBocRow = 2;
inline constexpr std::size_t kBocCol = 0;

/// 3x3 transvections whose product is I + E at (3,1); length <= 4^depth.
LinearMatrixSequence ben_or_cleve(const Formula& e);

/// True iff m is the identity plus at most one off-diagonal entry.
bool is_transvection(const LinearMatrix& m);

/// F[y_1..y_s]/(y_i y_j, y_1^d - y_i^d) and the circuit
/// prod_j (sum_i l_ji y_i) = f * y_1^d.
struct LocalRingReduction {
  AlgebraTermCircuit circuit;
  std::size_t s = 0;
  std::size_t d = 0;
  /// Index of y_1^d in the monomial basis.
  std::size_t top_index = 0;
  /// Index of y_i^a (1-based i), or nullopt when the power is zero.
  std::optional<std::size_t> index_of(std::size_t i, std::size_t a) const;
};

LocalRingReduction local_ring_reduction(const DepthThreeCircuit& c);

/// Just the local ring for given s, d.
AlgebraBasis local_ring_algebra(PrimeField field, std::size_t s, std::size_t d);

}  // namespace pit
