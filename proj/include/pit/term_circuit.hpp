#pragma once

#include <cstddef>
#include <vector>

#include "pit/algebra.hpp"

namespace pit {

/// prod_i (A_i0 + A_i1 x_1 + ... + A_in x_n) with every A_ij in `basis`.
struct AlgebraTermCircuit {
  AlgebraBasis basis;
  /// terms[i][j] = A_ij; every term has n + 1 coefficients.
  std::vector<std::vector<AlgebraElement>> terms;

  std::size_t num_vars() const {
    return terms.empty() || terms.front().empty() ? 0 : terms.front().size() - 1;
  }
  /// Throws DimensionMismatch if term lengths or coordinate counts disagree.
  void check_shapes() const {
    for (const auto& t : terms) {
      if (t.size() != terms.front().size()) {
        throw DimensionMismatch("terms have different numbers of coefficients");
      }
      for (const auto& a : t) {
        if (a.dim() != basis.dim()) {
          throw DimensionMismatch("coefficient dimension differs from algebra");
        }
      }
    }
  }
};

}  // namespace pit
