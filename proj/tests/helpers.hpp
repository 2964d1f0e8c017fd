#pragma once

#include <string>
#include <vector>

#include "pit/random.hpp"
#include "pit/text.hpp"

namespace pit::testing {

inline LinearFunction lf(const std::string& s, PrimeField F = PrimeField(101)) {
  return parse_linear_function(s, F);
}

inline SparsePoly poly(const std::string& s, PrimeField F = PrimeField(101)) {
  return parse_poly(s, F);
}

inline FieldElement fe(u64 v) { return FieldElement{v}; }

inline std::vector<FieldElement> point(std::initializer_list<u64> vs) {
  std::vector<FieldElement> p;
  for (u64 v : vs) p.push_back(FieldElement{v});
  return p;
}

inline std::vector<FieldElement> random_point(SplitMix64& rng, const PrimeField& F,
                                              std::size_t n) {
  std::vector<FieldElement> p;
  for (std::size_t i = 0; i < n; ++i) p.push_back(rng.element(F));
  return p;
}

/// Random polynomial in x_1..x_n with up to `terms` monomials of degree <= deg.
inline SparsePoly random_poly(SplitMix64& rng, const PrimeField& F, std::size_t n,
                              std::size_t deg, std::size_t terms) {
  SparsePoly f(F);
  for (std::size_t t = 0; t < terms; ++t) {
    std::vector<Monomial::Factor> fs;
    std::size_t d = rng.below(deg + 1);
    for (std::size_t j = 0; j < d; ++j) {
      fs.emplace_back(static_cast<VarIndex>(rng.between(1, n)), 1);
    }
    f.add_term(Monomial(fs), rng.element(F));
  }
  return f;
}

inline DepthThreeCircuit sps(const std::string& body, PrimeField F = PrimeField(101)) {
  return *parse_document("sps { " + body + " }", F).sps;
}

}  // namespace pit::testing
