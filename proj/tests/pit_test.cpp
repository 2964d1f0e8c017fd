#include <gtest/gtest.h>

#include "helpers.hpp"
#include "pit/pit.hpp"
#include "pit/suite.hpp"
#include "pit/transforms.hpp"

namespace pit {
namespace {

using testing::lf;
using testing::poly;
using testing::sps;

const PrimeField F(101);

AlgebraElement el(std::initializer_list<u64> cs) {
  AlgebraElement a;
  for (u64 c : cs) a.coords.push_back(F.from_u64(c));
  return a;
}

AlgebraBasis field_squared() {
  AlgebraBasis f1 = suite::truncated_poly_algebra(F, 1);
  return suite::direct_product(f1, f1);
}

TEST(Splitmix, ReferenceOutputs) {
  SplitMix64 rng(0);
  EXPECT_EQ(rng.next(), 0xe220a8397b1dcdafULL);
  EXPECT_EQ(rng.next(), 0x6e789e6aa1b965f4ULL);
  EXPECT_EQ(rng.next(), 0x06c45d188009454fULL);
}

TEST(CommutativePit, Examples) {
  AlgebraBasis dual = suite::truncated_poly_algebra(F, 2);
  AlgebraElement y = el({0, 1}), one = el({1, 0}), zero = el({0, 0});

  // y * y = 0 in F[y]/(y^2).
  PitVerdict sq = commutative_pit({dual, {{y, zero}, {y, zero}}});
  EXPECT_EQ(sq.verdict, Verdict::Zero);
  EXPECT_EQ(sq.stats.splits, 0u);

  // Three nilpotent terms in a 2-dimensional algebra.
  PitVerdict three = commutative_pit({dual, {{zero, y}, {zero, y}, {zero, y}}});
  EXPECT_EQ(three.verdict, Verdict::Zero);
  ASSERT_FALSE(three.trace.empty());
  EXPECT_NE(three.trace.back().find("count exceeds dim"), std::string::npos);

  // y + x1 has a unit coefficient and is dropped; the empty product is 1.
  PitVerdict unit = commutative_pit({dual, {{y, one}}});
  EXPECT_EQ(unit.verdict, Verdict::NonZero);
  EXPECT_EQ(unit.stats.terms_filtered, 1u);

  // (1,0) * (0,1) = 0 in F x F, found after one split.
  AlgebraBasis ff = field_squared();
  PitVerdict orth = commutative_pit({ff, {{el({1, 0})}, {el({0, 1})}}});
  EXPECT_EQ(orth.verdict, Verdict::Zero);
  EXPECT_EQ(orth.stats.splits, 1u);
  PitVerdict both = commutative_pit({ff, {{el({1, 0}), el({0, 1})}, {el({1, 0}), el({0, 1})}}});
  EXPECT_EQ(both.verdict, Verdict::NonZero);
}

TEST(CommutativePit, EmptyProductIsNonZero) {
  PitVerdict v = commutative_pit({suite::truncated_poly_algebra(F, 2), {}});
  EXPECT_EQ(v.verdict, Verdict::NonZero);
  EXPECT_EQ(brute_force_zero(AlgebraTermCircuit{suite::truncated_poly_algebra(F, 2), {}}),
            Verdict::NonZero);
}

TEST(CommutativePit, RejectsNonCommutativeAlgebras) {
  AlgebraBasis u2 = suite::upper_triangular_algebra(F);
  EXPECT_THROW(commutative_pit({u2, {{u2.identity()}}}), NotCommutative);
}

TEST(CommutativePit, TooManyNilpotentTerms) {
  AlgebraBasis b = local_ring_algebra(F, 4, 3);
  ASSERT_EQ(b.dim(), 10u);
  std::vector<std::vector<AlgebraElement>> terms(9, {b.basis_element(1)});
  EXPECT_THROW(commutative_pit({b, terms}), DimensionTooLarge);
  PitOptions wide;
  wide.max_terms = 9;
  EXPECT_EQ(commutative_pit({b, terms}, wide).verdict, Verdict::Zero);
}

TEST(CommutativePit, AgreesWithBruteForceOnTheZoo) {
  SplitMix64 rng(71);
  std::size_t zeros = 0;
  for (const auto& z : suite::commutative_zoo(F)) {
    for (int t = 0; t < 40; ++t) {
      std::size_t n = rng.between(0, 2);
      std::size_t m = rng.between(1, 4);
      AlgebraTermCircuit c{z.basis, {}};
      for (std::size_t i = 0; i < m; ++i) {
        std::vector<AlgebraElement> term;
        for (std::size_t j = 0; j <= n; ++j) {
          // Sparse coefficients make zero products likely.
          term.push_back(rng.below(2) ? suite::random_element(rng, z.basis)
                                      : z.basis.zero());
        }
        c.terms.push_back(std::move(term));
      }
      Verdict want = brute_force_zero(c);
      ASSERT_EQ(commutative_pit(c).verdict, want) << z.name << "\n" << serialize(c);
      if (want == Verdict::Zero) ++zeros;
    }
  }
  EXPECT_GT(zeros, 20u);
}

TEST(CommutativePit, UnitTermsDoNotChangeTheVerdict) {
  SplitMix64 rng(72);
  for (std::size_t s = 1; s <= 3; ++s) {
    for (int t = 0; t < 20; ++t) {
      DepthThreeCircuit c = t % 2 ? suite::random_zero_sps(rng, F, 2, 2, s)
                                  : suite::random_sps(rng, F, 2, 2, s);
      LocalRingReduction r = local_ring_reduction(c);
      Verdict base = commutative_pit(r.circuit).verdict;
      AlgebraTermCircuit extended = r.circuit;
      const AlgebraBasis& rb = r.circuit.basis;
      std::vector<AlgebraElement> unit_term(extended.num_vars() + 1, rb.zero());
      unit_term[0] = rb.identity();
      if (unit_term.size() > 1) unit_term[1] = suite::random_element(rng, rb);
      extended.terms.push_back(unit_term);
      ASSERT_EQ(commutative_pit(extended).verdict, base);
      ASSERT_EQ(brute_force_zero(extended), base);
    }
  }
}

TEST(BruteForce, Examples) {
  EXPECT_EQ(brute_force_zero(sps("(x1)(x2); (-1*x2)(x1)")), Verdict::Zero);
  EXPECT_EQ(brute_force_zero(sps("(x1)(x2); (x2)(x1)")), Verdict::NonZero);
  EXPECT_EQ(brute_force_zero(*parse_document("formula (+ (* x1 x2) (* -x2 x1))").formula),
            Verdict::Zero);
  ExpandOptions tiny;
  tiny.cap = 2;
  EXPECT_THROW(brute_force_zero(sps("(x1 + x2)(x3 + x4)(x5 + x6)"), tiny), ExpansionTooLarge);
}

TEST(SchwartzZippel, ZeroCircuitIsZeroAtAllSamples) {
  SzResult r = schwartz_zippel(sps("(x1)(x2); (-1*x2)(x1)"), 20, 5);
  EXPECT_FALSE(r.nonzero);
  EXPECT_EQ(r.trials_run, 20u);
  EXPECT_FALSE(r.witness.has_value());
  EXPECT_EQ(r.seed, 5u);
}

TEST(SchwartzZippel, FindsWitnessAndIsDeterministic) {
  DepthThreeCircuit c = sps("(x1)(x2 - 3)");
  SzResult a = schwartz_zippel(c, 20, 9);
  SzResult b = schwartz_zippel(c, 20, 9);
  ASSERT_TRUE(a.nonzero);
  ASSERT_TRUE(a.witness.has_value());
  EXPECT_FALSE(c.eval(a.witness->xs).is_zero());
  EXPECT_EQ(format_point(*a.witness, false), format_point(*b.witness, false));
  EXPECT_EQ(a.trials_run, b.trials_run);
  // The first trial draws x1, x2 straight from splitmix64(seed).
  SplitMix64 rng(9);
  FieldElement x1 = rng.element(F), x2 = rng.element(F);
  if (a.trials_run == 1) {
    EXPECT_EQ(a.witness->xs, (std::vector<FieldElement>{x1, x2}));
  }
  EXPECT_THROW(schwartz_zippel(c, 0, 9), InvalidArgument);
}

TEST(SchwartzZippel, SmallFieldWarning) {
  PrimeField F2(2);
  SzResult r = schwartz_zippel(sps("(x1)(x2)(x3)", F2), 5, 1);
  EXPECT_TRUE(r.small_field_warning);
  EXPECT_FALSE(schwartz_zippel(sps("(x1)(x2)(x3)"), 5, 1).small_field_warning);
}

TEST(SchwartzZippel, WorksOnEveryIr) {
  DepthThreeCircuit c = sps("(x1 + 1)(x2); (x3)(x1)");
  LoweredU2 low = sps_to_u2(c);
  EXPECT_TRUE(schwartz_zippel(mask_offdiagonal(low), 20, 3).nonzero);
  EXPECT_TRUE(schwartz_zippel(homogenize_and_abp(low), 20, 3).nonzero);
  EXPECT_TRUE(schwartz_zippel(*parse_document("formula (* x1 x2)").formula, 20, 3).nonzero);
  EXPECT_FALSE(
      schwartz_zippel(mask_offdiagonal(sps_to_u2(sps("(x1)(x2); (-1*x1)(x2)"))), 20, 3)
          .nonzero);
}

TEST(FormatPoint, Forms) {
  EXPECT_EQ(format_point(EvalPoint{testing::point({3, 5, 7}), FieldElement{1}}, false), "3,5,7");
  EXPECT_EQ(format_point(EvalPoint{testing::point({3, 5}), FieldElement{4}}, true), "3,5;z=4");
  EXPECT_EQ(format_point(EvalPoint{{}, FieldElement{1}}, false), "()");
}

TEST(Robustness, NormalizedFunctionCount) {
  for (u64 p : {2ULL, 3ULL, 5ULL}) {
    for (std::size_t n = 0; n <= 3; ++n) {
      u64 pn1 = 1;
      for (std::size_t i = 0; i <= n; ++i) pn1 *= p;
      auto ls = normalized_linear_functions(PrimeField(p), n);
      ASSERT_EQ(ls.size(), (pn1 - 1) / (p - 1));
      for (const auto& l : ls) {
        FieldElement lead = l.constant_term();
        for (std::size_t v = n; v >= 1; --v) {
          if (!l.coefficient(static_cast<VarIndex>(v)).is_zero()) {
            lead = l.coefficient(static_cast<VarIndex>(v));
          }
        }
        ASSERT_EQ(lead.value, 1u);
      }
    }
  }
}

TEST(Robustness, LinearPolynomialOverF2) {
  PrimeField F2(2);
  auto pairs = robustness_search(poly("x1", F2));
  // (x1, x1) and (x1 + 1, x1 + 1); every other pair contains 1 or is inconsistent.
  ASSERT_EQ(pairs.size(), 2u);
  EXPECT_EQ(pairs[0].first, lf("x1", F2));
  EXPECT_EQ(pairs[1].first, lf("x1 + 1", F2));
}

TEST(Robustness, ThreeProductsAreRobustOverF2) {
  PrimeField F2(2);
  EXPECT_TRUE(robustness_search(poly("x1*x2 + x3*x4 + x5*x6", F2)).empty());
  auto pairs = robustness_search(poly("x1*x2", F2));
  EXPECT_EQ(pairs.size(), 16u);
  for (const auto& [l1, l2] : pairs) {
    auto r = reduce_mod_two_linears(poly("x1*x2", F2), l1, l2);
    ASSERT_TRUE(r.has_value());
    ASSERT_LE(r->degree(), 1);
  }
}

TEST(Robustness, BudgetExceeded) {
  EXPECT_THROW(robustness_search(poly("x1*x2 + x3*x4 + x5*x6")), BudgetExceeded);
  EXPECT_THROW(robustness_search(poly("x1*x2", PrimeField(2)), 10), BudgetExceeded);
}

}  // namespace
}  // namespace pit
