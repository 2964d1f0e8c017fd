#include <gtest/gtest.h>

#include "helpers.hpp"
#include "pit/pit.hpp"
#include "pit/suite.hpp"
#include "pit/transforms.hpp"

namespace pit {
namespace {

using testing::fe;
using testing::lf;
using testing::poly;
using testing::sps;

const PrimeField F(101);

SparsePoly l_times_f(const LoweredU2& low, const DepthThreeCircuit& c) {
  return product_of(c.field, low.l_factors) * expand_depth3(c);
}

TEST(SpsToU2, TwoSummandExample) {
  DepthThreeCircuit c = sps("(x1)(x2); (x3)(x4)");
  LoweredU2 low = sps_to_u2(c);
  EXPECT_EQ(low.l_factors, (std::vector<LinearFunction>{lf("x1")}));
  EXPECT_EQ(low.seq.length(), 5u);
  EXPECT_LE(low.seq.length(), low.length_bound());
  EXPECT_EQ(low.length_bound(), 24u);
  EXPECT_TRUE(low.seq.is_upper_triangular());
  PolyMatrix m = expand_sequence(low.seq);
  EXPECT_EQ(m.at(0, 1), poly("x1^2*x2 + x1*x3*x4"));
  EXPECT_FALSE(low.syntactic_zero);
}

TEST(SpsToU2, SingleSummand) {
  DepthThreeCircuit c = sps("(x1 + 1)(x2)(2*x3)");
  LoweredU2 low = sps_to_u2(c);
  EXPECT_TRUE(low.l_factors.empty());
  EXPECT_EQ(expand_sequence(low.seq).at(0, 1), expand_depth3(c));
  DepthThreeCircuit linear = sps("(x1); (x2 + 3)");
  LoweredU2 lin = sps_to_u2(linear);
  EXPECT_EQ(expand_sequence(lin.seq).at(0, 1), l_times_f(lin, linear));
}

TEST(SpsToU2, SyntacticZero) {
  DepthThreeCircuit c = sps("(x1)(0); (0)(x2)");
  LoweredU2 low = sps_to_u2(c);
  EXPECT_TRUE(low.syntactic_zero);
  EXPECT_EQ(low.seq.length(), 1u);
  EXPECT_EQ(low.seq.matrices[0], LinearMatrix::identity(F, 2));
  // A zero summand is deleted without touching the others.
  DepthThreeCircuit mixed = sps("(x1)(0); (x2)(x3)");
  LoweredU2 m = sps_to_u2(mixed);
  EXPECT_FALSE(m.syntactic_zero);
  EXPECT_EQ(expand_sequence(m.seq).at(0, 1), poly("x2*x3"));
}

TEST(SpsToU2, RandomCircuitsSatisfyTheContract) {
  SplitMix64 rng(61);
  for (int t = 0; t < 200; ++t) {
    DepthThreeCircuit c =
        suite::random_sps(rng, F, rng.between(1, 4), rng.between(1, 4), rng.between(1, 5));
    LoweredU2 low = sps_to_u2(c);
    ASSERT_TRUE(low.seq.is_upper_triangular());
    ASSERT_LE(low.seq.length(), low.length_bound());
    PolyMatrix m = expand_sequence(low.seq);
    ASSERT_EQ(m.at(0, 1), l_times_f(low, c)) << serialize(c);
    for (const auto& l : low.l_factors) ASSERT_FALSE(l.is_zero());
    // Zero-preservation both ways.
    ASSERT_EQ(m.at(0, 1).is_zero(), expand_depth3(c).is_zero());
  }
}

TEST(SpsToU2, ZeroCircuitsLowerToZero) {
  SplitMix64 rng(62);
  for (int t = 0; t < 50; ++t) {
    DepthThreeCircuit c = suite::random_zero_sps(rng, F, 4, rng.between(1, 3), rng.between(1, 3));
    ASSERT_TRUE(expand_depth3(c).is_zero());
    ASSERT_TRUE(expand_sequence(sps_to_u2(c).seq).at(0, 1).is_zero());
  }
}

TEST(Mask, IsolatesTheOffDiagonalEntry) {
  DepthThreeCircuit c = sps("(x1 + 2)(x2); (x3)(x1)");
  LoweredU2 low = sps_to_u2(c);
  LinearMatrixSequence masked = mask_offdiagonal(low);
  ASSERT_TRUE(masked.left_mask && masked.right_mask);
  PolyMatrix m = expand_sequence(masked);
  EXPECT_TRUE(m.at(0, 0).is_zero());
  EXPECT_TRUE(m.at(1, 0).is_zero());
  EXPECT_TRUE(m.at(1, 1).is_zero());
  EXPECT_EQ(m.at(0, 1), l_times_f(low, c));
}

TEST(U2ToSps, EntriesMatchExpansion) {
  SplitMix64 rng(63);
  for (int t = 0; t < 50; ++t) {
    DepthThreeCircuit c = suite::random_sps(rng, F, 3, rng.between(1, 3), rng.between(1, 3));
    LoweredU2 low = sps_to_u2(c);
    for (const LinearMatrixSequence& s : {low.seq, mask_offdiagonal(low)}) {
      U2Entries e = u2_to_sps(s);
      PolyMatrix m = expand_sequence(s);
      ASSERT_EQ(expand_depth3(e.top_left), m.at(0, 0));
      ASSERT_EQ(expand_depth3(e.bottom_right), m.at(1, 1));
      ASSERT_EQ(expand_depth3(e.top_right), m.at(0, 1));
    }
  }
}

TEST(U2ToSps, RejectsNonTriangular) {
  Document d = parse_document("seq k=2 { [1, 0; x1, 1] }");
  EXPECT_THROW(u2_to_sps(*d.seq), NotUpperTriangular);
  Document k3 = parse_document("seq k=3 { [1, 0, 0; 0, 1, 0; 0, 0, 1] }");
  EXPECT_THROW(u2_to_sps(*k3.seq), NotUpperTriangular);
}

TEST(Abp, LoweringExampleEvaluates) {
  DepthThreeCircuit c = sps("(x1)(x2); (x3)(x4)");
  LoweredU2 low = sps_to_u2(c);
  Abp a = homogenize_and_abp(low);
  EXPECT_NO_THROW(a.check_structure());
  EXPECT_EQ(a.width(), 2u);
  EXPECT_EQ(a.levels.size(), low.seq.length() + 3);
  EXPECT_EQ(a.levels.front(), 1u);
  EXPECT_EQ(a.levels.back(), 1u);
  EXPECT_TRUE(is_pattern_planar(a));
  // L f = x1 (x1 x2 + x3 x4) at (2, 3, 1, 4) is 2 * 10.
  EXPECT_EQ(eval_abp(a, testing::point({2, 3, 1, 4})), fe(20));
  // Every core gap is homogeneous of degree 1, so scaling x and z by 2
  // scales the value by 2^5: 640 = 34 mod 101.
  EXPECT_EQ(eval_abp(a, testing::point({4, 6, 2, 8}), fe(2)), fe(34));
}

TEST(Abp, AllDiagonalSequence) {
  Document d = parse_document("seq k=2 { [x1, 0; 0, x2] [x3 + 1, 0; 0, 1] }");
  LoweredU2 low{*d.seq, {}, {}, false};
  Abp a = homogenize_and_abp(low);
  // No off-diagonal edge, so no source-to-sink path.
  EXPECT_TRUE(expand_abp(a).is_zero());
  EXPECT_EQ(classify_layer(a, 1), LayerKind::Parallel);
}

TEST(Abp, RejectsUnsupportedShape) {
  Document d = parse_document("seq k=2 { [x1, x2; 0, x1] }");
  LoweredU2 low{*d.seq, {}, {}, false};
  EXPECT_THROW(homogenize_and_abp(low), UnsupportedShape);
  Document k3 = parse_document("seq k=3 { [1, 0, 0; 0, 1, 0; 0, 0, 1] }");
  LoweredU2 big{*k3.seq, {}, {}, false};
  EXPECT_THROW(homogenize_and_abp(big), UnsupportedShape);
}

TEST(Abp, RandomCrossCheck) {
  SplitMix64 rng(64);
  for (int t = 0; t < 100; ++t) {
    DepthThreeCircuit c = suite::random_sps(rng, F, 4, rng.between(1, 3), rng.between(1, 4));
    LoweredU2 low = sps_to_u2(c);
    if (low.syntactic_zero) continue;
    Abp a = homogenize_and_abp(low);
    ASSERT_TRUE(is_pattern_planar(a));
    SparsePoly lf_poly = l_times_f(low, c);
    for (int i = 0; i < 5; ++i) {
      auto x = testing::random_point(rng, F, 4);
      ASSERT_EQ(eval_abp(a, x), lf_poly.eval(x));
    }
  }
}

Matrix boc_value(const LinearMatrixSequence& s, std::span<const FieldElement> x) {
  return eval_sequence(s, x);
}

void expect_boc_shape(const Matrix& m, FieldElement value) {
  for (std::size_t r = 0; r < 3; ++r) {
    for (std::size_t c = 0; c < 3; ++c) {
      FieldElement want = r == c ? F.one() : F.zero();
      if (r == kBocRow && c == kBocCol) want = value;
      ASSERT_EQ(m(r, c), want) << r << "," << c;
    }
  }
}

TEST(BenOrCleve, LeafIsASingleTransvection) {
  Formula e = *parse_document("formula 3*x2", F).formula;
  LinearMatrixSequence s = ben_or_cleve(e);
  ASSERT_EQ(s.length(), 1u);
  LinearMatrix want = LinearMatrix::identity(F, 3);
  want.at(2, 0) = lf("3*x2");
  EXPECT_EQ(s.matrices[0], want);
}

TEST(BenOrCleve, GateLengths) {
  LinearMatrixSequence mul = ben_or_cleve(*parse_document("formula (* x1 x2)", F).formula);
  EXPECT_EQ(mul.length(), 4u);
  for (const auto& m : mul.matrices) EXPECT_TRUE(is_transvection(m));
  EXPECT_EQ(expand_sequence(mul).at(2, 0), poly("x1*x2"));
  LinearMatrixSequence add = ben_or_cleve(*parse_document("formula (+ x1 x2)", F).formula);
  EXPECT_EQ(add.length(), 2u);
  EXPECT_EQ(expand_sequence(add).at(2, 0), poly("x1 + x2"));
}

TEST(BenOrCleve, ProductsOfRandomFormulas) {
  SplitMix64 rng(65);
  for (int t = 0; t < 3; ++t) {
    Formula f1 = suite::random_formula(rng, F, 3, 3);
    Formula f2 = suite::random_formula(rng, F, 3, 3);
    Formula prod = Formula::mul(f1, f2);
    LinearMatrixSequence s = ben_or_cleve(prod);
    for (int i = 0; i < 20; ++i) {
      auto x = testing::random_point(rng, F, 3);
      expect_boc_shape(boc_value(s, x), F.mul(f1.eval(x), f2.eval(x)));
    }
  }
}

TEST(BenOrCleve, RandomFormulasRespectTheLengthBound) {
  SplitMix64 rng(66);
  for (int t = 0; t < 100; ++t) {
    Formula e = suite::random_formula(rng, F, 4, 4);
    LinearMatrixSequence s = ben_or_cleve(e);
    std::size_t bound = 1;
    for (std::size_t i = 0; i < e.depth(); ++i) bound *= 4;
    ASSERT_LE(s.length(), bound);
    for (const auto& m : s.matrices) ASSERT_TRUE(is_transvection(m));
    auto x = testing::random_point(rng, F, 4);
    expect_boc_shape(boc_value(s, x), e.eval(x));
  }
}

TEST(LocalRing, Dimensions) {
  for (std::size_t s = 1; s <= 4; ++s) {
    for (std::size_t d = 1; d <= 4; ++d) {
      AlgebraBasis b = local_ring_algebra(F, s, d);
      ASSERT_EQ(b.dim(), 1 + d + (s - 1) * (d - 1));
      ASSERT_TRUE(b.is_commutative());
      ASSERT_NO_THROW(validate_basis(b));
    }
  }
  EXPECT_THROW(local_ring_algebra(F, 0, 2), InvalidArgument);
}

AlgebraPoly times_top(const SparsePoly& f, const LocalRingReduction& r) {
  AlgebraPoly out;
  for (const auto& [m, c] : f.terms()) {
    AlgebraElement e = r.circuit.basis.zero();
    e.coords[r.top_index] = c;
    out.emplace(m, e);
  }
  return out;
}

TEST(LocalRing, Example) {
  DepthThreeCircuit c = sps("(x1)(x2); (x3)(x4)");
  LocalRingReduction r = local_ring_reduction(c);
  EXPECT_EQ(r.s, 2u);
  EXPECT_EQ(r.d, 2u);
  EXPECT_EQ(r.circuit.basis.dim(), 4u);
  EXPECT_EQ(r.top_index, 2u);
  EXPECT_EQ(r.index_of(1, 2), std::optional<std::size_t>(2));
  EXPECT_EQ(r.index_of(2, 2), std::optional<std::size_t>(2));
  EXPECT_EQ(r.index_of(2, 3), std::nullopt);
  EXPECT_EQ(expand_term_circuit(r.circuit), times_top(poly("x1*x2 + x3*x4"), r));
}

TEST(LocalRing, SoundnessOnRandomCircuits) {
  SplitMix64 rng(67);
  for (int t = 0; t < 60; ++t) {
    DepthThreeCircuit c = t % 3 == 0
                              ? suite::random_zero_sps(rng, F, 3, rng.between(1, 3), rng.between(1, 3))
                              : suite::random_sps(rng, F, 3, rng.between(1, 3), rng.between(1, 3));
    LocalRingReduction r = local_ring_reduction(c);
    ASSERT_EQ(r.circuit.terms.size(), r.d);
    ASSERT_EQ(expand_term_circuit(r.circuit), times_top(expand_depth3(c), r)) << serialize(c);
    ASSERT_EQ(brute_force_zero(r.circuit), brute_force_zero(c));
  }
}

}  // namespace
}  // namespace pit
