#include <gtest/gtest.h>

#include "helpers.hpp"
#include "pit/algebra.hpp"
#include "pit/suite.hpp"
#include "pit/transforms.hpp"

namespace pit {
namespace {

using testing::fe;

const PrimeField F(101);

AlgebraElement el(std::initializer_list<u64> cs) {
  AlgebraElement a;
  for (u64 c : cs) a.coords.push_back(F.from_u64(c));
  return a;
}

Matrix mat(std::size_t k, std::initializer_list<u64> row_major) {
  Matrix m(k, k);
  std::size_t i = 0;
  for (u64 v : row_major) {
    m(i / k, i % k) = F.from_u64(v);
    ++i;
  }
  return m;
}

// F x F on the basis u = (1,1), e = (1,0): u is the unit, e e = e.
AlgebraBasis product_of_fields_skew_basis() {
  return AlgebraBasis(F, {{el({1, 0}), el({0, 1})}, {el({0, 1}), el({0, 1})}}, el({1, 0}));
}

std::vector<AlgebraBasis> test_zoo() {
  std::vector<AlgebraBasis> zoo;
  for (const auto& z : suite::commutative_zoo(F)) zoo.push_back(z.basis);
  zoo.push_back(suite::upper_triangular_algebra(F));
  for (std::size_t s = 1; s <= 3; ++s) {
    for (std::size_t d = 1; d <= 3; ++d) zoo.push_back(local_ring_algebra(F, s, d));
  }
  return zoo;
}

TEST(Algebra, ValidateExamples) {
  AlgebraBasis dual = suite::truncated_poly_algebra(F, 2);
  EXPECT_NO_THROW(validate_basis(dual));
  EXPECT_TRUE(dual.is_commutative());

  AlgebraBasis u2 = suite::upper_triangular_algebra(F);
  EXPECT_NO_THROW(validate_basis(u2));
  EXPECT_FALSE(u2.is_commutative());

  // e1 is declared the identity but e1 e1 = e2.
  AlgebraBasis bad(F, {{el({0, 1}), el({0, 1})}, {el({0, 1}), el({0, 0})}}, el({1, 0}));
  try {
    validate_basis(bad);
    FAIL() << "accepted a bad identity";
  } catch (const ValidationError& e) {
    EXPECT_EQ(e.kind, ValidationError::Kind::BadIdentity);
    EXPECT_NE(std::string(e.what()).find("BadIdentity(1)"), std::string::npos);
  }

  // Basis 1, a, b with a a = b, a b = a, b a = b b = 0: (a a) a = 0 but a (a a) = a.
  AlgebraBasis nonassoc(F,
                        {{el({1, 0, 0}), el({0, 1, 0}), el({0, 0, 1})},
                         {el({0, 1, 0}), el({0, 0, 1}), el({0, 1, 0})},
                         {el({0, 0, 1}), el({0, 0, 0}), el({0, 0, 0})}},
                        el({1, 0, 0}));
  try {
    validate_basis(nonassoc);
    FAIL() << "accepted a non-associative table";
  } catch (const ValidationError& e) {
    EXPECT_EQ(e.kind, ValidationError::Kind::NotAssociative);
    EXPECT_NE(std::string(e.what()).find("NotAssociative(2,2,2)"), std::string::npos);
  }

  EXPECT_THROW(AlgebraBasis(F, {{el({1, 0})}}, el({1})), ValidationError);
}

TEST(Algebra, ZooValidates) {
  for (const auto& b : test_zoo()) EXPECT_NO_THROW(validate_basis(b));
}

TEST(Algebra, RegularRepExamples) {
  AlgebraBasis dual = suite::truncated_poly_algebra(F, 2);
  EXPECT_EQ(regular_rep(dual, dual.identity()), Matrix::identity(2));
  EXPECT_EQ(regular_rep(dual, el({0, 1})), mat(2, {0, 0, 1, 0}));
  AlgebraBasis skew = product_of_fields_skew_basis();
  validate_basis(skew);
  EXPECT_EQ(regular_rep(skew, el({0, 1})), mat(2, {0, 0, 1, 1}));
  EXPECT_THROW(regular_rep(dual, el({1, 0, 0})), DimensionMismatch);
}

TEST(Algebra, MulExamples) {
  AlgebraBasis dual = suite::truncated_poly_algebra(F, 2);
  AlgebraElement y = el({0, 1});
  EXPECT_EQ(algebra_mul(dual, y, dual.identity()), y);
  EXPECT_TRUE(algebra_mul(dual, y, y).is_zero());
  AlgebraBasis cubic = suite::truncated_poly_algebra(F, 3);
  EXPECT_EQ(algebra_pow(cubic, el({1, 1, 0}), 2), el({1, 2, 1}));
  EXPECT_EQ(algebra_pow(cubic, el({0, 1, 0}), 0), cubic.identity());
}

TEST(Algebra, RegularRepIsUnitalHomomorphism) {
  SplitMix64 rng(51);
  for (const auto& b : test_zoo()) {
    ASSERT_EQ(regular_rep(b, b.identity()), Matrix::identity(b.dim()));
    for (int i = 0; i < 200; ++i) {
      AlgebraElement x = suite::random_element(rng, b);
      AlgebraElement y = suite::random_element(rng, b);
      FieldElement c = rng.element(F);
      ASSERT_EQ(regular_rep(b, algebra_mul(b, x, y)),
                multiply(F, regular_rep(b, x), regular_rep(b, y)));
      Matrix lin = regular_rep(b, algebra_add(b, x, algebra_scale(b, y, c)));
      Matrix rx = regular_rep(b, x), ry = regular_rep(b, y);
      for (std::size_t r = 0; r < b.dim(); ++r) {
        for (std::size_t s = 0; s < b.dim(); ++s) {
          ASSERT_EQ(lin(r, s), F.add(rx(r, s), F.mul(c, ry(r, s))));
        }
      }
    }
  }
}

TEST(Algebra, ClassifyExamples) {
  AlgebraBasis dual = suite::truncated_poly_algebra(F, 2);
  EXPECT_EQ(classify(dual, el({0, 1})), ElementClass::Nilpotent);
  EXPECT_EQ(classify(dual, el({1, 1})), ElementClass::Invertible);
  EXPECT_EQ(classify(dual, el({0, 0})), ElementClass::Nilpotent);
  AlgebraBasis ff = suite::direct_product(suite::truncated_poly_algebra(F, 1),
                                          suite::truncated_poly_algebra(F, 1));
  EXPECT_EQ(classify(ff, el({1, 0})), ElementClass::ZeroDivisorNonNilpotent);
}

TEST(Algebra, ClassifyTrichotomy) {
  SplitMix64 rng(52);
  for (const auto& b : test_zoo()) {
    for (int i = 0; i < 100; ++i) {
      AlgebraElement a = suite::random_element(rng, b);
      Matrix rep = regular_rep(b, a);
      switch (classify(b, a)) {
        case ElementClass::Invertible: {
          auto c = solve(F, rep, b.identity().coords);
          ASSERT_TRUE(c.has_value());
          ASSERT_EQ(algebra_mul(b, a, AlgebraElement{*c}), b.identity());
          break;
        }
        case ElementClass::Nilpotent:
          ASSERT_TRUE(determinant(F, rep).is_zero());
          ASSERT_TRUE(algebra_pow(b, a, b.dim()).is_zero());
          break;
        case ElementClass::ZeroDivisorNonNilpotent:
          ASSERT_TRUE(determinant(F, rep).is_zero());
          ASSERT_FALSE(algebra_pow(b, a, b.dim()).is_zero());
          break;
      }
    }
  }
}

TEST(Algebra, FindIdempotentExamples) {
  AlgebraBasis ff = suite::direct_product(suite::truncated_poly_algebra(F, 1),
                                          suite::truncated_poly_algebra(F, 1));
  EXPECT_EQ(find_idempotent(ff, el({1, 0})), el({1, 0}));
  EXPECT_EQ(find_idempotent(ff, el({0, 7})), el({0, 1}));
  AlgebraBasis idem = suite::idempotent_poly_algebra(F);
  EXPECT_EQ(find_idempotent(idem, el({0, 1})), el({0, 1}));
  AlgebraBasis dual = suite::truncated_poly_algebra(F, 2);
  EXPECT_THROW(find_idempotent(dual, el({0, 1})), NotAZeroDivisor);
  EXPECT_THROW(find_idempotent(suite::upper_triangular_algebra(F), el({1, 0, 0})),
               NotCommutative);
}

TEST(Algebra, FindIdempotentOnRandomZeroDivisors) {
  SplitMix64 rng(53);
  std::size_t found = 0;
  for (const auto& z : suite::commutative_zoo(F)) {
    for (int i = 0; i < 100; ++i) {
      AlgebraElement a = suite::random_element(rng, z.basis);
      if (classify(z.basis, a) != ElementClass::ZeroDivisorNonNilpotent) continue;
      AlgebraElement v = find_idempotent(z.basis, a);
      ASSERT_EQ(algebra_mul(z.basis, v, v), v);
      ASSERT_FALSE(v.is_zero());
      ASSERT_NE(v, z.basis.identity());
      // v lies in the ideal a R: a c = v is solvable.
      ASSERT_TRUE(solve(F, regular_rep(z.basis, a), v.coords).has_value());
      ++found;
    }
  }
  EXPECT_GT(found, 100u);
}

TEST(Algebra, SplitExamples) {
  AlgebraBasis f1 = suite::truncated_poly_algebra(F, 1);
  AlgebraBasis ff = suite::direct_product(f1, f1);
  SplitResult s = split(ff, el({1, 0}));
  EXPECT_EQ(s.left.algebra.dim(), 1u);
  EXPECT_EQ(s.right.algebra.dim(), 1u);
  EXPECT_EQ(s.left.algebra.identity(), el({1}));

  AlgebraBasis mixed = suite::direct_product(suite::truncated_poly_algebra(F, 2), f1);
  SplitResult m = split(mixed, el({0, 0, 1}));
  EXPECT_EQ(m.left.algebra.dim(), 1u);
  EXPECT_EQ(m.right.algebra.dim(), 2u);
  validate_basis(m.left.algebra);
  validate_basis(m.right.algebra);
  // The 2-dimensional part is F[y]/(y^2): it has a nonzero nilpotent.
  AlgebraElement y = m.right.project(mixed, el({0, 1, 0}));
  EXPECT_FALSE(y.is_zero());
  EXPECT_EQ(classify(m.right.algebra, y), ElementClass::Nilpotent);

  EXPECT_THROW(split(ff, el({1, 1})), TrivialIdempotent);
  EXPECT_THROW(split(ff, el({0, 0})), TrivialIdempotent);
  EXPECT_THROW(split(ff, el({2, 0})), NotIdempotent);
  EXPECT_THROW(split(suite::upper_triangular_algebra(F), el({1, 0, 0})), NotCommutative);
}

TEST(Algebra, SplitRoundTripAndMultiplicativity) {
  SplitMix64 rng(54);
  std::size_t splits = 0;
  for (const auto& z : suite::commutative_zoo(F)) {
    const AlgebraBasis& b = z.basis;
    for (int i = 0; i < 20; ++i) {
      AlgebraElement a = suite::random_element(rng, b);
      if (classify(b, a) != ElementClass::ZeroDivisorNonNilpotent) continue;
      SplitResult s = split(b, find_idempotent(b, a));
      ASSERT_EQ(s.left.algebra.dim() + s.right.algebra.dim(), b.dim());
      validate_basis(s.left.algebra);
      validate_basis(s.right.algebra);
      ++splits;
      for (int t = 0; t < 50; ++t) {
        AlgebraElement x = suite::random_element(rng, b);
        AlgebraElement y = suite::random_element(rng, b);
        AlgebraElement back = algebra_add(b, s.left.lift(s.left.project(b, x)),
                                          s.right.lift(s.right.project(b, x)));
        ASSERT_EQ(back, x);
        for (const SubAlgebra* sub : {&s.left, &s.right}) {
          ASSERT_EQ(sub->project(b, algebra_mul(b, x, y)),
                    algebra_mul(sub->algebra, sub->project(b, x), sub->project(b, y)));
        }
      }
    }
  }
  EXPECT_GT(splits, 10u);
}

TEST(Algebra, NilpotentsOfLocalRingsAreClosedUnderAddition) {
  SplitMix64 rng(55);
  std::vector<AlgebraBasis> locals = {suite::truncated_poly_algebra(F, 3),
                                      local_ring_algebra(F, 2, 3), local_ring_algebra(F, 3, 2)};
  for (const auto& b : locals) {
    std::vector<AlgebraElement> nil;
    for (std::size_t i = 0; i < b.dim(); ++i) {
      ASSERT_NE(classify(b, b.basis_element(i)), ElementClass::ZeroDivisorNonNilpotent);
    }
    for (int i = 0; i < 100; ++i) {
      AlgebraElement a = suite::random_element(rng, b);
      ElementClass c = classify(b, a);
      ASSERT_NE(c, ElementClass::ZeroDivisorNonNilpotent);
      if (c == ElementClass::Nilpotent) nil.push_back(a);
    }
    ASSERT_FALSE(nil.empty());
    for (std::size_t i = 0; i + 1 < nil.size(); ++i) {
      ASSERT_EQ(classify(b, algebra_add(b, nil[i], nil[i + 1])), ElementClass::Nilpotent);
    }
  }
}

TEST(Algebra, LinearAlgebraHelpers) {
  Matrix m = mat(3, {1, 2, 3, 2, 4, 6, 1, 0, 1});
  RowEchelon re = row_reduce(F, m);
  EXPECT_EQ(re.rank(), 2u);
  EXPECT_EQ(re.pivots, (std::vector<std::size_t>{0, 1}));
  EXPECT_TRUE(determinant(F, m).is_zero());
  EXPECT_EQ(determinant(F, mat(2, {1, 2, 3, 4})), F.from_i64(-2));
  auto x = solve(F, mat(2, {1, 2, 3, 4}), std::vector<FieldElement>{fe(5), fe(6)});
  ASSERT_TRUE(x.has_value());
  EXPECT_EQ(F.add((*x)[0], F.mul(fe(2), (*x)[1])), fe(5));
  EXPECT_FALSE(solve(F, mat(2, {1, 2, 2, 4}), std::vector<FieldElement>{fe(1), fe(0)}).has_value());
  EXPECT_EQ(matrix_power(F, mat(2, {0, 0, 1, 0}), 2), Matrix(2, 2));
}

}  // namespace
}  // namespace pit
