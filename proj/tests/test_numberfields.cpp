#include <gtest/gtest.h>

#include "honda/numberfields/biquadratic.hpp"
#include "honda/numberfields/quadratic.hpp"

using namespace honda;

TEST(Quadratic, Discriminants) {
  EXPECT_EQ(fundamental_discriminant(-3), -3);
  EXPECT_EQ(fundamental_discriminant(2), 8);
  EXPECT_EQ(fundamental_discriminant(17), 17);
  EXPECT_EQ(fundamental_discriminant(-6), -24);
  EXPECT_THROW(fundamental_discriminant(12), InvalidArgument);
}

TEST(Quadratic, ReducedForms) {
  EXPECT_EQ(reduced_forms(-3).size(), 1u);
  EXPECT_EQ(reduced_forms(-24).size(), 2u);
  EXPECT_EQ(reduced_forms(-4).size(), 1u);
  EXPECT_EQ(reduced_forms(-20).size(), 2u);
  EXPECT_EQ(reduced_forms(-23).size(), 3u);
  EXPECT_EQ(reduced_forms(-163).size(), 1u);
}

TEST(Quadratic, ClassNumbers) {
  EXPECT_EQ(quad_class_number(-3), 1);
  EXPECT_EQ(quad_class_number(-6), 2);
  EXPECT_EQ(quad_class_number(-1), 1);
  EXPECT_EQ(quad_class_number(-5), 2);
  EXPECT_EQ(quad_class_number(-47), 5);
  EXPECT_EQ(quad_class_number(2), 1);
  EXPECT_EQ(quad_class_number(17), 1);
  EXPECT_EQ(quad_class_number(3), 1);
  // h(Q(sqrt 10)) = 2: the prime above 2 has no generator, never reported as 1.
  EXPECT_THROW(quad_class_number(10), SearchInconclusive);
}

TEST(Quadratic, MinkowskiBound) {
  auto F = quadratic_field(2);
  EXPECT_LT(F.minkowski_bound(), 2);
  EXPECT_GT(F.minkowski_bound(), mpq_class(141, 100));
}

TEST(Quadratic, ControlIsNotReportedAsOne) {
  auto rep = quadratic_class_number_one_check(-6);
  EXPECT_EQ(rep.status(), Status::Fail);
  EXPECT_EQ(rep.computed["class_number"], 2);
  auto ok = quadratic_class_number_one_check(-3);
  EXPECT_EQ(ok.status(), Status::Pass);
  auto real = quadratic_class_number_one_check(2);
  EXPECT_EQ(real.status(), Status::Pass);
}

TEST(Quadratic, SplittingMatchesRootCount) {
  for (std::int64_t d : {-3, 2, 17, -6, 5, -1}) {
    for (std::int64_t q : {3, 5, 7, 11, 13, 43}) {
      int roots = 0;
      for (std::int64_t x = 0; x < q; ++x) roots += arith::mod(x * x - d, q) == 0;
      int s = quadratic_splitting(d, q);
      EXPECT_EQ(s, roots == 2 ? 1 : (roots == 0 ? -1 : 0)) << d << " " << q;
    }
  }
}

TEST(Biquadratic, IntegralBasisAndDiscriminant) {
  for (auto [a, b, disc] : std::vector<std::tuple<int, int, long>>{{2, -3, 576}, {17, -3, 2601}, {-1, 2, 256}, {5, 13, 4225}, {3, 7, 7056}}) {
    BiquadraticField K(a, b);
    EXPECT_EQ(K.discriminant(), disc) << a << " " << b;
    EXPECT_EQ(K.basis_discriminant(), disc) << a << " " << b;
    for (const auto& w : K.integral_basis()) EXPECT_TRUE(K.is_integral(w));
  }
}

TEST(Biquadratic, NormIsMultiplicativeAndIntegral) {
  BiquadraticField K(17, -3);
  for (int i = -2; i <= 2; ++i)
    for (int j = -1; j <= 1; ++j) {
      BiqVec x = K.element({i, j, 1, -i});
      BiqVec y = K.element({j, 1, i, 2});
      EXPECT_EQ(K.norm(K.mul(x, y)), K.norm(x) * K.norm(y));
      EXPECT_EQ(K.norm(x).get_den(), 1);
      EXPECT_EQ(K.index_of_principal(x), abs(K.norm(x)));
    }
}

TEST(Biquadratic, MinkowskiBounds) {
  BiquadraticField A(2, -3), B(17, -3);
  EXPECT_GT(A.minkowski_bound(), mpq_class(364, 100));
  EXPECT_LT(A.minkowski_bound(), mpq_class(367, 100));
  EXPECT_GT(B.minkowski_bound(), mpq_class(775, 100));
  EXPECT_LT(B.minkowski_bound(), mpq_class(777, 100));
  // The bound scales as sqrt|disc|.
  BiquadraticField C(-1, 2);
  mpq_class ratio = B.minkowski_bound() / A.minkowski_bound();
  EXPECT_LT(std::fabs(ratio.get_d() - 51.0 / 24.0), 1e-6);
  EXPECT_LT(std::fabs(mpq_class(A.minkowski_bound() / C.minkowski_bound()).get_d() - 24.0 / 16.0), 1e-6);
}

TEST(Biquadratic, PrimeDecompositions) {
  BiquadraticField A(2, -3), B(17, -3);
  EXPECT_EQ(biquadratic_efg(A, 2), (std::array<int, 3>{2, 2, 1}));
  EXPECT_EQ(biquadratic_efg(A, 3), (std::array<int, 3>{2, 2, 1}));
  EXPECT_EQ(biquadratic_efg(B, 2), (std::array<int, 3>{1, 2, 2}));
  EXPECT_EQ(biquadratic_efg(B, 3), (std::array<int, 3>{2, 2, 1}));
  EXPECT_EQ(biquadratic_efg(B, 13), (std::array<int, 3>{1, 1, 4}));
  for (std::int64_t q : {2, 3, 5, 7, 11, 13, 17, 19}) {
    auto [e, f, g] = biquadratic_efg(B, q);
    EXPECT_EQ(e * f * g, 4);
  }
}

TEST(Biquadratic, ClassNumberOne) {
  for (auto [a, b] : std::vector<std::pair<int, int>>{{2, -3}, {17, -3}}) {
    auto rep = class_number_one_check(BiquadraticField(a, b));
    EXPECT_EQ(rep.status(), Status::Pass) << rep.to_json().dump(2);
    EXPECT_EQ(rep.computed["class_number"], 1);
    for (const auto& p : rep.computed["primes"]) EXPECT_FALSE(p["generators"].empty()) << p.dump();
  }
}

TEST(Biquadratic, GeneratorsAboveTwoAndThree) {
  BiquadraticField K(2, -3);
  BiqVec s2{0, 1, 0, 0}, s3{0, 0, 1, 0};
  EXPECT_EQ(K.norm(s2), 4);
  EXPECT_EQ(K.norm(s3), 9);
  auto g2 = find_biquadratic_element_of_norm(K, 4, 5);
  ASSERT_TRUE(g2);
  EXPECT_TRUE(same_principal_ideal(K, *g2, s2));
  auto g3 = find_biquadratic_element_of_norm(K, 9, 5);
  ASSERT_TRUE(g3);
  EXPECT_TRUE(same_principal_ideal(K, *g3, s3));
}

TEST(Biquadratic, HeightExhaustedIsInconclusive) {
  // Q(sqrt(-5), sqrt(2)): the primes above 2 and 3 are checked with a tiny height.
  BiquadraticField K(-5, 2);
  auto rep = class_number_one_check(K, 0);
  EXPECT_EQ(rep.status(), Status::Inconclusive);
  EXPECT_TRUE(rep.computed["class_number"].is_null());
}
