#include <gtest/gtest.h>

#include "honda/ext/ext_group.hpp"
#include "honda/ext/freeness.hpp"
#include "honda/ext/ramified_module.hpp"
#include "honda/ext/tensor_algebra.hpp"

using namespace honda;

namespace {

void expect_pass(const VerificationReport& rep) {
  EXPECT_EQ(rep.status(), Status::Pass) << rep.to_json().dump(2);
}

}  // namespace

TEST(TensorAlgebra, RingAxiomsAndSigma) {
  for (auto [kq, Fq] : std::vector<std::pair<int, int>>{{1, 1}, {2, 1}, {1, 2}, {2, 2}, {3, 1}}) {
    TensorAlgebra R(FiniteField::make(3, kq), FiniteField::make(3, Fq));
    std::uint32_t q = R.order();
    EXPECT_EQ(q, static_cast<std::uint32_t>(arith::ipow(3, kq * Fq)));
    for (std::uint32_t a = 0; a < q; ++a) {
      EXPECT_EQ(R.sigma(R.sigma(a, 1), -1), a);
      EXPECT_EQ(R.sigma(a, kq), a);
      for (std::uint32_t b = 0; b < q; b += 3) {
        EXPECT_EQ(R.mul(a, b), R.mul(b, a));
        EXPECT_EQ(R.sigma(R.mul(a, b)), R.mul(R.sigma(a), R.sigma(b)));
        EXPECT_EQ(R.sigma(R.add(a, b)), R.add(R.sigma(a), R.sigma(b)));
        for (std::uint32_t c = 1; c < q; c += 5)
          EXPECT_EQ(R.mul(a, R.add(b, c)), R.add(R.mul(a, b), R.mul(a, c)));
      }
    }
  }
}

TEST(TensorAlgebra, SigmaFixesExactlyF) {
  // Fixed points of sigma on k (x) F are F_l (x) F.
  TensorAlgebra R(FiniteField::make(3, 2), FiniteField::make(3, 2));
  std::uint32_t fixed = 0;
  for (std::uint32_t a = 0; a < R.order(); ++a) fixed += R.sigma(a) == a;
  EXPECT_EQ(fixed, 9u);
}

TEST(TensorAlgebra, F9TensorF9IsNotAField) {
  TensorAlgebra R(FiniteField::make(3, 2), FiniteField::make(3, 2));
  bool zero_divisor = false;
  for (std::uint32_t a = 1; a < R.order() && !zero_divisor; ++a)
    for (std::uint32_t b = 1; b < R.order(); ++b)
      if (R.mul(a, b) == 0) zero_divisor = true;
  EXPECT_TRUE(zero_divisor);
}

TEST(Ext1, FormulaValues) {
  EXPECT_EQ(ext1_dimension_formula(*FiniteField::make(3, 1), *FiniteField::make(3, 1)), 2);
  EXPECT_EQ(ext1_dimension_formula(*FiniteField::make(3, 2), *FiniteField::make(3, 1)), 4);
  EXPECT_EQ(ext1_dimension_formula(*FiniteField::make(3, 1), *FiniteField::make(3, 2)), 2);
  EXPECT_EQ(ext1_dimension_formula(*FiniteField::make(5, 3), *FiniteField::make(5, 1)), 4);
  EXPECT_THROW(ext1_dimension_formula(*FiniteField::make(3, 1), *FiniteField::make(5, 1)), InvalidArgument);
}

TEST(Ext1, BruteForceExamples) {
  EXPECT_EQ(ext1_dimension_bruteforce(FiniteField::make(3, 1), FiniteField::make(3, 1)), 2);
  EXPECT_EQ(ext1_dimension_bruteforce(FiniteField::make(3, 2), FiniteField::make(3, 1)), 4);
  EXPECT_EQ(ext1_dimension_bruteforce(FiniteField::make(3, 1), FiniteField::make(3, 2)), 2);
}

TEST(Ext1, LiteralEnumerationAgrees) {
  for (int p : {3, 5}) {
    TensorAlgebra R(FiniteField::make(p, 1), FiniteField::make(p, 1));
    auto res = ext1_bruteforce(R);
    EXPECT_EQ(count_valid_literal(R), res.valid) << p;
    EXPECT_TRUE(res.orbit_enumerated);
  }
}

TEST(Ext1, ZeroDatumIsSplit) {
  TensorAlgebra R(FiniteField::make(3, 2), FiniteField::make(3, 1));
  EXPECT_TRUE(is_valid_extension(R, ExtensionDatum{}));
  // A datum with f3 != 0 violates FV = 0.
  ExtensionDatum x;
  x.f[2] = 1;
  EXPECT_FALSE(is_valid_extension(R, x));
  // f1 = sigma(v4), f4 = sigma(v1) is the solution set.
  for (std::uint32_t a = 0; a < R.order(); ++a) {
    ExtensionDatum y;
    y.v[3] = a;
    y.f[0] = R.sigma(a);
    y.v[0] = R.add(a, 1);
    y.f[3] = R.sigma(y.v[0]);
    EXPECT_TRUE(is_valid_extension(R, y));
    y.f[0] = R.add(y.f[0], 1);
    EXPECT_FALSE(is_valid_extension(R, y));
  }
}

TEST(Ext1, BruteForceMatchesFormulaUpTo81) {
  for (auto [p, dk, dF] : std::vector<std::tuple<int, int, int>>{
           {3, 1, 1}, {5, 1, 1}, {7, 1, 1}, {3, 2, 1}, {3, 1, 2}, {3, 3, 1}, {3, 1, 3}, {5, 2, 1}, {5, 1, 2},
           {7, 2, 1}, {3, 4, 1}, {3, 2, 2}, {3, 1, 4}}) {
    auto k = FiniteField::make(p, dk), F = FiniteField::make(p, dF);
    expect_pass(verify_ext1(k, F));
  }
}

TEST(Ext1, BoundExceeded) {
  TensorAlgebra R(FiniteField::make(11, 2), FiniteField::make(11, 1));
  EXPECT_THROW(ext1_bruteforce(R), EnumerationBoundExceeded);
}

TEST(Freeness, Examples) {
  auto a = freeness_witness(3, {1, 0, 1}, 1, 1);  // F_9 = F_3[t]/(t^2+1)
  EXPECT_TRUE(a.all_free);
  EXPECT_GT(a.structures, 0u);
  auto b = freeness_witness(3, {0, 0, 1}, 1, 1);  // F_3[t]/(t^2)
  EXPECT_TRUE(b.all_free);
  EXPECT_GT(b.structures, 1u);
  auto c = freeness_witness(3, {0, 1}, 2, 1);  // F_3
  EXPECT_TRUE(c.all_free);
  EXPECT_EQ(c.structures, 1u);
  auto d = freeness_witness(3, {0, 0, 0, 1}, 1, 1);  // F_3[t]/(t^3)
  EXPECT_TRUE(d.all_free);
}

TEST(Freeness, DetectsNonModuleStructures) {
  // For R = F_3[t]/(t^2), X must satisfy T^2 = 0: X T0 + T0 X = 0.
  auto b = freeness_witness(3, {0, 0, 1}, 1, 1);
  EXPECT_LT(b.structures, 81u);
}

TEST(MAprime, DimensionsAndBasis) {
  for (auto [p, e] : std::vector<std::pair<int, int>>{{3, 2}, {5, 2}, {5, 4}, {7, 2}}) {
    auto M = omega2_module(FiniteField::make(p, 1));
    auto mod = build_M_Aprime(M, {FieldVector{0, 1}}, p, e);
    EXPECT_EQ(mod.dimension(), static_cast<std::size_t>(2 * e));
    expect_pass(verify_basis_claim(mod));
  }
}

TEST(MAprime, OverF9) {
  auto M = omega2_module(FiniteField::make(3, 2));
  auto mod = build_M_Aprime(M, {FieldVector{0, 1}}, 3, 2);
  EXPECT_EQ(mod.dimension(), 4u);
  auto rep = verify_basis_claim(mod);
  expect_pass(rep);
  EXPECT_EQ(rep.computed["kernel_bound"], 2);
  EXPECT_EQ(rep.computed["theorem_bound"], 6);
  EXPECT_EQ(rep.computed["corollary_bound"], 5);
}

TEST(MAprime, FromRaynaudHondaSystem) {
  // The appendix Honda system for (3, 2, (p,1)), over k = F_9.
  auto hs = honda_system(RaynaudScheme(3, {3, 1}));
  auto mod = build_M_Aprime(hs, 2);
  EXPECT_EQ(mod.dimension(), 4u);
  expect_pass(verify_basis_claim(mod));
}

TEST(MAprime, DegreeOutOfRange) {
  auto M = omega2_module(FiniteField::make(3, 1));
  EXPECT_THROW(build_M_Aprime(M, {}, 3, 3), DegreeOutOfRange);
  EXPECT_THROW(build_M_Aprime(M, {}, 3, 0), InvalidArgument);
}

TEST(MAprime, BoundsTable) {
  auto b = selmer_bounds(4, 1);
  EXPECT_EQ(b.local_degree, 4);
  EXPECT_EQ(b.kernel_bound, 3);
  EXPECT_EQ(b.theorem_bound, 5);
  EXPECT_EQ(b.corollary_bound, 4);
  auto c = selmer_bounds(2, 2);
  EXPECT_EQ(c.theorem_bound, 6);
  EXPECT_EQ(c.corollary_bound, 5);
}

TEST(MAprime, WrongDimensionWouldBeDetected) {
  // Dropping the phi_1 relations leaves a bigger quotient: the dimension
  // check is sensitive to the relation set.
  auto M = omega2_module(FiniteField::make(5, 1));
  auto mod = build_M_Aprime(M, {FieldVector{0, 1}}, 5, 2);
  mod.relations.resize(mod.relations.size() - 2 * 2);
  mod.relation_rank = linalg::rank_of_vectors(*mod.k, mod.relations);
  EXPECT_NE(mod.dimension(), 4u);
}
