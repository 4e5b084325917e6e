#include <gtest/gtest.h>

#include "honda/raynaud/dieudonne.hpp"
#include "honda/raynaud/honda_system.hpp"
#include "honda/raynaud/raynaud_scheme.hpp"

using namespace honda;

namespace {

std::vector<RaynaudScheme> all_supported() {
  std::vector<RaynaudScheme> out;
  for (int p : {3, 5, 7}) {
    out.emplace_back(p, std::vector<int>{1});
    out.emplace_back(p, std::vector<int>{p});
    for (int a : {1, p})
      for (int b : {1, p}) out.emplace_back(p, std::vector<int>{a, b});
  }
  return out;
}

void expect_pass(const VerificationReport& rep) {
  EXPECT_EQ(rep.status(), Status::Pass) << rep.to_json().dump(2);
}

}  // namespace

TEST(RaynaudScheme, ParseAndResidues) {
  auto G = RaynaudScheme::parse(3, "p,1");
  EXPECT_EQ(G.r(), 2);
  EXPECT_EQ(G.delta(0), 3);
  EXPECT_EQ(G.delta(1), 1);
  EXPECT_EQ(G.delta(2), 3);
  EXPECT_EQ(G.gamma_bar(0), G.field()->from_int(-1));
  EXPECT_EQ(G.gamma_bar(1), 0u);
  EXPECT_EQ(G.gamma_mod_p2(0), 2);
  EXPECT_EQ(G.gamma_mod_p2(1), 6);
  EXPECT_EQ(G.lambda_mod(0, 27), 26);
  EXPECT_EQ(G.lambda_mod(1, 27), 0);
  EXPECT_EQ(G.field()->order(), 9u);
  EXPECT_THROW(RaynaudScheme::parse(3, "p,5"), InvalidArgument);
  EXPECT_THROW(RaynaudScheme(9, {1}), InvalidArgument);
  EXPECT_THROW(RaynaudScheme(3, {}), InvalidArgument);
}

TEST(Comultiplication, MultiplicativeTypeR1) {
  RaynaudScheme G(3, {3});
  Comultiplication D(G);
  const auto& AA = *D.tensor_square();
  EXPECT_EQ(D.algebra()->dimension(), 3u);
  // gamma_0 = -1 and 1/(2!1!) = 2, so the correction is -2(X^2(x)X + X(x)X^2).
  auto x1 = AA.term({1, 0}, 1), x2 = AA.term({0, 1}, 1);
  auto expected = AA.add(AA.add(x1, x2), AA.add(AA.term({2, 1}, 1), AA.term({1, 2}, 1)));
  EXPECT_EQ(D.image(0), expected) << AA.to_string(D.image(0));
  EXPECT_TRUE(D.coassociative());
  EXPECT_TRUE(D.counital());
  EXPECT_TRUE(D.relations_respected());
}

TEST(Comultiplication, EtaleIsPrimitive) {
  RaynaudScheme G(3, {1});
  Comultiplication D(G);
  const auto& AA = *D.tensor_square();
  EXPECT_EQ(D.image(0), AA.add(AA.term({1, 0}, 1), AA.term({0, 1}, 1)));
  for (const auto& t : D.pairing_terms(0)) EXPECT_EQ(t.coef, 0u);
}

TEST(Comultiplication, PairingsHaveUniqueCarry) {
  RaynaudScheme G(5, {5, 5});
  Comultiplication D(G);
  for (int i = 0; i < 2; ++i) {
    ASSERT_FALSE(D.pairing_terms(i).empty());
    bool has_full = false;
    for (const auto& t : D.pairing_terms(i)) {
      EXPECT_GE(t.h, 1);
      EXPECT_LE(t.h, 2);
      std::vector<unsigned> full(2, 4), unit(2, 0);
      unit[i] = 1;
      if (t.left == full && t.right == unit) has_full = true;
    }
    EXPECT_TRUE(has_full);
  }
}

TEST(Comultiplication, HopfLawsAllSupported) {
  for (const auto& G : all_supported()) {
    Comultiplication D(G);
    EXPECT_TRUE(D.relations_respected()) << G.p() << " " << G.delta_string();
    EXPECT_TRUE(D.coassociative()) << G.p() << " " << G.delta_string();
    EXPECT_TRUE(D.counital()) << G.p() << " " << G.delta_string();
  }
}

TEST(Comultiplication, WrongCoefficientBreaksCoassociativity) {
  // Changing one correction coefficient of the p = 5 multiplicative-type
  // Delta must break coassociativity. Rescaling all of them is harmless
  // (it amounts to rescaling X), so only X^4(x)X is altered.
  RaynaudScheme G(5, {5});
  Comultiplication D(G);
  const auto& AA = *D.tensor_square();
  auto bad = AA.add(D.image(0), AA.term({4, 1}, 1));
  // (Delta (x) 1)Delta vs (1 (x) Delta)Delta with the bad image, computed directly.
  const auto& AAA = *D.tensor_cube();
  auto apply_bad = [&](unsigned e) { return AA.pow(bad, e); };
  NilpotentAlgebra::Element lhs, rhs;
  for (const auto& [m, c] : bad) {
    unsigned m1 = m % 5, m2 = m / 5;
    lhs = AAA.add(lhs, AAA.scale(c, AAA.mul(NilpotentAlgebra::embed(apply_bad(m1), 1), {{m2 * 25, 1}})));
    rhs = AAA.add(rhs, AAA.scale(c, AAA.mul({{m1, 1}}, NilpotentAlgebra::embed(apply_bad(m2), 5))));
  }
  EXPECT_NE(lhs, rhs);
}

TEST(DieudonneCovectors, Shapes) {
  {
    RaynaudScheme G(3, {3, 1});
    auto es = dieudonne_covectors(G, coordinate_ring_mod_p(G));
    const auto& A = *es[0].algebra();
    // e1 = (..., 0, X1): the step to depth 1 uses gamma_2 = 0.
    EXPECT_EQ(es[0], Covector::singleton(es[0].algebra(), A.generator(0)));
    // e2 = (..., 0, -X1, X2).
    EXPECT_EQ(es[1].entry(0), A.generator(1));
    EXPECT_EQ(es[1].entry(1), A.generator(0, G.field()->from_int(-1)));
    EXPECT_TRUE(es[1].entry(2).empty());
    EXPECT_FALSE(es[1].is_periodic());
  }
  {
    RaynaudScheme G(3, {1});
    auto es = dieudonne_covectors(G, coordinate_ring_mod_p(G));
    EXPECT_EQ(es[0].determining_depth(), 1u);
  }
  {
    RaynaudScheme G(3, {3});
    auto es = dieudonne_covectors(G, coordinate_ring_mod_p(G));
    ASSERT_TRUE(es[0].is_periodic());
    const auto& A = *es[0].algebra();
    for (std::size_t n = 0; n < 6; ++n)
      EXPECT_EQ(es[0].entry(n), A.generator(0, G.field()->from_int(n % 2 ? -1 : 1))) << n;
  }
}

TEST(DieudonneCovectors, FrobeniusOfTopEntry) {
  for (const auto& G : all_supported()) {
    auto A = coordinate_ring_mod_p(G);
    auto es = dieudonne_covectors(G, A);
    for (int n = 0; n < G.r(); ++n) {
      auto expect = Covector::singleton(A, A->pow(A->generator(n), G.p()));
      EXPECT_EQ(frobenius_cw(es[n]), expect) << G.p() << " " << G.delta_string() << " e" << n + 1;
    }
  }
}

TEST(HomCondition, AllSupported) {
  for (const auto& G : all_supported()) expect_pass(verify_hom_condition(G));
}

TEST(HomCondition, FailsForWrongCovector) {
  // A covector with the depth-1 entry sign flipped is not a homomorphism.
  RaynaudScheme G(3, {3, 1});
  Comultiplication D(G);
  const auto& A = *D.algebra();
  Covector bad(D.algebra(), {A.generator(1), A.generator(0)});
  Covector lhs = map_entries(bad, D.tensor_square(), [&](const Covector::Element& x) { return D.apply(x); });
  Covector l = map_entries(bad, D.tensor_square(), [&](const Covector::Element& x) { return D.left(x); });
  Covector r = map_entries(bad, D.tensor_square(), [&](const Covector::Element& x) { return D.right(x); });
  EXPECT_FALSE(lhs.equal_on_window(covector_add(l, r), 6));
}

TEST(Dieudonne, Omega2System) {
  RaynaudScheme G(3, {3, 1});
  auto hs = honda_system(G);
  const auto& k = *hs.module.k;
  auto e1 = FieldVector{1, 0}, e2 = FieldVector{0, 1};
  EXPECT_EQ(hs.module.apply_F(e1), (FieldVector{0, 0}));
  EXPECT_EQ(hs.module.apply_F(e2), e1);
  EXPECT_EQ(hs.module.apply_V(e1), (FieldVector{0, 0}));
  EXPECT_EQ(hs.module.apply_V(e2), (FieldVector{k.from_int(-1), 0}));
  ASSERT_EQ(hs.L.size(), 1u);
  EXPECT_TRUE(linalg::same_span(k, hs.L, {e2}));
  expect_pass(honda_report(hs));
}

TEST(Dieudonne, EtaleAndMultiplicative) {
  {
    auto hs = honda_system(RaynaudScheme(3, {1}));
    EXPECT_EQ(hs.module.F, (FieldMatrix{{1}}));
    EXPECT_EQ(hs.module.V, (FieldMatrix{{0}}));
    EXPECT_TRUE(hs.L.empty());
    // w(e1) = X1.
    FieldVector x1(3, 0);
    x1[1] = 1;
    EXPECT_EQ(hs.w_images[0], x1);
  }
  {
    auto hs = honda_system(RaynaudScheme(3, {3}));
    EXPECT_EQ(hs.module.F, (FieldMatrix{{0}}));
    EXPECT_EQ(hs.module.V, (FieldMatrix{{2}}));
    EXPECT_EQ(hs.L.size(), 1u);
    EXPECT_EQ(hs.w_images[0], FieldVector(3, 0));
  }
}

TEST(Dieudonne, AllSupportedReportsPass) {
  for (const auto& G : all_supported()) {
    auto hs = honda_system(G);
    auto rep = honda_report(hs);
    expect_pass(rep);
    EXPECT_EQ(hs.L.size() + hs.module.dim_FM(), static_cast<std::size_t>(G.r()));
  }
}

TEST(Dieudonne, SemilinearityOverExtension) {
  RaynaudScheme G(3, {3, 1});
  auto M = dieudonne_module(G);
  const auto& k = *M.k;
  for (FiniteField::Elem a = 0; a < k.order(); ++a) {
    FieldVector x{a, 0}, y{0, a};
    EXPECT_EQ(M.apply_F(y), (FieldVector{k.frobenius(a), 0}));
    EXPECT_EQ(M.apply_V(y), (FieldVector{k.neg(k.frobenius(a, -1)), 0}));
    EXPECT_TRUE(linalg::is_zero(M.apply_F(x)));
  }
}

TEST(WMap, TermsBeyondDepthOneVanish) {
  for (const auto& G : all_supported()) {
    auto M = dieudonne_module(G);
    for (const auto& e : M.covectors) {
      auto res = w_map(G, e, 4);
      EXPECT_EQ(res.checked_depths, (std::vector<int>{2, 3}));
    }
  }
}

TEST(WMap, DetectsNonIntegralTerm) {
  // (..., X1, 0) with delta = 1: the depth-1 term X1^3/3 is not integral.
  RaynaudScheme G(3, {1});
  auto A = coordinate_ring_mod_p(G);
  Covector c(A, {A->zero(), A->generator(0)});
  EXPECT_THROW(w_map(G, c), PrecisionError);
}

TEST(HondaJson, Fields) {
  auto hs = honda_system(RaynaudScheme(3, {3, 1}));
  auto j = honda_json(hs, honda_report(hs));
  for (const char* key : {"p", "r", "delta", "F-matrix", "V-matrix", "L-basis", "checks"}) EXPECT_TRUE(j.contains(key)) << key;
  EXPECT_EQ(j["delta"], json::array({3, 1}));
  EXPECT_EQ(j["status"], "pass");
}
