#include <gtest/gtest.h>

#include <set>

#include "honda/core/witt.hpp"

using namespace honda;

TEST(WittPolynomials, FirstSumPolynomialForThree) {
  auto s = witt_sum_polynomials(3, 1);
  WittVariables v(3, 1);
  // S_1 = Y1 + Z1 - (Y0^2 Z0 + Y0 Z0^2) since binom(3, i)/3 = 1.
  auto Y0 = IntPolynomial::variable(v.layout, v.y(0));
  auto Z0 = IntPolynomial::variable(v.layout, v.z(0));
  auto Y1 = IntPolynomial::variable(v.layout, v.y(1));
  auto Z1 = IntPolynomial::variable(v.layout, v.z(1));
  EXPECT_EQ(s[0], Y0 + Z0);
  EXPECT_EQ(s[1], Y1 + Z1 - Y0 * Y0 * Z0 - Y0 * Z0 * Z0);
}

TEST(WittPolynomials, GhostIdentityHolds) {
  for (auto [p, n] : {std::pair{3u, 3u}, std::pair{5u, 2u}, std::pair{7u, 2u}}) {
    auto s = witt_sum_polynomials(p, n);
    EXPECT_TRUE(verify_ghost_identity(p, s, WittOperation::Sum)) << p << " " << n;
    auto m = witt_product_polynomials(p, n);
    EXPECT_TRUE(verify_ghost_identity(p, m, WittOperation::Product)) << p << " " << n;
  }
}

TEST(WittPolynomials, SumIsSymmetric) {
  auto s = witt_sum_polynomials(3, 2);
  WittVariables v(3, 2);
  std::vector<unsigned> swap(6);
  for (unsigned j = 0; j <= 2; ++j) {
    swap[v.y(j)] = v.z(j);
    swap[v.z(j)] = v.y(j);
  }
  for (const auto& f : s) EXPECT_EQ(f.relabel(v.layout, swap), f);
}

TEST(CovectorSumPolynomial, CongruentToWittSum) {
  for (auto [p, n] : {std::pair{3u, 1u}, std::pair{3u, 2u}, std::pair{3u, 3u}, std::pair{5u, 2u}}) {
    EXPECT_TRUE(covector_sum_congruence(p, n)) << "p=" << p << " n=" << n;
  }
}

TEST(CovectorSumPolynomial, SecondCorrectionTermIsSubtracted) {
  // With the opposite sign on the r = 2 term the congruence fails for n = 2.
  const unsigned p = 3, n = 2;
  WittVariables v(p, n);
  auto good = covector_sum_polynomial(p, n);
  auto y1 = IntPolynomial::variable(v.layout, v.y_depth(1));
  auto z1 = IntPolynomial::variable(v.layout, v.z_depth(1));
  IntPolynomial t2(v.layout);
  for (unsigned i = 1; i < p; ++i)
    t2 = t2 + IntPolynomial::variable(v.layout, v.y_depth(2), i) *
                  IntPolynomial::variable(v.layout, v.z_depth(2), p - i) *
                  mpz_class(carry_coefficient(p, i));
  auto flipped = (good + (y1 + z1).pow(p - 1) * t2 * mpz_class(2)).reduce_mod(p);
  auto s = witt_sum_polynomials(p, n);
  EXPECT_FALSE(reduce_for_congruence(p, n, s[n]) == reduce_for_congruence(p, n, flipped));
}

TEST(CarryPolynomial, MatchesBinomialQuotient) {
  for (unsigned p : {3u, 5u, 7u, 11u}) {
    mpz_class binom = 1;
    for (unsigned i = 1; i < p; ++i) {
      binom = binom * (p - i + 1) / i;
      mpz_class q = -binom / p;
      mpz_class r;
      mpz_fdiv_r_ui(r.get_mpz_t(), q.get_mpz_t(), p);
      EXPECT_EQ(r.get_si(), carry_coefficient(p, i)) << p << " " << i;
    }
  }
}

TEST(WittRing, ModelOfIntegersModPowers) {
  auto k = FiniteField::make(3, 1);
  for (unsigned n : {1u, 2u}) {
    WittRing w(k, n);
    std::int64_t mod = n == 1 ? 9 : 27;
    std::vector<WittRing::Vector> all;
    std::uint32_t total = n == 1 ? 9 : 27;
    for (std::uint32_t c = 0; c < total; ++c) {
      WittRing::Vector v(n + 1);
      std::uint32_t t = c;
      for (unsigned i = 0; i <= n; ++i) {
        v[i] = t % 3;
        t /= 3;
      }
      all.push_back(v);
    }
    std::set<std::int64_t> images;
    for (const auto& a : all) {
      images.insert(w.to_integer(a));
      for (const auto& b : all) {
        EXPECT_EQ(w.to_integer(w.add(a, b)), (w.to_integer(a) + w.to_integer(b)) % mod);
        EXPECT_EQ(w.to_integer(w.mul(a, b)), (w.to_integer(a) * w.to_integer(b)) % mod);
      }
    }
    EXPECT_EQ(static_cast<std::int64_t>(images.size()), mod);
  }
}

TEST(WittRing, TeichmullerOfTwoIsEight) {
  WittRing w(FiniteField::make(3, 1), 1);
  EXPECT_EQ(w.to_integer(w.teichmuller(2)), 8);
}

TEST(WittRing, TeichmullerIsMultiplicative) {
  auto k = FiniteField::make(3, 2);
  WittRing w(k, 2);
  for (std::uint32_t a = 0; a < 9; ++a)
    for (std::uint32_t b = 0; b < 9; ++b)
      EXPECT_EQ(w.mul(w.teichmuller(a), w.teichmuller(b)), w.teichmuller(k->mul(a, b)));
}

TEST(WittRing, FrobeniusVerschiebungIsMultiplicationByP) {
  auto k = FiniteField::make(3, 2);
  WittRing w(k, 2);
  for (std::uint32_t a = 0; a < 9; ++a)
    for (std::uint32_t b = 0; b < 9; b += 4) {
      WittRing::Vector x = {a, b, k->mul(a, b)};
      auto three = w.add(w.add(x, x), x);
      EXPECT_EQ(w.verschiebung(w.frobenius(x)), three);
      EXPECT_EQ(w.valuation(three), a == 0 && b == 0 ? 3u : (a ? 1u : 2u));
    }
}
