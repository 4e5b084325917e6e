#include <gtest/gtest.h>

#include <set>

#include "honda/core/finite_field.hpp"

using honda::FiniteField;

namespace {

// Independent irreducibility oracle: a polynomial of degree 2 or 3 is
// irreducible iff it has no root in F_p.
bool has_root(const std::vector<int>& f, int p) {
  for (int x = 0; x < p; ++x) {
    long v = 0;
    for (int i = static_cast<int>(f.size()) - 1; i >= 0; --i) v = (v * x + f[i]) % p;
    if (v == 0) return true;
  }
  return false;
}

}  // namespace

TEST(FiniteField, ModulusIsFirstIrreducibleInOrder) {
  for (int p : {3, 5, 7, 11}) {
    for (int r : {2, 3}) {
      auto k = FiniteField::make(p, r);
      const auto& f = k->modulus();
      ASSERT_EQ(static_cast<int>(f.size()), r + 1);
      EXPECT_FALSE(has_root(f, p));
      // Every smaller code gives a reducible polynomial.
      std::uint32_t code = 0;
      for (int i = r - 1; i >= 0; --i) code = code * p + f[i];
      for (std::uint32_t c = 0; c < code; ++c) {
        std::vector<int> g(r + 1, 0);
        std::uint32_t t = c;
        for (int i = 0; i < r; ++i) {
          g[i] = t % p;
          t /= p;
        }
        g[r] = 1;
        EXPECT_TRUE(has_root(g, p)) << "p=" << p << " r=" << r << " code=" << c;
      }
    }
  }
}

TEST(FiniteField, GF9UsesXSquaredPlusOne) {
  auto k = FiniteField::make(3, 2);
  EXPECT_EQ(k->modulus(), (std::vector<int>{1, 0, 1}));
  auto x = k->generator();
  EXPECT_EQ(k->mul(x, x), k->from_int(-1));
}

TEST(FiniteField, AxiomsExhaustive) {
  for (auto [p, r] : {std::pair{3, 2}, std::pair{5, 2}, std::pair{3, 3}}) {
    auto k = FiniteField::make(p, r);
    std::uint32_t q = k->order();
    for (std::uint32_t a = 0; a < q; ++a) {
      EXPECT_EQ(k->add(a, k->neg(a)), 0u);
      if (a) {
        EXPECT_EQ(k->mul(a, k->inv(a)), 1u);
      }
      for (std::uint32_t b = 0; b < q; ++b) {
        EXPECT_EQ(k->add(a, b), k->add(b, a));
        EXPECT_EQ(k->mul(a, b), k->mul(b, a));
        std::uint32_t c = (a * 7 + b * 3 + 1) % q;
        EXPECT_EQ(k->mul(a, k->add(b, c)), k->add(k->mul(a, b), k->mul(a, c)));
        EXPECT_EQ(k->frobenius(k->mul(a, b)), k->mul(k->frobenius(a), k->frobenius(b)));
        EXPECT_EQ(k->frobenius(k->add(a, b)), k->add(k->frobenius(a), k->frobenius(b)));
      }
    }
  }
}

TEST(FiniteField, FrobeniusHasOrderDegree) {
  auto k = FiniteField::make(7, 3);
  for (std::uint32_t a = 0; a < k->order(); ++a) {
    EXPECT_EQ(k->frobenius(a, 3), a);
    EXPECT_EQ(k->frobenius(k->frobenius(a, -1)), a);
    EXPECT_EQ(k->frobenius(a), k->pow(a, 7));
  }
  std::set<std::uint32_t> fixed;
  for (std::uint32_t a = 0; a < k->order(); ++a)
    if (k->frobenius(a) == a) fixed.insert(a);
  EXPECT_EQ(fixed.size(), 7u);
}

TEST(FiniteField, PrimitiveElementGeneratesUnits) {
  auto k = FiniteField::make(5, 2);
  std::set<std::uint32_t> seen;
  std::uint32_t g = k->primitive_element(), x = 1;
  for (std::uint32_t i = 0; i + 1 < k->order(); ++i) {
    seen.insert(x);
    x = k->mul(x, g);
  }
  EXPECT_EQ(seen.size(), k->order() - 1);
}

TEST(FiniteField, SquareRootsAndLegendre) {
  auto k = FiniteField::make(13, 1);
  int squares = 0;
  for (std::uint32_t a = 1; a < 13; ++a) {
    auto s = k->sqrt(a);
    EXPECT_EQ(s.has_value(), k->legendre(a) == 1);
    if (s) {
      ++squares;
      EXPECT_EQ(k->mul(*s, *s), a);
    }
  }
  EXPECT_EQ(squares, 6);
}

TEST(FiniteField, RejectsCompositeCharacteristic) {
  EXPECT_THROW(FiniteField::make(9, 1), honda::InvalidArgument);
}
