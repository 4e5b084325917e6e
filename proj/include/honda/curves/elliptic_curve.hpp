#pragma once

#include <array>
#include <climits>
#include <cmath>
#include <optional>
#include <regex>
#include <string>
#include <vector>

#include "honda/curves/quadratic_field.hpp"
#include "honda/errors.hpp"

namespace honda {

/// Long Weierstrass model y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6 over Q(sqrt d).
class Curve {
 public:
  Curve(std::int64_t d, std::array<QuadElem, 5> a) : d_(d), a_(std::move(a)) {
    for (auto& c : a_) c = QuadElem(d_, c.x(), c.y());
    const QuadElem &a1 = a_[0], &a2 = a_[1], &a3 = a_[2], &a4 = a_[3], &a6 = a_[4];
    QuadElem two = num(2), four = num(4);
    b2_ = a1 * a1 + four * a2;
    b4_ = two * a4 + a1 * a3;
    b6_ = a3 * a3 + four * a6;
    b8_ = a1 * a1 * a6 + four * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4;
    c4_ = b2_ * b2_ - num(24) * b4_;
    c6_ = -b2_.pow(3) + num(36) * b2_ * b4_ - num(216) * b6_;
    disc_ = -b2_ * b2_ * b8_ - num(8) * b4_.pow(3) - num(27) * b6_ * b6_ + num(9) * b2_ * b4_ * b6_;
    if (disc_.is_zero()) throw SingularCurve("discriminant vanishes");
  }

  /// Integer coefficients over Q.
  static Curve over_q(std::array<long, 5> a) {
    std::array<QuadElem, 5> c;
    for (int i = 0; i < 5; ++i) c[i] = QuadElem(1, a[i]);
    return Curve(1, c);
  }

  /// "a1,a2,a3,a4,a6 over Q(sqrt(d))", coefficients written x+y*s with s = sqrt(d).
  /// The suffix may be omitted or given as "over Q".
  static Curve parse(const std::string& text) {
    static const std::regex re(R"(^\s*([\s\S]*?)\s*(?:over\s+Q(?:\(\s*sqrt\(\s*(-?[0-9]+)\s*\)\s*\))?)?\s*$)");
    std::smatch m;
    if (!std::regex_match(text, m, re)) throw InvalidArgument("cannot parse curve '" + text + "'");
    std::int64_t d = m[2].matched ? std::stoll(m[2].str()) : 1;
    std::vector<std::string> parts;
    std::string body = m[1].str(), cur;
    for (char c : body) {
      if (c == ',') {
        parts.push_back(cur);
        cur.clear();
      } else {
        cur += c;
      }
    }
    parts.push_back(cur);
    if (parts.size() != 5) throw InvalidArgument("expected five coefficients a1,a2,a3,a4,a6");
    std::array<QuadElem, 5> a;
    for (int i = 0; i < 5; ++i) a[i] = QuadElem::parse(d, parts[i]);
    return Curve(d, a);
  }

  std::int64_t d() const { return d_; }
  const std::array<QuadElem, 5>& a() const { return a_; }
  const QuadElem& a1() const { return a_[0]; }
  const QuadElem& a2() const { return a_[1]; }
  const QuadElem& a3() const { return a_[2]; }
  const QuadElem& a4() const { return a_[3]; }
  const QuadElem& a6() const { return a_[4]; }
  const QuadElem& b2() const { return b2_; }
  const QuadElem& b4() const { return b4_; }
  const QuadElem& b6() const { return b6_; }
  const QuadElem& b8() const { return b8_; }
  const QuadElem& c4() const { return c4_; }
  const QuadElem& c6() const { return c6_; }
  const QuadElem& discriminant() const { return disc_; }
  QuadElem j_invariant() const { return c4_.pow(3) / disc_; }

  bool identities_hold() const {
    return num(1728) * disc_ == c4_.pow(3) - c6_ * c6_ && num(4) * b8_ == b2_ * b6_ - b4_ * b4_;
  }

  QuadElem num(long n) const { return QuadElem(d_, n); }

  std::string to_string() const {
    std::string s = "[";
    for (int i = 0; i < 5; ++i) s += (i ? "," : "") + a_[i].to_string();
    s += "]";
    if (d_ != 1) s += " over Q(sqrt(" + std::to_string(d_) + "))";
    return s;
  }

 private:
  std::int64_t d_;
  std::array<QuadElem, 5> a_;
  QuadElem b2_, b4_, b6_, b8_, c4_, c6_, disc_;
};

enum class ReductionType { Good, Multiplicative, Additive };

inline std::string to_string(ReductionType t) {
  switch (t) {
    case ReductionType::Good: return "good";
    case ReductionType::Multiplicative: return "multiplicative";
    default: return "additive";
  }
}

/// Reduction type at a prime of residue characteristic >= 3. The model must be
/// integral at the prime. For residue characteristic >= 5 the valuations of
/// (c4, c6, Delta) are lowered by (4, 6, 12) while possible, which is exactly
/// minimisation there. In residue characteristic 3 the criteria are applied
/// only where the given model is certainly minimal.
inline ReductionType reduction_type(const Curve& E, const PrimeSpec& P) {
  for (const auto& c : E.a())
    if (!P.is_integral(c)) throw NonIntegralModel("coefficient " + c.to_string() + " is not integral at " + P.to_string());
  int vd = P.valuation(E.discriminant());
  int v4 = P.valuation(E.c4());
  int v6 = P.valuation(E.c6());
  if (P.p == 3) {
    if (vd == 0) return ReductionType::Good;
    if (v4 == 0) return ReductionType::Multiplicative;
    if (vd < 12) return ReductionType::Additive;
    throw InvalidArgument("minimality at residue characteristic 3 is not decided for v(Delta) >= 12");
  }
  while (vd >= 12 && v4 >= 4 && v6 >= 6) {
    vd -= 12;
    if (v4 != INT_MAX) v4 -= 4;
    if (v6 != INT_MAX) v6 -= 6;
  }
  if (vd == 0) return ReductionType::Good;
  if (v4 == 0) return ReductionType::Multiplicative;
  return ReductionType::Additive;
}

/// Reduced coefficients in the residue field.
struct ReducedCurve {
  FieldPtr k;
  std::array<FiniteField::Elem, 5> a{};
};

inline ReducedCurve reduce_curve(const Curve& E, const PrimeSpec& P) {
  ReducedCurve R;
  R.k = P.residue_field();
  for (int i = 0; i < 5; ++i) R.a[i] = P.reduce(E.a()[i], *R.k);
  if (P.reduce(E.discriminant(), *R.k) == 0) throw SingularReduction("reduction at " + P.to_string() + " is singular");
  return R;
}

/// Number of points (including infinity) of a nonsingular reduced curve over
/// its residue field, by completing the square in y.
inline std::int64_t count_points(const ReducedCurve& R) {
  const FiniteField& k = *R.k;
  if (k.order() > 1000000u) throw InvalidArgument("residue field larger than 10^6");
  auto [a1, a2, a3, a4, a6] = R.a;
  std::int64_t n = 1;
  FiniteField::Elem four = k.from_int(4);
  for (FiniteField::Elem x = 0; x < k.order(); ++x) {
    FiniteField::Elem lin = k.add(k.mul(a1, x), a3);
    FiniteField::Elem f = k.add(k.mul(k.add(k.mul(k.add(x, a2), x), a4), x), a6);
    FiniteField::Elem disc = k.add(k.mul(lin, lin), k.mul(four, f));
    n += 1 + k.legendre(disc);
  }
  return n;
}

inline std::int64_t count_points(const Curve& E, const PrimeSpec& P) { return count_points(reduce_curve(E, P)); }

inline std::int64_t frobenius_trace(const Curve& E, const PrimeSpec& P) {
  return P.residue_order() + 1 - count_points(E, P);
}

inline bool within_hasse_bound(std::int64_t count, std::int64_t q) {
  std::int64_t t = q + 1 - count;
  return t * t <= 4 * q;
}

/// Supersingular reduction: trace of Frobenius divisible by p.
inline bool is_supersingular(const Curve& E, const PrimeSpec& P) {
  if (reduction_type(E, P) != ReductionType::Good) throw BadReduction("no good reduction at " + P.to_string());
  return arith::mod(frobenius_trace(E, P), P.p) == 0;
}

/// Affine point or the point at infinity, with coordinates in Q(sqrt d).
struct CurvePoint {
  bool infinity = true;
  QuadElem x, y;
  static CurvePoint at(QuadElem x, QuadElem y) { return {false, std::move(x), std::move(y)}; }
  bool operator==(const CurvePoint& o) const { return infinity == o.infinity && (infinity || (x == o.x && y == o.y)); }
  std::string to_string() const { return infinity ? "O" : "(" + x.to_string() + ", " + y.to_string() + ")"; }
};

inline bool on_curve(const Curve& E, const CurvePoint& P) {
  if (P.infinity) return true;
  const QuadElem &x = P.x, &y = P.y;
  return y * y + E.a1() * x * y + E.a3() * y == x * x * x + E.a2() * x * x + E.a4() * x + E.a6();
}

inline CurvePoint negate(const Curve& E, const CurvePoint& P) {
  if (P.infinity) return P;
  return CurvePoint::at(P.x, -P.y - E.a1() * P.x - E.a3());
}

inline CurvePoint add(const Curve& E, const CurvePoint& P, const CurvePoint& Q) {
  if (P.infinity) return Q;
  if (Q.infinity) return P;
  QuadElem lambda(E.d()), nu(E.d());
  if (P.x == Q.x) {
    QuadElem s = P.y + Q.y + E.a1() * Q.x + E.a3();
    if (s.is_zero()) return CurvePoint{};
    lambda = (E.num(3) * P.x * P.x + E.num(2) * E.a2() * P.x + E.a4() - E.a1() * P.y) / s;
  } else {
    lambda = (Q.y - P.y) / (Q.x - P.x);
  }
  nu = P.y - lambda * P.x;
  QuadElem x3 = lambda * lambda + E.a1() * lambda - E.a2() - P.x - Q.x;
  QuadElem y3 = -(lambda + E.a1()) * x3 - nu - E.a3();
  return CurvePoint::at(x3, y3);
}

inline CurvePoint multiply(const Curve& E, long n, CurvePoint P) {
  if (n < 0) return multiply(E, -n, negate(E, P));
  CurvePoint R;
  while (n) {
    if (n & 1) R = add(E, R, P);
    n >>= 1;
    if (n) P = add(E, P, P);
  }
  return R;
}

/// Order of P if it divides bound, else nullopt.
inline std::optional<long> torsion_order(const Curve& E, const CurvePoint& P, long bound) {
  CurvePoint Q = P;
  for (long n = 1; n <= bound; ++n) {
    if (Q.infinity) return n;
    Q = add(E, Q, P);
  }
  return std::nullopt;
}

}  // namespace honda
