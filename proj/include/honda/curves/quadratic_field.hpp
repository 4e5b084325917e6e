#pragma once

#include <gmpxx.h>

#include <climits>
#include <cstdint>
#include <optional>
#include <regex>
#include <string>

#include "honda/core/arith.hpp"
#include "honda/core/finite_field.hpp"
#include "honda/errors.hpp"

namespace honda {

inline bool is_squarefree(std::int64_t d) {
  if (d == 0) return false;
  std::int64_t a = d < 0 ? -d : d;
  for (std::int64_t q = 2; q * q <= a; ++q)
    if (a % (q * q) == 0) return false;
  return true;
}

/// x + y sqrt(d) with rational x, y. d = 1 stands for Q itself, where y is
/// always folded into x.
class QuadElem {
 public:
  QuadElem() : d_(1) {}
  explicit QuadElem(std::int64_t d, mpq_class x = 0, mpq_class y = 0) : d_(d), x_(std::move(x)), y_(std::move(y)) {
    if (!is_squarefree(d_)) throw InvalidArgument("d must be squarefree");
    normalize();
  }
  static QuadElem rational(std::int64_t d, const mpq_class& x) { return QuadElem(d, x, 0); }

  std::int64_t d() const { return d_; }
  const mpq_class& x() const { return x_; }
  const mpq_class& y() const { return y_; }
  bool is_zero() const { return x_ == 0 && y_ == 0; }
  bool is_rational() const { return y_ == 0; }

  QuadElem conj() const { return QuadElem(d_, x_, -y_); }
  mpq_class norm() const { return x_ * x_ - mpq_class(d_) * y_ * y_; }
  mpq_class trace() const { return 2 * x_; }

  QuadElem operator+(const QuadElem& o) const { return QuadElem(common(o), x_ + o.x_, y_ + o.y_); }
  QuadElem operator-(const QuadElem& o) const { return QuadElem(common(o), x_ - o.x_, y_ - o.y_); }
  QuadElem operator-() const { return QuadElem(d_, -x_, -y_); }
  QuadElem operator*(const QuadElem& o) const {
    std::int64_t d = common(o);
    return QuadElem(d, x_ * o.x_ + mpq_class(d) * y_ * o.y_, x_ * o.y_ + y_ * o.x_);
  }
  QuadElem operator/(const QuadElem& o) const {
    if (o.is_zero()) throw InvalidArgument("division by zero in quadratic field");
    mpq_class n = o.norm();
    QuadElem c = *this * o.conj();
    return QuadElem(c.d_, c.x_ / n, c.y_ / n);
  }
  QuadElem operator*(const mpq_class& c) const { return QuadElem(d_, x_ * c, y_ * c); }
  QuadElem& operator+=(const QuadElem& o) { return *this = *this + o; }
  QuadElem& operator-=(const QuadElem& o) { return *this = *this - o; }
  QuadElem& operator*=(const QuadElem& o) { return *this = *this * o; }
  bool operator==(const QuadElem& o) const { return x_ == o.x_ && y_ == o.y_ && (d_ == o.d_ || y_ == 0); }
  bool operator!=(const QuadElem& o) const { return !(*this == o); }

  QuadElem pow(unsigned e) const {
    QuadElem r(d_, 1), b = *this;
    while (e) {
      if (e & 1) r = r * b;
      e >>= 1;
      if (e) b = b * b;
    }
    return r;
  }

  /// Integral over Z: trace and norm are integers.
  bool is_integral() const { return trace().get_den() == 1 && norm().get_den() == 1; }

  std::string to_string() const {
    if (y_ == 0) return x_.get_str();
    std::string s = x_ == 0 ? "" : x_.get_str();
    mpq_class y = y_;
    if (!s.empty()) s += y >= 0 ? "+" : "-";
    else if (y < 0) s += "-";
    if (y < 0) y = -y;
    if (y != 1) s += y.get_str() + "*";
    s += "sqrt(" + std::to_string(d_) + ")";
    return s;
  }

  /// Parses "x", "x+y*s", "y*s", "s" with rational x, y ("-3/4").
  static QuadElem parse(std::int64_t d, std::string text) {
    std::string t;
    for (char c : text)
      if (!std::isspace(static_cast<unsigned char>(c))) t += c;
    if (t.empty()) throw InvalidArgument("empty coefficient");
    mpq_class x = 0, y = 0;
    std::size_t i = 0;
    while (i < t.size()) {
      std::size_t j = i + 1;
      while (j < t.size() && t[j] != '+' && t[j] != '-') ++j;
      std::string term = t.substr(i, j - i);
      i = j;
      bool neg = false;
      if (term[0] == '+' || term[0] == '-') {
        neg = term[0] == '-';
        term = term.substr(1);
      }
      bool has_s = false;
      if (!term.empty() && term.back() == 's') {
        has_s = true;
        term.pop_back();
        if (!term.empty() && term.back() == '*') term.pop_back();
        if (term.empty()) term = "1";
      }
      static const std::regex rat("^[0-9]+(/[0-9]+)?$");
      if (!std::regex_match(term, rat)) throw InvalidArgument("bad coefficient '" + text + "'");
      mpq_class v(term);
      v.canonicalize();
      if (neg) v = -v;
      (has_s ? y : x) += v;
    }
    return QuadElem(d, x, y);
  }

 private:
  std::int64_t common(const QuadElem& o) const {
    if (d_ == o.d_) return d_;
    if (d_ == 1 && y_ == 0) return o.d_;
    if (o.d_ == 1 && o.y_ == 0) return d_;
    if (y_ == 0 && o.y_ == 0) return d_;
    throw InvalidArgument("elements of different quadratic fields");
  }
  void normalize() {
    x_.canonicalize();
    y_.canonicalize();
    if (d_ == 1) {
      x_ += y_;
      y_ = 0;
    }
  }

  std::int64_t d_;
  mpq_class x_, y_;
};

inline std::int64_t mpz_mod(const mpz_class& a, std::int64_t m) {
  mpz_class r = a % m;
  if (r < 0) r += m;
  return r.get_si();
}

inline int mpz_valuation(mpz_class a, std::int64_t p) {
  if (a == 0) return INT_MAX;
  int v = 0;
  while (a % p == 0) {
    a /= p;
    ++v;
  }
  return v;
}

inline int mpq_valuation(const mpq_class& a, std::int64_t p) {
  if (a == 0) return INT_MAX;
  return mpz_valuation(a.get_num(), p) - mpz_valuation(a.get_den(), p);
}

enum class PrimeKind { Rational, Split, Inert, Ramified };

inline std::string to_string(PrimeKind k) {
  switch (k) {
    case PrimeKind::Rational: return "rational";
    case PrimeKind::Split: return "split";
    case PrimeKind::Inert: return "inert";
    default: return "ramified";
  }
}

/// A prime ideal of Q(sqrt d) over an odd prime p, declared explicitly. A
/// split prime is (p, sqrt(d) - root). Valuations are normalised so that a
/// uniformizer has valuation 1; e is the ramification index.
struct PrimeSpec {
  std::int64_t d = 1;
  std::int64_t p = 0;
  PrimeKind kind = PrimeKind::Rational;
  std::int64_t root = 0;  ///< image of sqrt(d) in F_p for split primes

  int e() const { return kind == PrimeKind::Ramified ? 2 : 1; }
  int f() const { return kind == PrimeKind::Inert ? 2 : 1; }
  std::int64_t residue_order() const { return kind == PrimeKind::Inert ? p * p : p; }

  static PrimeSpec over(std::int64_t d, std::int64_t p, std::optional<std::int64_t> root = std::nullopt) {
    if (p < 3 || !arith::is_prime(p)) throw InvalidArgument("residue characteristic must be an odd prime");
    if (!is_squarefree(d)) throw InvalidArgument("d must be squarefree");
    PrimeSpec s;
    s.d = d;
    s.p = p;
    if (d == 1) return s;
    std::int64_t dm = arith::mod(d, p);
    if (dm == 0) {
      s.kind = PrimeKind::Ramified;
      return s;
    }
    std::int64_t r = -1;
    for (std::int64_t t = 1; t < p; ++t)
      if (arith::mul_mod(t, t, p) == dm) {
        r = t;
        break;
      }
    if (r < 0) {
      if (root) throw PrimeNotSplit(std::to_string(p) + " is inert in Q(sqrt(" + std::to_string(d) + "))");
      s.kind = PrimeKind::Inert;
      return s;
    }
    s.kind = PrimeKind::Split;
    s.root = r;
    if (root) {
      if (arith::mul_mod(*root, *root, p) != dm) throw InvalidArgument("declared root is not a square root of d");
      s.root = arith::mod(*root, p);
    }
    return s;
  }

  /// Normalised valuation; INT_MAX for 0.
  int valuation(const QuadElem& a) const {
    if (a.is_zero()) return INT_MAX;
    if (kind == PrimeKind::Rational || (a.is_rational() && kind != PrimeKind::Ramified))
      return mpq_valuation(a.x(), p) * e();
    if (kind == PrimeKind::Inert) return mpq_valuation(a.norm(), p) / 2;
    if (kind == PrimeKind::Ramified) return mpq_valuation(a.norm(), p);
    // Split: a = p^t b with b primitive; b lies in at most one of the two primes over p.
    int t = std::min(mpq_valuation(a.x(), p), mpq_valuation(a.y(), p));
    mpq_class scale = 1;
    mpz_class pz = p;
    if (t > 0) {
      mpz_class pt;
      mpz_pow_ui(pt.get_mpz_t(), pz.get_mpz_t(), static_cast<unsigned long>(t));
      scale = mpq_class(1) / mpq_class(pt);
    } else if (t < 0) {
      mpz_class pt;
      mpz_pow_ui(pt.get_mpz_t(), pz.get_mpz_t(), static_cast<unsigned long>(-t));
      scale = mpq_class(pt);
    }
    QuadElem b = a * scale;
    std::int64_t xb = reduce_rational(b.x()), yb = reduce_rational(b.y());
    if (arith::mod(xb + arith::mul_mod(yb, root, p), p) != 0) return t;
    return t + mpq_valuation(b.norm(), p);
  }

  bool is_integral(const QuadElem& a) const { return a.is_zero() || valuation(a) >= 0; }

  std::int64_t reduce_rational(const mpq_class& q) const {
    if (mpz_mod(q.get_den(), p) == 0) throw NonIntegralModel("coefficient " + q.get_str() + " is not p-integral");
    return arith::mul_mod(mpz_mod(q.get_num(), p), arith::inv_mod(mpz_mod(q.get_den(), p), p), p);
  }

  FieldPtr residue_field() const { return FiniteField::make(static_cast<int>(p), f()); }

  /// Reduction of a 𝔭-integral element into the residue field.
  FiniteField::Elem reduce(const QuadElem& a, const FiniteField& k) const {
    if (!is_integral(a)) throw NonIntegralModel("element " + a.to_string() + " is not integral at the prime");
    FiniteField::Elem xs = k.from_int(reduce_rational(a.x()));
    if (a.y() == 0) return xs;
    FiniteField::Elem s;
    switch (kind) {
      case PrimeKind::Split: s = k.from_int(root); break;
      case PrimeKind::Ramified: s = 0; break;
      case PrimeKind::Inert: {
        auto r = k.sqrt(k.from_int(d));
        if (!r) throw InvalidArgument("no square root of d in the residue field");
        s = *r;
        break;
      }
      default: s = k.from_int(1); break;
    }
    return k.add(xs, k.mul(k.from_int(reduce_rational(a.y())), s));
  }

  std::string to_string() const {
    std::string s = "p=" + std::to_string(p) + " (" + honda::to_string(kind) + ")";
    if (kind == PrimeKind::Split) s += " sqrt(d)=" + std::to_string(root) + " mod p";
    return s;
  }
};

}  // namespace honda
