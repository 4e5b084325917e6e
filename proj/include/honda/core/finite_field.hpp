#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "honda/core/arith.hpp"
#include "honda/errors.hpp"

namespace honda {

class FiniteField;
using FieldPtr = std::shared_ptr<const FiniteField>;

/// GF(p^r) realised as F_p[x]/(f) where f is the first monic irreducible of
/// degree r when polynomials are ordered by their coefficient vector
/// (c_{r-1}, ..., c_0) read as a base-p integer. Elements are that integer,
/// i.e. the element sum c_i x^i is encoded as sum c_i p^i.
///
/// Multiplication goes through log/exp tables, so order() is capped.
class FiniteField {
 public:
  using Elem = std::uint32_t;
  static constexpr std::uint32_t kMaxOrder = 1u << 22;

  static FieldPtr make(int p, int r) { return std::make_shared<const FiniteField>(p, r); }

  FiniteField(int p, int r) : p_(p), r_(r) {
    if (!arith::is_prime(p)) throw InvalidArgument("characteristic must be prime");
    if (r < 1) throw InvalidArgument("degree must be positive");
    std::uint64_t q = 1;
    for (int i = 0; i < r; ++i) {
      q *= static_cast<std::uint64_t>(p);
      if (q > kMaxOrder) throw InvalidArgument("field too large for table arithmetic");
    }
    q_ = static_cast<std::uint32_t>(q);
    modulus_ = find_modulus();
    build_tables();
  }

  int characteristic() const { return p_; }
  int degree() const { return r_; }
  std::uint32_t order() const { return q_; }
  /// Coefficients c_0..c_r of the defining polynomial (c_r = 1).
  const std::vector<int>& modulus() const { return modulus_; }

  Elem zero() const { return 0; }
  Elem one() const { return 1; }
  /// The class of x in F_p[x]/(f).
  Elem generator() const { return r_ == 1 ? from_int(-modulus_[0]) : static_cast<Elem>(p_); }
  Elem primitive_element() const { return exp_[1]; }

  Elem from_int(std::int64_t n) const { return static_cast<Elem>(arith::mod(n, p_)); }

  std::vector<int> digits(Elem a) const {
    std::vector<int> d(r_);
    for (int i = 0; i < r_; ++i) {
      d[i] = static_cast<int>(a % p_);
      a /= p_;
    }
    return d;
  }
  Elem from_digits(const std::vector<int>& d) const {
    Elem a = 0;
    for (int i = static_cast<int>(d.size()) - 1; i >= 0; --i)
      a = a * p_ + static_cast<Elem>(arith::mod(d[i], p_));
    return a;
  }
  /// Value in [0, p) if a lies in the prime field.
  std::optional<int> to_prime(Elem a) const {
    if (a < static_cast<Elem>(p_)) return static_cast<int>(a);
    return std::nullopt;
  }

  Elem add(Elem a, Elem b) const {
    if (r_ == 1) {
      Elem s = a + b;
      return s >= static_cast<Elem>(p_) ? s - p_ : s;
    }
    Elem out = 0, place = 1;
    while (a || b) {
      Elem s = a % p_ + b % p_;
      if (s >= static_cast<Elem>(p_)) s -= p_;
      out += s * place;
      place *= p_;
      a /= p_;
      b /= p_;
    }
    return out;
  }
  Elem neg(Elem a) const {
    Elem out = 0, place = 1;
    while (a) {
      Elem d = a % p_;
      out += (d ? p_ - d : 0) * place;
      place *= p_;
      a /= p_;
    }
    return out;
  }
  Elem sub(Elem a, Elem b) const { return add(a, neg(b)); }
  Elem mul(Elem a, Elem b) const {
    if (a == 0 || b == 0) return 0;
    std::uint32_t s = log_[a] + log_[b];
    if (s >= q_ - 1) s -= q_ - 1;
    return exp_[s];
  }
  Elem inv(Elem a) const {
    if (a == 0) throw InvalidArgument("division by zero in finite field");
    return exp_[log_[a] == 0 ? 0 : q_ - 1 - log_[a]];
  }
  Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }
  Elem pow(Elem a, std::int64_t e) const {
    if (a == 0) {
      if (e < 0) throw InvalidArgument("division by zero in finite field");
      return e == 0 ? 1 : 0;
    }
    std::int64_t l = arith::mod(static_cast<std::int64_t>(log_[a]) * arith::mod(e, q_ - 1), q_ - 1);
    return exp_[l];
  }
  Elem scale(std::int64_t n, Elem a) const { return mul(from_int(n), a); }

  /// sigma^t where sigma(a) = a^p; t may be negative.
  Elem frobenius(Elem a, int t = 1) const {
    int k = static_cast<int>(arith::mod(t, r_));
    return frob_[static_cast<std::size_t>(k) * q_ + a];
  }

  /// Discrete logarithm to the base primitive_element().
  std::uint32_t log(Elem a) const {
    if (a == 0) throw InvalidArgument("log of zero");
    return log_[a];
  }
  /// Quadratic character: 0, 1 or -1.
  int legendre(Elem a) const {
    if (a == 0) return 0;
    if (p_ == 2) return 1;
    return log_[a] % 2 == 0 ? 1 : -1;
  }
  std::optional<Elem> sqrt(Elem a) const {
    if (a == 0) return Elem{0};
    if (p_ == 2) return exp_[(log_[a] * static_cast<std::uint64_t>(q_ / 2)) % (q_ - 1)];
    if (log_[a] % 2) return std::nullopt;
    return exp_[log_[a] / 2];
  }

  std::string to_string(Elem a) const {
    if (r_ == 1) return std::to_string(a);
    auto d = digits(a);
    std::ostringstream os;
    bool first = true;
    for (int i = r_ - 1; i >= 0; --i) {
      if (!d[i]) continue;
      if (!first) os << "+";
      first = false;
      if (i == 0 || d[i] != 1) os << d[i];
      if (i >= 1) os << "x";
      if (i >= 2) os << "^" << i;
    }
    if (first) os << "0";
    return os.str();
  }

  bool operator==(const FiniteField& o) const { return p_ == o.p_ && r_ == o.r_; }

 private:
  using Poly = std::vector<int>;  // ascending coefficients mod p

  static void trim(Poly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
  }
  Poly poly_rem(Poly a, const Poly& m) const {
    trim(a);
    int dm = static_cast<int>(m.size()) - 1;
    std::int64_t lead_inv = arith::inv_mod(m.back(), p_);
    while (static_cast<int>(a.size()) - 1 >= dm && !a.empty()) {
      int shift = static_cast<int>(a.size()) - 1 - dm;
      std::int64_t c = arith::mul_mod(a.back(), lead_inv, p_);
      for (int i = 0; i <= dm; ++i)
        a[shift + i] = static_cast<int>(arith::mod(a[shift + i] - c * m[i], p_));
      trim(a);
    }
    return a;
  }
  Poly poly_mulmod(const Poly& a, const Poly& b) const {
    if (a.empty() || b.empty()) return {};
    Poly c(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
      for (std::size_t j = 0; j < b.size(); ++j)
        c[i + j] = static_cast<int>((c[i + j] + static_cast<std::int64_t>(a[i]) * b[j]) % p_);
    return poly_rem(c, modulus_);
  }
  Poly to_poly(Elem a) const {
    Poly d = digits(a);
    trim(d);
    return d;
  }
  Elem from_poly(const Poly& a) const {
    Poly d = a;
    d.resize(r_, 0);
    return from_digits(d);
  }

  bool irreducible(const Poly& f) const {
    int n = static_cast<int>(f.size()) - 1;
    for (int dg = 1; 2 * dg <= n; ++dg) {
      std::uint64_t count = 1;
      for (int i = 0; i < dg; ++i) count *= p_;
      for (std::uint64_t code = 0; code < count; ++code) {
        Poly g(dg + 1, 0);
        std::uint64_t c = code;
        for (int i = 0; i < dg; ++i) {
          g[i] = static_cast<int>(c % p_);
          c /= p_;
        }
        g[dg] = 1;
        if (poly_rem(f, g).empty()) return false;
      }
    }
    return true;
  }

  Poly find_modulus() const {
    for (std::uint32_t code = 0; code < q_; ++code) {
      Poly f(r_ + 1, 0);
      std::uint32_t c = code;
      for (int i = 0; i < r_; ++i) {
        f[i] = static_cast<int>(c % p_);
        c /= p_;
      }
      f[r_] = 1;
      if (irreducible(f)) return f;
    }
    throw InvalidArgument("no irreducible polynomial found");
  }

  Poly poly_pow(const Poly& a, std::uint64_t e) const {
    Poly result = {1}, base = a;
    while (e) {
      if (e & 1) result = poly_mulmod(result, base);
      base = poly_mulmod(base, base);
      e >>= 1;
    }
    return result;
  }

  void build_tables() {
    exp_.assign(q_ - 1, 0);
    log_.assign(q_, 0);
    const Poly one_poly = {1};
    std::vector<std::int64_t> primes = arith::prime_divisors(q_ - 1);
    Elem g = 1;
    for (; g < q_; ++g) {
      Poly gp = to_poly(g);
      bool primitive = true;
      for (std::int64_t l : primes)
        if (poly_pow(gp, (q_ - 1) / l) == one_poly) primitive = false;
      if (primitive) break;
    }
    Poly gp = to_poly(g), acc = one_poly;
    for (std::uint32_t i = 0; i + 1 < q_; ++i) {
      Elem cur = from_poly(acc);
      exp_[i] = cur;
      log_[cur] = i;
      acc = poly_mulmod(acc, gp);
    }
    frob_.assign(static_cast<std::size_t>(r_) * q_, 0);
    for (Elem a = 0; a < q_; ++a) frob_[a] = a;
    for (int t = 1; t < r_; ++t)
      for (Elem a = 0; a < q_; ++a) {
        Elem prev = frob_[static_cast<std::size_t>(t - 1) * q_ + a];
        frob_[static_cast<std::size_t>(t) * q_ + a] = pow(prev, p_);
      }
  }

  int p_, r_;
  std::uint32_t q_;
  Poly modulus_;
  std::vector<Elem> exp_;
  std::vector<std::uint32_t> log_;
  std::vector<Elem> frob_;
};

}  // namespace honda
