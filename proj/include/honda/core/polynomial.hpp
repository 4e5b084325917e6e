#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <cstdint>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "honda/errors.hpp"

namespace honda {

/// How exponent vectors are packed into a 128-bit key: `bits` bits for each
/// of `nvars` variables, variable 0 in the lowest bits.
struct MonomialLayout {
  unsigned nvars = 0;
  unsigned bits = 0;

  MonomialLayout() = default;
  MonomialLayout(unsigned n, std::uint64_t max_exponent) : nvars(n) {
    bits = 1;
    while ((std::uint64_t{1} << bits) <= max_exponent) ++bits;
    if (static_cast<std::uint64_t>(bits) * nvars > 128)
      throw InvalidArgument("too many variables for packed monomials");
  }
  bool operator==(const MonomialLayout&) const = default;
};

using MonomialKey = unsigned __int128;

struct MonomialKeyHash {
  std::size_t operator()(MonomialKey k) const noexcept {
    auto lo = static_cast<std::uint64_t>(k);
    auto hi = static_cast<std::uint64_t>(k >> 64);
    return std::hash<std::uint64_t>{}(lo * 0x9E3779B97F4A7C15ull ^ (hi + 0x632BE59BD9B4E019ull));
  }
};

/// Sparse polynomial with arbitrary precision integer coefficients. Terms are
/// kept sorted by key and contain no zero coefficients, so equality is
/// structural. Exponent overflow of a packed field is detected and raised.
class IntPolynomial {
 public:
  using Term = std::pair<MonomialKey, mpz_class>;

  IntPolynomial() = default;
  explicit IntPolynomial(MonomialLayout layout) : layout_(layout) {}

  static IntPolynomial constant(MonomialLayout layout, const mpz_class& c) {
    IntPolynomial f(layout);
    if (c != 0) f.terms_.push_back({0, c});
    return f;
  }
  static IntPolynomial variable(MonomialLayout layout, unsigned v, std::uint64_t e = 1) {
    IntPolynomial f(layout);
    f.terms_.push_back({f.key_for(v, e), 1});
    return f;
  }

  const MonomialLayout& layout() const { return layout_; }
  const std::vector<Term>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }

  std::uint64_t exponent(MonomialKey k, unsigned v) const {
    return static_cast<std::uint64_t>((k >> (v * layout_.bits)) & mask());
  }
  std::vector<std::uint64_t> exponents(MonomialKey k) const {
    std::vector<std::uint64_t> e(layout_.nvars);
    for (unsigned v = 0; v < layout_.nvars; ++v) e[v] = exponent(k, v);
    return e;
  }
  MonomialKey key_for(unsigned v, std::uint64_t e) const {
    if (v >= layout_.nvars) throw InvalidArgument("variable index out of range");
    if (e > mask()) throw InvalidArgument("exponent overflows packed monomial");
    return static_cast<MonomialKey>(e) << (v * layout_.bits);
  }
  MonomialKey key_from(const std::vector<std::uint64_t>& e) const {
    MonomialKey k = 0;
    for (unsigned v = 0; v < e.size(); ++v) k |= key_for(v, e[v]);
    return k;
  }

  /// Coefficient of the monomial with exponent vector e.
  mpz_class coefficient(const std::vector<std::uint64_t>& e) const {
    MonomialKey k = key_from(e);
    auto it = std::lower_bound(terms_.begin(), terms_.end(), k,
                               [](const Term& t, MonomialKey key) { return t.first < key; });
    if (it != terms_.end() && it->first == k) return it->second;
    return 0;
  }

  unsigned total_degree_max() const {
    std::uint64_t best = 0;
    for (const auto& t : terms_) {
      std::uint64_t d = 0;
      for (unsigned v = 0; v < layout_.nvars; ++v) d += exponent(t.first, v);
      best = std::max(best, d);
    }
    return static_cast<unsigned>(best);
  }

  IntPolynomial operator+(const IntPolynomial& o) const { return combine(o, 1); }
  IntPolynomial operator-(const IntPolynomial& o) const { return combine(o, -1); }
  IntPolynomial operator-() const {
    IntPolynomial f = *this;
    for (auto& t : f.terms_) t.second = -t.second;
    return f;
  }
  IntPolynomial operator*(const mpz_class& c) const {
    if (c == 0) return IntPolynomial(layout_);
    IntPolynomial f = *this;
    for (auto& t : f.terms_) t.second *= c;
    return f;
  }

  IntPolynomial operator*(const IntPolynomial& o) const {
    check_layout(o);
    auto ma = max_exponents(), mb = o.max_exponents();
    for (unsigned v = 0; v < layout_.nvars; ++v)
      if (ma[v] + mb[v] > mask()) throw InvalidArgument("exponent overflows packed monomial");
    TermMap acc;
    acc.reserve(std::min<std::size_t>(terms_.size() * o.terms_.size(), 1u << 22));
    mpz_class prod;
    for (const auto& a : terms_)
      for (const auto& b : o.terms_) {
        mpz_mul(prod.get_mpz_t(), a.second.get_mpz_t(), b.second.get_mpz_t());
        add_to(acc, a.first + b.first, prod);
      }
    return from_map(layout_, std::move(acc));
  }

  IntPolynomial pow(std::uint64_t e) const {
    IntPolynomial result = constant(layout_, 1), base = *this;
    while (e) {
      if (e & 1) result = result * base;
      e >>= 1;
      if (e) base = base * base;
    }
    return result;
  }

  /// Exact division of every coefficient by d; throws if some coefficient is
  /// not divisible.
  IntPolynomial divide_exact(const mpz_class& d) const {
    IntPolynomial f = *this;
    for (auto& t : f.terms_) {
      if (!mpz_divisible_p(t.second.get_mpz_t(), d.get_mpz_t()))
        throw InvalidArgument("inexact polynomial division");
      mpz_divexact(t.second.get_mpz_t(), t.second.get_mpz_t(), d.get_mpz_t());
    }
    return f;
  }

  /// Coefficients reduced into [0, m), zero terms dropped.
  IntPolynomial reduce_mod(const mpz_class& m) const {
    IntPolynomial f(layout_);
    for (const auto& t : terms_) {
      mpz_class c;
      mpz_fdiv_r(c.get_mpz_t(), t.second.get_mpz_t(), m.get_mpz_t());
      if (c != 0) f.terms_.push_back({t.first, c});
    }
    return f;
  }

  /// Drops every monomial in which some variable v with kill[v] set has
  /// exponent at least `bound`.
  IntPolynomial kill_powers(const std::vector<bool>& kill, std::uint64_t bound) const {
    IntPolynomial f(layout_);
    for (const auto& t : terms_) {
      bool dead = false;
      for (unsigned v = 0; v < layout_.nvars && !dead; ++v)
        if (v < kill.size() && kill[v] && exponent(t.first, v) >= bound) dead = true;
      if (!dead) f.terms_.push_back(t);
    }
    return f;
  }

  /// Re-expresses the polynomial in another layout, sending variable v to
  /// variable map[v].
  IntPolynomial relabel(MonomialLayout target, const std::vector<unsigned>& map) const {
    IntPolynomial f(target);
    std::unordered_map<MonomialKey, mpz_class, MonomialKeyHash> acc;
    for (const auto& t : terms_) {
      MonomialKey k = 0;
      for (unsigned v = 0; v < layout_.nvars; ++v) {
        std::uint64_t e = exponent(t.first, v);
        if (e) k += f.key_for(map.at(v), e);
      }
      add_to(acc, k, t.second);
    }
    return from_map(target, std::move(acc));
  }

  /// Evaluates at values of any commutative ring given by the callables.
  /// `lift` maps an integer coefficient into the ring.
  template <class T, class Lift, class Mul, class Add>
  T evaluate(const std::vector<T>& values, T zero, Lift lift, Mul mul, Add add) const {
    std::vector<std::vector<T>> powers(layout_.nvars);
    auto power = [&](unsigned v, std::uint64_t e) -> const T& {
      auto& pw = powers[v];
      if (pw.empty()) pw.push_back(lift(mpz_class(1)));
      while (pw.size() <= e) pw.push_back(mul(pw.back(), values[v]));
      return pw[e];
    };
    T acc = zero;
    for (const auto& t : terms_) {
      T term = lift(t.second);
      for (unsigned v = 0; v < layout_.nvars; ++v) {
        std::uint64_t e = exponent(t.first, v);
        if (e) term = mul(term, power(v, e));
      }
      acc = add(acc, term);
    }
    return acc;
  }

  bool operator==(const IntPolynomial& o) const {
    return layout_ == o.layout_ && terms_ == o.terms_;
  }

  std::string to_string(const std::vector<std::string>& names) const {
    if (terms_.empty()) return "0";
    std::string out;
    for (const auto& t : terms_) {
      std::string mono;
      for (unsigned v = 0; v < layout_.nvars; ++v) {
        std::uint64_t e = exponent(t.first, v);
        if (!e) continue;
        if (!mono.empty()) mono += "*";
        mono += names.at(v);
        if (e > 1) mono += "^" + std::to_string(e);
      }
      std::string coef = t.second.get_str();
      if (!out.empty()) out += (t.second < 0) ? " - " : " + ";
      else if (t.second < 0) out += "-";
      if (t.second < 0) coef = coef.substr(1);
      if (mono.empty()) out += coef;
      else if (coef == "1") out += mono;
      else out += coef + "*" + mono;
    }
    return out;
  }

 private:
  using TermMap = std::unordered_map<MonomialKey, mpz_class, MonomialKeyHash>;

  MonomialKey mask() const {
    return (static_cast<MonomialKey>(1) << layout_.bits) - 1;
  }

  void check_layout(const IntPolynomial& o) const {
    if (!(layout_ == o.layout_)) throw InvalidArgument("polynomial layouts differ");
  }

  std::vector<std::uint64_t> max_exponents() const {
    std::vector<std::uint64_t> m(layout_.nvars, 0);
    for (const auto& t : terms_)
      for (unsigned v = 0; v < layout_.nvars; ++v) m[v] = std::max(m[v], exponent(t.first, v));
    return m;
  }

  static void add_to(TermMap& acc, MonomialKey k, const mpz_class& c) {
    auto [it, inserted] = acc.try_emplace(k, c);
    if (!inserted) it->second += c;
  }

  static IntPolynomial from_map(MonomialLayout layout, TermMap&& acc) {
    IntPolynomial f(layout);
    f.terms_.reserve(acc.size());
    for (auto& [k, c] : acc)
      if (c != 0) f.terms_.push_back({k, std::move(c)});
    std::sort(f.terms_.begin(), f.terms_.end(),
              [](const Term& x, const Term& y) { return x.first < y.first; });
    return f;
  }

  IntPolynomial combine(const IntPolynomial& o, int sign) const {
    check_layout(o);
    IntPolynomial f(layout_);
    f.terms_.reserve(terms_.size() + o.terms_.size());
    std::size_t i = 0, j = 0;
    while (i < terms_.size() || j < o.terms_.size()) {
      if (j == o.terms_.size() || (i < terms_.size() && terms_[i].first < o.terms_[j].first)) {
        f.terms_.push_back(terms_[i++]);
      } else if (i == terms_.size() || o.terms_[j].first < terms_[i].first) {
        mpz_class c = o.terms_[j].second;
        if (sign < 0) c = -c;
        f.terms_.push_back({o.terms_[j].first, c});
        ++j;
      } else {
        mpz_class c = terms_[i].second;
        if (sign > 0) c += o.terms_[j].second;
        else c -= o.terms_[j].second;
        if (c != 0) f.terms_.push_back({terms_[i].first, c});
        ++i;
        ++j;
      }
    }
    return f;
  }

  MonomialLayout layout_;
  std::vector<Term> terms_;
};

}  // namespace honda
