#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "honda/core/witt.hpp"
#include "honda/covectors/nilpotent_algebra.hpp"
#include "honda/errors.hpp"

namespace honda {

/// Infinite tail of a covector: for every depth n >= start,
///   a_{n+period} = twist * sigma^{-period}(a_n)
/// with sigma acting on coefficients and twist in F_p^x.
struct PeriodicTail {
  std::size_t start = 0;
  std::size_t period = 1;
  FiniteField::Elem twist = 1;
  bool operator==(const PeriodicTail&) const = default;
};

/// A Witt covector (..., a_{-2}, a_{-1}, a_0) over a finite k-algebra,
/// stored by depth: entry(n) is a_{-n}. Either all entries beyond the stored
/// ones vanish, or a periodic tail generates them.
///
/// Canonical form: without a tail the deepest stored entry is nonzero; with
/// a tail exactly start + period entries are stored and the repeating block
/// is not zero.
class Covector {
 public:
  using Element = NilpotentAlgebra::Element;

  Covector(AlgebraPtr alg, std::vector<Element> entries, std::optional<PeriodicTail> tail = std::nullopt)
      : alg_(std::move(alg)), entries_(std::move(entries)), tail_(tail) {
    for (const auto& e : entries_)
      if (!alg_->contains(e)) throw InvalidArgument("covector entry is not an element of the algebra");
    if (tail_) {
      const FiniteField& k = *alg_->field();
      if (tail_->period == 0) throw InvalidArgument("period must be positive");
      if (!k.to_prime(tail_->twist) || tail_->twist == 0) throw InvalidArgument("twist must be a nonzero prime field element");
      std::size_t need = tail_->start + tail_->period;
      if (entries_.size() < need) throw InvalidArgument("periodic tail needs start + period stored entries");
      for (std::size_t n = need; n < entries_.size(); ++n)
        if (entries_[n] != law(entries_[n - tail_->period]))
          throw InvalidArgument("stored entries violate the declared periodicity at depth " + std::to_string(n));
      entries_.resize(need);
      bool block_zero = true;
      for (std::size_t n = tail_->start; n < need; ++n) {
        if (!entries_[n].empty()) block_zero = false;
        if (!alg_->is_nilpotent(entries_[n]))
          throw NilpotenceViolation("periodic tail entry at depth " + std::to_string(n) + " is not nilpotent");
      }
      if (block_zero) {
        entries_.resize(tail_->start);
        tail_.reset();
      }
    }
    if (!tail_)
      while (!entries_.empty() && entries_.back().empty()) entries_.pop_back();
  }

  static Covector zero(AlgebraPtr alg) { return Covector(std::move(alg), {}); }
  static Covector singleton(AlgebraPtr alg, Element a0) { return Covector(std::move(alg), {std::move(a0)}); }

  const AlgebraPtr& algebra() const { return alg_; }
  const std::optional<PeriodicTail>& tail() const { return tail_; }
  const std::vector<Element>& stored_entries() const { return entries_; }
  bool is_zero() const { return entries_.empty() && !tail_; }
  bool is_periodic() const { return tail_.has_value(); }

  /// a_{-n}.
  Element entry(std::size_t n) const {
    if (n < entries_.size()) return entries_[n];
    if (!tail_) return {};
    std::size_t P = tail_->period;
    std::size_t back = (n - tail_->start) / P;  // number of periods to step back
    std::size_t base = n - back * P;
    Element x = entries_[base];
    const FiniteField& k = *alg_->field();
    FiniteField::Elem c = k.pow(tail_->twist, static_cast<std::int64_t>(back));
    return alg_->scale(c, alg_->twist(x, -static_cast<int>(P * back)));
  }

  /// Number of depths that determine the covector: the support for a zero
  /// tail, start + period otherwise.
  std::size_t determining_depth() const { return entries_.size(); }

  std::string to_string(std::size_t window = 0) const {
    std::size_t shown = std::max(window, entries_.size());
    std::string s = tail_ ? "(..., " : "(..., 0, ";
    for (std::size_t i = shown; i-- > 0;) {
      s += alg_->to_string(entry(i));
      if (i) s += ", ";
    }
    if (shown == 0) s += "0";
    return s + ")";
  }

  bool operator==(const Covector& o) const {
    if (alg_ != o.alg_ && !(*alg_ == *o.alg_)) return false;
    std::size_t N = comparison_window(o);
    for (std::size_t n = 0; n < N; ++n)
      if (entry(n) != o.entry(n)) return false;
    return true;
  }

  /// Depth window on which agreement implies equality.
  std::size_t comparison_window(const Covector& o) const {
    std::size_t L = 1, s = std::max(entries_.size(), o.entries_.size());
    if (tail_) L = std::lcm(L, tail_->period);
    if (o.tail_) L = std::lcm(L, o.tail_->period);
    return s + 2 * L;
  }

  bool equal_on_window(const Covector& o, std::size_t depth) const {
    for (std::size_t n = 0; n <= depth; ++n)
      if (entry(n) != o.entry(n)) return false;
    return true;
  }

 private:
  Element law(const Element& x) const {
    return alg_->scale(tail_->twist, alg_->twist(x, -static_cast<int>(tail_->period)));
  }

  AlgebraPtr alg_;
  std::vector<Element> entries_;
  std::optional<PeriodicTail> tail_;
};

struct CovectorAddOptions {
  /// Window width w of S~_{-w} used below each output depth when an input
  /// has a periodic tail. 0 selects 2g + 2 for an algebra with g generators.
  std::size_t depth = 0;
};

namespace detail {

/// S~_{-w} evaluated in the algebra on the windows y[0..w], z[0..w] (index =
/// depth below the output entry). Returns the value and whether the running
/// product that multiplies every deeper term has become zero.
inline std::pair<NilpotentAlgebra::Element, bool> truncated_sum(const NilpotentAlgebra& A,
                                                                 const std::vector<NilpotentAlgebra::Element>& y,
                                                                 const std::vector<NilpotentAlgebra::Element>& z) {
  using Element = NilpotentAlgebra::Element;
  const FiniteField& k = *A.field();
  unsigned p = static_cast<unsigned>(k.characteristic());
  std::vector<FiniteField::Elem> coef(p);
  for (unsigned i = 1; i < p; ++i) coef[i] = k.from_int(carry_coefficient(p, i));
  auto T = [&](const Element& a, const Element& b) {
    if (a.empty() || b.empty()) return Element{};
    std::vector<Element> ap(p + 1), bp(p + 1);
    ap[0] = bp[0] = A.one();
    for (unsigned i = 1; i <= p; ++i) {
      ap[i] = A.mul(ap[i - 1], a);
      bp[i] = A.mul(bp[i - 1], b);
    }
    Element t;
    for (unsigned i = 1; i < p; ++i) t = A.add(t, A.scale(coef[i], A.mul(ap[i], bp[p - i])));
    return t;
  };
  std::size_t w = y.size() - 1;
  Element s = A.add(y[0], z[0]);
  if (w >= 1) s = A.add(s, T(y[1], z[1]));
  Element prod = A.one();
  for (std::size_t r = 2; r <= w; ++r) {
    prod = A.mul(prod, A.pow(A.add(y[r - 1], z[r - 1]), p - 1));
    if (prod.empty()) return {s, true};
    Element term = A.mul(prod, T(y[r], z[r]));
    s = (r % 2 == 0) ? A.sub(s, term) : A.add(s, term);
  }
  prod = A.mul(prod, A.pow(A.add(y[w], z[w]), p - 1));
  return {s, prod.empty()};
}

}  // namespace detail

/// The covector group law: c_{-n} = S~_{-w}(a_{-n-w..-n}; b_{-n-w..-n}).
/// For finitely supported inputs w is the remaining support, which is exact.
/// With a periodic input the window has fixed width `depth`; if the limit
/// has not visibly stabilised at that width the sum is refused.
inline Covector covector_add(const Covector& a, const Covector& b, CovectorAddOptions opt = {}) {
  if (a.algebra() != b.algebra() && !(*a.algebra() == *b.algebra()))
    throw InvalidArgument("covectors over different algebras");
  const AlgebraPtr& alg = a.algebra();
  const NilpotentAlgebra& A = *alg;
  const FiniteField& k = *A.field();

  // Precondition: p-th powers vanish from depth 2 on.
  auto check = [&](const Covector& c) {
    for (std::size_t n = 2; n < c.determining_depth(); ++n)
      if (!A.frobenius(c.entry(n)).empty())
        throw NilpotenceViolation("entry at depth " + std::to_string(n) + " has nonzero p-th power");
  };
  check(a);
  check(b);

  if (!a.is_periodic() && !b.is_periodic()) {
    std::size_t D = std::max(a.determining_depth(), b.determining_depth());
    std::vector<Covector::Element> out(D);
    for (std::size_t n = 0; n < D; ++n) {
      std::size_t w = D - 1 - n;
      std::vector<Covector::Element> y(w + 1), z(w + 1);
      for (std::size_t m = 0; m <= w; ++m) {
        y[m] = a.entry(n + m);
        z[m] = b.entry(n + m);
      }
      out[n] = detail::truncated_sum(A, y, z).first;
    }
    return Covector(alg, std::move(out));
  }

  // Common tail: a zero-tailed input is periodic with any period and twist.
  std::size_t start = std::max(a.is_periodic() ? a.tail()->start : a.determining_depth(),
                               b.is_periodic() ? b.tail()->start : b.determining_depth());
  std::size_t P = 1;
  if (a.is_periodic()) P = std::lcm(P, a.tail()->period);
  if (b.is_periodic()) P = std::lcm(P, b.tail()->period);
  auto twist_for = [&](const Covector& c) -> std::optional<FiniteField::Elem> {
    if (!c.is_periodic()) return std::nullopt;
    return k.pow(c.tail()->twist, static_cast<std::int64_t>(P / c.tail()->period));
  };
  auto ta = twist_for(a), tb = twist_for(b);
  if (ta && tb && *ta != *tb) throw InvalidArgument("periodic tails with incompatible twists");
  FiniteField::Elem twist = ta ? *ta : *tb;

  std::size_t w = std::max<std::size_t>(1, opt.depth ? opt.depth : 2 * A.num_generators() + 2);
  std::size_t count = start + 2 * P;
  std::vector<Covector::Element> out(count);
  for (std::size_t n = 0; n < count; ++n) {
    std::vector<Covector::Element> y(w + 1), z(w + 1);
    for (std::size_t m = 0; m <= w; ++m) {
      y[m] = a.entry(n + m);
      z[m] = b.entry(n + m);
    }
    auto [value, settled] = detail::truncated_sum(A, y, z);
    if (!settled)
      throw NilpotenceViolation("covector sum does not stabilise within truncation depth " + std::to_string(w));
    out[n] = std::move(value);
  }
  return Covector(alg, std::move(out), PeriodicTail{start, P, twist});
}

inline Covector covector_sum(const std::vector<Covector>& terms, AlgebraPtr alg, CovectorAddOptions opt = {}) {
  Covector acc = Covector::zero(std::move(alg));
  for (const auto& t : terms) acc = covector_add(acc, t, opt);
  return acc;
}

/// n * a by repeated addition.
inline Covector covector_multiple(const Covector& a, unsigned n, CovectorAddOptions opt = {}) {
  Covector acc = Covector::zero(a.algebra());
  for (unsigned i = 0; i < n; ++i) acc = covector_add(acc, a, opt);
  return acc;
}

/// F(..., a_{-n}, ..., a_0) = (..., a_{-n}^p, ..., a_0^p).
inline Covector frobenius_cw(const Covector& a) {
  std::vector<Covector::Element> out;
  for (const auto& x : a.stored_entries()) out.push_back(a.algebra()->frobenius(x));
  return Covector(a.algebra(), std::move(out), a.tail());
}

/// V(..., a_{-1}, a_0) = (..., a_{-2}, a_{-1}).
inline Covector verschiebung_cw(const Covector& a) {
  const auto& s = a.stored_entries();
  if (!a.is_periodic()) {
    if (s.empty()) return a;
    return Covector(a.algebra(), std::vector<Covector::Element>(s.begin() + 1, s.end()));
  }
  PeriodicTail t = *a.tail();
  std::vector<Covector::Element> out;
  for (std::size_t n = 1; n <= t.start + t.period; ++n) out.push_back(a.entry(n));
  t.start = t.start > 0 ? t.start - 1 : 0;
  return Covector(a.algebra(), std::move(out), t);
}

/// [x](..., a_{-n}, ..., a_0) = (..., sigma^{-n}(x) a_{-n}, ..., x a_0).
inline Covector scalar_action(FiniteField::Elem x, const Covector& a) {
  const NilpotentAlgebra& A = *a.algebra();
  const FiniteField& k = *A.field();
  std::vector<Covector::Element> out;
  for (std::size_t n = 0; n < a.stored_entries().size(); ++n)
    out.push_back(A.scale(k.frobenius(x, -static_cast<int>(n)), a.stored_entries()[n]));
  return Covector(a.algebra(), std::move(out), a.tail());
}

/// Group inverse, [-1] acting by Teichmuller scalars (p odd).
inline Covector covector_neg(const Covector& a) {
  return scalar_action(a.algebra()->field()->from_int(-1), a);
}

/// Applies an algebra map entrywise. The map must have prime-field
/// coefficients so that it commutes with the coefficient twist of a tail.
inline Covector map_entries(const Covector& a, AlgebraPtr target,
                            const std::function<Covector::Element(const Covector::Element&)>& f) {
  std::vector<Covector::Element> out;
  for (const auto& x : a.stored_entries()) out.push_back(f(x));
  return Covector(std::move(target), std::move(out), a.tail());
}

}  // namespace honda
