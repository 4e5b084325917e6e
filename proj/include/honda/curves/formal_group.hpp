#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "honda/curves/elliptic_curve.hpp"
#include "honda/errors.hpp"

namespace honda {

/// t^val (c_0 + c_1 t + ... + c_{n-1} t^{n-1}) + O(t^{val+n}), with c_0 != 0
/// unless the series is an unknown O-term (all coefficients lost).
class LaurentSeries {
 public:
  LaurentSeries() = default;
  LaurentSeries(int val, std::vector<QuadElem> c) : val_(val), c_(std::move(c)) { normalize(); }

  int valuation() const { return val_; }
  int relative_precision() const { return static_cast<int>(c_.size()); }
  int absolute_precision() const { return val_ + relative_precision(); }
  bool lost() const { return c_.empty(); }
  /// Coefficient of t^i; i must lie below the absolute precision.
  QuadElem coeff(int i, std::int64_t d) const {
    if (i >= absolute_precision()) throw PrecisionError("coefficient beyond known precision");
    if (i < val_) return QuadElem(d);
    return c_[static_cast<std::size_t>(i - val_)];
  }

  LaurentSeries operator*(const LaurentSeries& o) const {
    std::size_t n = std::min(c_.size(), o.c_.size());
    std::vector<QuadElem> c(n, zero_like(o));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; i + j < n; ++j) c[i + j] += c_[i] * o.c_[j];
    return LaurentSeries(val_ + o.val_, std::move(c));
  }

  LaurentSeries inverse() const {
    if (lost()) throw PrecisionError("inverse of an unknown series");
    std::size_t n = c_.size();
    std::vector<QuadElem> b(n, zero_like(*this));
    QuadElem inv0 = QuadElem(c_[0].d(), 1) / c_[0];
    b[0] = inv0;
    for (std::size_t k = 1; k < n; ++k) {
      QuadElem s(c_[0].d());
      for (std::size_t j = 1; j <= k; ++j) s += c_[j] * b[k - j];
      b[k] = -(s * inv0);
    }
    return LaurentSeries(-val_, std::move(b));
  }

  LaurentSeries operator/(const LaurentSeries& o) const { return *this * o.inverse(); }

  LaurentSeries operator+(const LaurentSeries& o) const { return combine(o, false); }
  LaurentSeries operator-(const LaurentSeries& o) const { return combine(o, true); }
  LaurentSeries operator-() const {
    std::vector<QuadElem> c = c_;
    for (auto& x : c) x = -x;
    return LaurentSeries(val_, std::move(c));
  }
  LaurentSeries scale(const QuadElem& a) const {
    std::vector<QuadElem> c = c_;
    for (auto& x : c) x = x * a;
    return LaurentSeries(val_, std::move(c));
  }

  /// A constant known to any precision is represented with that many terms.
  static LaurentSeries constant(const QuadElem& a, int abs_prec) {
    if (a.is_zero() || abs_prec <= 0) return LaurentSeries(abs_prec, {});
    std::vector<QuadElem> c(static_cast<std::size_t>(abs_prec), QuadElem(a.d()));
    c[0] = a;
    return LaurentSeries(0, std::move(c));
  }

 private:
  static QuadElem zero_like(const LaurentSeries& s) { return s.c_.empty() ? QuadElem() : QuadElem(s.c_[0].d()); }

  LaurentSeries combine(const LaurentSeries& o, bool subtract) const {
    int lo = std::min(val_, o.val_);
    int hi = std::min(absolute_precision(), o.absolute_precision());
    std::int64_t d = !c_.empty() ? c_[0].d() : (!o.c_.empty() ? o.c_[0].d() : 1);
    if (hi <= lo) return LaurentSeries(hi, {});
    std::vector<QuadElem> c(static_cast<std::size_t>(hi - lo), QuadElem(d));
    for (int i = lo; i < hi; ++i) {
      if (i >= val_) c[static_cast<std::size_t>(i - lo)] += c_[static_cast<std::size_t>(i - val_)];
      if (i >= o.val_) {
        const QuadElem& b = o.c_[static_cast<std::size_t>(i - o.val_)];
        c[static_cast<std::size_t>(i - lo)] = subtract ? c[static_cast<std::size_t>(i - lo)] - b : c[static_cast<std::size_t>(i - lo)] + b;
      }
    }
    return LaurentSeries(lo, std::move(c));
  }

  void normalize() {
    std::size_t z = 0;
    while (z < c_.size() && c_[z].is_zero()) ++z;
    val_ += static_cast<int>(z);
    c_.erase(c_.begin(), c_.begin() + static_cast<std::ptrdiff_t>(z));
  }

  int val_ = 0;
  std::vector<QuadElem> c_;
};

/// Power series sum_{i=1}^{N} c_i t^i + O(t^{N+1}); coeffs[0] is the constant term.
struct FormalSeries {
  std::int64_t d = 1;
  std::vector<QuadElem> coeffs;
  int precision() const { return static_cast<int>(coeffs.size()) - 1; }
  const QuadElem& operator[](int i) const { return coeffs.at(static_cast<std::size_t>(i)); }
};

namespace formal_detail {

/// w(t) = -1/y in terms of t = -x/y, to O(t^{M+1}).
inline std::vector<QuadElem> w_series(const Curve& E, int M) {
  std::int64_t d = E.d();
  auto mul = [&](const std::vector<QuadElem>& a, const std::vector<QuadElem>& b) {
    std::vector<QuadElem> c(static_cast<std::size_t>(M + 1), QuadElem(d));
    for (int i = 0; i <= M; ++i) {
      if (a[i].is_zero()) continue;
      for (int j = 0; i + j <= M; ++j) c[i + j] += a[i] * b[j];
    }
    return c;
  };
  auto shift = [&](const std::vector<QuadElem>& a, int s) {
    std::vector<QuadElem> c(static_cast<std::size_t>(M + 1), QuadElem(d));
    for (int i = 0; i + s <= M; ++i) c[i + s] = a[i];
    return c;
  };
  std::vector<QuadElem> w(static_cast<std::size_t>(M + 1), QuadElem(d));
  if (M >= 3) w[3] = QuadElem(d, 1);
  // Each pass fixes at least one more coefficient.
  for (int it = 0; it <= M; ++it) {
    auto w2 = mul(w, w);
    auto w3 = mul(w2, w);
    std::vector<QuadElem> nw(static_cast<std::size_t>(M + 1), QuadElem(d));
    if (M >= 3) nw[3] = QuadElem(d, 1);
    auto t1 = shift(w, 1), t2 = shift(w, 2), t1w2 = shift(w2, 1);
    for (int i = 0; i <= M; ++i)
      nw[i] += E.a1() * t1[i] + E.a2() * t2[i] + E.a3() * w2[i] + E.a4() * t1w2[i] + E.a6() * w3[i];
    if (nw == w) break;
    w = std::move(nw);
  }
  return w;
}

struct SeriesPoint {
  LaurentSeries x, y;
};

inline SeriesPoint add(const Curve& E, const SeriesPoint& P, const SeriesPoint& Q, bool doubling, int prec) {
  auto c = [&](const QuadElem& a) { return LaurentSeries::constant(a, prec); };
  LaurentSeries lambda;
  if (doubling) {
    LaurentSeries num = P.x * P.x * LaurentSeries::constant(E.num(3), prec) + P.x * c(E.num(2) * E.a2()) + c(E.a4()) - P.y * c(E.a1());
    LaurentSeries den = P.y * LaurentSeries::constant(E.num(2), prec) + P.x * c(E.a1()) + c(E.a3());
    lambda = num / den;
  } else {
    lambda = (Q.y - P.y) / (Q.x - P.x);
  }
  LaurentSeries nu = P.y - lambda * P.x;
  LaurentSeries x3 = lambda * lambda + lambda * c(E.a1()) - c(E.a2()) - P.x - Q.x;
  LaurentSeries y3 = -((lambda + c(E.a1())) * x3) - nu - c(E.a3());
  return {x3, y3};
}

/// [n](t) for n >= 1 from the generic point, with working precision M.
inline LaurentSeries multiply_generic(const Curve& E, int n, int M) {
  std::int64_t d = E.d();
  auto w = w_series(E, M);
  std::vector<QuadElem> wc(w.begin() + 3, w.end());
  LaurentSeries W(3, wc);
  std::vector<QuadElem> tc(wc.size(), QuadElem(d));
  tc[0] = QuadElem(d, 1);
  LaurentSeries t(1, tc);
  LaurentSeries Winv = W.inverse();
  SeriesPoint P{t * Winv, -Winv};
  int prec = M + 4;
  if (n == 1) return -(P.x / P.y);
  SeriesPoint Q = add(E, P, P, true, prec);
  for (int k = 3; k <= n; ++k) Q = add(E, Q, P, false, prec);
  return -(Q.x / Q.y);
}

}  // namespace formal_detail

/// [n](t) in the formal group of E, to O(t^{N+1}). The working precision is
/// raised until two runs agree on every requested coefficient.
inline FormalSeries formal_multiplication(const Curve& E, int n, int N) {
  if (n < 1) throw InvalidArgument("multiplier must be positive");
  if (N < 1) throw InvalidArgument("precision must be positive");
  std::int64_t d = E.d();
  auto extract = [&](const LaurentSeries& s) -> std::optional<std::vector<QuadElem>> {
    if (s.absolute_precision() < N + 1) return std::nullopt;
    std::vector<QuadElem> c(static_cast<std::size_t>(N + 1), QuadElem(d));
    for (int i = 0; i <= N; ++i) c[i] = s.coeff(i, d);
    return c;
  };
  int M = N + 4;
  std::optional<std::vector<QuadElem>> prev;
  for (int attempt = 0; attempt < 8; ++attempt, M += 4) {
    auto cur = extract(formal_detail::multiply_generic(E, n, M));
    if (cur && prev && *cur == *prev) return FormalSeries{d, *cur};
    if (cur) prev = cur;
  }
  throw PrecisionError("formal multiplication did not stabilise");
}

inline FormalSeries formal_mult_p(const Curve& E, int p, int N) {
  if (N < p * p) throw PrecisionTooLow("need N >= p^2 = " + std::to_string(p * p));
  return formal_multiplication(E, p, N);
}

inline FormalSeries formal_mult_p(const Curve& E, int p) { return formal_mult_p(E, p, p * p + 2); }

/// f(g(t)) for g(0) = 0, to the smaller precision.
inline FormalSeries compose(const FormalSeries& f, const FormalSeries& g) {
  if (!g.coeffs.empty() && !g.coeffs[0].is_zero()) throw InvalidArgument("inner series must have zero constant term");
  int N = std::min(f.precision(), g.precision());
  std::int64_t d = f.d;
  auto mul = [&](const std::vector<QuadElem>& a, const std::vector<QuadElem>& b) {
    std::vector<QuadElem> c(static_cast<std::size_t>(N + 1), QuadElem(d));
    for (int i = 0; i <= N; ++i)
      for (int j = 0; i + j <= N; ++j) c[i + j] += a[i] * b[j];
    return c;
  };
  std::vector<QuadElem> gg(g.coeffs.begin(), g.coeffs.begin() + N + 1);
  std::vector<QuadElem> out(static_cast<std::size_t>(N + 1), QuadElem(d));
  for (int i = N; i >= 0; --i) {
    out = mul(out, gg);
    out[0] += f.coeffs[static_cast<std::size_t>(i)];
  }
  return FormalSeries{d, out};
}

}  // namespace honda
