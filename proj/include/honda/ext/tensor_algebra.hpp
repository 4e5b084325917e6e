#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "honda/core/finite_field.hpp"
#include "honda/errors.hpp"

namespace honda {

/// R = k (x)_{F_l} F, realised as F[x]/(m(x)) where m is the defining
/// modulus of k over F_l. sigma is the Frobenius of k acting on the first
/// factor: x -> x^l with F fixed. Elements are codes sum c_i |F|^i with c_i
/// the codes of the F-coefficients of x^i. Operations are table driven.
class TensorAlgebra {
 public:
  using Elem = std::uint32_t;
  static constexpr std::uint64_t kMaxOrder = 6561;

  TensorAlgebra(FieldPtr k, FieldPtr F) : k_(std::move(k)), F_(std::move(F)) {
    if (k_->characteristic() != F_->characteristic()) throw InvalidArgument("k and F must have the same characteristic");
    d_ = k_->degree();
    std::uint64_t q = 1;
    for (int i = 0; i < d_; ++i) {
      q *= F_->order();
      if (q > kMaxOrder) throw EnumerationBoundExceeded("k (x) F has more than 6561 elements");
    }
    q_ = static_cast<std::uint32_t>(q);
    const FiniteField& f = *F_;
    // m(x) = x^d + sum_{i<d} c_i x^i with c_i in F_l.
    const auto& mod = k_->modulus();
    std::vector<Elem> m(d_ + 1);
    for (int i = 0; i <= d_; ++i) m[i] = f.from_int(mod[i]);
    auto mulpoly = [&](const std::vector<Elem>& a, const std::vector<Elem>& b) {
      std::vector<Elem> c(2 * d_ + 1, 0);
      for (int i = 0; i < d_; ++i)
        for (int j = 0; j < d_; ++j) c[i + j] = f.add(c[i + j], f.mul(a[i], b[j]));
      for (int t = 2 * d_; t >= d_; --t) {
        if (!c[t]) continue;
        Elem lead = c[t];
        for (int i = 0; i <= d_; ++i) c[t - d_ + i] = f.sub(c[t - d_ + i], f.mul(lead, m[i]));
      }
      c.resize(d_);
      return c;
    };
    add_.resize(static_cast<std::size_t>(q_) * q_);
    mul_.resize(static_cast<std::size_t>(q_) * q_);
    neg_.resize(q_);
    for (Elem a = 0; a < q_; ++a) {
      auto pa = coeffs(a);
      std::vector<Elem> n(d_);
      for (int i = 0; i < d_; ++i) n[i] = f.neg(pa[i]);
      neg_[a] = encode(n);
      for (Elem b = 0; b < q_; ++b) {
        auto pb = coeffs(b);
        std::vector<Elem> s(d_);
        for (int i = 0; i < d_; ++i) s[i] = f.add(pa[i], pb[i]);
        add_[a * q_ + b] = encode(s);
        mul_[a * q_ + b] = encode(mulpoly(pa, pb));
      }
    }
    // sigma(x) = x^l, then sigma(sum c_i x^i) = sum c_i sigma(x)^i.
    Elem x = d_ > 1 ? static_cast<Elem>(F_->order()) : encode({f.from_int(-mod[0])});
    Elem sx = pow(x, static_cast<std::uint64_t>(k_->characteristic()));
    std::vector<Elem> sx_pows(d_);
    sx_pows[0] = one();
    for (int i = 1; i < d_; ++i) sx_pows[i] = mul(sx_pows[i - 1], sx);
    sigma_.resize(q_);
    sigma_inv_.resize(q_);
    for (Elem a = 0; a < q_; ++a) {
      auto pa = coeffs(a);
      Elem s = 0;
      for (int i = 0; i < d_; ++i) s = add(s, mul(encode_scalar(pa[i]), sx_pows[i]));
      sigma_[a] = s;
    }
    std::vector<bool> hit(q_, false);
    for (Elem a = 0; a < q_; ++a) {
      if (hit[sigma_[a]]) throw InvalidArgument("sigma is not bijective");
      hit[sigma_[a]] = true;
      sigma_inv_[sigma_[a]] = a;
    }
  }

  const FieldPtr& k() const { return k_; }
  const FieldPtr& F() const { return F_; }
  /// [k : F_l].
  int k_degree() const { return d_; }
  std::uint32_t order() const { return q_; }

  Elem zero() const { return 0; }
  Elem one() const { return 1; }
  Elem add(Elem a, Elem b) const { return add_[a * q_ + b]; }
  Elem neg(Elem a) const { return neg_[a]; }
  Elem sub(Elem a, Elem b) const { return add(a, neg(b)); }
  Elem mul(Elem a, Elem b) const { return mul_[a * q_ + b]; }
  Elem pow(Elem a, std::uint64_t e) const {
    Elem r = one();
    while (e) {
      if (e & 1) r = mul(r, a);
      e >>= 1;
      if (e) a = mul(a, a);
    }
    return r;
  }
  Elem from_int(std::int64_t n) const { return encode_scalar(F_->from_int(n)); }
  /// sigma^t, t of either sign.
  Elem sigma(Elem a, int t = 1) const {
    const auto& table = t >= 0 ? sigma_ : sigma_inv_;
    for (int i = 0; i < (t >= 0 ? t : -t); ++i) a = table[a];
    return a;
  }

  std::vector<Elem> coeffs(Elem a) const {
    std::vector<Elem> c(d_);
    for (int i = 0; i < d_; ++i) {
      c[i] = static_cast<Elem>(a % F_->order());
      a /= static_cast<Elem>(F_->order());
    }
    return c;
  }
  Elem encode(const std::vector<Elem>& c) const {
    Elem a = 0;
    for (int i = d_ - 1; i >= 0; --i) a = a * static_cast<Elem>(F_->order()) + (i < static_cast<int>(c.size()) ? c[i] : 0);
    return a;
  }
  Elem encode_scalar(FiniteField::Elem c) const { return c; }

  std::string to_string(Elem a) const {
    if (a == 0) return "0";
    auto c = coeffs(a);
    std::string s;
    for (int i = 0; i < d_; ++i) {
      if (!c[i]) continue;
      if (!s.empty()) s += " + ";
      std::string cs = F_->to_string(c[i]);
      if (i == 0) s += cs;
      else s += (c[i] == 1 ? "" : "(" + cs + ")*") + std::string(i == 1 ? "x" : "x^" + std::to_string(i));
    }
    return s;
  }

 private:
  FieldPtr k_, F_;
  int d_;
  std::uint32_t q_;
  std::vector<Elem> add_, mul_, neg_, sigma_, sigma_inv_;
};

}  // namespace honda
