#pragma once

#include <gmpxx.h>

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "honda/core/arith.hpp"
#include "honda/core/finite_field.hpp"
#include "honda/core/polynomial.hpp"

namespace honda {

/// Variable numbering shared by the Witt polynomials S_0..S_n and the
/// truncated covector sum. Y_j is variable j and Z_j is variable n+1+j for
/// 0 <= j <= n. For the covector sum the depth-m entry is Y_{n-m}, so the
/// shallowest input Y_0 of a covector corresponds to Y_n here.
struct WittVariables {
  unsigned p;
  unsigned n;
  MonomialLayout layout;

  WittVariables(unsigned p_, unsigned n_) : p(p_), n(n_) {
    std::uint64_t maxe = 1;
    for (unsigned i = 0; i <= n; ++i) maxe *= p;
    // Products of two ghost-sized monomials must still fit.
    layout = MonomialLayout(2 * (n + 1), 2 * maxe);
  }
  unsigned y(unsigned j) const { return j; }
  unsigned z(unsigned j) const { return n + 1 + j; }
  /// Depth-m covector entry of the first summand.
  unsigned y_depth(unsigned m) const { return n - m; }
  unsigned z_depth(unsigned m) const { return z(n - m); }

  std::vector<std::string> names() const {
    std::vector<std::string> out;
    for (unsigned j = 0; j <= n; ++j) out.push_back("Y" + std::to_string(j));
    for (unsigned j = 0; j <= n; ++j) out.push_back("Z" + std::to_string(j));
    return out;
  }
};

namespace detail {

inline mpz_class mpz_pow(unsigned p, unsigned e) {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), p, e);
  return r;
}

/// P^e computed by repeated multiplication with the (usually small) base.
inline IntPolynomial linear_pow(const IntPolynomial& base, std::uint64_t e) {
  IntPolynomial acc = IntPolynomial::constant(base.layout(), 1);
  for (std::uint64_t i = 0; i < e; ++i) acc = acc * base;
  return acc;
}

}  // namespace detail

/// Ghost component W_n(X) = sum_{i<=n} p^i X_i^{p^{n-i}} where X_i is the
/// variable var(i).
inline IntPolynomial ghost_component(const WittVariables& vars, unsigned n,
                                     const std::function<unsigned(unsigned)>& var) {
  IntPolynomial w(vars.layout);
  for (unsigned i = 0; i <= n; ++i) {
    auto e = detail::mpz_pow(vars.p, n - i).get_ui();
    w = w + IntPolynomial::variable(vars.layout, var(i), e) * detail::mpz_pow(vars.p, i);
  }
  return w;
}

enum class WittOperation { Sum, Product };

/// The universal polynomials Phi_0..Phi_n with W_m(Phi) = W_m(Y) op W_m(Z),
/// obtained from the ghost recursion
///   Phi_m = (W_m(Y) op W_m(Z) - sum_{i<m} p^i Phi_i^{p^{m-i}}) / p^m.
/// The division is checked to be exact.
inline std::vector<IntPolynomial> witt_polynomials(unsigned p, unsigned n, WittOperation op) {
  WittVariables vars(p, n);
  std::vector<IntPolynomial> phi;
  // powers[i][k] = Phi_i^{p^k}
  std::vector<std::vector<IntPolynomial>> powers;
  for (unsigned m = 0; m <= n; ++m) {
    IntPolynomial wy = ghost_component(vars, m, [&](unsigned i) { return vars.y(i); });
    IntPolynomial wz = ghost_component(vars, m, [&](unsigned i) { return vars.z(i); });
    IntPolynomial rhs = op == WittOperation::Sum ? wy + wz : wy * wz;
    for (unsigned i = 0; i < m; ++i) {
      auto& pw = powers[i];
      while (pw.size() <= m - i) pw.push_back(detail::linear_pow(pw.back(), p));
      rhs = rhs - pw[m - i] * detail::mpz_pow(p, i);
    }
    IntPolynomial next = rhs.divide_exact(detail::mpz_pow(p, m));
    phi.push_back(next);
    powers.push_back({next});
  }
  return phi;
}

inline std::vector<IntPolynomial> witt_sum_polynomials(unsigned p, unsigned n) {
  return witt_polynomials(p, n, WittOperation::Sum);
}
inline std::vector<IntPolynomial> witt_product_polynomials(unsigned p, unsigned n) {
  return witt_polynomials(p, n, WittOperation::Product);
}

/// Recomputes W_m(Phi) with square-and-multiply powering and compares it with
/// W_m(Y) op W_m(Z) for every m <= n.
inline bool verify_ghost_identity(unsigned p, const std::vector<IntPolynomial>& phi,
                                  WittOperation op) {
  unsigned n = static_cast<unsigned>(phi.size()) - 1;
  WittVariables vars(p, n);
  for (unsigned m = 0; m <= n; ++m) {
    IntPolynomial lhs(vars.layout);
    for (unsigned i = 0; i <= m; ++i)
      lhs = lhs + phi[i].pow(detail::mpz_pow(p, m - i).get_ui()) * detail::mpz_pow(p, i);
    IntPolynomial wy = ghost_component(vars, m, [&](unsigned i) { return vars.y(i); });
    IntPolynomial wz = ghost_component(vars, m, [&](unsigned i) { return vars.z(i); });
    IntPolynomial rhs = op == WittOperation::Sum ? wy + wz : wy * wz;
    if (!(lhs == rhs)) return false;
  }
  return true;
}

/// Coefficient of y^i z^{p-i} in T(y, z) = (y^p + z^p - (y+z)^p)/p modulo p,
/// which by Wilson's theorem is the residue of 1/(i!(p-i)!).
inline std::int64_t carry_coefficient(unsigned p, unsigned i) {
  return arith::inv_mod(arith::mul_mod(arith::factorial(i) % p, arith::factorial(p - i) % p, p), p);
}

/// The truncated covector sum S~_{-n} as a polynomial with coefficients in
/// [0, p), in the variables of WittVariables(p, n):
///   Y_0 + Z_0 + T(Y_{-1}, Z_{-1})
///     + sum_{r=2}^{n} (-1)^{r-1} (prod_{j=1}^{r-1} (Y_{-j} + Z_{-j}))^{p-1} T(Y_{-r}, Z_{-r}).
inline IntPolynomial covector_sum_polynomial(unsigned p, unsigned n) {
  WittVariables vars(p, n);
  const auto& L = vars.layout;
  auto Y = [&](unsigned m) { return IntPolynomial::variable(L, vars.y_depth(m)); };
  auto Z = [&](unsigned m) { return IntPolynomial::variable(L, vars.z_depth(m)); };
  auto T = [&](unsigned m) {
    IntPolynomial t(L);
    for (unsigned i = 1; i < p; ++i)
      t = t + IntPolynomial::variable(L, vars.y_depth(m), i) *
                  IntPolynomial::variable(L, vars.z_depth(m), p - i) * mpz_class(carry_coefficient(p, i));
    return t;
  };
  IntPolynomial s = Y(0) + Z(0);
  if (n >= 1) s = s + T(1);
  IntPolynomial prod = IntPolynomial::constant(L, 1);
  for (unsigned r = 2; r <= n; ++r) {
    prod = prod * (Y(r - 1) + Z(r - 1)).pow(p - 1);
    IntPolynomial term = prod * T(r);
    s = (r % 2 == 0) ? s - term : s + term;
  }
  return s.reduce_mod(p);
}

/// Reduction modulo p and modulo the monomials containing Y_{-m}^p or
/// Z_{-m}^p for some m >= 2, the ideal in which S_n and S~_{-n} agree.
inline IntPolynomial reduce_for_congruence(unsigned p, unsigned n, const IntPolynomial& f) {
  WittVariables vars(p, n);
  std::vector<bool> kill(vars.layout.nvars, false);
  for (unsigned m = 2; m <= n; ++m) {
    kill[vars.y_depth(m)] = true;
    kill[vars.z_depth(m)] = true;
  }
  return f.reduce_mod(p).kill_powers(kill, p);
}

/// Checks S_n == S~_{-n} modulo p and the ideal above.
inline bool covector_sum_congruence(unsigned p, unsigned n) {
  auto s = witt_sum_polynomials(p, n);
  return reduce_for_congruence(p, n, s[n]) == reduce_for_congruence(p, n, covector_sum_polynomial(p, n));
}

/// Truncated Witt vectors (a_0, ..., a_n) over a finite field of
/// characteristic p, with arithmetic by the universal polynomials reduced
/// modulo p.
class WittRing {
 public:
  using Elem = FiniteField::Elem;
  using Vector = std::vector<Elem>;

  WittRing(FieldPtr k, unsigned n) : k_(std::move(k)), n_(n), vars_(k_->characteristic(), n) {
    unsigned p = static_cast<unsigned>(k_->characteristic());
    for (auto& f : witt_sum_polynomials(p, n)) sum_.push_back(f.reduce_mod(p));
    for (auto& f : witt_product_polynomials(p, n)) prod_.push_back(f.reduce_mod(p));
  }

  const FieldPtr& field() const { return k_; }
  unsigned length() const { return n_ + 1; }

  Vector zero() const { return Vector(n_ + 1, 0); }
  Vector one() const { return teichmuller(1); }
  Vector teichmuller(Elem a) const {
    Vector v = zero();
    v[0] = a;
    return v;
  }

  Vector add(const Vector& a, const Vector& b) const { return apply(sum_, a, b); }
  Vector mul(const Vector& a, const Vector& b) const { return apply(prod_, a, b); }
  Vector neg(const Vector& a) const {
    // -1 = (p-1) * 1, computed by repeated addition.
    Vector acc = zero();
    for (int i = 1; i < k_->characteristic(); ++i) acc = add(acc, a);
    return acc;
  }
  /// Frobenius acting coordinatewise.
  Vector frobenius(const Vector& a) const {
    Vector out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = k_->frobenius(a[i]);
    return out;
  }
  /// Verschiebung (a_0, ..., a_n) -> (0, a_0, ..., a_{n-1}).
  Vector verschiebung(const Vector& a) const {
    Vector out = zero();
    for (unsigned i = 0; i < n_; ++i) out[i + 1] = a[i];
    return out;
  }

  /// Index of the first nonzero coordinate, or length() for zero.
  unsigned valuation(const Vector& a) const {
    for (unsigned i = 0; i <= n_; ++i)
      if (a[i] != 0) return i;
    return n_ + 1;
  }

  /// For the prime field: the isomorphism W_n(F_p) -> Z/p^{n+1} sending
  /// (a_i) to sum p^i [a_i] with [a] = a^{p^n}.
  std::int64_t to_integer(const Vector& a) const {
    if (k_->degree() != 1) throw InvalidArgument("integer model only for the prime field");
    std::int64_t p = k_->characteristic();
    std::int64_t mod = arith::ipow(p, n_ + 1);
    std::int64_t acc = 0, pi = 1;
    for (unsigned i = 0; i <= n_; ++i) {
      std::int64_t t = arith::pow_mod(a[i], static_cast<std::uint64_t>(arith::ipow(p, n_)), mod);
      acc = arith::mod(acc + arith::mul_mod(pi, t, mod), mod);
      pi *= p;
    }
    return acc;
  }

 private:
  Vector apply(const std::vector<IntPolynomial>& polys, const Vector& a, const Vector& b) const {
    if (a.size() != n_ + 1 || b.size() != n_ + 1) throw InvalidArgument("Witt vector length mismatch");
    std::vector<Elem> values(2 * (n_ + 1));
    for (unsigned j = 0; j <= n_; ++j) {
      values[vars_.y(j)] = a[j];
      values[vars_.z(j)] = b[j];
    }
    const FiniteField& k = *k_;
    Vector out(n_ + 1);
    for (unsigned m = 0; m <= n_; ++m)
      out[m] = polys[m].evaluate<Elem>(
          values, 0, [&](const mpz_class& c) { return k.from_int(mpz_class(c % k.characteristic()).get_si()); },
          [&](Elem x, Elem y) { return k.mul(x, y); }, [&](Elem x, Elem y) { return k.add(x, y); });
    return out;
  }

  FieldPtr k_;
  unsigned n_;
  WittVariables vars_;
  std::vector<IntPolynomial> sum_, prod_;
};

}  // namespace honda
