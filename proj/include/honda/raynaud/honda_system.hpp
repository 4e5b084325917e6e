#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "honda/core/arith.hpp"
#include "honda/core/linear_algebra.hpp"
#include "honda/errors.hpp"
#include "honda/raynaud/dieudonne.hpp"
#include "honda/raynaud/raynaud_scheme.hpp"
#include "honda/report.hpp"

namespace honda {

/// (Z/p^N)[X_1..X_r]/(X_i^p - delta_i X_{i+1}) with the integer delta_i, a
/// free module on the monomials with exponents below p. Dense coefficients.
class LiftedRing {
 public:
  using Element = std::vector<std::int64_t>;

  LiftedRing(const RaynaudScheme& G, int N) : G_(G), N_(N) {
    p_ = G.p();
    r_ = G.r();
    mod_ = arith::ipow(p_, N);
    dim_ = static_cast<std::size_t>(arith::ipow(p_, r_));
    table_.resize(dim_ * dim_);
    for (std::size_t a = 0; a < dim_; ++a)
      for (std::size_t b = 0; b < dim_; ++b) table_[a * dim_ + b] = normalize(add_exponents(a, b));
  }

  std::int64_t modulus() const { return mod_; }
  std::size_t dimension() const { return dim_; }

  Element zero() const { return Element(dim_, 0); }
  Element monomial(std::size_t code, std::int64_t c) const {
    Element x = zero();
    x[code] = arith::mod(c, mod_);
    return x;
  }
  /// Code of X_j.
  std::size_t generator_code(int j) const { return static_cast<std::size_t>(arith::ipow(p_, G_.idx(j))); }

  Element add(const Element& a, const Element& b) const {
    Element c(dim_);
    for (std::size_t i = 0; i < dim_; ++i) c[i] = (a[i] + b[i]) % mod_;
    return c;
  }
  Element mul(const Element& a, const Element& b) const {
    Element c = zero();
    for (std::size_t i = 0; i < dim_; ++i) {
      if (!a[i]) continue;
      for (std::size_t j = 0; j < dim_; ++j) {
        if (!b[j]) continue;
        const auto& [code, mult] = table_[i * dim_ + j];
        std::int64_t t = arith::mul_mod(arith::mul_mod(a[i], b[j], mod_), mult, mod_);
        c[code] = (c[code] + t) % mod_;
      }
    }
    return c;
  }
  Element pow(Element base, std::uint64_t e) const {
    Element result = monomial(0, 1);
    while (e) {
      if (e & 1) result = mul(result, base);
      e >>= 1;
      if (e) base = mul(base, base);
    }
    return result;
  }

 private:
  std::vector<std::uint64_t> add_exponents(std::size_t a, std::size_t b) const {
    std::vector<std::uint64_t> e(r_);
    for (int j = 0; j < r_; ++j) {
      e[j] = a % p_ + b % p_;
      a /= p_;
      b /= p_;
    }
    return e;
  }
  std::pair<std::size_t, std::int64_t> normalize(std::vector<std::uint64_t> e) const {
    std::int64_t mult = 1;
    bool changed = true;
    while (changed) {
      changed = false;
      for (int j = 0; j < r_; ++j) {
        if (e[j] < static_cast<std::uint64_t>(p_)) continue;
        std::uint64_t q = e[j] / p_;
        e[j] %= p_;
        e[G_.idx(j + 1)] += q;
        mult = arith::mul_mod(mult, arith::pow_mod(G_.delta(j), q, mod_), mod_);
        changed = true;
      }
    }
    std::size_t code = 0;
    for (int j = r_ - 1; j >= 0; --j) code = code * p_ + e[j];
    return {code, mult};
  }

  RaynaudScheme G_;
  int N_, p_, r_;
  std::int64_t mod_;
  std::size_t dim_;
  std::vector<std::pair<std::size_t, std::int64_t>> table_;
};

/// w(a) = sum_n p^{-n} a_{-n}^{p^n} mod pA for a covector with F_p
/// coefficients, using Teichmuller lifts of the coefficients and monomial
/// lifts of the basis monomials. Terms n <= 1 are summed; the terms
/// n = 2..N-1 must vanish mod p, otherwise PrecisionError.
struct WMapResult {
  FieldVector value;  ///< coordinates in the monomial basis of A_k, F_p entries
  std::vector<int> checked_depths;
};

inline WMapResult w_map(const RaynaudScheme& G, const Covector& a, int N = 4) {
  if (N < 3) throw InvalidArgument("w-map needs precision p^3 or more");
  LiftedRing R(G, N);
  const NilpotentAlgebra& A = *a.algebra();
  const FiniteField& k = *A.field();
  int p = G.p();
  std::int64_t m = R.modulus();
  WMapResult out;
  out.value.assign(R.dimension(), 0);
  for (int n = 0; n < N; ++n) {
    LiftedRing::Element lift = R.zero();
    for (const auto& [mono, c] : a.entry(static_cast<std::size_t>(n))) {
      auto cp = k.to_prime(c);
      if (!cp) throw InvalidArgument("w-map lift needs prime field coefficients");
      // Teichmuller lift of cp modulo p^N.
      std::int64_t e = 1;
      for (int t = 1; t < N; ++t) e *= p;
      std::int64_t tau = arith::pow_mod(*cp, static_cast<std::uint64_t>(e), m);
      // Codes of NilpotentAlgebra and LiftedRing agree: base p, X_1 least significant.
      lift = R.add(lift, R.monomial(mono, tau));
    }
    LiftedRing::Element term = R.pow(lift, static_cast<std::uint64_t>(arith::ipow(p, n)));
    std::int64_t pn = arith::ipow(p, n);
    for (std::size_t i = 0; i < term.size(); ++i) {
      if (term[i] % pn != 0)
        throw PrecisionError("w-map term at depth " + std::to_string(n) + " is not divisible by p^" + std::to_string(n));
      std::int64_t v = arith::mod(term[i] / pn, p);
      if (n <= 1) {
        out.value[i] = k.add(out.value[i], k.from_int(v));
      } else if (v) {
        throw PrecisionError("w-map term at depth " + std::to_string(n) + " is not in pA");
      }
    }
    if (n >= 2) out.checked_depths.push_back(n);
  }
  return out;
}

/// (L, M): M the Dieudonne module of G_k and L the kernel of w on M.
struct HondaSystem {
  RaynaudScheme scheme;
  DieudonneModule module;
  std::vector<FieldVector> L;
  std::vector<FieldVector> w_images;  ///< w(e_i), coordinates over A_k

  std::vector<FieldVector> expected_L() const {
    std::vector<FieldVector> span;
    for (int i = 0; i < scheme.r(); ++i) {
      FieldVector v(scheme.r(), 0);
      v[i] = scheme.gamma_bar(i - 1);
      if (!linalg::is_zero(v)) span.push_back(v);
    }
    return span;
  }
};

inline HondaSystem honda_system(const RaynaudScheme& G) {
  HondaSystem hs{G, dieudonne_module(G), {}, {}};
  const FiniteField& k = *G.field();
  std::size_t r = static_cast<std::size_t>(G.r());
  // w commutes with the Teichmuller action of k, so L is the kernel of the
  // k-linear map whose columns are w(e_i).
  for (const auto& e : hs.module.covectors) hs.w_images.push_back(w_map(G, e).value);
  std::size_t rows = hs.w_images.empty() ? 0 : hs.w_images[0].size();
  FieldMatrix W = linalg::zeros(rows, r);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < rows; ++j) W[j][i] = hs.w_images[i][j];
  hs.L = linalg::kernel(k, W, r);
  return hs;
}

/// All module-level checks for one Raynaud scheme.
inline VerificationReport honda_report(const HondaSystem& hs) {
  const RaynaudScheme& G = hs.scheme;
  const DieudonneModule& M = hs.module;
  const FiniteField& k = *M.k;
  VerificationReport rep;
  rep.id = "honda-system";
  rep.claim = "Dieudonne module and Honda system of a Raynaud scheme";
  rep.inputs = {{"p", G.p()}, {"r", G.r()}, {"delta", G.delta_string()}};
  rep.assumptions.push_back("omega = p! exactly (only its class mod p^2 is used)");
  rep.expect_true("F and V match the covector operators on e_i", operators_match_covectors(M), source::kOracle);
  rep.expect_true("FV = 0", linalg::is_zero(M.FV()), source::kIdentity);
  rep.expect_true("VF = 0", linalg::is_zero(M.VF()), source::kIdentity);
  if (auto indep = covectors_independent(M))
    rep.expect_true("e_i are k-linearly independent covectors", *indep, source::kOracle);
  else
    rep.inconclusive("e_i are k-linearly independent covectors", nullptr, "coefficient space too large to enumerate");
  rep.expect_true("ker w = k-span of lambda_{i-1} e_i", linalg::same_span(k, hs.L, hs.expected_L()), source::kReference);
  rep.expect("dim L", hs.L.size(), G.expected_dim_L(), source::kReference);
  rep.expect("dim L + dim FM", hs.L.size() + M.dim_FM(), G.r(), source::kIdentity);
  if (G.p() == 3 && G.delta_vector() == std::vector<int>{3, 1}) {
    // Honda system of Omega_2 in the basis e_1, e_2.
    FieldMatrix F = {{0, 1}, {0, 0}}, V = {{0, k.from_int(-1)}, {0, 0}};
    rep.expect("F matrix equals the Omega_2 system", matrix_json(k, M.F), matrix_json(k, F), source::kReference);
    rep.expect("V matrix equals the Omega_2 system", matrix_json(k, M.V), matrix_json(k, V), source::kReference);
    rep.expect_true("L = span(e2) as for Omega_2", linalg::same_span(k, hs.L, {FieldVector{0, 1}}), source::kReference);
  }
  rep.computed["F"] = matrix_json(k, M.F);
  rep.computed["V"] = matrix_json(k, M.V);
  json L = json::array();
  for (const auto& v : hs.L) L.push_back(vector_json(k, v));
  rep.computed["L"] = L;
  return rep;
}

inline json honda_json(const HondaSystem& hs, const VerificationReport& rep) {
  const FiniteField& k = *hs.module.k;
  json j;
  j["p"] = hs.scheme.p();
  j["r"] = hs.scheme.r();
  j["delta"] = hs.scheme.delta_vector();
  j["F-matrix"] = matrix_json(k, hs.module.F);
  j["V-matrix"] = matrix_json(k, hs.module.V);
  json L = json::array();
  for (const auto& v : hs.L) L.push_back(vector_json(k, v));
  j["L-basis"] = L;
  json e = json::array();
  for (const auto& c : hs.module.covectors) e.push_back(c.to_string(2 * hs.scheme.r() + 2));
  j["covectors"] = e;
  j["checks"] = rep.to_json()["checks"];
  j["status"] = to_string(rep.status());
  return j;
}

}  // namespace honda
