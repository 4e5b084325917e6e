#pragma once

#include <gmpxx.h>

#include <array>
#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "honda/core/arith.hpp"
#include "honda/curves/quadratic_field.hpp"
#include "honda/errors.hpp"
#include "honda/numberfields/quadratic.hpp"
#include "honda/report.hpp"

namespace honda {

/// Element u0 + u1 sqrt(a) + u2 sqrt(b) + u3 sqrt(c) of Q(sqrt a, sqrt b),
/// where sqrt(c) = sqrt(a) sqrt(b) / g with g = gcd(a, b).
using BiqVec = std::array<mpq_class, 4>;

/// Degree-four field Q(sqrt a, sqrt b) with its ring of integers.
class BiquadraticField {
 public:
  BiquadraticField(std::int64_t a, std::int64_t b) : a_(a), b_(b) {
    if (!is_squarefree(a) || !is_squarefree(b) || a == 1 || b == 1 || a == b)
      throw InvalidArgument("need distinct squarefree a, b different from 1");
    g_ = std::gcd(std::abs(a), std::abs(b));
    if (a < 0 && b < 0) g_ = -g_;  // keeps c = ab/g^2 and sqrt(c) = sqrt(a)sqrt(b)/g consistent
    c_ = a / g_ * (b / g_);
    if (!is_squarefree(c_) || c_ == 1) throw InvalidArgument("sqrt(a) and sqrt(b) generate a quadratic field");
    r1_ = a > 0 && b > 0 ? 4 : 0;
    r2_ = (4 - r1_) / 2;
    build_integral_basis();
  }

  std::int64_t a() const { return a_; }
  std::int64_t b() const { return b_; }
  std::int64_t c() const { return c_; }
  int r1() const { return r1_; }
  int r2() const { return r2_; }
  std::array<std::int64_t, 3> subfields() const { return {a_, b_, c_}; }

  BiqVec mul(const BiqVec& x, const BiqVec& y) const {
    // sqrt(a)sqrt(b) = g sqrt(c), sqrt(a)sqrt(c) = (a/g) sqrt(b), sqrt(b)sqrt(c) = (b/g) sqrt(a).
    mpq_class A = a_, B = b_, C = c_, G = g_, AG = mpq_class(a_) / g_, BG = mpq_class(b_) / g_;
    BiqVec z;
    z[0] = x[0] * y[0] + A * x[1] * y[1] + B * x[2] * y[2] + C * x[3] * y[3];
    z[1] = x[0] * y[1] + x[1] * y[0] + BG * (x[2] * y[3] + x[3] * y[2]);
    z[2] = x[0] * y[2] + x[2] * y[0] + AG * (x[1] * y[3] + x[3] * y[1]);
    z[3] = x[0] * y[3] + x[3] * y[0] + G * (x[1] * y[2] + x[2] * y[1]);
    for (auto& v : z) v.canonicalize();
    return z;
  }

  /// The automorphism changing the signs selected by mask (bit 0: sqrt a, bit 1: sqrt b).
  BiqVec conjugate(const BiqVec& x, int mask) const {
    BiqVec y = x;
    if (mask & 1) y[1] = -y[1];
    if (mask & 2) y[2] = -y[2];
    if ((mask & 1) != ((mask >> 1) & 1)) y[3] = -y[3];
    return y;
  }

  mpq_class trace(const BiqVec& x) const { return 4 * x[0]; }

  mpq_class norm(const BiqVec& x) const {
    BiqVec p = mul(mul(x, conjugate(x, 1)), mul(conjugate(x, 2), conjugate(x, 3)));
    return p[0];
  }

  /// Integral iff the relative trace and norm down to Q(sqrt a) are integral there.
  bool is_integral(const BiqVec& x) const {
    BiqVec t = x, s = conjugate(x, 2);
    BiqVec n = mul(t, s);
    QuadElem tr(a_, 2 * x[0], 2 * x[1]);
    QuadElem nr(a_, n[0], n[1]);
    return tr.is_integral() && nr.is_integral();
  }

  const std::vector<BiqVec>& integral_basis() const { return basis_; }

  BiqVec element(const std::array<std::int64_t, 4>& coords) const {
    BiqVec x{0, 0, 0, 0};
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) x[j] += basis_[i][j] * coords[i];
    for (auto& v : x) v.canonicalize();
    return x;
  }

  /// Coordinates of x in the integral basis (rational in general).
  std::array<mpq_class, 4> coordinates(const BiqVec& x) const {
    // Solve sum_i c_i basis_i = x; basis_inv_ maps the standard coordinates back.
    std::array<mpq_class, 4> c;
    for (int i = 0; i < 4; ++i) {
      c[i] = 0;
      for (int j = 0; j < 4; ++j) c[i] += x[j] * basis_inv_[j][i];
      c[i].canonicalize();
    }
    return c;
  }

  /// det of the trace form on the integral basis.
  mpq_class basis_discriminant() const {
    std::array<std::array<mpq_class, 4>, 4> m;
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) m[i][j] = trace(mul(basis_[i], basis_[j]));
    return det4(m);
  }

  /// Product of the three quadratic subfield discriminants.
  std::int64_t discriminant() const {
    return fundamental_discriminant(a_) * fundamental_discriminant(b_) * fundamental_discriminant(c_);
  }

  /// |O / xO| as the determinant of multiplication by x on the integral basis.
  mpq_class index_of_principal(const BiqVec& x) const {
    std::array<std::array<mpq_class, 4>, 4> m;
    for (int j = 0; j < 4; ++j) {
      auto c = coordinates(mul(x, basis_[j]));
      for (int i = 0; i < 4; ++i) m[i][j] = c[i];
    }
    mpq_class d = det4(m);
    return d < 0 ? mpq_class(-d) : d;
  }

  /// (4!/4^4) (4/pi)^{r2} sqrt|disc|, rounded up with pi > 3.14159.
  mpq_class minkowski_bound() const {
    mpq_class b = mpq_class(24, 256) * sqrt_upper(mpz_class(std::abs(discriminant())));
    for (int i = 0; i < r2_; ++i) b *= mpq_class(4) / pi_lower();
    b.canonicalize();
    return b;
  }

  std::string to_string(const BiqVec& x) const {
    const std::int64_t rad[4] = {1, a_, b_, c_};
    std::string s;
    for (int i = 0; i < 4; ++i) {
      if (x[i] == 0) continue;
      if (!s.empty() && x[i] > 0) s += "+";
      if (i == 0) {
        s += x[i].get_str();
        continue;
      }
      s += x[i] == 1 ? "" : (x[i] == -1 ? "-" : x[i].get_str() + "*");
      s += "sqrt(" + std::to_string(rad[i]) + ")";
    }
    return s.empty() ? "0" : s;
  }

  std::string name() const { return "Q(sqrt(" + std::to_string(a_) + "),sqrt(" + std::to_string(b_) + "))"; }

 private:
  static mpq_class det4(std::array<std::array<mpq_class, 4>, 4> m) {
    mpq_class det = 1;
    for (int c = 0; c < 4; ++c) {
      int piv = -1;
      for (int r = c; r < 4; ++r)
        if (m[r][c] != 0) {
          piv = r;
          break;
        }
      if (piv < 0) return 0;
      if (piv != c) {
        std::swap(m[piv], m[c]);
        det = -det;
      }
      det *= m[c][c];
      for (int r = c + 1; r < 4; ++r) {
        mpq_class f = m[r][c] / m[c][c];
        for (int k = c; k < 4; ++k) m[r][k] -= f * m[c][k];
      }
    }
    det.canonicalize();
    return det;
  }

  /// O lies between M = Z[1, sqrt a, sqrt b, sqrt c] and M/4. The integral
  /// classes of M/4 modulo M are collected and the lattice they span with M
  /// is brought to Hermite normal form.
  void build_integral_basis() {
    std::vector<std::array<std::int64_t, 4>> gens;
    for (int i = 0; i < 4; ++i) {
      std::array<std::int64_t, 4> e{0, 0, 0, 0};
      e[i] = 4;
      gens.push_back(e);
    }
    for (int code = 1; code < 256; ++code) {
      std::array<std::int64_t, 4> u{code & 3, (code >> 2) & 3, (code >> 4) & 3, (code >> 6) & 3};
      BiqVec x;
      for (int i = 0; i < 4; ++i) x[i] = mpq_class(u[i], 4);
      for (auto& v : x) v.canonicalize();
      if (is_integral(x)) gens.push_back(u);
    }
    auto H = hermite_normal_form(gens);
    basis_.clear();
    for (const auto& row : H) {
      BiqVec x;
      for (int i = 0; i < 4; ++i) {
        x[i] = mpq_class(row[i], 4);
        x[i].canonicalize();
      }
      basis_.push_back(x);
    }
    // Inverse of the basis matrix (rows are basis vectors).
    std::array<std::array<mpq_class, 8>, 4> aug;
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 8; ++j) aug[i][j] = j < 4 ? basis_[i][j] : mpq_class(j - 4 == i ? 1 : 0);
    for (int c = 0; c < 4; ++c) {
      int piv = c;
      while (aug[piv][c] == 0) ++piv;
      std::swap(aug[piv], aug[c]);
      mpq_class inv = 1 / aug[c][c];
      for (auto& v : aug[c]) v *= inv;
      for (int r = 0; r < 4; ++r)
        if (r != c && aug[r][c] != 0) {
          mpq_class f = aug[r][c];
          for (int k = 0; k < 8; ++k) aug[r][k] -= f * aug[c][k];
        }
    }
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) {
        basis_inv_[i][j] = aug[i][4 + j];
        basis_inv_[i][j].canonicalize();
      }
  }

  static std::vector<std::array<std::int64_t, 4>> hermite_normal_form(std::vector<std::array<std::int64_t, 4>> rows) {
    std::vector<std::array<std::int64_t, 4>> out;
    for (int col = 0; col < 4; ++col) {
      // Euclid on column col among the remaining rows.
      while (true) {
        int best = -1;
        for (std::size_t r = 0; r < rows.size(); ++r)
          if (rows[r][col] != 0 && (best < 0 || std::abs(rows[r][col]) < std::abs(rows[best][col]))) best = static_cast<int>(r);
        if (best < 0) throw InvalidArgument("lattice is not of full rank");
        bool done = true;
        for (std::size_t r = 0; r < rows.size(); ++r) {
          if (static_cast<int>(r) == best || rows[r][col] == 0) continue;
          std::int64_t q = rows[r][col] / rows[best][col];
          for (int k = 0; k < 4; ++k) rows[r][k] -= q * rows[best][k];
          if (rows[r][col] != 0) done = false;
        }
        if (done) {
          auto piv = rows[best];
          if (piv[col] < 0)
            for (auto& v : piv) v = -v;
          out.push_back(piv);
          rows.erase(rows.begin() + best);
          break;
        }
      }
    }
    // Reduce entries above the pivots.
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < i; ++j) {
        std::int64_t q = arith::mod(out[j][i], out[i][i]) - out[j][i];
        q /= out[i][i];
        for (int k = 0; k < 4; ++k) out[j][k] += q * out[i][k];
      }
    return out;
  }

  std::int64_t a_, b_, c_, g_;
  int r1_ = 0, r2_ = 0;
  std::vector<BiqVec> basis_;
  std::array<std::array<mpq_class, 4>, 4> basis_inv_;
};

/// A prime ideal above q.
struct PrimeIdealFactor {
  std::int64_t q = 0;
  int e = 1, f = 1;
  std::optional<BiqVec> generator;
};

/// (e, f, g) of q in Q(sqrt a, sqrt b) from its behaviour in the three
/// quadratic subfields: a split subfield exists iff the decomposition group
/// is proper, and that group fixes exactly the split subfields.
inline std::array<int, 3> biquadratic_efg(const BiquadraticField& K, std::int64_t q) {
  int split = 0, inert = 0, ram = 0;
  for (std::int64_t m : K.subfields()) {
    int s = quadratic_splitting(m, q);
    (s == 1 ? split : s == -1 ? inert : ram)++;
  }
  if (split == 3) return {1, 1, 4};
  if (split == 1 && inert == 2) return {1, 2, 2};
  if (split == 1 && ram == 2) return {2, 1, 2};
  if (inert == 1 && ram == 2) return {2, 2, 1};
  if (ram == 3) return {4, 1, 1};
  throw InvalidArgument("inconsistent subfield splitting for q = " + std::to_string(q));
}

/// Element of the order with |N| = n, searched by box height in integral-basis coordinates.
inline std::optional<BiqVec> find_biquadratic_element_of_norm(const BiquadraticField& K, const mpz_class& n, int height) {
  // Norm of x = sum c_i w_i through integer coordinates X = 4x in the power basis:
  // N(X) = P^2 - a Q^2 with P = X0^2 + a X1^2 - b X2^2 - c X3^2 and Q = 2 X0 X1 - 2 (b/g) X2 X3.
  std::array<std::array<std::int64_t, 4>, 4> W;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      mpq_class v = K.integral_basis()[i][j] * 4;
      W[i][j] = v.get_num().get_si();
    }
  std::int64_t a = K.a(), b = K.b(), c = K.c();
  std::int64_t bg = std::gcd(std::abs(a), std::abs(b));
  if (a < 0 && b < 0) bg = -bg;
  bg = b / bg;
  __int128 target = static_cast<__int128>(n.get_si()) * 256;
  for (int h = 1; h <= height; ++h) {
    std::array<std::int64_t, 4> cc;
    for (cc[0] = -h; cc[0] <= h; ++cc[0])
      for (cc[1] = -h; cc[1] <= h; ++cc[1])
        for (cc[2] = -h; cc[2] <= h; ++cc[2])
          for (cc[3] = -h; cc[3] <= h; ++cc[3]) {
            if (std::max({std::abs(cc[0]), std::abs(cc[1]), std::abs(cc[2]), std::abs(cc[3])}) != h) continue;
            __int128 X[4] = {0, 0, 0, 0};
            for (int i = 0; i < 4; ++i)
              for (int j = 0; j < 4; ++j) X[j] += static_cast<__int128>(cc[i]) * W[i][j];
            __int128 P = X[0] * X[0] + a * X[1] * X[1] - b * X[2] * X[2] - c * X[3] * X[3];
            __int128 Q = 2 * X[0] * X[1] - 2 * bg * X[2] * X[3];
            __int128 N = P * P - a * Q * Q;
            if (N == target || N == -target) return K.element(cc);
          }
  }
  return std::nullopt;
}

/// Whether x O = y O, i.e. x / y is a unit of O.
inline bool same_principal_ideal(const BiquadraticField& K, const BiqVec& x, const BiqVec& y) {
  mpq_class ny = K.norm(y);
  if (ny == 0) return false;
  // x / y = x * (product of the other conjugates of y) / N(y).
  BiqVec rest = K.mul(K.conjugate(y, 1), K.mul(K.conjugate(y, 2), K.conjugate(y, 3)));
  BiqVec u = K.mul(x, rest);
  for (auto& v : u) {
    v /= ny;
    v.canonicalize();
  }
  mpq_class nu = K.norm(u);
  return K.is_integral(u) && (nu == 1 || nu == -1);
}

/// Class number one for a biquadratic field: every prime ideal of norm at
/// most the Minkowski bound is principal. Primes beyond the bound over
/// q <= bound are also searched and listed, but do not decide the outcome.
inline VerificationReport class_number_one_check(const BiquadraticField& K, int height = 50) {
  VerificationReport rep;
  rep.id = "class-number-one";
  rep.claim = K.name() + " has class number 1";
  rep.inputs = {{"a", K.a()}, {"b", K.b()}, {"height", height}};
  mpq_class bound = K.minkowski_bound();
  if (bound > 20) throw InvalidArgument("Minkowski bound above 20 is out of scope");
  rep.expect("disc of integral basis", K.basis_discriminant().get_str(), std::to_string(K.discriminant()), source::kIdentity);
  json basis = json::array();
  for (const auto& w : K.integral_basis()) basis.push_back(K.to_string(w));
  json primes = json::array();
  bool undecided = false;
  for (std::int64_t q = 2; q <= bound; ++q) {
    if (!arith::is_prime(q)) continue;
    auto [e, f, g] = biquadratic_efg(K, q);
    rep.expect("sum e f over primes above " + std::to_string(q), e * f * g, 4, source::kIdentity);
    mpz_class norm = arith::ipow(q, static_cast<unsigned>(f));
    bool required = norm <= bound;
    json pj{{"q", q}, {"e", e}, {"f", f}, {"g", g}, {"norm", norm.get_si()}, {"required", required}};
    auto gen = find_biquadratic_element_of_norm(K, norm, height);
    json gens = json::array();
    if (gen) {
      // Galois conjugates generate the remaining primes above q.
      std::vector<BiqVec> distinct;
      for (int m = 0; m < 4; ++m) {
        BiqVec y = K.conjugate(*gen, m);
        bool fresh = true;
        for (const auto& z : distinct) fresh = fresh && !same_principal_ideal(K, y, z);
        if (fresh) distinct.push_back(y);
      }
      for (const auto& y : distinct) {
        gens.push_back(K.to_string(y));
        rep.expect("|O/(g)| for a generator above " + std::to_string(q), K.index_of_principal(y).get_str(), norm.get_str(),
                   source::kIdentity);
      }
      rep.expect("distinct primes above " + std::to_string(q), distinct.size(), static_cast<std::size_t>(g), source::kIdentity);
    } else if (required) {
      undecided = true;
    }
    pj["generators"] = gens;
    primes.push_back(pj);
  }
  rep.computed = {{"field", K.name()},
                  {"discriminant", K.discriminant()},
                  {"signature", {K.r1(), K.r2()}},
                  {"integral_basis", basis},
                  {"minkowski_bound", bound.get_d()},
                  {"primes", primes}};
  if (undecided) {
    rep.inconclusive("all Minkowski primes principal", nullptr, "generator search exhausted its height bound");
    rep.computed["class_number"] = nullptr;
  } else {
    rep.expect_true("all Minkowski primes principal", true, source::kReference);
    rep.computed["class_number"] = 1;
  }
  return rep;
}

}  // namespace honda
