#pragma once

#include <gmpxx.h>

#include <cmath>
#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "honda/core/arith.hpp"
#include "honda/curves/quadratic_field.hpp"
#include "honda/errors.hpp"
#include "honda/report.hpp"

namespace honda {

inline std::int64_t fundamental_discriminant(std::int64_t d) {
  if (!is_squarefree(d) || d == 1) throw InvalidArgument("d must be squarefree and different from 1");
  return arith::mod(d, 4) == 1 ? d : 4 * d;
}

/// Kronecker symbol (D/q) for a prime q.
inline int kronecker(std::int64_t D, std::int64_t q) {
  if (q == 2) {
    if (D % 2 == 0) return 0;
    std::int64_t r = arith::mod(D, 8);
    return r == 1 || r == 7 ? 1 : -1;
  }
  std::int64_t r = arith::mod(D, q);
  if (r == 0) return 0;
  return arith::pow_mod(r, static_cast<std::uint64_t>((q - 1) / 2), q) == 1 ? 1 : -1;
}

/// Decomposition of q in a quadratic field: 1 split, -1 inert, 0 ramified.
inline int quadratic_splitting(std::int64_t d, std::int64_t q) { return kronecker(fundamental_discriminant(d), q); }

/// Certified rational upper bound for sqrt(n).
inline mpq_class sqrt_upper(const mpz_class& n) {
  mpz_class r;
  mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
  if (r * r == n) return mpq_class(r);
  mpz_class scale = 1000000;
  mpz_class m = n * scale * scale, s;
  mpz_sqrt(s.get_mpz_t(), m.get_mpz_t());
  mpq_class out(s + 1, scale);
  out.canonicalize();
  return out;
}

/// Lower bound for pi used in every Minkowski estimate.
inline mpq_class pi_lower() { return mpq_class(314159, 100000); }

struct QuadraticFieldData {
  std::int64_t d = 0;
  std::int64_t discriminant = 0;
  int r1 = 0, r2 = 0;
  std::vector<std::string> integral_basis;

  /// N(x + y w) for the integral basis 1, w.
  std::int64_t norm(std::int64_t x, std::int64_t y) const {
    if (arith::mod(d, 4) == 1) return x * x + x * y + (1 - d) / 4 * y * y;
    return x * x - d * y * y;
  }

  mpq_class minkowski_bound() const {
    mpq_class b = sqrt_upper(mpz_class(std::abs(discriminant))) / 2;
    if (r2) b *= mpq_class(4) / pi_lower();
    b.canonicalize();
    return b;
  }
};

inline QuadraticFieldData quadratic_field(std::int64_t d) {
  QuadraticFieldData F;
  F.d = d;
  F.discriminant = fundamental_discriminant(d);
  if (std::abs(F.discriminant) > 10000) throw InvalidArgument("|disc| must be at most 10^4");
  F.r1 = d > 0 ? 2 : 0;
  F.r2 = d > 0 ? 0 : 1;
  std::string s = "sqrt(" + std::to_string(d) + ")";
  F.integral_basis = {"1", arith::mod(d, 4) == 1 ? "(1+" + s + ")/2" : s};
  return F;
}

/// Reduced primitive forms (a, b, c) of discriminant D < 0.
inline std::vector<std::array<std::int64_t, 3>> reduced_forms(std::int64_t D) {
  if (D >= 0 || arith::mod(D, 4) > 1) throw InvalidArgument("need a negative discriminant");
  std::vector<std::array<std::int64_t, 3>> out;
  for (std::int64_t a = 1; 3 * a * a <= -D; ++a)
    for (std::int64_t b = -a + 1; b <= a; ++b) {
      std::int64_t num = b * b - D;
      if (num % (4 * a)) continue;
      std::int64_t c = num / (4 * a);
      if (c < a) continue;
      if (a == c && b < 0) continue;
      if (std::gcd(std::gcd(a, std::abs(b)), c) != 1) continue;
      out.push_back({a, b, c});
    }
  return out;
}

struct PrincipalSearch {
  bool found = false;
  bool exhaustive = false;  ///< the search covered every solution (definite case)
  std::int64_t x = 0, y = 0;
};

/// x + y w with |N| = n. For imaginary fields the search is exhaustive.
inline PrincipalSearch find_element_of_norm(const QuadraticFieldData& F, std::int64_t n, std::int64_t height) {
  PrincipalSearch res;
  std::int64_t H = height;
  if (F.d < 0) {
    // N >= |D| y^2 / 4 and N >= (x + y/2)^2, so these boxes contain every solution.
    H = static_cast<std::int64_t>(std::sqrt(static_cast<double>(4 * n))) + 2;
    H = H + 2 * static_cast<std::int64_t>(std::sqrt(static_cast<double>(4 * n) / std::abs(F.discriminant))) + 2;
    res.exhaustive = true;
  }
  for (std::int64_t h = 0; h <= H; ++h)
    for (std::int64_t x = -h; x <= h; ++x)
      for (std::int64_t y = -h; y <= h; ++y) {
        if (std::max(std::abs(x), std::abs(y)) != h) continue;
        std::int64_t N = F.norm(x, y);
        if (N == n || N == -n) {
          res.found = true;
          res.x = x;
          res.y = y;
          return res;
        }
      }
  return res;
}

/// Class number of Q(sqrt d). Imaginary fields count reduced forms. Real
/// fields return 1 once every prime below the Minkowski bound is shown
/// principal, and raise SearchInconclusive otherwise.
inline long quad_class_number(std::int64_t d, std::int64_t height = 50) {
  QuadraticFieldData F = quadratic_field(d);
  if (d < 0) return static_cast<long>(reduced_forms(F.discriminant).size());
  mpq_class bound = F.minkowski_bound();
  for (std::int64_t q = 2; q <= bound; ++q) {
    if (!arith::is_prime(q)) continue;
    int s = quadratic_splitting(d, q);
    std::int64_t norm = s == -1 ? q * q : q;
    if (norm > bound) continue;
    if (!find_element_of_norm(F, norm, height).found)
      throw SearchInconclusive("no element of norm " + std::to_string(norm) + " with height <= " + std::to_string(height));
  }
  return 1;
}

/// Class-number-one test for a quadratic field via its Minkowski primes.
inline VerificationReport quadratic_class_number_one_check(std::int64_t d, std::int64_t height = 50) {
  QuadraticFieldData F = quadratic_field(d);
  VerificationReport rep;
  rep.id = "class-number-one";
  rep.claim = "Q(sqrt(" + std::to_string(d) + ")) has class number 1";
  rep.inputs = {{"d", d}, {"height", height}};
  mpq_class bound = F.minkowski_bound();
  json primes = json::array();
  bool all_principal = true, undecided = false;
  for (std::int64_t q = 2; q <= bound; ++q) {
    if (!arith::is_prime(q)) continue;
    int s = quadratic_splitting(d, q);
    std::int64_t norm = s == -1 ? q * q : q;
    json pj{{"q", q}, {"f", s == -1 ? 2 : 1}, {"e", s == 0 ? 2 : 1}, {"norm", norm}};
    if (norm <= bound) {
      auto r = find_element_of_norm(F, norm, height);
      if (r.found) {
        pj["generator"] = std::to_string(r.x) + " + " + std::to_string(r.y) + "*w";
      } else if (r.exhaustive) {
        all_principal = false;
        pj["generator"] = nullptr;
        pj["non_principal"] = true;
      } else {
        undecided = true;
        pj["generator"] = nullptr;
      }
    }
    primes.push_back(pj);
  }
  rep.computed = {{"discriminant", F.discriminant}, {"minkowski_bound", bound.get_d()}, {"primes", primes}};
  if (d < 0) {
    long h = static_cast<long>(reduced_forms(F.discriminant).size());
    rep.computed["class_number"] = h;
    rep.expect("reduced forms agree with the prime search", h == 1, all_principal && !undecided, source::kOracle);
  }
  if (undecided)
    rep.inconclusive("Minkowski primes principal", nullptr, "generator search exhausted its height bound");
  else
    rep.expect_true("Minkowski primes principal", all_principal, source::kReference);
  return rep;
}

}  // namespace honda
