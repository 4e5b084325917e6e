#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <random>
#include <unordered_map>
#include <vector>

#include "honda/core/arith.hpp"
#include "honda/errors.hpp"
#include "honda/ext/tensor_algebra.hpp"
#include "honda/report.hpp"

namespace honda {

/// dim_F Ext^1(M, M): [k:F_l] + 1 for odd degree, [k:F_l] + 2 for even.
inline int ext1_dimension_formula(const FiniteField& k, const FiniteField& F) {
  if (k.characteristic() != F.characteristic()) throw InvalidArgument("k and F must have the same characteristic");
  int d = k.degree();
  return d + (d % 2 ? 1 : 2);
}

using RMatrix4 = std::array<std::array<TensorAlgebra::Elem, 4>, 4>;

namespace ext_detail {

inline RMatrix4 mul(const TensorAlgebra& R, const RMatrix4& a, const RMatrix4& b) {
  RMatrix4 c{};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      TensorAlgebra::Elem s = 0;
      for (int t = 0; t < 4; ++t) s = R.add(s, R.mul(a[i][t], b[t][j]));
      c[i][j] = s;
    }
  return c;
}

inline RMatrix4 twist(const TensorAlgebra& R, RMatrix4 a, int t) {
  for (auto& row : a)
    for (auto& x : row) x = R.sigma(x, t);
  return a;
}


}  // namespace ext_detail

/// Upper-right blocks (f1 f2; f3 f4) and (v1 v2; v3 v4) of the F and V
/// matrices of an extension of M by itself on the basis (e1,0),(e2,0),(0,e1),(0,e2).
struct ExtensionDatum {
  std::array<TensorAlgebra::Elem, 4> f{}, v{};

  RMatrix4 F_matrix(const TensorAlgebra& R) const {
    RMatrix4 m{};
    m[0][1] = R.one();
    m[2][3] = R.one();
    m[0][2] = f[0];
    m[0][3] = f[1];
    m[1][2] = f[2];
    m[1][3] = f[3];
    return m;
  }
  RMatrix4 V_matrix(const TensorAlgebra& R) const {
    RMatrix4 m{};
    m[0][1] = R.neg(R.one());
    m[2][3] = R.neg(R.one());
    m[0][2] = v[0];
    m[0][3] = v[1];
    m[1][2] = v[2];
    m[1][3] = v[3];
    return m;
  }
  bool operator==(const ExtensionDatum&) const = default;
};

/// FV = F sigma(V) and VF = V sigma^{-1}(F) for the semilinear matrices.
inline std::pair<RMatrix4, RMatrix4> fv_vf(const TensorAlgebra& R, const ExtensionDatum& x) {
  RMatrix4 F = x.F_matrix(R), V = x.V_matrix(R);
  return {ext_detail::mul(R, F, ext_detail::twist(R, V, 1)), ext_detail::mul(R, V, ext_detail::twist(R, F, -1))};
}

inline bool is_valid_extension(const TensorAlgebra& R, const ExtensionDatum& x) {
  auto [fv, vf] = fv_vf(R, x);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      if (fv[i][j] || vf[i][j]) return false;
  return true;
}

/// Conjugation by the unipotent automorphism [[I, a], [0, I]]:
/// F -> A F sigma(A^{-1}), V -> A V sigma^{-1}(A^{-1}).
inline ExtensionDatum gauge(const TensorAlgebra& R, const ExtensionDatum& x, const std::array<TensorAlgebra::Elem, 4>& a) {
  RMatrix4 A{}, Ainv{};
  for (int i = 0; i < 4; ++i) A[i][i] = Ainv[i][i] = R.one();
  for (int t = 0; t < 4; ++t) {
    A[t / 2][2 + t % 2] = a[t];
    Ainv[t / 2][2 + t % 2] = R.neg(a[t]);
  }
  using namespace ext_detail;
  RMatrix4 F = mul(R, mul(R, A, x.F_matrix(R)), twist(R, Ainv, 1));
  RMatrix4 V = mul(R, mul(R, A, x.V_matrix(R)), twist(R, Ainv, -1));
  ExtensionDatum y;
  for (int t = 0; t < 4; ++t) {
    y.f[t] = F[t / 2][2 + t % 2];
    y.v[t] = V[t / 2][2 + t % 2];
  }
  // The diagonal blocks stay fixed under this conjugation.
  RMatrix4 F0 = x.F_matrix(R), V0 = x.V_matrix(R);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      bool upper_right = i < 2 && j >= 2;
      if (!upper_right && (F[i][j] != F0[i][j] || V[i][j] != V0[i][j]))
        throw InvalidArgument("gauge changed a diagonal block");
    }
  return y;
}

/// Number of x in R^n with Phi(x) = 0, where Phi : R^n -> R^m is additive and
/// given by images[t][c] = Phi(c e_t) (m entries each). Meet in the middle on
/// an n/2 split, with packed keys over the positions Phi can reach.
inline std::uint64_t count_additive_kernel(const TensorAlgebra& R,
                                           const std::vector<std::vector<std::vector<TensorAlgebra::Elem>>>& images) {
  std::size_t n = images.size(), m = n ? images[0][0].size() : 0;
  std::uint32_t q = R.order();
  std::vector<std::size_t> support;
  for (std::size_t pos = 0; pos < m; ++pos) {
    bool used = false;
    for (const auto& per : images)
      for (const auto& img : per)
        if (img[pos]) used = true;
    if (used) support.push_back(pos);
  }
  unsigned bits = 1;
  while ((1u << bits) < q) ++bits;
  if (support.size() * bits > 64) throw EnumerationBoundExceeded("kernel key does not fit in 64 bits");
  std::size_t s = support.size();
  auto pack = [&](const std::vector<TensorAlgebra::Elem>& v) {
    std::uint64_t key = 0;
    for (std::size_t i = 0; i < s; ++i) key |= static_cast<std::uint64_t>(v[i]) << (bits * i);
    return key;
  };
  // Enumerate sum over coordinates [lo, hi) of images, calling visit(sum).
  std::function<void(std::size_t, std::size_t, std::vector<TensorAlgebra::Elem>&, const std::function<void(const std::vector<TensorAlgebra::Elem>&)>&)> walk;
  walk = [&](std::size_t t, std::size_t hi, std::vector<TensorAlgebra::Elem>& acc,
             const std::function<void(const std::vector<TensorAlgebra::Elem>&)>& visit) {
    if (t == hi) {
      visit(acc);
      return;
    }
    std::vector<TensorAlgebra::Elem> saved = acc;
    for (std::uint32_t c = 0; c < q; ++c) {
      const auto& img = images[t][c];
      for (std::size_t i = 0; i < s; ++i) acc[i] = R.add(saved[i], img[support[i]]);
      walk(t + 1, hi, acc, visit);
    }
    acc = saved;
  };
  std::size_t half = n / 2;
  std::unordered_map<std::uint64_t, std::uint64_t> left;
  std::vector<TensorAlgebra::Elem> acc(s, 0);
  walk(0, half, acc, [&](const std::vector<TensorAlgebra::Elem>& v) { ++left[pack(v)]; });
  std::uint64_t total = 0;
  std::vector<TensorAlgebra::Elem> negv(s);
  acc.assign(s, 0);
  walk(half, n, acc, [&](const std::vector<TensorAlgebra::Elem>& v) {
    for (std::size_t i = 0; i < s; ++i) negv[i] = R.neg(v[i]);
    auto it = left.find(pack(negv));
    if (it != left.end()) total += it->second;
  });
  return total;
}

struct ExtBruteForceResult {
  std::uint64_t valid = 0;      ///< data (f, v) in R^8 with FV = VF = 0
  std::uint64_t orbit = 0;      ///< size of the gauge orbit of a datum
  std::uint64_t classes = 0;    ///< valid / orbit
  int dimension = -1;           ///< log_{|F|} classes
  bool additivity_checked = false;
  bool orbit_enumerated = false;
};

/// Counts extension classes of M by M over R = k (x) F by enumeration.
inline ExtBruteForceResult ext1_bruteforce(const TensorAlgebra& R, std::uint32_t bound = 81, std::uint64_t seed = 1) {
  if (R.order() > bound) throw EnumerationBoundExceeded("|k (x) F| = " + std::to_string(R.order()) + " exceeds " + std::to_string(bound));
  std::uint32_t q = R.order();
  ExtBruteForceResult res;
  auto flatten = [](const RMatrix4& a, const RMatrix4& b) {
    std::vector<TensorAlgebra::Elem> out;
    for (const auto& row : a) out.insert(out.end(), row.begin(), row.end());
    for (const auto& row : b) out.insert(out.end(), row.begin(), row.end());
    return out;
  };
  auto phi = [&](const ExtensionDatum& x) {
    auto [fv, vf] = fv_vf(R, x);
    return flatten(fv, vf);
  };
  auto datum_from = [](std::size_t t, TensorAlgebra::Elem c) {
    ExtensionDatum x;
    (t < 4 ? x.f[t] : x.v[t - 4]) = c;
    return x;
  };
  std::vector<std::vector<std::vector<TensorAlgebra::Elem>>> images(8, std::vector<std::vector<TensorAlgebra::Elem>>(q));
  for (std::size_t t = 0; t < 8; ++t)
    for (std::uint32_t c = 0; c < q; ++c) images[t][c] = phi(datum_from(t, c));
  // Phi is additive in (f, v): check on random pairs before relying on it.
  std::mt19937_64 rng(seed);
  auto random_datum = [&]() {
    ExtensionDatum x;
    for (auto& c : x.f) c = static_cast<TensorAlgebra::Elem>(rng() % q);
    for (auto& c : x.v) c = static_cast<TensorAlgebra::Elem>(rng() % q);
    return x;
  };
  auto add_data = [&](const ExtensionDatum& a, const ExtensionDatum& b) {
    ExtensionDatum c;
    for (int t = 0; t < 4; ++t) {
      c.f[t] = R.add(a.f[t], b.f[t]);
      c.v[t] = R.add(a.v[t], b.v[t]);
    }
    return c;
  };
  auto add_vec = [&](std::vector<TensorAlgebra::Elem> a, const std::vector<TensorAlgebra::Elem>& b) {
    for (std::size_t i = 0; i < a.size(); ++i) a[i] = R.add(a[i], b[i]);
    return a;
  };
  for (int trial = 0; trial < 200; ++trial) {
    auto a = random_datum(), b = random_datum();
    if (phi(add_data(a, b)) != add_vec(phi(a), phi(b))) throw InvalidArgument("FV/VF map is not additive");
  }
  res.additivity_checked = true;
  res.valid = count_additive_kernel(R, images);

  // The gauge action is a translation x -> x + g(a) with g additive in a,
  // so every orbit has |image g| = q^4 / |ker g| elements.
  ExtensionDatum zero;
  auto g = [&](const std::array<TensorAlgebra::Elem, 4>& a) {
    auto y = gauge(R, zero, a);
    std::vector<TensorAlgebra::Elem> out(y.f.begin(), y.f.end());
    out.insert(out.end(), y.v.begin(), y.v.end());
    return out;
  };
  std::vector<std::vector<std::vector<TensorAlgebra::Elem>>> gimg(4, std::vector<std::vector<TensorAlgebra::Elem>>(q));
  for (std::size_t t = 0; t < 4; ++t)
    for (std::uint32_t c = 0; c < q; ++c) {
      std::array<TensorAlgebra::Elem, 4> a{};
      a[t] = c;
      gimg[t][c] = g(a);
    }
  for (int trial = 0; trial < 200; ++trial) {
    std::array<TensorAlgebra::Elem, 4> a{}, b{}, ab{};
    for (int t = 0; t < 4; ++t) {
      a[t] = static_cast<TensorAlgebra::Elem>(rng() % q);
      b[t] = static_cast<TensorAlgebra::Elem>(rng() % q);
      ab[t] = R.add(a[t], b[t]);
    }
    if (g(ab) != add_vec(g(a), g(b))) throw InvalidArgument("gauge map is not additive");
    // Translation: gauging any datum x by a gives x + g(a).
    ExtensionDatum x = random_datum();
    auto y = gauge(R, x, a);
    auto ga = g(a);
    for (int t = 0; t < 4; ++t)
      if (y.f[t] != R.add(x.f[t], ga[t]) || y.v[t] != R.add(x.v[t], ga[4 + t])) throw InvalidArgument("gauge is not a translation");
  }
  std::uint64_t q4 = static_cast<std::uint64_t>(q) * q * q * q;
  std::uint64_t stab = count_additive_kernel(R, gimg);
  res.orbit = q4 / stab;
  if (q <= 9) {
    // Full orbit of 0: every element must be a valid datum.
    std::unordered_map<std::uint64_t, bool> seen;
    std::array<TensorAlgebra::Elem, 4> a{};
    for (std::uint64_t code = 0; code < q4; ++code) {
      std::uint64_t c = code;
      for (int t = 0; t < 4; ++t) {
        a[t] = static_cast<TensorAlgebra::Elem>(c % q);
        c /= q;
      }
      auto y = gauge(R, zero, a);
      if (!is_valid_extension(R, y)) throw InvalidArgument("gauge orbit leaves the valid set");
      std::uint64_t key = 0;
      for (int t = 0; t < 4; ++t) key = key * q + y.f[t];
      for (int t = 0; t < 4; ++t) key = key * q + y.v[t];
      seen[key] = true;
    }
    if (seen.size() != res.orbit) throw InvalidArgument("orbit size mismatch");
    res.orbit_enumerated = true;
  }
  if (res.valid % res.orbit != 0) throw InvalidArgument("orbit size does not divide the valid count");
  res.classes = res.valid / res.orbit;
  std::uint64_t Fq = R.F()->order(), acc = 1;
  int dim = 0;
  while (acc < res.classes) {
    acc *= Fq;
    ++dim;
  }
  res.dimension = acc == res.classes ? dim : -1;
  return res;
}

/// Literal enumeration of R^8 with generic products, for tiny R.
inline std::uint64_t count_valid_literal(const TensorAlgebra& R) {
  std::uint32_t q = R.order();
  std::uint64_t total = 1;
  for (int i = 0; i < 8; ++i) total *= q;
  if (total > 50'000'000) throw EnumerationBoundExceeded("literal enumeration too large");
  std::uint64_t count = 0;
  ExtensionDatum x;
  for (std::uint64_t code = 0; code < total; ++code) {
    std::uint64_t c = code;
    for (int t = 0; t < 4; ++t) {
      x.f[t] = static_cast<TensorAlgebra::Elem>(c % q);
      c /= q;
    }
    for (int t = 0; t < 4; ++t) {
      x.v[t] = static_cast<TensorAlgebra::Elem>(c % q);
      c /= q;
    }
    if (is_valid_extension(R, x)) ++count;
  }
  return count;
}

/// Normal forms f2 = f4 = 0: v4 arbitrary and v2 modulo (sigma^2 - 1)R.
inline std::uint64_t normal_form_count(const TensorAlgebra& R) {
  std::uint32_t q = R.order();
  std::vector<bool> in_image(q, false);
  std::uint64_t image = 0;
  for (TensorAlgebra::Elem a = 0; a < q; ++a) {
    auto b = R.sub(R.sigma(a, 2), a);
    if (!in_image[b]) {
      in_image[b] = true;
      ++image;
    }
  }
  return static_cast<std::uint64_t>(q) * (q / image);
}

inline int ext1_dimension_bruteforce(const FieldPtr& k, const FieldPtr& F) {
  TensorAlgebra R(k, F);
  return ext1_bruteforce(R).dimension;
}

inline VerificationReport verify_ext1(const FieldPtr& k, const FieldPtr& F) {
  VerificationReport rep;
  rep.id = "ext1";
  rep.claim = "dim Ext^1(M, M) over F: [k:F_l]+1 (odd degree) or [k:F_l]+2 (even degree)";
  rep.inputs = {{"k", "GF(" + std::to_string(k->order()) + ")"}, {"F", "GF(" + std::to_string(F->order()) + ")"}};
  TensorAlgebra R(k, F);
  auto res = ext1_bruteforce(R);
  int formula = ext1_dimension_formula(*k, *F);
  rep.computed = {{"valid", res.valid}, {"orbit", res.orbit}, {"classes", res.classes}, {"dimension", res.dimension}};
  rep.expect("brute-force dimension equals formula", res.dimension, formula, source::kReference);
  std::uint64_t expected_classes = 1;
  for (int i = 0; i < formula; ++i) expected_classes *= F->order();
  rep.expect("normal form count", normal_form_count(R), expected_classes, source::kOracle);
  rep.expect_true("gauge additivity and translation checked", res.additivity_checked, source::kIdentity);
  rep.expect_true("zero datum is valid (split extension)", is_valid_extension(R, ExtensionDatum{}), source::kIdentity);
  return rep;
}

}  // namespace honda
