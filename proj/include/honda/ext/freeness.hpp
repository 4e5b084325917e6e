#pragma once

#include <cstdint>
#include <vector>

#include "honda/core/finite_field.hpp"
#include "honda/core/linear_algebra.hpp"
#include "honda/errors.hpp"

namespace honda {

/// Exhaustive check that every R-module U sitting in 0 -> R^m -> U -> R^n -> 0
/// is free of rank m+n, for R = F_p[t]/(g) with g monic of degree s.
///
/// U is modelled as F_p^{(m+n)s} with R^m the first ms coordinates, and t
/// acting by [[T_m, X], [0, T_n]] where T_m, T_n are block companion
/// matrices. Each X with g(T) = 0 is one module structure. The lifts of the
/// standard generators of R^m and R^n generate U over R exactly when their
/// t-translates span F_p^{(m+n)s}; then R^{m+n} -> U is onto and, both
/// sides having |R|^{m+n} elements, an isomorphism.
struct FreenessResult {
  bool all_free = true;
  std::uint64_t structures = 0;  ///< number of X with g(T) = 0
};

inline FreenessResult freeness_witness(int p, const std::vector<int>& g, int m, int n, std::uint64_t bound = 1u << 20) {
  auto k = FiniteField::make(p, 1);
  const FiniteField& f = *k;
  int s = static_cast<int>(g.size()) - 1;
  if (s < 1 || g.back() % p != 1) throw InvalidArgument("g must be monic of positive degree");
  if (m < 0 || n < 0 || m + n == 0) throw InvalidArgument("ranks must be nonnegative and not both zero");
  std::size_t dm = static_cast<std::size_t>(m * s), dn = static_cast<std::size_t>(n * s), dim = dm + dn;
  // Companion block for multiplication by t on F_p[t]/(g) with basis 1, t, ..., t^{s-1}.
  auto companion = [&](FieldMatrix& T, std::size_t off, int blocks) {
    for (int b = 0; b < blocks; ++b) {
      std::size_t o = off + static_cast<std::size_t>(b * s);
      for (int i = 1; i < s; ++i) T[o + i][o + i - 1] = 1;
      for (int i = 0; i < s; ++i) T[o + i][o + s - 1] = f.from_int(-g[i]);
    }
  };
  std::uint64_t xs = 1;
  for (std::size_t i = 0; i < dm * dn; ++i) {
    xs *= static_cast<std::uint64_t>(p);
    if (xs > bound) throw EnumerationBoundExceeded("too many extension structures to enumerate");
  }
  FreenessResult res;
  for (std::uint64_t code = 0; code < xs; ++code) {
    FieldMatrix T = linalg::zeros(dim, dim);
    companion(T, 0, m);
    companion(T, dm, n);
    std::uint64_t c = code;
    for (std::size_t i = 0; i < dm; ++i)
      for (std::size_t j = 0; j < dn; ++j) {
        T[i][dm + j] = static_cast<FiniteField::Elem>(c % p);
        c /= p;
      }
    // g(T) by Horner.
    FieldMatrix G = linalg::zeros(dim, dim);
    for (int i = s; i >= 0; --i) {
      G = linalg::multiply(f, G, T);
      for (std::size_t d = 0; d < dim; ++d) G[d][d] = f.add(G[d][d], f.from_int(g[i]));
    }
    if (!linalg::is_zero(G)) continue;
    ++res.structures;
    std::vector<FieldVector> span;
    for (int b = 0; b < m + n; ++b) {
      FieldVector v(dim, 0);
      v[static_cast<std::size_t>(b * s)] = 1;
      for (int i = 0; i < s; ++i) {
        span.push_back(v);
        v = linalg::apply(f, T, v);
      }
    }
    if (linalg::rank_of_vectors(f, span) != dim) res.all_free = false;
  }
  return res;
}

}  // namespace honda
