#pragma once

#include <string>
#include <vector>

#include "honda/core/linear_algebra.hpp"
#include "honda/covectors/covector.hpp"
#include "honda/raynaud/raynaud_scheme.hpp"

namespace honda {

/// A Dieudonne module killed by p: a k-vector space with basis e_1..e_r and
/// semilinear F, V. Column j of `F` holds the coordinates of F(e_j), so
/// F(x) = F * sigma(x) and V(x) = V * sigma^{-1}(x).
struct DieudonneModule {
  FieldPtr k;
  std::size_t rank = 0;
  FieldMatrix F, V;
  /// The basis realized as covectors over A_k, when it comes from a scheme.
  std::vector<Covector> covectors;

  FieldVector apply_F(const FieldVector& x) const { return linalg::apply(*k, F, linalg::twist(*k, x, 1)); }
  FieldVector apply_V(const FieldVector& x) const { return linalg::apply(*k, V, linalg::twist(*k, x, -1)); }
  /// Matrix of FV and of VF (linear maps).
  FieldMatrix FV() const { return linalg::multiply(*k, F, linalg::twist(*k, V, 1)); }
  FieldMatrix VF() const { return linalg::multiply(*k, V, linalg::twist(*k, F, -1)); }

  /// Basis of the image FM.
  std::vector<FieldVector> image_F() const {
    std::vector<FieldVector> cols;
    for (std::size_t j = 0; j < rank; ++j) {
      FieldVector c(rank);
      for (std::size_t i = 0; i < rank; ++i) c[i] = F[i][j];
      if (!linalg::is_zero(c)) cols.push_back(c);
    }
    return cols;
  }
  std::size_t dim_FM() const { return linalg::rank_of_vectors(*k, image_F()); }
};

/// F(e_i) = delta_bar_i e_{i+1}, V(e_i) = lambda_bar_{i-1}^{1/p} e_{i-1}.
/// The lambda residues lie in F_p, so the p-th root is the identity.
inline DieudonneModule dieudonne_module(const RaynaudScheme& G, bool realize = true) {
  DieudonneModule M;
  M.k = G.field();
  M.rank = static_cast<std::size_t>(G.r());
  M.F = linalg::zeros(M.rank, M.rank);
  M.V = linalg::zeros(M.rank, M.rank);
  for (int i = 0; i < G.r(); ++i) {
    M.F[G.idx(i + 1)][i] = M.k->add(M.F[G.idx(i + 1)][i], G.delta_bar(i));
    M.V[G.idx(i - 1)][i] = M.k->add(M.V[G.idx(i - 1)][i], G.gamma_bar(i - 1));
  }
  if (realize) M.covectors = dieudonne_covectors(G, coordinate_ring_mod_p(G));
  return M;
}

/// sum_j [x_j] e_j in CW(A_k).
inline Covector realize_vector(const DieudonneModule& M, const FieldVector& x) {
  if (M.covectors.size() != M.rank) throw InvalidArgument("module has no realized covectors");
  Covector acc = Covector::zero(M.covectors[0].algebra());
  for (std::size_t j = 0; j < M.rank; ++j)
    if (x[j]) acc = covector_add(acc, scalar_action(x[j], M.covectors[j]));
  return acc;
}

/// Exhaustive check that sum [alpha_i] e_i != 0 for alpha != 0, when
/// q^r is at most `limit`; returns nullopt when the space is too large.
inline std::optional<bool> covectors_independent(const DieudonneModule& M, std::uint64_t limit = 2401) {
  std::uint64_t q = M.k->order(), total = 1;
  for (std::size_t i = 0; i < M.rank; ++i) {
    total *= q;
    if (total > limit) return std::nullopt;
  }
  FieldVector x(M.rank, 0);
  for (std::uint64_t code = 1; code < total; ++code) {
    std::uint64_t c = code;
    for (std::size_t i = 0; i < M.rank; ++i) {
      x[i] = static_cast<FiniteField::Elem>(c % q);
      c /= q;
    }
    if (realize_vector(M, x).is_zero()) return false;
  }
  return true;
}

/// Compares the matrices with the covector operators: F_cw(e_j) and V_cw(e_j)
/// against the covectors of the columns F e_j and V e_j.
inline bool operators_match_covectors(const DieudonneModule& M) {
  for (std::size_t j = 0; j < M.rank; ++j) {
    FieldVector fcol(M.rank), vcol(M.rank);
    for (std::size_t i = 0; i < M.rank; ++i) {
      fcol[i] = M.F[i][j];
      vcol[i] = M.V[i][j];
    }
    if (!(frobenius_cw(M.covectors[j]) == realize_vector(M, fcol))) return false;
    if (!(verschiebung_cw(M.covectors[j]) == realize_vector(M, vcol))) return false;
  }
  return true;
}

inline json matrix_json(const FiniteField& k, const FieldMatrix& m) {
  json rows = json::array();
  for (const auto& row : m) {
    json r = json::array();
    for (auto x : row) r.push_back(k.to_string(x));
    rows.push_back(r);
  }
  return rows;
}

inline json vector_json(const FiniteField& k, const FieldVector& v) {
  json r = json::array();
  for (auto x : v) r.push_back(k.to_string(x));
  return r;
}

}  // namespace honda
