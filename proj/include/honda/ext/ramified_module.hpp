#pragma once

#include <string>
#include <vector>

#include "honda/core/linear_algebra.hpp"
#include "honda/errors.hpp"
#include "honda/ext/ext_group.hpp"
#include "honda/raynaud/dieudonne.hpp"
#include "honda/raynaud/honda_system.hpp"
#include "honda/report.hpp"

namespace honda {

/// The Dieudonne module of Omega_2 over k: F(e1)=0, F(e2)=e1, V(e1)=0, V(e2)=-e1.
inline DieudonneModule omega2_module(FieldPtr k) {
  DieudonneModule M;
  M.k = std::move(k);
  M.rank = 2;
  M.F = {{0, 1}, {0, 0}};
  M.V = {{0, M.k->from_int(-1)}, {0, 0}};
  return M;
}

/// M_{A'} for A' = W(k)[lambda]/(lambda^e - l), modulo l. The ambient space
/// (A' (x) M) + (l^{-1}m (x) M^(1)) has k-basis lambda^i (x) e_j (i = 0..e-1)
/// followed by lambda^{-i} (x) e_j (i = 0..e-1); coordinates of M^(1) are
/// taken in the basis 1 (x) e_j. The relation space is the k-span of
/// (phi_0(u), -V^M(u)) and (-F^M(w), phi_1(w)).
struct RamifiedModuleModel {
  FieldPtr k;
  int p = 0;
  int e = 0;
  DieudonneModule M;
  std::vector<FieldVector> L;  ///< basis of L inside M
  std::vector<FieldVector> relations;
  std::size_t relation_rank = 0;

  std::size_t rank() const { return M.rank; }
  std::size_t ambient_dimension() const { return 2 * static_cast<std::size_t>(e) * M.rank; }
  std::size_t first(int i, std::size_t j) const { return static_cast<std::size_t>(i) * M.rank + j; }
  std::size_t second(int i, std::size_t j) const { return static_cast<std::size_t>(e + i) * M.rank + j; }

  /// dim_k of the quotient.
  std::size_t dimension() const { return ambient_dimension() - relation_rank; }

  FieldVector unit_first(int i, std::size_t j) const {
    FieldVector v(ambient_dimension(), 0);
    v[first(i, j)] = 1;
    return v;
  }
  FieldVector unit_second(int i, std::size_t j) const {
    FieldVector v(ambient_dimension(), 0);
    v[second(i, j)] = 1;
    return v;
  }

  bool in_relations(const FieldVector& v) const {
    auto rows = relations;
    rows.push_back(v);
    return linalg::rank_of_vectors(*k, rows) == relation_rank;
  }

  /// dim_k of the image of span(vs) in the quotient.
  std::size_t quotient_rank(const std::vector<FieldVector>& vs) const {
    auto rows = relations;
    rows.insert(rows.end(), vs.begin(), vs.end());
    return linalg::rank_of_vectors(*k, rows) - relation_rank;
  }

  /// Multiplication by lambda on the ambient space.
  FieldVector lambda_times(const FieldVector& v) const {
    FieldVector out(ambient_dimension(), 0);
    for (int i = 0; i < e; ++i)
      for (std::size_t j = 0; j < rank(); ++j) {
        // lambda * lambda^i = lambda^{i+1}, and lambda^e = l kills A' (x) M.
        if (i + 1 < e) out[first(i + 1, j)] = v[first(i, j)];
        // lambda * lambda^{-i} = lambda^{1-i}; lambda itself lies in l (l^{-1}m).
        if (i >= 1) out[second(i - 1, j)] = v[second(i, j)];
      }
    return out;
  }
};

inline RamifiedModuleModel build_M_Aprime(const DieudonneModule& M, std::vector<FieldVector> L, int p, int e) {
  if (e < 1) throw InvalidArgument("ramification degree must be positive");
  if (e > p - 1) throw DegreeOutOfRange("e = " + std::to_string(e) + " exceeds p - 1 = " + std::to_string(p - 1));
  if (M.k->characteristic() != p) throw InvalidArgument("module is not over a field of characteristic p");
  RamifiedModuleModel mod;
  mod.k = M.k;
  mod.p = p;
  mod.e = e;
  mod.M = M;
  mod.L = std::move(L);
  const FiniteField& k = *M.k;
  std::size_t r = M.rank;
  // V_0 : M -> M^(1) has matrix sigma(V) in these coordinates; F_0 : M^(1) -> M has matrix F.
  FieldMatrix V0 = linalg::twist(k, M.V, 1);
  for (int i = 1; i <= e; ++i)
    for (std::size_t j = 0; j < r; ++j) {
      FieldVector rel(mod.ambient_dimension(), 0);
      if (i < e) rel[mod.first(i, j)] = 1;
      // V^M(lambda^i (x) m) = l^{-1} lambda^i (x) V_0(m) = lambda^{i-e} (x) V_0(m).
      for (std::size_t t = 0; t < r; ++t) rel[mod.second(e - i, t)] = k.sub(rel[mod.second(e - i, t)], V0[t][j]);
      mod.relations.push_back(rel);
    }
  for (int i = 0; i < e; ++i)
    for (std::size_t j = 0; j < r; ++j) {
      FieldVector rel(mod.ambient_dimension(), 0);
      for (std::size_t t = 0; t < r; ++t) rel[mod.first(i, t)] = k.neg(M.F[t][j]);
      if (i == 0) rel[mod.second(0, j)] = k.add(rel[mod.second(0, j)], 1);
      mod.relations.push_back(rel);
    }
  mod.relation_rank = linalg::rank_of_vectors(k, mod.relations);
  return mod;
}

inline RamifiedModuleModel build_M_Aprime(const HondaSystem& hs, int e) {
  return build_M_Aprime(hs.module, hs.L, hs.scheme.p(), e);
}

/// Bounds attached to (e, [k:F_l]) with [K':Q_l] = e [k:F_l].
struct SelmerBounds {
  int local_degree = 0;  ///< [K':Q_l]
  int ext_bound = 0;
  int kernel_bound = 0;
  int theorem_bound = 0;
  int corollary_bound = 0;
};

inline SelmerBounds selmer_bounds(int e, int d) {
  SelmerBounds b;
  b.local_degree = e * d;
  b.ext_bound = d + (d % 2 ? 1 : 2);
  b.kernel_bound = (e - 1) * d;
  b.theorem_bound = b.ext_bound + b.kernel_bound;
  b.corollary_bound = b.theorem_bound - 1;
  return b;
}

/// Basis and length checks for the Omega_2 module over A'.
inline VerificationReport verify_basis_claim(const RamifiedModuleModel& mod) {
  const FiniteField& k = *mod.k;
  int e = mod.e, d = k.degree();
  VerificationReport rep;
  rep.id = "m-aprime";
  rep.claim = "M_{A'} has k-dimension e dim M with the listed 2e generators as a basis";
  rep.inputs = {{"p", mod.p}, {"e", e}, {"k", "GF(" + std::to_string(k.order()) + ")"}};
  rep.assumptions.push_back("lambda^e = l (unit epsilon = 1)");
  rep.expect("dim M_{A'}", mod.dimension(), static_cast<std::size_t>(e) * mod.rank(), source::kReference);
  if (mod.rank() == 2) {
    std::vector<FieldVector> gens;
    gens.push_back(mod.unit_first(0, 0));
    for (int i = 0; i < e; ++i) gens.push_back(mod.unit_first(i, 1));
    for (int m = 1; m < e; ++m) gens.push_back(mod.unit_second(m, 1));
    rep.expect("listed generators", gens.size(), static_cast<std::size_t>(2 * e), source::kReference);
    rep.expect("rank of listed generators in the quotient", mod.quotient_rank(gens), gens.size(), source::kOracle);
    bool a = true, b = true;
    for (int i = 1; i < e; ++i) {
      a = a && mod.in_relations(mod.unit_first(i, 0));
      FieldVector v = mod.unit_second(i, 0);
      v[mod.first(e - i, 1)] = k.add(v[mod.first(e - i, 1)], 1);
      b = b && mod.in_relations(v);
    }
    rep.expect_true("(lambda^i e1, 0) = 0 for i >= 1", a, source::kReference);
    rep.expect_true("(0, lambda^{-i} e1) = (-lambda^{e-i} e2, 0) for i >= 1", b, source::kReference);
    rep.expect_true("(0, 1 e1) = 0", mod.in_relations(mod.unit_second(0, 0)), source::kReference);
    FieldVector c = mod.unit_second(0, 1);
    c[mod.first(0, 0)] = k.neg(1);
    rep.expect_true("(0, 1 e2) = (1 e1, 0)", mod.in_relations(c), source::kReference);
  }
  bool stable = true;
  for (const auto& rel : mod.relations) stable = stable && mod.in_relations(mod.lambda_times(rel));
  rep.expect_true("relation space is lambda-stable", stable, source::kIdentity);
  std::vector<FieldVector> span_L;
  for (const auto& l : mod.L)
    for (int i = 0; i < e; ++i) {
      FieldVector v(mod.ambient_dimension(), 0);
      for (std::size_t j = 0; j < mod.rank(); ++j) v[mod.first(i, j)] = l[j];
      span_L.push_back(v);
    }
  rep.expect("dim of A'-span of L", mod.quotient_rank(span_L), static_cast<std::size_t>(e) * mod.L.size(), source::kReference);
  SelmerBounds b = selmer_bounds(e, d);
  rep.computed = {{"dimension", mod.dimension()},
                  {"local_degree", b.local_degree},
                  {"ext_bound", b.ext_bound},
                  {"kernel_bound", b.kernel_bound},
                  {"theorem_bound", b.theorem_bound},
                  {"corollary_bound", b.corollary_bound}};
  if (mod.rank() == 2) {
    // Kernel elements are parametrised by the span of (0, lambda^{-m} e2), m = 1..e-1.
    std::vector<FieldVector> ys;
    for (int m = 1; m < e; ++m) ys.push_back(mod.unit_second(m, 1));
    rep.expect("F_l-dimension of the y-span", static_cast<int>(mod.quotient_rank(ys)) * d, b.kernel_bound, source::kOracle);
  }
  if (k.order() <= 81) {
    TensorAlgebra R(mod.k, FiniteField::make(mod.p, 1));
    rep.expect("Ext bound by enumeration", ext1_bruteforce(R).dimension, b.ext_bound, source::kOracle);
  }
  rep.expect("kernel bound", b.kernel_bound, (e - 1) * d, source::kReference);
  rep.expect("theorem bound", b.theorem_bound, b.local_degree + (d % 2 ? 1 : 2), source::kReference);
  rep.expect("corollary bound", b.corollary_bound, b.local_degree + (d % 2 ? 0 : 1), source::kReference);
  return rep;
}

}  // namespace honda
