#pragma once

#include <cstddef>
#include <vector>

#include "honda/core/finite_field.hpp"

namespace honda {

/// Dense matrices over a finite field, row-major.
using FieldVector = std::vector<FiniteField::Elem>;
using FieldMatrix = std::vector<FieldVector>;

namespace linalg {

inline FieldMatrix zeros(std::size_t rows, std::size_t cols) { return FieldMatrix(rows, FieldVector(cols, 0)); }

inline FieldMatrix identity(std::size_t n) {
  FieldMatrix m = zeros(n, n);
  for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

inline FieldMatrix multiply(const FiniteField& k, const FieldMatrix& a, const FieldMatrix& b) {
  std::size_t n = a.size(), m = b.empty() ? 0 : b[0].size(), inner = b.size();
  FieldMatrix c = zeros(n, m);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t t = 0; t < inner; ++t) {
      if (!a[i][t]) continue;
      for (std::size_t j = 0; j < m; ++j) c[i][j] = k.add(c[i][j], k.mul(a[i][t], b[t][j]));
    }
  return c;
}

inline FieldVector apply(const FiniteField& k, const FieldMatrix& a, const FieldVector& v) {
  FieldVector out(a.size(), 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < v.size(); ++j) out[i] = k.add(out[i], k.mul(a[i][j], v[j]));
  return out;
}

/// Entrywise sigma^t.
inline FieldMatrix twist(const FiniteField& k, FieldMatrix a, int t) {
  for (auto& row : a)
    for (auto& x : row) x = k.frobenius(x, t);
  return a;
}
inline FieldVector twist(const FiniteField& k, FieldVector a, int t) {
  for (auto& x : a) x = k.frobenius(x, t);
  return a;
}

inline bool is_zero(const FieldMatrix& a) {
  for (const auto& row : a)
    for (auto x : row)
      if (x) return false;
  return true;
}
inline bool is_zero(const FieldVector& v) {
  for (auto x : v)
    if (x) return false;
  return true;
}

/// Reduced row echelon form in place; returns the pivot columns.
inline std::vector<std::size_t> row_reduce(const FiniteField& k, FieldMatrix& a) {
  std::vector<std::size_t> pivots;
  if (a.empty()) return pivots;
  std::size_t rows = a.size(), cols = a[0].size(), r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t piv = r;
    while (piv < rows && !a[piv][c]) ++piv;
    if (piv == rows) continue;
    std::swap(a[piv], a[r]);
    auto inv = k.inv(a[r][c]);
    for (auto& x : a[r]) x = k.mul(x, inv);
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || !a[i][c]) continue;
      auto f = k.neg(a[i][c]);
      for (std::size_t j = 0; j < cols; ++j) a[i][j] = k.add(a[i][j], k.mul(f, a[r][j]));
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

inline std::size_t rank(const FiniteField& k, FieldMatrix a) { return row_reduce(k, a).size(); }

/// Rank of a list of vectors (as rows).
inline std::size_t rank_of_vectors(const FiniteField& k, const std::vector<FieldVector>& vs) {
  if (vs.empty()) return 0;
  return rank(k, vs);
}

/// Basis of {x : a x = 0} for an m x n matrix.
inline std::vector<FieldVector> kernel(const FiniteField& k, FieldMatrix a, std::size_t cols) {
  std::vector<FieldVector> basis;
  if (a.empty()) {
    for (std::size_t j = 0; j < cols; ++j) {
      FieldVector v(cols, 0);
      v[j] = 1;
      basis.push_back(v);
    }
    return basis;
  }
  auto pivots = row_reduce(k, a);
  std::vector<bool> is_pivot(cols, false);
  for (auto c : pivots) is_pivot[c] = true;
  for (std::size_t free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    FieldVector v(cols, 0);
    v[free] = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = k.neg(a[i][free]);
    basis.push_back(v);
  }
  return basis;
}

/// Whether two lists of vectors span the same subspace.
inline bool same_span(const FiniteField& k, const std::vector<FieldVector>& a, const std::vector<FieldVector>& b) {
  std::size_t ra = rank_of_vectors(k, a), rb = rank_of_vectors(k, b);
  std::vector<FieldVector> both = a;
  both.insert(both.end(), b.begin(), b.end());
  return ra == rb && rank_of_vectors(k, both) == ra;
}

}  // namespace linalg
}  // namespace honda
