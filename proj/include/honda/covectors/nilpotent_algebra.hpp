#pragma once

#include <algorithm>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "honda/core/finite_field.hpp"
#include "honda/errors.hpp"

namespace honda {

/// One generator g of a monomial algebra. Its powers below `bound` are basis
/// monomials and g^bound rewrites to the generator `successor`, or to 0 when
/// successor is empty.
struct GeneratorRule {
  std::string name;
  unsigned bound;
  std::optional<unsigned> successor;
  bool operator==(const GeneratorRule&) const = default;
};

class NilpotentAlgebra;
using AlgebraPtr = std::shared_ptr<const NilpotentAlgebra>;

/// Finite commutative k-algebra k[g_1..g_s]/(g_j^{b_j} - g_{succ(j)} or g_j^{b_j}).
/// The coordinate rings k[X_i]/(X_i^p - d_i X_{i+1}) with d_i in {0,1} and all
/// their tensor powers are of this shape. A basis monomial is the mixed-radix
/// integer sum e_j * (b_1 ... b_{j-1}), so the product of two basis
/// monomials is again a basis monomial or zero and no coefficient appears.
///
/// Elements are sparse lists of (monomial, coefficient) sorted by monomial
/// with nonzero coefficients.
class NilpotentAlgebra {
 public:
  using Coef = FiniteField::Elem;
  using Monomial = std::uint32_t;
  using Element = std::vector<std::pair<Monomial, Coef>>;
  static constexpr std::uint64_t kMaxDimension = 1u << 24;

  NilpotentAlgebra(FieldPtr k, std::vector<GeneratorRule> gens) : k_(std::move(k)), gens_(std::move(gens)) {
    std::uint64_t dim = 1;
    for (const auto& g : gens_) {
      if (g.bound < 2) throw InvalidArgument("generator bound must be at least 2");
      if (g.successor && *g.successor >= gens_.size()) throw InvalidArgument("successor out of range");
      stride_.push_back(static_cast<Monomial>(dim));
      dim *= g.bound;
      if (dim > kMaxDimension) throw InvalidArgument("algebra dimension too large");
    }
    dim_ = static_cast<Monomial>(dim);
  }

  /// Tensor product over k of several algebras; the generators of factor i
  /// follow those of factor i-1 and names get the suffix "_i" (1-based).
  static AlgebraPtr tensor(const std::vector<AlgebraPtr>& factors) {
    if (factors.empty()) throw InvalidArgument("empty tensor product");
    std::vector<GeneratorRule> gens;
    for (std::size_t f = 0; f < factors.size(); ++f) {
      if (!(*factors[f]->field() == *factors[0]->field())) throw InvalidArgument("tensor factors over different fields");
      unsigned offset = static_cast<unsigned>(gens.size());
      for (const auto& g : factors[f]->generators()) {
        GeneratorRule h = g;
        h.name += "_" + std::to_string(f + 1);
        if (h.successor) h.successor = *h.successor + offset;
        gens.push_back(h);
      }
    }
    return std::make_shared<const NilpotentAlgebra>(factors[0]->field(), gens);
  }

  bool operator==(const NilpotentAlgebra& o) const { return *k_ == *o.k_ && gens_ == o.gens_; }

  const FieldPtr& field() const { return k_; }
  const std::vector<GeneratorRule>& generators() const { return gens_; }
  std::size_t num_generators() const { return gens_.size(); }
  Monomial dimension() const { return dim_; }

  std::vector<unsigned> exponents(Monomial m) const {
    std::vector<unsigned> e(gens_.size());
    for (std::size_t j = 0; j < gens_.size(); ++j) {
      e[j] = m % gens_[j].bound;
      m /= gens_[j].bound;
    }
    return e;
  }

  /// Basis monomial for an arbitrary exponent vector after applying the
  /// rewrite rules, or nothing if it is zero.
  std::optional<Monomial> normalize(std::vector<std::uint64_t> e) const {
    bool changed = true;
    while (changed) {
      changed = false;
      for (std::size_t j = 0; j < gens_.size(); ++j) {
        if (e[j] < gens_[j].bound) continue;
        std::uint64_t q = e[j] / gens_[j].bound;
        e[j] %= gens_[j].bound;
        if (!gens_[j].successor) return std::nullopt;
        e[*gens_[j].successor] += q;
        changed = true;
      }
    }
    Monomial m = 0;
    for (std::size_t j = 0; j < gens_.size(); ++j) m += static_cast<Monomial>(e[j]) * stride_[j];
    return m;
  }

  std::optional<Monomial> mul_monomials(Monomial a, Monomial b) const {
    std::vector<std::uint64_t> e(gens_.size());
    for (std::size_t j = 0; j < gens_.size(); ++j) {
      e[j] = a % gens_[j].bound + b % gens_[j].bound;
      a /= gens_[j].bound;
      b /= gens_[j].bound;
    }
    return normalize(std::move(e));
  }

  std::optional<Monomial> pow_monomial(Monomial a, std::uint64_t n) const {
    if (n == 0) return Monomial{0};
    std::vector<std::uint64_t> e(gens_.size());
    for (std::size_t j = 0; j < gens_.size(); ++j) {
      e[j] = static_cast<std::uint64_t>(a % gens_[j].bound) * n;
      a /= gens_[j].bound;
    }
    return normalize(std::move(e));
  }

  Element zero() const { return {}; }
  Element one() const { return constant(1); }
  Element constant(Coef c) const {
    if (c == 0) return {};
    return {{0, c}};
  }
  Element generator(unsigned j, Coef c = 1) const {
    std::vector<std::uint64_t> e(gens_.size(), 0);
    e.at(j) = 1;
    return term(e, c);
  }
  Element term(const std::vector<std::uint64_t>& e, Coef c) const {
    if (c == 0) return {};
    auto m = normalize(e);
    if (!m) return {};
    return {{*m, c}};
  }

  bool contains(const Element& x) const {
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (x[i].first >= dim_ || x[i].second == 0 || x[i].second >= k_->order()) return false;
      if (i && x[i - 1].first >= x[i].first) return false;
    }
    return true;
  }

  Element add(const Element& a, const Element& b) const {
    Element out;
    out.reserve(a.size() + b.size());
    std::size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
      if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
        out.push_back(a[i++]);
      } else if (i == a.size() || b[j].first < a[i].first) {
        out.push_back(b[j++]);
      } else {
        Coef c = k_->add(a[i].second, b[j].second);
        if (c) out.push_back({a[i].first, c});
        ++i;
        ++j;
      }
    }
    return out;
  }
  Element neg(const Element& a) const {
    Element out = a;
    for (auto& t : out) t.second = k_->neg(t.second);
    return out;
  }
  Element sub(const Element& a, const Element& b) const { return add(a, neg(b)); }
  Element scale(Coef c, const Element& a) const {
    if (c == 0) return {};
    Element out = a;
    for (auto& t : out) t.second = k_->mul(c, t.second);
    return out;
  }

  Element mul(const Element& a, const Element& b) const {
    if (a.empty() || b.empty()) return {};
    Element prods;
    prods.reserve(a.size() * b.size());
    for (const auto& [ma, ca] : a)
      for (const auto& [mb, cb] : b)
        if (auto m = mul_monomials(ma, mb)) prods.push_back({*m, k_->mul(ca, cb)});
    return collect(std::move(prods));
  }

  Element pow(const Element& a, std::uint64_t e) const {
    Element result = one(), base = a;
    while (e) {
      if (e & 1) result = mul(result, base);
      e >>= 1;
      if (e) base = mul(base, base);
    }
    return result;
  }

  /// The p-th power map, additive in characteristic p.
  Element frobenius(const Element& a) const {
    Element prods;
    for (const auto& [m, c] : a)
      if (auto mp = pow_monomial(m, static_cast<std::uint64_t>(k_->characteristic())))
        prods.push_back({*mp, k_->frobenius(c)});
    return collect(std::move(prods));
  }

  /// sigma^t applied to the coefficients only.
  Element twist(const Element& a, int t) const {
    Element out = a;
    for (auto& term : out) term.second = k_->frobenius(term.second, t);
    return out;
  }

  bool is_nilpotent(const Element& a) const {
    // Iterating the p-th power map reaches 0 within log_p(dim)+1 steps for a
    // nilpotent element.
    Element x = a;
    std::uint64_t reach = 1;
    for (int steps = 0; steps < 64; ++steps) {
      if (x.empty()) return true;
      if (reach > dim_) return false;
      x = frobenius(x);
      reach *= static_cast<std::uint64_t>(k_->characteristic());
    }
    return x.empty();
  }

  /// Image of an element of factor `index` of a tensor product under the
  /// canonical embedding; `strides` are the monomial strides of the factors.
  static Element embed(const Element& a, Monomial stride) {
    Element out = a;
    for (auto& t : out) t.first *= stride;
    return out;
  }

  std::string monomial_string(Monomial m) const {
    if (m == 0) return "1";
    std::string s;
    auto e = exponents(m);
    for (std::size_t j = 0; j < e.size(); ++j) {
      if (!e[j]) continue;
      if (!s.empty()) s += "*";
      s += gens_[j].name;
      if (e[j] > 1) s += "^" + std::to_string(e[j]);
    }
    return s;
  }

  std::string to_string(const Element& a) const {
    if (a.empty()) return "0";
    std::string s;
    for (const auto& [m, c] : a) {
      if (!s.empty()) s += " + ";
      std::string cs = k_->to_string(c);
      if (m == 0) {
        s += cs;
      } else {
        if (c != 1) s += (k_->degree() > 1 ? "(" + cs + ")" : cs) + "*";
        s += monomial_string(m);
      }
    }
    return s;
  }

 private:
  Element collect(Element prods) const {
    std::sort(prods.begin(), prods.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
    Element out;
    out.reserve(prods.size());
    for (const auto& t : prods) {
      if (!out.empty() && out.back().first == t.first) {
        out.back().second = k_->add(out.back().second, t.second);
        if (out.back().second == 0) out.pop_back();
      } else {
        out.push_back(t);
      }
    }
    return out;
  }

  FieldPtr k_;
  std::vector<GeneratorRule> gens_;
  std::vector<Monomial> stride_;
  Monomial dim_ = 1;
};

/// Strides of the factors inside NilpotentAlgebra::tensor(factors).
inline std::vector<NilpotentAlgebra::Monomial> tensor_strides(const std::vector<AlgebraPtr>& factors) {
  std::vector<NilpotentAlgebra::Monomial> s;
  NilpotentAlgebra::Monomial acc = 1;
  for (const auto& f : factors) {
    s.push_back(acc);
    acc *= f->dimension();
  }
  return s;
}

}  // namespace honda
