#pragma once

#include <map>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "honda/core/arith.hpp"
#include "honda/core/finite_field.hpp"
#include "honda/covectors/covector.hpp"
#include "honda/covectors/nilpotent_algebra.hpp"
#include "honda/errors.hpp"
#include "honda/report.hpp"

namespace honda {

/// A Raynaud scheme of type (p, ..., p) over W(k) with k = GF(p^r), given by
/// generators X_i (i in Z/r) and relations X_i^p = delta_i X_{i+1}, where
/// each delta_i is 1 or p. Indices are 0-based here and printed 1-based.
///
/// omega is taken to be p! exactly, so gamma_j = omega/delta_j is p! or
/// (p-1)!, and its residue is 0 or -1.
class RaynaudScheme {
 public:
  static constexpr int kMaxPrime = 17;

  RaynaudScheme(int p, std::vector<int> delta) : p_(p), delta_(std::move(delta)) {
    if (p < 3 || p > kMaxPrime || !arith::is_prime(p)) throw InvalidArgument("p must be an odd prime at most 17");
    if (delta_.empty()) throw InvalidArgument("delta must have at least one entry");
    for (int d : delta_)
      if (d != 1 && d != p) throw InvalidArgument("each delta_i must be 1 or p");
    k_ = FiniteField::make(p, r());
  }

  /// Parses a comma list such as "p,1" or "3,1".
  static RaynaudScheme parse(int p, const std::string& spec) {
    std::vector<int> delta;
    std::stringstream ss(spec);
    std::string item;
    while (std::getline(ss, item, ',')) {
      while (!item.empty() && item.front() == ' ') item.erase(item.begin());
      while (!item.empty() && item.back() == ' ') item.pop_back();
      if (item == "p" || item == "P") delta.push_back(p);
      else if (item == "1") delta.push_back(1);
      else if (!item.empty() && std::stoi(item) == p) delta.push_back(p);
      else throw InvalidArgument("delta entries must be 1 or p, got '" + item + "'");
    }
    return RaynaudScheme(p, delta);
  }

  int p() const { return p_; }
  int r() const { return static_cast<int>(delta_.size()); }
  const FieldPtr& field() const { return k_; }
  int idx(int i) const { return static_cast<int>(arith::mod(i, r())); }

  int delta(int i) const { return delta_[idx(i)]; }
  const std::vector<int>& delta_vector() const { return delta_; }
  bool is_unit(int i) const { return delta(i) == 1; }
  /// delta_i mod p.
  FiniteField::Elem delta_bar(int i) const { return is_unit(i) ? 1 : 0; }
  /// gamma_i mod p: 0 if delta_i = 1, (p-1)! = -1 if delta_i = p.
  FiniteField::Elem gamma_bar(int i) const {
    return is_unit(i) ? 0 : k_->from_int(arith::factorial(p_ - 1) % p_);
  }
  /// gamma_i = p!/delta_i modulo p^2.
  std::int64_t gamma_mod_p2(int i) const {
    std::int64_t p2 = static_cast<std::int64_t>(p_) * p_;
    std::int64_t omega = arith::factorial(p_) % p2;
    return is_unit(i) ? omega : arith::factorial(p_ - 1) % p2;
  }
  /// Teichmuller lift of the residue of gamma_i, as an integer modulo m.
  std::int64_t lambda_mod(int i, std::int64_t m) const {
    std::int64_t g = static_cast<std::int64_t>(gamma_bar(i));
    if (g == 0) return 0;
    // [g] = lim g^{p^n}; modulo p^N the value g^{p^{N-1}} is exact.
    std::int64_t e = 1;
    while (e < m) e *= p_;
    return arith::pow_mod(g, static_cast<std::uint64_t>(e), m);
  }

  std::string delta_string() const {
    std::string s;
    for (int i = 0; i < r(); ++i) {
      if (i) s += ",";
      s += is_unit(i) ? "1" : "p";
    }
    return s;
  }

  /// Number of i with delta_{i-1} = p.
  int expected_dim_L() const {
    int n = 0;
    for (int i = 0; i < r(); ++i) n += is_unit(i - 1) ? 0 : 1;
    return n;
  }

 private:
  int p_;
  std::vector<int> delta_;
  FieldPtr k_;
};

/// A_k = k[X_1..X_r]/(X_i^p - delta_bar_i X_{i+1}).
inline AlgebraPtr coordinate_ring_mod_p(const RaynaudScheme& G) {
  std::vector<GeneratorRule> gens;
  for (int i = 0; i < G.r(); ++i) {
    GeneratorRule g{"X" + std::to_string(i + 1), static_cast<unsigned>(G.p()), std::nullopt};
    if (G.is_unit(i)) g.successor = static_cast<unsigned>(G.idx(i + 1));
    gens.push_back(g);
  }
  return std::make_shared<const NilpotentAlgebra>(G.field(), gens);
}

/// One correction term of Delta(X_i): coef * X^{left} (x) X^{right}.
struct PairingTerm {
  std::vector<unsigned> left, right;
  int h;
  FiniteField::Elem coef;
};

/// The comultiplication Delta : A_k -> A_k (x) A_k of a Raynaud scheme.
class Comultiplication {
 public:
  using Element = NilpotentAlgebra::Element;

  explicit Comultiplication(const RaynaudScheme& G) : G_(G) {
    A_ = coordinate_ring_mod_p(G);
    AA_ = NilpotentAlgebra::tensor({A_, A_});
    AAA_ = NilpotentAlgebra::tensor({A_, A_, A_});
    const FiniteField& k = *G.field();
    int p = G.p(), r = G.r();
    std::int64_t cyc = arith::ipow(p, r) - 1;
    std::uint64_t count = static_cast<std::uint64_t>(arith::ipow(p, r));
    auto digits = [&](std::uint64_t code) {
      std::vector<unsigned> d(r);
      for (int j = 0; j < r; ++j) {
        d[j] = static_cast<unsigned>(code % p);
        code /= p;
      }
      return d;
    };
    terms_.resize(r);
    images_.resize(r);
    for (int i = 0; i < r; ++i) {
      std::vector<std::uint64_t> unit(2 * r, 0);
      unit[i] = 1;
      Element img = AA_->term(unit, 1);
      unit[i] = 0;
      unit[r + i] = 1;
      img = AA_->add(img, AA_->term(unit, 1));
      std::int64_t target = arith::mod(arith::ipow(p, i), cyc);
      for (std::uint64_t c1 = 0; c1 < count; ++c1) {
        auto a1 = digits(c1);
        for (std::uint64_t c2 = 0; c2 < count; ++c2) {
          auto a2 = digits(c2);
          std::int64_t N = 0;
          bool trivial_left = c1 == 0, trivial_right = c2 == 0;
          for (int j = 0; j < r; ++j) N += static_cast<std::int64_t>(a1[j] + a2[j]) * arith::ipow(p, j);
          if (arith::mod(N, cyc) != target) continue;
          // The two primitive terms X_i (x) 1 and 1 (x) X_i.
          if ((trivial_left && N == arith::ipow(p, i)) || (trivial_right && N == arith::ipow(p, i))) continue;
          int h = carry_length(a1, a2, i);
          FiniteField::Elem coef = 1;
          for (int t = 1; t <= h; ++t) coef = k.mul(coef, G.gamma_bar(i - t));
          std::int64_t fact = 1;
          for (int j = 0; j < r; ++j)
            fact = arith::mul_mod(fact, arith::factorial(a1[j]) * arith::factorial(a2[j]) % p, p);
          coef = k.mul(coef, k.from_int(arith::inv_mod(fact, p)));
          terms_[i].push_back({a1, a2, h, coef});
          if (!coef) continue;
          std::vector<std::uint64_t> e(2 * r);
          for (int j = 0; j < r; ++j) {
            e[j] = a1[j];
            e[r + j] = a2[j];
          }
          img = AA_->add(img, AA_->term(e, coef));
        }
      }
      images_[i] = img;
    }
  }

  const RaynaudScheme& scheme() const { return G_; }
  const AlgebraPtr& algebra() const { return A_; }
  const AlgebraPtr& tensor_square() const { return AA_; }
  const AlgebraPtr& tensor_cube() const { return AAA_; }
  const Element& image(int i) const { return images_[G_.idx(i)]; }
  const std::vector<PairingTerm>& pairing_terms(int i) const { return terms_[G_.idx(i)]; }

  /// Delta(x), multiplicative on monomials.
  Element apply(const Element& x) const {
    Element out;
    for (const auto& [m, c] : x) {
      Element term = AA_->constant(c);
      auto e = A_->exponents(m);
      for (std::size_t j = 0; j < e.size(); ++j)
        if (e[j]) term = AA_->mul(term, AA_->pow(images_[j], e[j]));
      out = AA_->add(out, term);
    }
    return out;
  }

  /// Embeddings A -> A (x) A.
  Element left(const Element& x) const { return NilpotentAlgebra::embed(x, 1); }
  Element right(const Element& x) const { return NilpotentAlgebra::embed(x, A_->dimension()); }

  bool relations_respected() const {
    for (int i = 0; i < G_.r(); ++i) {
      Element lhs = AA_->pow(image(i), static_cast<std::uint64_t>(G_.p()));
      Element rhs = AA_->scale(G_.delta_bar(i), image(i + 1));
      if (lhs != rhs) return false;
    }
    return true;
  }

  /// (Delta (x) 1) Delta = (1 (x) Delta) Delta on the generators.
  bool coassociative() const {
    const NilpotentAlgebra::Monomial d = A_->dimension();
    for (int i = 0; i < G_.r(); ++i) {
      Element lhs, rhs;
      for (const auto& [m, c] : image(i)) {
        NilpotentAlgebra::Monomial m1 = m % d, m2 = m / d;
        Element a = apply(Element{{m1, 1}});
        Element b = apply(Element{{m2, 1}});
        // Delta(m1) (x) m2 occupies factors (1,2),(3); m1 (x) Delta(m2) factors (1),(2,3).
        lhs = AAA_->add(lhs, AAA_->scale(c, AAA_->mul(NilpotentAlgebra::embed(a, 1), Element{{m2 * d * d, 1}})));
        rhs = AAA_->add(rhs, AAA_->scale(c, AAA_->mul(Element{{m1, 1}}, NilpotentAlgebra::embed(b, d))));
      }
      if (lhs != rhs) return false;
    }
    return true;
  }

  /// (eps (x) 1) Delta = id = (1 (x) eps) Delta on the generators, eps(X_j) = 0.
  bool counital() const {
    const NilpotentAlgebra::Monomial d = A_->dimension();
    for (int i = 0; i < G_.r(); ++i) {
      Element l, r;
      for (const auto& [m, c] : image(i)) {
        if (m % d == 0) l = A_->add(l, Element{{m / d, c}});
        if (m / d == 0) r = A_->add(r, Element{{m % d, c}});
      }
      if (l != A_->generator(i) || r != A_->generator(i)) return false;
    }
    return true;
  }

 private:
  /// The unique h in (0, r] with c_{i-h} = p, c_{i-k} = p-1 for 0 < k < h
  /// and c_j = 0 otherwise, where c = a1 + a2.
  int carry_length(const std::vector<unsigned>& a1, const std::vector<unsigned>& a2, int i) const {
    int r = G_.r(), p = G_.p(), found = 0, which = 0;
    for (int h = 1; h <= r; ++h) {
      bool ok = true;
      std::vector<bool> seen(r, false);
      for (int t = 1; t <= h && ok; ++t) {
        int j = G_.idx(i - t);
        unsigned want = t == h ? p : p - 1;
        if (a1[j] + a2[j] != want) ok = false;
        seen[j] = true;
      }
      for (int j = 0; j < r && ok; ++j)
        if (!seen[j] && (a1[j] || a2[j])) ok = false;
      if (ok) {
        ++found;
        which = h;
      }
    }
    if (found != 1)
      throw InvalidPairing("exponent pair admits " + std::to_string(found) + " carry lengths for X" +
                           std::to_string(i + 1));
    return which;
  }

  RaynaudScheme G_;
  AlgebraPtr A_, AA_, AAA_;
  std::vector<std::vector<PairingTerm>> terms_;
  std::vector<Element> images_;
};

/// The covectors e_i: depth n entry (prod_{k=1}^{n} gamma_bar_{i-k}) X_{i-n}.
/// With every delta equal to p they never terminate and repeat with period r
/// and twist (-1)^r.
inline std::vector<Covector> dieudonne_covectors(const RaynaudScheme& G, const AlgebraPtr& A) {
  const FiniteField& k = *G.field();
  int r = G.r();
  bool periodic = true;
  for (int i = 0; i < r; ++i)
    if (G.is_unit(i)) periodic = false;
  std::vector<Covector> out;
  for (int i = 0; i < r; ++i) {
    std::vector<Covector::Element> entries;
    FiniteField::Elem c = 1;
    for (int n = 0; n < (periodic ? r : r + 1); ++n) {
      if (n > 0) c = k.mul(c, G.gamma_bar(i - n));
      if (!c) break;
      entries.push_back(A->generator(static_cast<unsigned>(G.idx(i - n)), c));
    }
    if (periodic) {
      FiniteField::Elem twist = k.from_int(r % 2 ? -1 : 1);
      out.emplace_back(A, entries, PeriodicTail{0, static_cast<std::size_t>(r), twist});
    } else {
      out.emplace_back(A, entries);
    }
  }
  return out;
}

/// Delta(e_i) against e_i (x) 1 + 1 (x) e_i on the depth window [0, 2r+2].
inline VerificationReport verify_hom_condition(const RaynaudScheme& G, std::size_t depth = 0) {
  VerificationReport rep;
  rep.id = "hom-condition";
  rep.claim = "Delta(e_i) = e_i(x)1 + 1(x)e_i for the covectors e_i";
  rep.inputs = {{"p", G.p()}, {"r", G.r()}, {"delta", G.delta_string()}};
  std::size_t window = depth ? depth : static_cast<std::size_t>(2 * G.r() + 2);
  rep.inputs["window"] = window;
  Comultiplication delta(G);
  rep.expect_true("Delta respects X_i^p = delta_i X_{i+1}", delta.relations_respected(), source::kIdentity);
  rep.expect_true("coassociativity on generators", delta.coassociative(), source::kIdentity);
  rep.expect_true("counit law on generators", delta.counital(), source::kIdentity);
  auto es = dieudonne_covectors(G, delta.algebra());
  CovectorAddOptions opt{window};
  for (int i = 0; i < G.r(); ++i) {
    const Covector& e = es[i];
    Covector lhs = map_entries(e, delta.tensor_square(), [&](const Covector::Element& x) { return delta.apply(x); });
    Covector l = map_entries(e, delta.tensor_square(), [&](const Covector::Element& x) { return delta.left(x); });
    Covector rgt = map_entries(e, delta.tensor_square(), [&](const Covector::Element& x) { return delta.right(x); });
    Covector rhs = covector_add(l, rgt, opt);
    rep.expect_true("e" + std::to_string(i + 1), lhs.equal_on_window(rhs, window), source::kReference);
  }
  return rep;
}

}  // namespace honda
