#pragma once

#include <algorithm>
#include <fstream>
#include <map>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "honda/curves/elliptic_curve.hpp"
#include "honda/report.hpp"

namespace honda {

/// gcd of #E(F_p) over the listed primes, each split in Q(sqrt d) and of
/// good reduction. Bounds the order of E(K)_tors.
inline std::int64_t torsion_bound(const Curve& E, const std::vector<std::int64_t>& primes) {
  if (primes.empty()) throw InvalidArgument("torsion_bound needs at least one prime");
  std::int64_t g = 0;
  for (std::int64_t p : primes) {
    PrimeSpec P = PrimeSpec::over(E.d(), p);
    if (P.kind != PrimeKind::Split && P.kind != PrimeKind::Rational)
      throw PrimeNotSplit(std::to_string(p) + " does not split in Q(sqrt(" + std::to_string(E.d()) + "))");
    if (reduction_type(E, P) != ReductionType::Good) throw BadReductionPrime("bad reduction at " + std::to_string(p));
    g = std::gcd(g, count_points(E, P));
  }
  return g;
}

/// Key=value lines; '#' starts a comment.
class AssumptionSet {
 public:
  static AssumptionSet parse(const std::string& text) {
    AssumptionSet a;
    std::istringstream in(text);
    std::string line;
    int n = 0;
    while (std::getline(in, line)) {
      ++n;
      auto hash = line.find('#');
      if (hash != std::string::npos) line.erase(hash);
      auto trim = [](std::string s) {
        auto b = s.find_first_not_of(" \t\r");
        auto e = s.find_last_not_of(" \t\r");
        return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
      };
      line = trim(line);
      if (line.empty()) continue;
      auto eq = line.find('=');
      if (eq == std::string::npos) throw InvalidArgument("assumption line " + std::to_string(n) + " is not key=value");
      a.values_[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
    }
    return a;
  }
  static AssumptionSet load(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw MissingAssumption("cannot read assumption file " + path);
    std::stringstream ss;
    ss << f.rdbuf();
    return parse(ss.str());
  }

  void set(const std::string& k, const std::string& v) { values_[k] = v; }
  bool has(const std::string& k) const { return values_.count(k) != 0; }
  const std::string& get(const std::string& k) const {
    auto it = values_.find(k);
    if (it == values_.end()) throw MissingAssumption(k);
    return it->second;
  }
  const std::map<std::string, std::string>& values() const { return values_; }

 private:
  std::map<std::string, std::string> values_;
};

/// X_0(15): y^2 + xy + y = x^3 + x^2 - 10x - 10.
inline Curve x015_curve(std::int64_t d = 1) {
  std::array<QuadElem, 5> a{QuadElem(d, 1), QuadElem(d, 1), QuadElem(d, 1), QuadElem(d, -10), QuadElem(d, -10)};
  return Curve(d, a);
}

/// Models of twists that can be checked against X_0(15) directly.
inline std::optional<Curve> known_twist_model(const std::string& label) {
  if (label == "960G3") return Curve::over_q({0, 1, 0, -641, -3105});
  return std::nullopt;
}

/// E' over Q is the quadratic twist of E by d: c4' = u^4 d^2 c4 and c6' = u^6 d^3 c6 with u in Q.
inline bool is_quadratic_twist(const Curve& E, const Curve& Et, std::int64_t d) {
  if (E.d() != 1 || Et.d() != 1) throw InvalidArgument("twist check expects curves over Q");
  mpq_class D = d;
  mpq_class c4 = E.c4().x(), c6 = E.c6().x(), c4t = Et.c4().x(), c6t = Et.c6().x();
  if (c4 == 0 || c6 == 0) throw InvalidArgument("twist check assumes c4 c6 != 0");
  mpq_class r4 = c4t / (D * D * c4), r6 = c6t / (D * D * D * c6);
  mpq_class u2 = r6 / r4;
  if (u2 * u2 != r4 || u2 * u2 * u2 != r6) return false;
  mpz_class num = u2.get_num(), den = u2.get_den();
  return num > 0 && mpz_perfect_square_p(num.get_mpz_t()) && mpz_perfect_square_p(den.get_mpz_t());
}

/// Rational points of E over Q with x = m/n^2, |m| <= height, 1 <= n <= max_den.
inline std::vector<CurvePoint> search_rational_points(const Curve& E, long height, long max_den) {
  std::vector<CurvePoint> pts{CurvePoint{}};
  for (long n = 1; n <= max_den; ++n)
    for (long m = -height; m <= height; ++m) {
      if (std::gcd(m, n) != 1) continue;
      mpq_class x(m, n * n);
      x.canonicalize();
      mpq_class a1 = E.a1().x(), a2 = E.a2().x(), a3 = E.a3().x(), a4 = E.a4().x(), a6 = E.a6().x();
      mpq_class lin = a1 * x + a3;
      mpq_class disc = lin * lin + 4 * (x * x * x + a2 * x * x + a4 * x + a6);
      if (disc < 0) continue;
      mpz_class dn = disc.get_num(), dd = disc.get_den();
      if (!mpz_perfect_square_p(dn.get_mpz_t()) || !mpz_perfect_square_p(dd.get_mpz_t())) continue;
      mpz_class sn, sd;
      mpz_sqrt(sn.get_mpz_t(), dn.get_mpz_t());
      mpz_sqrt(sd.get_mpz_t(), dd.get_mpz_t());
      mpq_class s(sn, sd);
      for (int sign : {1, -1}) {
        CurvePoint P = CurvePoint::at(QuadElem(1, x), QuadElem(1, (-lin + sign * s) / 2));
        if (std::find(pts.begin(), pts.end(), P) == pts.end()) pts.push_back(P);
      }
    }
  return pts;
}

/// Number of cusps of X_0(N): sum over d | N of phi(gcd(d, N/d)). All are
/// rational when that gcd is at most 2 for every d.
inline std::pair<long, bool> x0_cusps(long N) {
  auto phi = [](long n) {
    long r = n;
    for (long q = 2; q * q <= n; ++q)
      if (n % q == 0) {
        while (n % q == 0) n /= q;
        r -= r / q;
      }
    if (n > 1) r -= r / n;
    return r;
  };
  long count = 0;
  bool rational = true;
  for (long d = 1; d <= N; ++d)
    if (N % d == 0) {
      long g = std::gcd(d, N / d);
      count += phi(g);
      rational = rational && g <= 2;
    }
  return {count, rational};
}

inline std::vector<std::int64_t> default_torsion_primes(std::int64_t d) {
  if (d == 2) return {7};
  if (d == 17) return {13, 43};
  std::vector<std::int64_t> ps;
  Curve E = x015_curve(d);
  for (std::int64_t p = 7; p < 200 && ps.size() < 3; ++p) {
    if (!arith::is_prime(p)) continue;
    PrimeSpec P = PrimeSpec::over(d, p);
    if (P.kind == PrimeKind::Split && reduction_type(E, P) == ReductionType::Good) ps.push_back(p);
  }
  return ps;
}

/// Points of X_0(15) over Q(sqrt d), given rank-zero facts supplied as external assumptions.
inline VerificationReport x015_report(std::int64_t d, const AssumptionSet& assumptions,
                                      std::vector<std::int64_t> primes = {}) {
  VerificationReport rep;
  rep.id = "x015";
  rep.claim = "X_0(15)(Q(sqrt(" + std::to_string(d) + "))) has exactly eight points, four of them cusps";
  if (primes.empty()) primes = default_torsion_primes(d);
  rep.inputs = {{"d", d}, {"primes", primes}};
  std::string label_key = "label.twist.d" + std::to_string(d);
  const std::string& rank_q = assumptions.get("rank.X015.Q");
  const std::string& label = assumptions.get(label_key);
  const std::string& rank_t = assumptions.get("rank." + label + ".Q");
  rep.assumptions = {"rank.X015.Q=" + rank_q, label_key + "=" + label, "rank." + label + ".Q=" + rank_t,
                     "rank E(Q(sqrt d)) = rank E(Q) + rank E^d(Q)"};

  Curve E = x015_curve(d);
  Curve EQ = x015_curve(1);
  json counts = json::object();
  for (std::int64_t p : primes) {
    PrimeSpec P = PrimeSpec::over(d, p);
    std::int64_t n = count_points(E, P);
    counts[std::to_string(p)] = n;
    rep.expect_true("Hasse bound at " + std::to_string(p), within_hasse_bound(n, p), source::kIdentity);
  }
  std::int64_t bound = torsion_bound(E, primes);
  rep.expect("torsion bound divides 8", 8 % bound == 0, true, source::kReference);

  auto pts = search_rational_points(EQ, 200, 12);
  bool all_torsion = true;
  json pj = json::array();
  for (const auto& P : pts) {
    all_torsion = all_torsion && on_curve(EQ, P) && torsion_order(EQ, P, 8).has_value() &&
                  8 % *torsion_order(EQ, P, 8) == 0;
    pj.push_back(P.to_string());
  }
  rep.expect("rational points found", pts.size(), 8u, source::kReference);
  rep.expect_true("found points have order dividing 8", all_torsion, source::kOracle);
  auto [cusps, cusps_rational] = x0_cusps(15);
  rep.expect("cusps of X_0(15)", cusps, 4, source::kReference);
  rep.expect_true("cusps are rational", cusps_rational, source::kIdentity);

  if (auto model = known_twist_model(label))
    rep.expect_true(label + " is the twist by " + std::to_string(d), is_quadratic_twist(EQ, *model, d), source::kOracle);
  else
    rep.assumptions.push_back(label + " is the twist of X_0(15) by " + std::to_string(d));

  bool ranks_zero = rank_q == "0" && rank_t == "0";
  std::string conclusion;
  if (!ranks_zero) {
    rep.inconclusive("rank zero", json{rank_q, rank_t}, "a positive rank leaves E(K) infinite or undecided");
    conclusion = "undecided";
  } else {
    // E(K) is torsion of order dividing bound and contains the points over Q.
    bool exact = bound == static_cast<std::int64_t>(pts.size());
    rep.expect("E(K) = E(Q)", exact, true, source::kOracle);
    conclusion = exact ? "exactly eight points, four cusps" : "torsion bound exceeds the known points";
  }
  rep.computed = {{"point_counts", counts},
                  {"torsion_bound", bound},
                  {"rational_points", pj},
                  {"cusps", cusps},
                  {"conclusion", conclusion}};
  return rep;
}

}  // namespace honda
