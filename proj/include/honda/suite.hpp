#pragma once

#include <chrono>
#include <functional>
#include <string>
#include <vector>

#include "honda/core/witt.hpp"
#include "honda/curves/newton_polygon.hpp"
#include "honda/curves/sylow2.hpp"
#include "honda/curves/x015.hpp"
#include "honda/ext/ext_group.hpp"
#include "honda/ext/ramified_module.hpp"
#include "honda/numberfields/biquadratic.hpp"
#include "honda/numberfields/quadratic.hpp"
#include "honda/raynaud/honda_system.hpp"
#include "honda/raynaud/raynaud_scheme.hpp"
#include "honda/report.hpp"

namespace honda {

/// Copies the checks of sub into rep, prefixed, and records its status.
inline void absorb(VerificationReport& rep, const VerificationReport& sub, const std::string& prefix) {
  for (Check c : sub.checks) {
    c.name = prefix + ": " + c.name;
    rep.checks.push_back(std::move(c));
  }
  for (const auto& a : sub.assumptions)
    if (std::find(rep.assumptions.begin(), rep.assumptions.end(), a) == rep.assumptions.end()) rep.assumptions.push_back(a);
  if (sub.error) rep.checks.push_back({prefix + ": error", *sub.error, nullptr, source::kIdentity, Status::Fail, {}});
}

inline VerificationReport witt_identity_suite() {
  VerificationReport rep;
  rep.id = "witt-identity";
  rep.claim = "W_n(S_0..S_n) = W_n(Y) + W_n(Z) for p in {3,5}, n <= 3";
  for (unsigned p : {3u, 5u})
    for (unsigned n = 0; n <= 3; ++n)
      rep.expect_true("p=" + std::to_string(p) + " n=" + std::to_string(n),
                      verify_ghost_identity(p, witt_sum_polynomials(p, n), WittOperation::Sum), source::kIdentity);
  return rep;
}

inline VerificationReport congruence_suite() {
  VerificationReport rep;
  rep.id = "covector-congruence";
  rep.claim = "S_n agrees with the truncated covector sum modulo p and Y_{-m}^p, Z_{-m}^p (m >= 2)";
  for (unsigned n : {2u, 3u})
    rep.expect_true("p=3 n=" + std::to_string(n), covector_sum_congruence(3, n), source::kReference);
  return rep;
}

inline VerificationReport hom_condition_suite() {
  VerificationReport rep;
  rep.id = "hom-condition";
  rep.claim = "Delta(e_i) = e_i (x) 1 + 1 (x) e_i for every Raynaud scheme with p in {3,5,7}, r in {1,2}";
  int count = 0;
  for (int p : {3, 5, 7})
    for (int r : {1, 2})
      for (int mask = 0; mask < (1 << r); ++mask) {
        std::vector<int> delta;
        for (int i = 0; i < r; ++i) delta.push_back(mask >> i & 1 ? p : 1);
        RaynaudScheme G(p, delta);
        absorb(rep, verify_hom_condition(G), "p=" + std::to_string(p) + " delta=" + G.delta_string());
        ++count;
      }
  rep.computed = {{"schemes", count}};
  return rep;
}

inline VerificationReport honda_crosscheck_suite() {
  auto hs = honda_system(RaynaudScheme(3, {3, 1}));
  auto rep = honda_report(hs);
  rep.computed = honda_json(hs, rep);
  return rep;
}

inline VerificationReport ext_suite() {
  VerificationReport rep;
  rep.id = "ext1";
  rep.claim = "dim Ext^1 by enumeration equals the closed form";
  for (auto [dk, dF] : std::vector<std::pair<int, int>>{{1, 1}, {2, 1}, {1, 2}}) {
    auto sub = verify_ext1(FiniteField::make(3, dk), FiniteField::make(3, dF));
    std::string tag = "k=F_" + std::to_string(arith::ipow(3, dk)) + " F=F_" + std::to_string(arith::ipow(3, dF));
    absorb(rep, sub, tag);
    rep.computed[tag] = sub.computed;
  }
  rep.expect("(F_3, F_3)", ext1_dimension_bruteforce(FiniteField::make(3, 1), FiniteField::make(3, 1)), 2, source::kReference);
  rep.expect("(F_9, F_3)", ext1_dimension_bruteforce(FiniteField::make(3, 2), FiniteField::make(3, 1)), 4, source::kReference);
  rep.expect("(F_3, F_9)", ext1_dimension_bruteforce(FiniteField::make(3, 1), FiniteField::make(3, 2)), 2, source::kReference);
  return rep;
}

inline VerificationReport maprime_suite() {
  VerificationReport rep;
  rep.id = "m-aprime";
  rep.claim = "M_{A'} has dimension e dim M with the listed basis; kernel and Selmer bounds";
  for (auto [p, e] : std::vector<std::pair<int, int>>{{3, 2}, {5, 2}, {5, 4}, {7, 2}}) {
    auto mod = build_M_Aprime(omega2_module(FiniteField::make(p, 1)), {FieldVector{0, 1}}, p, e);
    auto sub = verify_basis_claim(mod);
    std::string tag = "p=" + std::to_string(p) + " e=" + std::to_string(e);
    absorb(rep, sub, tag);
    rep.computed[tag] = sub.computed;
  }
  return rep;
}

inline Curve sqrt3_example_curve() { return Curve::parse("0,s,0,1,1 over Q(sqrt(3))"); }

inline VerificationReport curve_example_suite() {
  VerificationReport rep;
  rep.id = "sqrt3-curve";
  rep.claim = "y^2 = x^3 + sqrt(3) x^2 + x + 1 has supersingular reduction at (sqrt 3) with two level-one characters";
  Curve E = sqrt3_example_curve();
  PrimeSpec P = PrimeSpec::over(3, 3);
  rep.inputs = {{"curve", E.to_string()}, {"prime", P.to_string()}};
  rep.expect("discriminant", E.discriminant().to_string(), (QuadElem(3, 32) * QuadElem(3, -14, 3)).to_string(), source::kReference);
  rep.expect_true("1728 Delta = c4^3 - c6^2", E.identities_hold(), source::kIdentity);
  rep.expect("reduction at (sqrt 3)", to_string(reduction_type(E, P)), "good", source::kReference);
  rep.expect("trace of Frobenius over F_3", frobenius_trace(E, P), 0, source::kReference);
  auto inertia = tame_inertia_type(E, P);
  absorb(rep, inertia.report, "inertia");
  std::vector<std::pair<int, int>> expected_vertices{{1, 2}, {3, 1}, {9, 0}};
  rep.expect("hull vertices", inertia.polygon.to_json()["vertices"], NewtonPolygon{{}, expected_vertices}.to_json()["vertices"],
             source::kOracle);
  rep.expect_true("(3,1) strictly below (1,2)-(9,0)", NewtonPolygon::strictly_below({3, 1}, {1, 2}, {9, 0}), source::kReference);
  rep.expect("inertia type", to_string(inertia.type), "Level1Pair", source::kReference);
  FormalSeries m3 = formal_mult_p(E, 3);
  rep.expect("t^3 coefficient of [3](t) is -8 a2", m3[3].to_string(), (QuadElem(3, -8) * E.a2()).to_string(), source::kReference);
  rep.computed = {{"discriminant", E.discriminant().to_string()}, {"newton_polygon", inertia.polygon.to_json()},
                  {"type", to_string(inertia.type)}};
  return rep;
}

inline VerificationReport x015_suite(const AssumptionSet& assumptions) {
  VerificationReport rep;
  rep.id = "x015";
  rep.claim = "point counts and torsion bounds for X_0(15); exactly eight points over Q(sqrt 2)";
  Curve X = x015_curve();
  for (auto [p, n] : std::vector<std::pair<std::int64_t, std::int64_t>>{{7, 8}, {13, 16}, {43, 40}})
    rep.expect("#X_0(15)(F_" + std::to_string(p) + ")", count_points(X, PrimeSpec::over(1, p)), n, source::kReference);
  rep.expect("torsion bound over Q(sqrt 2) divides 8", 8 % torsion_bound(x015_curve(2), {7}), 0, source::kReference);
  rep.expect("torsion bound over Q(sqrt 17) divides 8", 8 % torsion_bound(x015_curve(17), {13, 43}), 0, source::kReference);
  auto r2 = x015_report(2, assumptions);
  absorb(rep, r2, "d=2");
  rep.expect("conclusion for d=2", r2.computed["conclusion"], "exactly eight points, four cusps", source::kReference);
  auto r17 = x015_report(17, assumptions);
  absorb(rep, r17, "d=17");
  rep.computed = {{"d2", r2.computed}, {"d17", r17.computed}};
  return rep;
}

inline VerificationReport classno_suite() {
  VerificationReport rep;
  rep.id = "class-numbers";
  rep.claim = "h(Q(sqrt 2, sqrt -3)) = h(Q(sqrt 17, sqrt -3)) = 1; h(Q(sqrt -6)) = 2 is not reported as 1";
  for (auto [a, b] : std::vector<std::pair<int, int>>{{2, -3}, {17, -3}}) {
    BiquadraticField K(a, b);
    auto sub = class_number_one_check(K);
    absorb(rep, sub, K.name());
    bool all_have_generators = true;
    for (const auto& p : sub.computed["primes"])
      if (p["required"].get<bool>()) all_have_generators = all_have_generators && !p["generators"].empty();
    rep.expect_true(K.name() + ": generators for every Minkowski prime", all_have_generators, source::kOracle);
    rep.expect(K.name() + ": class number", sub.computed["class_number"], 1, source::kReference);
    rep.computed[K.name()] = sub.computed;
  }
  auto control = quadratic_class_number_one_check(-6);
  rep.expect("control Q(sqrt -6): class number", control.computed["class_number"], 2, source::kOracle);
  rep.expect("control Q(sqrt -6): not reported as 1", to_string(control.status()), "fail", source::kOracle);
  rep.computed["Q(sqrt(-6))"] = control.computed;
  return rep;
}

struct Criterion {
  int id;
  std::string name;
  double limit_seconds;
  std::function<VerificationReport()> run;
};

inline std::vector<Criterion> acceptance_criteria(const AssumptionSet& assumptions) {
  return {
      {1, "Witt polynomial identity", 10, witt_identity_suite},
      {2, "covector sum congruence", 30, congruence_suite},
      {3, "Raynaud homomorphism condition", 120, hom_condition_suite},
      {4, "Honda system for (3, 2, (p,1))", 60, honda_crosscheck_suite},
      {5, "Ext^1 dimensions", 60, ext_suite},
      {6, "M_{A'} basis and bounds", 60, maprime_suite},
      {7, "supersingular curve over Q(sqrt 3)", 10, curve_example_suite},
      {8, "X_0(15) points", 10, [assumptions] { return x015_suite(assumptions); }},
      {9, "class numbers", 60, classno_suite},
      {10, "2-Sylow subgroup of GL_2(F_3)", 1, sylow2_check},
  };
}

struct CriterionResult {
  VerificationReport report;
  double seconds = 0;
  bool within_limit = true;
  bool passed() const { return report.status() == Status::Pass && within_limit; }
};

/// Runs one criterion, turning a thrown domain error into a failed report.
inline CriterionResult run_criterion(const Criterion& c) {
  CriterionResult res;
  auto t0 = std::chrono::steady_clock::now();
  try {
    res.report = c.run();
  } catch (const Error& e) {
    res.report.id = "criterion-" + std::to_string(c.id);
    res.report.error = e.what();
  }
  res.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  res.within_limit = res.seconds < c.limit_seconds;
  return res;
}

}  // namespace honda
