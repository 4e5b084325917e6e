#include <CLI11.hpp>

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <optional>
#include <string>

#include "honda/suite.hpp"

using namespace honda;

namespace {

constexpr int kExitUsage = 64;

struct Output {
  bool text = false;
  bool timing = false;
};

int exit_code(Status s) {
  switch (s) {
    case Status::Pass: return 0;
    case Status::Inconclusive: return 2;
    default: return 1;
  }
}

void print_text(const VerificationReport& rep) {
  std::printf("%s: %s\n", rep.id.c_str(), to_string(rep.status()).c_str());
  if (!rep.claim.empty()) std::printf("  claim: %s\n", rep.claim.c_str());
  for (const auto& c : rep.checks)
    std::printf("  [%s] %s = %s (expected %s; %s)\n", to_string(c.status).c_str(), c.name.c_str(), c.computed.dump().c_str(),
                c.expected.dump().c_str(), c.source.c_str());
  for (const auto& a : rep.assumptions) std::printf("  assumes: %s\n", a.c_str());
  if (rep.error) std::printf("  error: %s\n", rep.error->c_str());
}

int emit(VerificationReport rep, const Output& out, double ms) {
  if (out.timing) rep.runtime_ms = ms;
  if (out.text) print_text(rep);
  else std::cout << rep.to_json().dump(2) << "\n";
  return exit_code(rep.status());
}

/// Runs a report builder, mapping domain errors to exit code 1.
int run(const std::function<VerificationReport()>& f, const Output& out) {
  auto t0 = std::chrono::steady_clock::now();
  try {
    VerificationReport rep = f();
    double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return emit(std::move(rep), out, ms);
  } catch (const Error& e) {
    json j{{"error", e.name()}, {"message", e.what()}};
    if (out.text) std::printf("error: %s\n", e.what());
    else std::cout << j.dump(2) << "\n";
    return 1;
  }
}

PrimeSpec parse_prime(std::int64_t d, const std::string& s) {
  auto colon = s.find(':');
  std::int64_t p = std::stoll(s.substr(0, colon));
  if (colon == std::string::npos) return PrimeSpec::over(d, p);
  return PrimeSpec::over(d, p, std::stoll(s.substr(colon + 1)));
}

VerificationReport curve_report(const std::string& what, const std::string& spec, const std::string& prime, int n, bool general) {
  Curve E = Curve::parse(spec);
  VerificationReport rep;
  rep.id = "curve-" + what;
  rep.inputs = {{"curve", E.to_string()}};
  if (what == "invariants") {
    rep.claim = "Weierstrass invariants";
    rep.expect_true("1728 Delta = c4^3 - c6^2 and 4 b8 = b2 b6 - b4^2", E.identities_hold(), source::kIdentity);
    rep.computed = {{"b2", E.b2().to_string()}, {"b4", E.b4().to_string()}, {"b6", E.b6().to_string()},
                    {"b8", E.b8().to_string()}, {"c4", E.c4().to_string()}, {"c6", E.c6().to_string()},
                    {"discriminant", E.discriminant().to_string()}, {"j", E.j_invariant().to_string()}};
    return rep;
  }
  if (prime.empty()) throw InvalidArgument("--prime is required for curve " + what);
  PrimeSpec P = parse_prime(E.d(), prime);
  rep.inputs["prime"] = P.to_string();
  if (what == "reduction") {
    rep.claim = "reduction type";
    rep.computed = {{"type", to_string(reduction_type(E, P))},
                    {"v_discriminant", P.valuation(E.discriminant())}};
  } else if (what == "count") {
    rep.claim = "number of points over the residue field";
    std::int64_t c = count_points(E, P);
    rep.expect_true("Hasse bound", within_hasse_bound(c, P.residue_order()), source::kIdentity);
    rep.computed = {{"count", c}, {"q", P.residue_order()}, {"trace", P.residue_order() + 1 - c}};
  } else if (what == "supersingular") {
    rep.claim = "supersingular reduction";
    rep.computed = {{"supersingular", is_supersingular(E, P)}, {"trace", frobenius_trace(E, P)}};
  } else if (what == "formal") {
    rep.claim = "[p](t) in the formal group";
    int p = static_cast<int>(P.p);
    FormalSeries f = n ? formal_mult_p(E, p, n) : formal_mult_p(E, p);
    json coeffs = json::array(), vals = json::array();
    for (int i = 0; i <= f.precision(); ++i) {
      coeffs.push_back(f[i].to_string());
      vals.push_back(f[i].is_zero() ? json(nullptr) : json(P.valuation(f[i])));
    }
    rep.expect("linear coefficient", f[1].to_string(), E.num(p).to_string(), source::kIdentity);
    rep.computed = {{"coefficients", coeffs}, {"valuations", vals}, {"precision", f.precision()}};
  } else if (what == "inertia") {
    auto res = tame_inertia_type(E, P, general);
    return res.report;
  } else {
    throw InvalidArgument("unknown curve subcommand " + what);
  }
  return rep;
}

VerificationReport verify_all(const AssumptionSet& a, bool timing) {
  VerificationReport rep;
  rep.id = "verify-all";
  rep.claim = "acceptance criteria 1-10";
  json results = json::array();
  for (const auto& c : acceptance_criteria(a)) {
    auto res = run_criterion(c);
    absorb(rep, res.report, "criterion " + std::to_string(c.id));
    json r{{"id", c.id}, {"name", c.name}, {"status", to_string(res.report.status())}};
    if (timing) r["seconds"] = res.seconds;
    results.push_back(r);
  }
  rep.computed = {{"criteria", results}};
  return rep;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Verification of the Honda system, Ext, curve and class number computations"};
  app.require_subcommand(1);
  app.fallthrough();
  Output out;
  app.add_flag("--text", out.text, "human-readable output");
  bool json_flag = false;
  app.add_flag("--json", json_flag, "JSON output (default)");
  app.add_flag("--timing", out.timing, "include runtimes");

  int p = 3, r = 2, e = 2, kdeg = 1, fdeg = 1, n = 0, height = 50;
  std::int64_t d = 2, a = 0, b = 0;
  std::string delta = "p,1", assume, curve_spec, prime, what;
  std::size_t depth = 0;
  bool general = false;

  auto* honda_cmd = app.add_subcommand("honda", "Dieudonne module and Honda system of a Raynaud scheme");
  honda_cmd->add_option("--p", p)->required();
  honda_cmd->add_option("--r", r)->required();
  honda_cmd->add_option("--delta", delta, "comma list of 1/p")->required();
  honda_cmd->add_option("--depth", depth, "covector truncation for the homomorphism check");

  auto* ext_cmd = app.add_subcommand("ext", "dim Ext^1 by enumeration and by formula");
  ext_cmd->add_option("--p", p);
  ext_cmd->add_option("--k-deg", kdeg)->required();
  ext_cmd->add_option("--f-deg", fdeg)->required();

  auto* ma_cmd = app.add_subcommand("maprime", "M_{A'} for the Omega_2 module");
  ma_cmd->add_option("--p", p)->required();
  ma_cmd->add_option("--e", e)->required();
  ma_cmd->add_option("--k-deg", kdeg);

  auto* curve_cmd = app.add_subcommand("curve", "elliptic curve computations");
  curve_cmd->add_option("what", what, "invariants | reduction | count | supersingular | formal | inertia")
      ->required()
      ->check(CLI::IsMember({"invariants", "reduction", "count", "supersingular", "formal", "inertia"}));
  curve_cmd->add_option("--curve", curve_spec, "\"a1,a2,a3,a4,a6 over Q(sqrt(d))\"")->required();
  curve_cmd->add_option("--prime", prime, "p or p:root (image of sqrt(d) for split p)");
  curve_cmd->add_option("--n", n, "precision of [p](t)");
  curve_cmd->add_flag("--general-p", general, "allow the inertia classification for p > 3");

  auto* x_cmd = app.add_subcommand("x015", "points of X_0(15) over Q(sqrt d)");
  x_cmd->add_option("--d", d)->required();
  x_cmd->add_option("--assume", assume, "assumption file")->required();

  auto* cn_cmd = app.add_subcommand("classno", "class number one checks");
  cn_cmd->add_option("--a", a, "first square root of a biquadratic field");
  cn_cmd->add_option("--b", b, "second square root of a biquadratic field");
  cn_cmd->add_option("--d", d, "quadratic field Q(sqrt d)");
  cn_cmd->add_option("--height", height, "coefficient height for generator search");

  app.add_subcommand("sylow2", "2-Sylow subgroup of GL_2(F_3)");

  auto* all_cmd = app.add_subcommand("verify-all", "run every acceptance criterion");
  all_cmd->add_option("--assume", assume, "assumption file for X_0(15)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& err) {
    int rc = app.exit(err);
    return rc == 0 ? 0 : kExitUsage;
  }
  if (out.text && json_flag) {
    std::fprintf(stderr, "--text and --json are exclusive\n");
    return kExitUsage;
  }

  if (*honda_cmd)
    return run([&] {
      RaynaudScheme G = RaynaudScheme::parse(p, delta);
      if (G.r() != r) throw InvalidArgument("--delta has " + std::to_string(G.r()) + " entries, --r is " + std::to_string(r));
      auto hs = honda_system(G);
      auto rep = honda_report(hs);
      absorb(rep, verify_hom_condition(G, depth), "hom condition");
      rep.computed = honda_json(hs, rep);
      return rep;
    }, out);
  if (*ext_cmd) return run([&] { return verify_ext1(FiniteField::make(p, kdeg), FiniteField::make(p, fdeg)); }, out);
  if (*ma_cmd)
    return run([&] {
      auto mod = build_M_Aprime(omega2_module(FiniteField::make(p, kdeg)), {FieldVector{0, 1}}, p, e);
      return verify_basis_claim(mod);
    }, out);
  if (*curve_cmd) return run([&] { return curve_report(what, curve_spec, prime, n, general); }, out);
  if (*x_cmd) return run([&] { return x015_report(d, AssumptionSet::load(assume)); }, out);
  if (*cn_cmd)
    return run([&] {
      if (a || b) return class_number_one_check(BiquadraticField(a, b), height);
      auto rep = quadratic_class_number_one_check(d, height);
      return rep;
    }, out);
  if (app.got_subcommand("sylow2")) return run(sylow2_check, out);
  if (*all_cmd) {
    std::string path = assume.empty() ? std::string(HONDA_DATA_DIR) + "/x015_assumptions.txt" : assume;
    return run([&] { return verify_all(AssumptionSet::load(path), out.timing); }, out);
  }
  return kExitUsage;
}
