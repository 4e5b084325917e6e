#pragma once

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace honda {

using json = nlohmann::json;

enum class Status { Pass, Fail, Inconclusive };

inline std::string to_string(Status s) {
  switch (s) {
    case Status::Pass: return "pass";
    case Status::Fail: return "fail";
    default: return "inconclusive";
  }
}

/// Where an expected value comes from: a value stated in the literature, an
/// independent computation in this code base, or an algebraic identity.
namespace source {
inline constexpr const char* kReference = "reference-value";
inline constexpr const char* kOracle = "computed-oracle";
inline constexpr const char* kIdentity = "identity";
}  // namespace source

struct Check {
  std::string name;
  json computed;
  json expected;
  std::string source;
  Status status = Status::Pass;
  std::string note;
};

/// Structured record of one verification: every computed value next to the
/// value it is checked against. Status is pass only if every check passes.
struct VerificationReport {
  std::string id;
  std::string claim;
  json inputs = json::object();
  json computed = json::object();
  std::vector<Check> checks;
  std::vector<std::string> assumptions;
  std::optional<double> runtime_ms;
  std::optional<std::string> error;

  Status status() const {
    if (error) return Status::Fail;
    bool inconclusive = false;
    for (const auto& c : checks) {
      if (c.status == Status::Fail) return Status::Fail;
      if (c.status == Status::Inconclusive) inconclusive = true;
    }
    return inconclusive ? Status::Inconclusive : Status::Pass;
  }

  /// Exact comparison.
  Check& expect(std::string name, json computed_value, json expected_value, std::string src) {
    Status st = computed_value == expected_value ? Status::Pass : Status::Fail;
    checks.push_back({std::move(name), std::move(computed_value), std::move(expected_value), std::move(src), st, {}});
    return checks.back();
  }
  Check& expect_true(std::string name, bool ok, std::string src) { return expect(std::move(name), ok, true, std::move(src)); }
  Check& inconclusive(std::string name, json computed_value, std::string note) {
    checks.push_back({std::move(name), std::move(computed_value), nullptr, source::kOracle, Status::Inconclusive, std::move(note)});
    return checks.back();
  }

  json to_json() const {
    json j;
    j["id"] = id;
    j["claim"] = claim;
    j["inputs"] = inputs;
    j["computed"] = computed;
    j["status"] = to_string(status());
    j["assumptions"] = assumptions;
    json cs = json::array();
    for (const auto& c : checks) {
      json x{{"name", c.name}, {"computed", c.computed}, {"expected", c.expected},
             {"source", c.source}, {"status", to_string(c.status)}};
      if (!c.note.empty()) x["note"] = c.note;
      cs.push_back(x);
    }
    j["checks"] = cs;
    if (error) j["error"] = *error;
    if (runtime_ms) j["runtime_ms"] = *runtime_ms;
    return j;
  }
};

}  // namespace honda
