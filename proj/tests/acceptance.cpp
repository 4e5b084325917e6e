#include <cstdio>
#include <string>

#include "honda/suite.hpp"

#ifndef HONDA_DATA_DIR
#define HONDA_DATA_DIR "data"
#endif

int main(int argc, char** argv) {
  std::string path = argc > 1 ? argv[1] : std::string(HONDA_DATA_DIR) + "/x015_assumptions.txt";
  honda::AssumptionSet assumptions = honda::AssumptionSet::load(path);
  int failed = 0;
  for (const auto& c : honda::acceptance_criteria(assumptions)) {
    auto res = honda::run_criterion(c);
    std::printf("%s %2d %s (%.2fs)\n", res.passed() ? "PASS" : "FAIL", c.id, c.name.c_str(), res.seconds);
    if (!res.passed()) {
      ++failed;
      if (!res.within_limit) std::printf("     exceeded %.0fs limit\n", c.limit_seconds);
      for (const auto& chk : res.report.checks)
        if (chk.status != honda::Status::Pass)
          std::printf("     %s: %s\n", chk.name.c_str(), chk.computed.dump().c_str());
      if (res.report.error) std::printf("     %s\n", res.report.error->c_str());
    }
  }
  return failed ? 1 : 0;
}
