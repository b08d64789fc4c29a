// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Runtime budgets are enforced alongside the numerical checks.

#include <cstdio>
#include <cstring>
#include <map>
#include <string>

#include "loopresp/verify.hpp"

int main(int argc, char** argv) {
  std::uint64_t seed = 20260810;
  bool include_stiff = true;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--skip-stiff") == 0) {
      include_stiff = false;
    } else if (std::strcmp(argv[i], "--seed") == 0 && i + 1 < argc) {
      seed = std::strtoull(argv[++i], nullptr, 10);
    }
  }

  // Wall-clock budgets stated with the criteria (seconds).
  const std::map<std::string, double> budgets = {
      {"criterion 1", 10.0}, {"criterion 2", 10.0}, {"criterion 4", 120.0},
      {"criterion 11", 60.0},
  };

  const auto results = loopresp::acceptance_criteria(seed, include_stiff);
  int failures = 0;
  for (const auto& r : results) {
    bool pass = r.pass;
    std::string detail = r.detail;
    const std::string label = r.name.substr(0, r.name.find(':'));
    const auto budget = budgets.find(label);
    if (budget != budgets.end() && r.seconds > budget->second) {
      pass = false;
      detail += "[fail: runtime budget " + std::to_string(budget->second) + "s exceeded] ";
    }
    std::printf("[%s] %-46s %7.2fs  %s\n", pass ? "PASS" : "FAIL", r.name.c_str(), r.seconds,
                detail.c_str());
    if (!pass) ++failures;
  }
  std::printf("%d of %zu acceptance checks failed (seed %llu)\n", failures, results.size(),
              static_cast<unsigned long long>(seed));
  return failures == 0 ? 0 : 1;
}
