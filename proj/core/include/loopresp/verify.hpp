#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace loopresp {

struct PropertyResult {
  std::string name;
  bool pass = false;
  std::string detail;
  double seconds = 0.0;
};

enum class Suite { fast, full };

// Runs the per-module invariant suites. `fast` excludes the long stiff
// time-domain integration; `full` includes it. Deterministic for a given
// seed.
std::vector<PropertyResult> run_suite(Suite suite, std::uint64_t seed);

// The acceptance criteria, one result per criterion (11 is split into its
// sub-checks). include_stiff adds the slow gamma3 = alpha^2 variant to the
// time-domain criterion.
std::vector<PropertyResult> acceptance_criteria(std::uint64_t seed, bool include_stiff);

bool all_passed(const std::vector<PropertyResult>& results);

}  // namespace loopresp
