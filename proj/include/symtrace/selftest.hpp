#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace symtrace {

struct SelftestCheck {
  std::string name;
  bool passed = false;
  std::string detail;  // filled on failure
};

struct SelftestReport {
  std::vector<SelftestCheck> checks;

  bool all_passed() const {
    for (const auto& c : checks)
      if (!c.passed) return false;
    return true;
  }
};

// Runs the whole invariant suite. inject_fault names a deliberate corruption
// used to prove the harness notices failures ("trace-poly-recurrence").
SelftestReport run_selftest(std::uint64_t seed, const std::string& inject_fault = "");

}  // namespace symtrace
