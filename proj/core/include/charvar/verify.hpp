#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace charvar {

/// Outcome of one self-check suite.
struct SuiteReport {
  std::string name;
  long checks = 0;
  long failures = 0;
  /// First few failure messages.
  std::vector<std::string> messages;

  bool ok() const { return failures == 0; }
};

/// "group", "trace", "reduction", "hyperbolic", "dynamics".
const std::vector<std::string_view>& verify_suite_names();

/// Randomized property checks of one module. Throws std::invalid_argument
/// for an unknown suite name.
SuiteReport run_verify_suite(std::string_view name, std::uint64_t seed);

}  // namespace charvar
