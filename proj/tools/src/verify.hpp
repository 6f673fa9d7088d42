#pragma once

#include <cstdint>
#include <optional>
#include <string>

namespace rsc::cli {

struct VerifyOptions {
  std::string suite;
  std::uint32_t k = 2;
  std::uint32_t max_exponent = 5;
  std::uint64_t samples = 1000;
  std::uint64_t seed = 0;
};

struct VerifyReport {
  std::string property;
  std::uint64_t samples = 0;
  std::uint64_t failures = 0;
  std::optional<std::string> first_failure_witness;
};

/// Suites: trace, entries, bounds, freeness, prefilter, fixedpoint.
VerifyReport run_verify(const VerifyOptions& options);

}  // namespace rsc::cli
