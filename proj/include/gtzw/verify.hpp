#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gtzw/json_io.hpp"
#include "gtzw/zw_measure.hpp"

namespace gtzw {

struct VerifyConfig {
  std::uint64_t seed = 20240917;
  /// Dougall truncation; the ladder K/16, K/8, ..., K is reported.
  std::int64_t dougall_truncation = 500;
  /// Run only these checks (all when empty).
  std::vector<std::string> only;
  std::size_t rmt_samples = 10000;
  std::size_t sampler_draws = 100000;
  unsigned workers = 1;
  /// Scales S_N of the top table in the coherency check by (1 + 1e-3).
  bool inject_fault = false;
};

struct CheckResult {
  std::string name;
  bool pass = false;
  Json details;
};

struct VerifyReport {
  std::vector<CheckResult> checks;
  bool all_pass() const;
  Json to_json() const;
};

/// Names of every check in suite order.
std::vector<std::string> verification_checks();

/// Runs the selected checks. Throws DomainError for an unknown check name.
VerifyReport run_verification(const VerifyConfig& config);

/// Principal parameter sets with Re(z+z'+w+w') >= 2 used for the Dougall sums.
std::vector<ZwParams> dougall_reference_params();
/// Parameter sets whose tables stay small: principal, complementary and
/// degenerate representatives.
std::vector<ZwParams> table_reference_params();

}  // namespace gtzw
