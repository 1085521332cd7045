#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace nsm::harness {

struct SuiteResult {
  std::string name;
  bool passed;
  std::string detail;
};

/// Property suites over random instances: projection, normalization,
/// gradients, the toy angle constant, curvature bracket, channel frequency,
/// step-size identity, and byte-identical CSV output on re-run.
std::vector<SuiteResult> run_verify_suites(std::uint64_t seed = 1);

}  // namespace nsm::harness
