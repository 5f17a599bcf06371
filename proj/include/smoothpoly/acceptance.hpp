#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "smoothpoly/common.hpp"

namespace smoothpoly {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;              // one-line summary
  std::vector<std::string> table;  // optional rows for inspection
  double seconds = 0;
};

struct AcceptanceOptions {
  std::uint64_t seed = 1;
  Limits limits{};
};

constexpr int kCriteria = 12;

const char* criterion_name(int id);

/// Runs criterion id in [1, 12]; throws std::out_of_range otherwise.
CriterionResult run_criterion(int id, const AcceptanceOptions& options = {});

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& options = {});

/// "PASS  3 zero-prefix-identity  <detail>  (0.12 s)"
std::string format_result(const CriterionResult& r, bool timing = true);

}  // namespace smoothpoly
