#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

namespace tropweil {

struct CriterionResult {
  int id = 0;
  std::string title;
  bool pass = false;        // the criterion as stated holds
  bool consistent = false;  // every computed certificate and cross-check verified
  std::string detail;
  double seconds = 0;
  double budget_seconds = 0;
  // Named data for reproducing a failure offline (matrices in the text format).
  std::vector<std::pair<std::string, std::string>> artifacts;
};

struct AcceptanceOptions {
  std::uint64_t seed = 20240601;
  std::vector<int> only;  // empty: all ten
};

inline constexpr int kCriterionCount = 10;

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& options,
                                            const std::function<void(const CriterionResult&)>& progress = {});
// One line per criterion: "[PASS] 3 complex multiplication (0.01 s): ...".
std::string format_line(const CriterionResult& r);

}  // namespace tropweil
