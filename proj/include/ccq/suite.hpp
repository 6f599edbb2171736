#pragma once

// Property suites over the function catalog: identity residuals, bound
// validity against the oracle, specialization consistency, sharpness,
// midpoint equality of the concave bounds, trapezoid discrimination,
// composite behaviour and seeded proposition checks.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace ccq {

enum class CaseStatus { Pass, Fail, Flagged };

std::string_view to_string(CaseStatus s);

// One checked inequality lhs <= rhs (for equalities lhs is the discrepancy
// and rhs the tolerance). margin = rhs - lhs.
struct SuiteCase {
  std::string case_id;
  std::string group;
  std::string theorem;
  double a = 0, b = 0;
  std::optional<double> x;
  std::optional<double> p;
  double lhs = 0;
  double rhs = 0;
  double margin = 0;
  CaseStatus status = CaseStatus::Pass;
  std::string detail;
};

struct SuiteConfig {
  std::uint64_t seed = 7;
  int grid = 21;         // x points on [a, (a+b)/2]
  int prop_pairs = 200;  // random (a, b) pairs for the propositions
};

struct SuiteResult {
  std::vector<SuiteCase> cases;  // sorted by case_id
  int passed = 0;
  int failed = 0;
  int flagged = 0;
};

// Uniform draw in (0, 1] from the raw 64-bit output: ((x >> 11) + 1) 2^-53.
double unit_open_closed(std::uint64_t x);

// The seeded (a, b) pairs, 0 < a < b <= 10.
std::vector<std::pair<double, double>> proposition_pairs(std::uint64_t seed, int count);

// Groups run in parallel; the result does not depend on the thread count.
SuiteResult run_suite(const SuiteConfig& cfg);

namespace serial {
SuiteResult run_suite(const SuiteConfig& cfg);
}  // namespace serial

}  // namespace ccq
