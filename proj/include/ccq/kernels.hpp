#pragma once

// Data-parallel inner loops. Each kernel has a serial reference in
// kernels::serial and an OpenMP version in kernels::omp; both produce
// bit-identical results, which the tests check.

#include <cstddef>
#include <span>
#include <vector>

#include "ccq/funcat.hpp"

namespace ccq::kernels {

// How midpoint_defects reads its input.
enum class Scale {
  Linear,  // values g_i of any sign
  Log,     // ln g_i of a nonnegative g; -inf encodes g_i = 0
};

// Extremes of the relative midpoint-convexity defect
//   (g[(i+j)/2] - (g[i]+g[j])/2) / max(|g[i]|, |g[j]|, |g[(i+j)/2]|)
// over all pairs i < j with i+j even (0 when all three vanish). Ties resolve
// to the lexicographically smallest (i, j).
struct DefectScan {
  double max_defect = 0;  // > 0 means a convexity violation
  std::size_t max_i = 0, max_j = 0;
  double min_defect = 0;  // < 0 means a concavity violation
  std::size_t min_i = 0, min_j = 0;
  std::size_t pairs = 0;
};

// Uniform grid t_i = a + i (b-a)/n, i = 0..n, with t_n = b exactly.
double grid_point(double a, double b, std::size_t n, std::size_t i) noexcept;

namespace serial {
DefectScan midpoint_defects(std::span<const double> g, Scale scale = Scale::Linear);
std::vector<double> sample(const Evaluator& fn, double a, double b, std::size_t n);
}  // namespace serial

namespace omp {
DefectScan midpoint_defects(std::span<const double> g, Scale scale = Scale::Linear);
std::vector<double> sample(const Evaluator& fn, double a, double b, std::size_t n);
}  // namespace omp

// Pairwise (cascade) summation in index order; result does not depend on
// how the terms were produced.
double pairwise_sum(std::span<const double> terms) noexcept;

}  // namespace ccq::kernels
