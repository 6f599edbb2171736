#pragma once

// Empirical convexity/concavity of g = |f''|^q on a uniform grid. This is a
// sampling check (midpoint convexity on every grid pair), not a proof.
// Defects are measured relative to the largest of the three values in each
// pair, so a violation where g is small is not hidden by large g elsewhere.

#include <optional>
#include <string_view>

#include "ccq/funcat.hpp"
#include "ccq/interval.hpp"
#include "ccq/kernels.hpp"

namespace ccq {

enum class ShapeVerdict { Convex, Concave, Neither, Affine };

std::string_view to_string(ShapeVerdict v);

inline constexpr int kDefaultShapeGrid = 256;
inline constexpr double kShapeTolerance = 1e-12;

struct ShapeReport {
  double a = 0, b = 0;  // interval checked
  double q = 1;
  ShapeVerdict verdict = ShapeVerdict::Neither;
  int grid_size = kDefaultShapeGrid;
  // Relative violation of the hypothesis the verdict asserts (both for
  // Affine); for Neither, the smaller of the two.
  double max_violation = 0;
  std::optional<double> violating_point;
  double convex_violation = 0;   // max(0, max defect)
  double concave_violation = 0;  // max(0, -min defect)
  double tolerance = kShapeTolerance;

  bool admits_convex() const noexcept {
    return verdict == ShapeVerdict::Convex || verdict == ShapeVerdict::Affine;
  }
  bool admits_concave() const noexcept {
    return verdict == ShapeVerdict::Concave || verdict == ShapeVerdict::Affine;
  }
};

// grid_size >= 16, q >= 1, iv inside the function's domain.
ShapeReport check_shape(const Fn2& fn, const Interval& iv, double q,
                        int grid_size = kDefaultShapeGrid);

// Same verdict logic on caller-provided samples g_0..g_n over [a, b] (any
// sign; with Scale::Log, ln g_i of a nonnegative g).
ShapeReport classify_samples(std::span<const double> g, const Interval& iv, double q,
                             bool parallel = true,
                             kernels::Scale scale = kernels::Scale::Linear);

}  // namespace ccq
