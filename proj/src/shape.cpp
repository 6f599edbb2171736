#include "ccq/shape.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

#include "ccq/error.hpp"
#include "ccq/kernels.hpp"

namespace ccq {

std::string_view to_string(ShapeVerdict v) {
  switch (v) {
    case ShapeVerdict::Convex: return "Convex";
    case ShapeVerdict::Concave: return "Concave";
    case ShapeVerdict::Neither: return "Neither";
    case ShapeVerdict::Affine: return "Affine";
  }
  return "?";
}

ShapeReport classify_samples(std::span<const double> g, const Interval& iv, double q,
                             bool parallel, kernels::Scale scale) {
  const std::size_t n = g.size() - 1;
  const kernels::DefectScan scan = parallel ? kernels::omp::midpoint_defects(g, scale)
                                            : kernels::serial::midpoint_defects(g, scale);

  ShapeReport r;
  r.a = iv.a();
  r.b = iv.b();
  r.q = q;
  r.grid_size = static_cast<int>(n);
  r.convex_violation = std::max(0.0, scan.max_defect);
  r.concave_violation = std::max(0.0, -scan.min_defect);

  const bool convex = r.convex_violation <= r.tolerance;
  const bool concave = r.concave_violation <= r.tolerance;
  auto mid = [&](std::size_t i, std::size_t j) {
    return kernels::grid_point(iv.a(), iv.b(), n, (i + j) / 2);
  };

  if (convex && concave) {
    r.verdict = ShapeVerdict::Affine;
    r.max_violation = std::max(r.convex_violation, r.concave_violation);
  } else if (convex) {
    r.verdict = ShapeVerdict::Convex;
    r.max_violation = r.convex_violation;
  } else if (concave) {
    r.verdict = ShapeVerdict::Concave;
    r.max_violation = r.concave_violation;
  } else {
    r.verdict = ShapeVerdict::Neither;
    r.max_violation = std::min(r.convex_violation, r.concave_violation);
  }

  if (r.verdict == ShapeVerdict::Neither) {
    r.violating_point = r.convex_violation <= r.concave_violation ? mid(scan.max_i, scan.max_j)
                                                                  : mid(scan.min_i, scan.min_j);
  } else if (r.max_violation > 0) {
    r.violating_point = r.max_violation == r.convex_violation ? mid(scan.max_i, scan.max_j)
                                                              : mid(scan.min_i, scan.min_j);
  }
  return r;
}

ShapeReport check_shape(const Fn2& fn, const Interval& iv, double q, int grid_size) {
  if (grid_size < 16) throw Error(ErrorCode::InvalidArgument, "shape grid_size must be >= 16");
  if (!(q >= 1) || !std::isfinite(q)) throw Error(ErrorCode::InvalidArgument, "shape exponent q must be >= 1");
  fn.require(iv);

  const auto n = static_cast<std::size_t>(grid_size);
  std::vector<double> d2 = kernels::omp::sample(fn.d2f_evaluator(), iv.a(), iv.b(), n);
  for (std::size_t i = 0; i <= n; ++i) {
    if (!std::isfinite(d2[i])) {
      std::ostringstream os;
      os << "f'' of " << fn.name() << " is not finite at t = "
         << kernels::grid_point(iv.a(), iv.b(), n, i);
      throw Error(ErrorCode::NonFiniteSample, os.str());
    }
    // ln g = q ln|f''|; g itself under- or overflows for large q.
    d2[i] = q * std::log(std::abs(d2[i]));
  }
  return classify_samples(d2, iv, q, true, kernels::Scale::Log);
}

}  // namespace ccq
