#pragma once

// Ground-truth quadrature. Nothing in here depends on the rule or bound code;
// the validation suites lean on that.

#include <cstdint>

#include "ccq/funcat.hpp"
#include "ccq/interval.hpp"

namespace ccq::oracle {

struct OracleResult {
  double value = 0;
  double abs_err_estimate = 0;
  std::int64_t evaluations = 0;
};

inline constexpr std::int64_t kEvaluationCap = std::int64_t{1} << 22;

// Adaptive Simpson with Richardson extrapolation. A cell [l, r] is accepted
// when |S(l,m) + S(m,r) - S(l,r)| <= 15 tol (r-l)/(b-a). tol >= 1e-14.
// Throws OracleNonConvergence when the evaluation cap is hit and
// NonFiniteSample when g is not finite at a node.
OracleResult integrate(const Evaluator& g, const Interval& iv, double tol);

// (1/(b-a)) * integral of fn.f over iv. tol applies to the integral, so the
// mean is accurate to tol/(b-a).
OracleResult mean_value(const Fn2& fn, const Interval& iv, double tol);

}  // namespace ccq::oracle
