#include "ccq/oracle.hpp"

#include <cmath>
#include <sstream>
#include <vector>

#include "ccq/error.hpp"

namespace ccq::oracle {

namespace {

struct Cell {
  double l, r;
  double fl, fm, fr;
  double whole;  // Simpson on [l, r]
  int depth;
};

double simpson(double l, double r, double fl, double fm, double fr) {
  return (r - l) / 6 * (fl + 4 * fm + fr);
}

// Cells shallower than this are always split; guards against a lucky first
// estimate on symmetric integrands.
constexpr int kMinDepth = 3;

}  // namespace

OracleResult integrate(const Evaluator& g, const Interval& iv, double tol) {
  if (!(tol >= 1e-14)) throw Error(ErrorCode::InvalidArgument, "oracle tolerance must be >= 1e-14");

  OracleResult res;
  auto eval = [&](double t) {
    const double v = g(t);
    ++res.evaluations;
    if (!std::isfinite(v)) {
      std::ostringstream os;
      os << "integrand not finite at t = " << t;
      throw Error(ErrorCode::NonFiniteSample, os.str());
    }
    return v;
  };

  const double a = iv.a(), b = iv.b(), width = b - a;
  const double fa = eval(a), fm = eval(iv.midpoint()), fb = eval(b);
  std::vector<Cell> stack{{a, b, fa, fm, fb, simpson(a, b, fa, fm, fb), 0}};

  // Accepted contributions are summed left to right by always refining the
  // leftmost pending cell first (stack top holds the leftmost cell).
  double sum = 0, comp = 0;  // Kahan
  while (!stack.empty()) {
    const Cell c = stack.back();
    stack.pop_back();
    const double m = (c.l + c.r) / 2;
    const double flm = eval((c.l + m) / 2);
    const double fmr = eval((m + c.r) / 2);
    const double left = simpson(c.l, m, c.fl, flm, c.fm);
    const double right = simpson(m, c.r, c.fm, fmr, c.fr);
    const double diff = left + right - c.whole;
    const double local_tol = tol * ((c.r - c.l) / width);

    const bool too_narrow = !(c.l < (c.l + m) / 2 && (m + c.r) / 2 < c.r);
    if (c.depth >= kMinDepth && (std::abs(diff) <= 15 * local_tol || too_narrow)) {
      if (too_narrow && std::abs(diff) > 15 * local_tol) {
        throw Error(ErrorCode::OracleNonConvergence, "cell width reached floating-point resolution");
      }
      const double y = (left + right + diff / 15) - comp;
      const double t = sum + y;
      comp = (t - sum) - y;
      sum = t;
      res.abs_err_estimate += std::abs(diff) / 15;
      continue;
    }
    if (res.evaluations >= kEvaluationCap) {
      std::ostringstream os;
      os << "evaluation cap " << kEvaluationCap << " reached on [" << a << ", " << b << "]";
      throw Error(ErrorCode::OracleNonConvergence, os.str());
    }
    stack.push_back({m, c.r, c.fm, fmr, c.fr, right, c.depth + 1});
    stack.push_back({c.l, m, c.fl, flm, c.fm, left, c.depth + 1});
  }
  res.value = sum;
  return res;
}

OracleResult mean_value(const Fn2& fn, const Interval& iv, double tol) {
  fn.require(iv);
  OracleResult r = integrate(fn.f_evaluator(), iv, tol);
  r.value /= iv.width();
  r.abs_err_estimate /= iv.width();
  return r;
}

}  // namespace ccq::oracle
