#include "ccq/identity.hpp"

#include <cmath>
#include <sstream>

#include "ccq/error.hpp"
#include "ccq/oracle.hpp"

namespace ccq {

void require_left_half(const Interval& iv, double x) {
  if (!(iv.a() <= x && x <= iv.midpoint())) {
    std::ostringstream os;
    os.precision(17);
    os << "x = " << x << " outside [" << iv.a() << ", " << iv.midpoint() << "]";
    throw Error(ErrorCode::PointOutOfRange, os.str());
  }
}

CompanionValue companion_rule(const Fn2& fn, const Interval& iv, double x) {
  require_left_half(iv, x);
  fn.require(iv);
  const double y = iv.reflect(x);
  CompanionValue v;
  v.x = x;
  v.derivative_term = (x - iv.quarter_point()) * (fn.df(x) - fn.df(y)) / 2 + 0.0;  // no -0
  v.rule_value = (fn.f(x) + fn.f(y)) / 2 - v.derivative_term;
  return v;
}

double kernel_rhs(const Fn2& fn, const Interval& iv, double x, double oracle_tol) {
  require_left_half(iv, x);
  fn.require(iv);
  const double a = iv.a(), b = iv.b(), m = iv.midpoint(), y = iv.reflect(x);

  auto piece = [&](double lo, double hi, double centre) {
    if (!(lo < hi)) return 0.0;
    const Evaluator w = [&fn, centre](double t) { return (t - centre) * (t - centre) * fn.d2f(t); };
    return oracle::integrate(w, Interval(lo, hi), oracle_tol).value;
  };

  const double left = piece(a, x, a);
  const double middle = piece(x, y, m);
  const double right = piece(y, b, b);
  return (left + middle + right) / (2 * (b - a));
}

IdentityCheck identity_check(const Fn2& fn, const Interval& iv, double x, double oracle_tol) {
  IdentityCheck c;
  c.rule_value = companion_rule(fn, iv, x).rule_value;
  c.mean = oracle::mean_value(fn, iv, oracle_tol).value;
  c.rhs = kernel_rhs(fn, iv, x, oracle_tol);
  c.residual = std::abs((c.mean - c.rule_value) - c.rhs);
  return c;
}

double identity_residual(const Fn2& fn, const Interval& iv, double x, double oracle_tol) {
  return identity_check(fn, iv, x, oracle_tol).residual;
}

}  // namespace ccq
