#pragma once

// The companion rule
//   R(x) = [f(x) + f(a+b-x)]/2 - (x - (3a+b)/4)[f'(x) - f'(a+b-x)]/2,  x in [a, (a+b)/2],
// and the kernel identity expressing mean(f) - R(x) as
//   1/(2(b-a)) [ int_a^x (t-a)^2 f'' + int_x^{a+b-x} (t-(a+b)/2)^2 f'' + int_{a+b-x}^b (t-b)^2 f'' ].

#include "ccq/funcat.hpp"
#include "ccq/interval.hpp"

namespace ccq {

struct CompanionValue {
  double x = 0;
  double rule_value = 0;
  // (x - (3a+b)/4)[f'(x) - f'(a+b-x)]/2, already subtracted in rule_value.
  double derivative_term = 0;
};

// Throws PointOutOfRange unless a <= x <= (a+b)/2, DomainViolation if fn is
// not defined on iv.
void require_left_half(const Interval& iv, double x);

CompanionValue companion_rule(const Fn2& fn, const Interval& iv, double x);

// Right-hand side of the kernel identity; each of the three pieces is
// integrated by the oracle to absolute tolerance oracle_tol. Empty pieces
// (x = a, x = (a+b)/2) contribute exactly 0.
double kernel_rhs(const Fn2& fn, const Interval& iv, double x, double oracle_tol);

struct IdentityCheck {
  double mean = 0;
  double rule_value = 0;
  double rhs = 0;
  double residual = 0;  // |(mean - rule_value) - rhs|
};

IdentityCheck identity_check(const Fn2& fn, const Interval& iv, double x,
                             double oracle_tol = 1e-12);

double identity_residual(const Fn2& fn, const Interval& iv, double x, double oracle_tol = 1e-12);

}  // namespace ccq
