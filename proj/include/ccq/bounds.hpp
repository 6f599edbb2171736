#pragma once

// A-priori error bounds for the companion rule, |mean(f) - R(x)| <= bound,
// under convexity of |f''| (ConvexAbs), convexity of |f''|^q with a Hölder
// split (ConvexPower), or concavity of |f''|^q with a Jensen step
// (ConcavePower). Plus the fixed-x specializations, the trapezoid form with
// its derivative correction, a midpoint bound for concave |f''|^q, and the
// classical first-derivative Ostrowski bound for comparison.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ccq/funcat.hpp"
#include "ccq/interval.hpp"
#include "ccq/shape.hpp"

namespace ccq {

inline constexpr double kMaxHolderP = 1024;

// Conjugate exponents 1/p + 1/q = 1, with 1 < p <= 1024.
class HolderPair {
 public:
  static HolderPair from_p(double p);  // InvalidHolder outside (1, 1024]
  double p() const noexcept { return p_; }
  double q() const noexcept { return q_; }

 private:
  HolderPair(double p, double q) : p_(p), q_(q) {}
  double p_;
  double q_;
};

enum class Theorem {
  ConvexAbs,        // |f''| convex
  ConvexPower,      // |f''|^q convex, Hölder
  ConcavePower,     // |f''|^q concave, Hölder + Jensen
  Ostrowski,        // classical |f'| <= M bound on |f(x) - mean|
  MidpointConcave,  // midpoint rule, |f''|^q concave (prior-work form)
};

// Wire names used in JSON/CSV reports.
std::string_view wire_name(Theorem t);

enum class Gate {
  Verify,  // run check_shape and refuse if the hypothesis is not met
  Force,   // skip the check; recorded in the certificate
};

struct Sample {
  std::string label;  // which abscissa of the formula, e.g. "a+b-x"
  double t = 0;
  double value = 0;  // |f''(t)|
};

struct BoundCertificate {
  Theorem theorem = Theorem::ConvexAbs;
  double x = 0;
  std::optional<HolderPair> holder;
  double bound = 0;
  std::vector<Sample> samples;
  // Only valid when f'(x) = f'(a+b-x); see trapezoid_certificate.
  bool assumes_symmetric_derivative = false;
  Gate hypothesis = Gate::Verify;
  std::optional<ShapeVerdict> verdict;  // absent when forced
  // "general", "midpoint", "quarter" or "trapezoid".
  std::string variant = "general";
  std::optional<double> correction_term;
};

// Closed-form right-hand sides, evaluated in the order the formulas are
// written. Arguments named g* are |f''| at the abscissae noted.
namespace formulas {

// (|u|^q + |v|^q)^(1/q), evaluated on ratios to the larger of the two.
double qnorm(double u, double v, double q);

// g at a, x, a+b-x, b.
double convex_abs(const Interval& iv, double x, double ga, double gx, double gy, double gb);
double convex_q(const Interval& iv, double x, const HolderPair& hp, double ga, double gx,
                double gy, double gb);
// g at (x+a)/2, (a+b)/2, (a+2b-x)/2.
double concave_q(const Interval& iv, double x, const HolderPair& hp, double gl, double gm,
                 double gr);

// x = (a+b)/2; g at a, (a+b)/2, b.
double midpoint_convex_abs(const Interval& iv, double ga, double gm, double gb);
double midpoint_convex_q(const Interval& iv, const HolderPair& hp, double ga, double gm,
                         double gb);
// x = (3a+b)/4; g at a, (3a+b)/4, (a+3b)/4, b.
double quarter_convex_abs(const Interval& iv, double ga, double g1, double g3, double gb);
double quarter_convex_q(const Interval& iv, const HolderPair& hp, double ga, double g1, double g3,
                        double gb);
// x = (3a+b)/4; g at (7a+b)/8, (a+b)/2, (a+7b)/8.
double quarter_concave_q(const Interval& iv, const HolderPair& hp, double g1, double gm,
                         double g7);
// x = a; g at a, b.
double trapezoid_convex_q(const Interval& iv, const HolderPair& hp, double ga, double gb);
// Midpoint rule under concave |f''|^q; g at (3a+b)/4, (a+3b)/4.
double midpoint_concave(const Interval& iv, const HolderPair& hp, double g1, double g3);
// M(b-a)[1/4 + (x-(a+b)/2)^2/(b-a)^2]
double ostrowski(const Interval& iv, double x, double M);

}  // namespace formulas

// General-x bounds, x in [a, (a+b)/2]. The ShapeReport overloads accept a
// report computed by the caller (it must match iv and the exponent used).
BoundCertificate bound_convex_abs(const Fn2& fn, const Interval& iv, double x,
                                  Gate gate = Gate::Verify);
BoundCertificate bound_convex_abs(const Fn2& fn, const Interval& iv, double x,
                                  const ShapeReport& shape);

BoundCertificate bound_convex_q(const Fn2& fn, const Interval& iv, double x,
                                const HolderPair& hp, Gate gate = Gate::Verify);
BoundCertificate bound_convex_q(const Fn2& fn, const Interval& iv, double x,
                                const HolderPair& hp, const ShapeReport& shape);

// Depends on p only; q enters through the hypothesis check.
BoundCertificate bound_concave_q(const Fn2& fn, const Interval& iv, double x,
                                 const HolderPair& hp, Gate gate = Gate::Verify);
BoundCertificate bound_concave_q(const Fn2& fn, const Interval& iv, double x,
                                 const HolderPair& hp, const ShapeReport& shape);

// Every family whose hypothesis holds, specialized to x = (a+b)/2. Without hp
// only the ConvexAbs family is tried. ShapeHypothesisUnverified if none apply.
std::vector<BoundCertificate> midpoint_certificates(const Fn2& fn, const Interval& iv,
                                                    std::optional<HolderPair> hp = std::nullopt);
// Same at x = (3a+b)/4, where the derivative term of the rule vanishes.
std::vector<BoundCertificate> quarter_certificates(const Fn2& fn, const Interval& iv,
                                                   std::optional<HolderPair> hp = std::nullopt);

struct TrapezoidCertificate {
  // ConvexPower family at x = a. Valid for the raw trapezoid rule only when
  // f'(a) = f'(b) (assumes_symmetric_derivative is set).
  BoundCertificate cert;
  double raw_rule = 0;        // (f(a) + f(b))/2
  double correction = 0;      // -(b-a)/8 [f'(a) - f'(b)]
  double corrected_rule = 0;  // raw_rule - correction; bound holds unconditionally
  bool symmetry_violated = false;  // |f'(a) - f'(b)| > 1e-12 (1 + |f'(a)|)
};

TrapezoidCertificate trapezoid_certificate(const Fn2& fn, const Interval& iv,
                                           const HolderPair& hp, Gate gate = Gate::Verify);

struct OstrowskiBaseline {
  double M = 0;  // bound on |f'| over [a, b]

  // max |f'| over a uniform grid of grid_size+1 points.
  static OstrowskiBaseline from_grid(const Fn2& fn, const Interval& iv, int grid_size = 1024);
};

// Classical bound on |f(x) - mean|, x in [a, b].
double baseline_ostrowski(const Fn2& fn, const Interval& iv, double x,
                          const OstrowskiBaseline& M);

// Midpoint-rule bound (b-a)^2/(16(2p+1)^(1/p)) [|f''((3a+b)/4)| + |f''((a+3b)/4)|]
// for concave |f''|^q. Equals bound_concave_q at x = (a+b)/2.
double midpoint_concave_bound(const Fn2& fn, const Interval& iv, const HolderPair& hp,
                              Gate gate = Gate::Verify);

}  // namespace ccq
