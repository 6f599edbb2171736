#include "ccq/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "ccq/error.hpp"
#include "ccq/identity.hpp"
#include "ccq/kernels.hpp"

namespace ccq {

HolderPair HolderPair::from_p(double p) {
  if (!(p > 1) || !(p <= kMaxHolderP)) {
    std::ostringstream os;
    os << "p = " << p << " outside (1, " << kMaxHolderP << "]";
    throw Error(ErrorCode::InvalidHolder, os.str());
  }
  return HolderPair(p, p / (p - 1));
}

std::string_view wire_name(Theorem t) {
  switch (t) {
    case Theorem::ConvexAbs: return "T21_ConvexAbs";
    case Theorem::ConvexPower: return "T22_ConvexQ";
    case Theorem::ConcavePower: return "T23_ConcaveQ";
    case Theorem::Ostrowski: return "Baseline_Ostrowski";
    case Theorem::MidpointConcave: return "Cor11_s1";
  }
  return "?";
}

namespace formulas {

namespace {
double cube(double v) { return v * v * v; }
double holder_factor(const HolderPair& hp) { return std::pow(2 * hp.p() + 1, 1 / hp.p()); }
}  // namespace

double qnorm(double u, double v, double q) {
  u = std::abs(u);
  v = std::abs(v);
  const double m = std::max(u, v);
  if (m == 0) return 0;
  return m * std::pow(std::pow(u / m, q) + std::pow(v / m, q), 1 / q);
}

double convex_abs(const Interval& iv, double x, double ga, double gx, double gy, double gb) {
  const double a = iv.a(), b = iv.b();
  return cube(x - a) / (24 * (b - a)) * (ga + gb) +
         (6 * cube(x - a) + cube(a + b - 2 * x)) / (48 * (b - a)) * (gx + gy);
}

double convex_q(const Interval& iv, double x, const HolderPair& hp, double ga, double gx,
                double gy, double gb) {
  const double a = iv.a(), b = iv.b(), q = hp.q();
  return 1 / (std::pow(2, 1 + 1 / q) * (b - a) * holder_factor(hp)) *
         (cube(x - a) * qnorm(ga, gx, q) + cube(a + b - 2 * x) / 4 * qnorm(gx, gy, q) +
          cube(x - a) * qnorm(gy, gb, q));
}

double concave_q(const Interval& iv, double x, const HolderPair& hp, double gl, double gm,
                 double gr) {
  const double a = iv.a(), b = iv.b();
  return 1 / (2 * (b - a) * holder_factor(hp)) *
         (cube(x - a) * gl + cube(a + b - 2 * x) / 4 * gm + cube(x - a) * gr);
}

double midpoint_convex_abs(const Interval& iv, double ga, double gm, double gb) {
  const double w = iv.width();
  return w * w / 192 * (ga + 6 * gm + gb);
}

double midpoint_convex_q(const Interval& iv, const HolderPair& hp, double ga, double gm,
                         double gb) {
  const double w = iv.width(), q = hp.q();
  return w * w / (std::pow(2, 4 + 1 / q) * holder_factor(hp)) *
         (qnorm(ga, gm, q) + qnorm(gm, gb, q));
}

double quarter_convex_abs(const Interval& iv, double ga, double g1, double g3, double gb) {
  const double w = iv.width();
  return w * w / 1536 * (ga + 7 * g1 + 7 * g3 + gb);
}

double quarter_convex_q(const Interval& iv, const HolderPair& hp, double ga, double g1, double g3,
                        double gb) {
  const double w = iv.width(), q = hp.q();
  return w * w / (std::pow(2, 7 + 1 / q) * holder_factor(hp)) *
         (qnorm(ga, g1, q) + 2 * qnorm(g1, g3, q) + qnorm(g3, gb, q));
}

double quarter_concave_q(const Interval& iv, const HolderPair& hp, double g1, double gm,
                         double g7) {
  const double w = iv.width();
  return w * w / (128 * holder_factor(hp)) * (g1 + 2 * gm + g7);
}

double trapezoid_convex_q(const Interval& iv, const HolderPair& hp, double ga, double gb) {
  const double w = iv.width(), q = hp.q();
  return w * w / (std::pow(2, 3 + 1 / q) * holder_factor(hp)) * qnorm(ga, gb, q);
}

double midpoint_concave(const Interval& iv, const HolderPair& hp, double g1, double g3) {
  const double w = iv.width();
  return w * w / (16 * holder_factor(hp)) * (g1 + g3);
}

double ostrowski(const Interval& iv, double x, double M) {
  const double w = iv.width(), d = x - iv.midpoint();
  return M * w * (0.25 + d * d / (w * w));
}

}  // namespace formulas

namespace {

Sample sample(const Fn2& fn, std::string label, double t) {
  const double v = fn.d2f(t);
  if (!std::isfinite(v)) {
    std::ostringstream os;
    os << "f''(" << t << ") of " << fn.name() << " is not finite";
    throw Error(ErrorCode::NonFiniteSample, os.str());
  }
  return {std::move(label), t, std::abs(v)};
}

enum class Need { Convex, Concave };

void require_shape(const ShapeReport& shape, const Interval& iv, double q, Need need,
                   std::string_view what) {
  if (shape.a != iv.a() || shape.b != iv.b() || shape.q != q) {
    throw Error(ErrorCode::InvalidArgument,
                std::string(what) + ": shape report was computed for a different interval or q");
  }
  const bool ok = need == Need::Convex ? shape.admits_convex() : shape.admits_concave();
  if (!ok) {
    std::ostringstream os;
    os << what << ": |f''|^" << q << " is " << to_string(shape.verdict) << ", need "
       << (need == Need::Convex ? "convex" : "concave") << " (violation " << shape.max_violation
       << ")";
    throw Error(ErrorCode::ShapeHypothesisUnverified, os.str());
  }
}

ShapeReport verified_shape(const Fn2& fn, const Interval& iv, double q, Need need,
                           std::string_view what) {
  ShapeReport s = check_shape(fn, iv, q);
  require_shape(s, iv, q, need, what);
  return s;
}

BoundCertificate convex_abs_cert(const Fn2& fn, const Interval& iv, double x) {
  require_left_half(iv, x);
  fn.require(iv);
  BoundCertificate c;
  c.theorem = Theorem::ConvexAbs;
  c.x = x;
  c.samples = {sample(fn, "a", iv.a()), sample(fn, "x", x), sample(fn, "a+b-x", iv.reflect(x)),
               sample(fn, "b", iv.b())};
  c.bound = formulas::convex_abs(iv, x, c.samples[0].value, c.samples[1].value,
                                 c.samples[2].value, c.samples[3].value);
  return c;
}

BoundCertificate convex_q_cert(const Fn2& fn, const Interval& iv, double x, const HolderPair& hp) {
  require_left_half(iv, x);
  fn.require(iv);
  BoundCertificate c;
  c.theorem = Theorem::ConvexPower;
  c.x = x;
  c.holder = hp;
  c.samples = {sample(fn, "a", iv.a()), sample(fn, "x", x), sample(fn, "a+b-x", iv.reflect(x)),
               sample(fn, "b", iv.b())};
  c.bound = formulas::convex_q(iv, x, hp, c.samples[0].value, c.samples[1].value,
                               c.samples[2].value, c.samples[3].value);
  return c;
}

BoundCertificate concave_q_cert(const Fn2& fn, const Interval& iv, double x,
                                 const HolderPair& hp) {
  require_left_half(iv, x);
  fn.require(iv);
  const double a = iv.a(), b = iv.b();
  BoundCertificate c;
  c.theorem = Theorem::ConcavePower;
  c.x = x;
  c.holder = hp;
  c.samples = {sample(fn, "(x+a)/2", (x + a) / 2), sample(fn, "(a+b)/2", iv.midpoint()),
               sample(fn, "(a+2b-x)/2", (a + 2 * b - x) / 2)};
  c.bound = formulas::concave_q(iv, x, hp, c.samples[0].value, c.samples[1].value,
                                c.samples[2].value);
  return c;
}

void stamp(BoundCertificate& c, Gate gate, const ShapeReport* shape) {
  c.hypothesis = gate;
  if (shape) c.verdict = shape->verdict;
}

}  // namespace

BoundCertificate bound_convex_abs(const Fn2& fn, const Interval& iv, double x,
                                  const ShapeReport& shape) {
  require_shape(shape, iv, 1, Need::Convex, "convex |f''| bound");
  BoundCertificate c = convex_abs_cert(fn, iv, x);
  stamp(c, Gate::Verify, &shape);
  return c;
}

BoundCertificate bound_convex_abs(const Fn2& fn, const Interval& iv, double x, Gate gate) {
  if (gate == Gate::Verify) return bound_convex_abs(fn, iv, x, check_shape(fn, iv, 1));
  BoundCertificate c = convex_abs_cert(fn, iv, x);
  stamp(c, Gate::Force, nullptr);
  return c;
}

BoundCertificate bound_convex_q(const Fn2& fn, const Interval& iv, double x,
                                const HolderPair& hp, const ShapeReport& shape) {
  require_shape(shape, iv, hp.q(), Need::Convex, "convex |f''|^q bound");
  BoundCertificate c = convex_q_cert(fn, iv, x, hp);
  stamp(c, Gate::Verify, &shape);
  return c;
}

BoundCertificate bound_convex_q(const Fn2& fn, const Interval& iv, double x,
                                const HolderPair& hp, Gate gate) {
  if (gate == Gate::Verify) return bound_convex_q(fn, iv, x, hp, check_shape(fn, iv, hp.q()));
  BoundCertificate c = convex_q_cert(fn, iv, x, hp);
  stamp(c, Gate::Force, nullptr);
  return c;
}

BoundCertificate bound_concave_q(const Fn2& fn, const Interval& iv, double x,
                                 const HolderPair& hp, const ShapeReport& shape) {
  require_shape(shape, iv, hp.q(), Need::Concave, "concave |f''|^q bound");
  BoundCertificate c = concave_q_cert(fn, iv, x, hp);
  stamp(c, Gate::Verify, &shape);
  return c;
}

BoundCertificate bound_concave_q(const Fn2& fn, const Interval& iv, double x,
                                 const HolderPair& hp, Gate gate) {
  if (gate == Gate::Verify) return bound_concave_q(fn, iv, x, hp, check_shape(fn, iv, hp.q()));
  BoundCertificate c = concave_q_cert(fn, iv, x, hp);
  stamp(c, Gate::Force, nullptr);
  return c;
}

std::vector<BoundCertificate> midpoint_certificates(const Fn2& fn, const Interval& iv,
                                                    std::optional<HolderPair> hp) {
  fn.require(iv);
  const double a = iv.a(), b = iv.b(), m = iv.midpoint();
  std::vector<BoundCertificate> out;

  const ShapeReport s1 = check_shape(fn, iv, 1);
  if (s1.admits_convex()) {
    BoundCertificate c;
    c.theorem = Theorem::ConvexAbs;
    c.variant = "midpoint";
    c.x = m;
    c.samples = {sample(fn, "a", a), sample(fn, "(a+b)/2", m), sample(fn, "b", b)};
    c.bound = formulas::midpoint_convex_abs(iv, c.samples[0].value, c.samples[1].value,
                                            c.samples[2].value);
    stamp(c, Gate::Verify, &s1);
    out.push_back(std::move(c));
  }
  if (hp) {
    const ShapeReport sq = check_shape(fn, iv, hp->q());
    if (sq.admits_convex()) {
      BoundCertificate c;
      c.theorem = Theorem::ConvexPower;
      c.variant = "midpoint";
      c.x = m;
      c.holder = hp;
      c.samples = {sample(fn, "a", a), sample(fn, "(a+b)/2", m), sample(fn, "b", b)};
      c.bound = formulas::midpoint_convex_q(iv, *hp, c.samples[0].value, c.samples[1].value,
                                            c.samples[2].value);
      stamp(c, Gate::Verify, &sq);
      out.push_back(std::move(c));
    }
    if (sq.admits_concave()) {
      BoundCertificate c;
      c.theorem = Theorem::ConcavePower;
      c.variant = "midpoint";
      c.x = m;
      c.holder = hp;
      c.samples = {sample(fn, "(3a+b)/4", (3 * a + b) / 4), sample(fn, "(a+3b)/4", (a + 3 * b) / 4)};
      c.bound = formulas::midpoint_concave(iv, *hp, c.samples[0].value, c.samples[1].value);
      stamp(c, Gate::Verify, &sq);
      out.push_back(std::move(c));
    }
  }
  if (out.empty()) {
    throw Error(ErrorCode::ShapeHypothesisUnverified,
                "no bound family applies at the midpoint for " + fn.name());
  }
  return out;
}

std::vector<BoundCertificate> quarter_certificates(const Fn2& fn, const Interval& iv,
                                                   std::optional<HolderPair> hp) {
  fn.require(iv);
  const double a = iv.a(), b = iv.b(), x = iv.quarter_point();
  std::vector<BoundCertificate> out;

  const ShapeReport s1 = check_shape(fn, iv, 1);
  if (s1.admits_convex()) {
    BoundCertificate c;
    c.theorem = Theorem::ConvexAbs;
    c.variant = "quarter";
    c.x = x;
    c.samples = {sample(fn, "a", a), sample(fn, "(3a+b)/4", x),
                 sample(fn, "(a+3b)/4", (a + 3 * b) / 4), sample(fn, "b", b)};
    c.bound = formulas::quarter_convex_abs(iv, c.samples[0].value, c.samples[1].value,
                                           c.samples[2].value, c.samples[3].value);
    stamp(c, Gate::Verify, &s1);
    out.push_back(std::move(c));
  }
  if (hp) {
    const ShapeReport sq = check_shape(fn, iv, hp->q());
    if (sq.admits_convex()) {
      BoundCertificate c;
      c.theorem = Theorem::ConvexPower;
      c.variant = "quarter";
      c.x = x;
      c.holder = hp;
      c.samples = {sample(fn, "a", a), sample(fn, "(3a+b)/4", x),
                   sample(fn, "(a+3b)/4", (a + 3 * b) / 4), sample(fn, "b", b)};
      c.bound = formulas::quarter_convex_q(iv, *hp, c.samples[0].value, c.samples[1].value,
                                           c.samples[2].value, c.samples[3].value);
      stamp(c, Gate::Verify, &sq);
      out.push_back(std::move(c));
    }
    if (sq.admits_concave()) {
      BoundCertificate c;
      c.theorem = Theorem::ConcavePower;
      c.variant = "quarter";
      c.x = x;
      c.holder = hp;
      c.samples = {sample(fn, "(7a+b)/8", (7 * a + b) / 8), sample(fn, "(a+b)/2", iv.midpoint()),
                   sample(fn, "(a+7b)/8", (a + 7 * b) / 8)};
      c.bound = formulas::quarter_concave_q(iv, *hp, c.samples[0].value, c.samples[1].value,
                                            c.samples[2].value);
      stamp(c, Gate::Verify, &sq);
      out.push_back(std::move(c));
    }
  }
  if (out.empty()) {
    throw Error(ErrorCode::ShapeHypothesisUnverified,
                "no bound family applies at the quarter point for " + fn.name());
  }
  return out;
}

TrapezoidCertificate trapezoid_certificate(const Fn2& fn, const Interval& iv,
                                           const HolderPair& hp, Gate gate) {
  fn.require(iv);
  const double a = iv.a(), b = iv.b();
  TrapezoidCertificate t;
  BoundCertificate& c = t.cert;
  c.theorem = Theorem::ConvexPower;
  c.variant = "trapezoid";
  c.x = a;
  c.holder = hp;
  c.assumes_symmetric_derivative = true;
  if (gate == Gate::Verify) {
    const ShapeReport s = verified_shape(fn, iv, hp.q(), Need::Convex, "trapezoid bound");
    stamp(c, gate, &s);
  } else {
    stamp(c, gate, nullptr);
  }
  c.samples = {sample(fn, "a", a), sample(fn, "b", b)};
  c.bound = formulas::trapezoid_convex_q(iv, hp, c.samples[0].value, c.samples[1].value);

  const double da = fn.df(a), db = fn.df(b);
  t.raw_rule = (fn.f(a) + fn.f(b)) / 2;
  t.correction = -(b - a) / 8 * (da - db);
  t.corrected_rule = t.raw_rule - t.correction;
  t.symmetry_violated = std::abs(da - db) > 1e-12 * (1 + std::abs(da));
  c.correction_term = t.correction;
  return t;
}

OstrowskiBaseline OstrowskiBaseline::from_grid(const Fn2& fn, const Interval& iv, int grid_size) {
  if (grid_size < 1) throw Error(ErrorCode::InvalidArgument, "grid_size must be positive");
  fn.require(iv);
  const auto n = static_cast<std::size_t>(grid_size);
  double m = 0;
  for (std::size_t i = 0; i <= n; ++i) {
    const double v = std::abs(fn.df(kernels::grid_point(iv.a(), iv.b(), n, i)));
    if (!std::isfinite(v)) throw Error(ErrorCode::NonFiniteSample, "f' not finite on grid");
    m = std::max(m, v);
  }
  return {m};
}

double baseline_ostrowski(const Fn2& fn, const Interval& iv, double x,
                          const OstrowskiBaseline& M) {
  fn.require(iv);
  if (!iv.contains(x)) throw Error(ErrorCode::PointOutOfRange, "x outside [a, b]");
  if (!(M.M >= 0)) throw Error(ErrorCode::InvalidArgument, "M must be >= 0");
  return formulas::ostrowski(iv, x, M.M);
}

double midpoint_concave_bound(const Fn2& fn, const Interval& iv, const HolderPair& hp,
                              Gate gate) {
  fn.require(iv);
  if (gate == Gate::Verify) verified_shape(fn, iv, hp.q(), Need::Concave, "midpoint concave bound");
  const double a = iv.a(), b = iv.b();
  return formulas::midpoint_concave(iv, hp, sample(fn, "(3a+b)/4", (3 * a + b) / 4).value,
                                    sample(fn, "(a+3b)/4", (a + 3 * b) / 4).value);
}

}  // namespace ccq
