#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "ccq/certify.hpp"
#include "ccq/error.hpp"
#include "ccq/identity.hpp"
#include "ccq/oracle.hpp"
#include "support.hpp"

namespace ccq {
namespace {

const Fn2 kSquare = make_catalog_fn("power", {2});
const Fn2 kRecip = make_catalog_fn("recip");
const Interval kUnit(0, 1);

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::InvalidArgument;
}

double dense_min(const BoundObjective& bound, const Interval& iv) {
  double best = INFINITY;
  for (int i = 0; i <= 1000; ++i) {
    best = std::min(best, bound(iv.a() + (iv.midpoint() - iv.a()) * i / 1000));
  }
  return best;
}

TEST(Family, Names) {
  EXPECT_EQ(to_string(Family::Auto), "auto");
  EXPECT_EQ(to_string(Family::ConcaveQ), "t23");
  EXPECT_EQ(theorem_of(Family::ConvexQ), Theorem::ConvexPower);
  EXPECT_EQ(code_of([] { theorem_of(Family::Auto); }), ErrorCode::InvalidArgument);
}

TEST(OptimizeX, SquareConvexAbsPicksQuarter) {
  const double x = optimize_x(kSquare, kUnit, Family::ConvexAbs);
  const BoundObjective bound(kSquare, kUnit, Family::ConvexAbs);
  EXPECT_NEAR(x, 0.25, 1e-6);
  EXPECT_NEAR(bound(x), 1.0 / 48, 1e-15);
}

TEST(OptimizeX, ZeroBoundTiesToMidpoint) {
  const Fn2 lin = make_catalog_fn("poly", {2, -1});
  EXPECT_EQ(optimize_x(lin, Interval(1, 3), Family::ConvexAbs), 2);
  EXPECT_EQ(optimize_x(lin, Interval(1, 3), Family::ConcaveQ, 3), 2);
}

TEST(OptimizeX, MatchesDenseScan) {
  struct Case {
    Fn2 fn;
    Interval iv;
    Family family;
    double p;
  };
  const std::vector<Case> cases = {
      {kRecip, Interval(1, 2), Family::ConvexAbs, 2},
      {kRecip, Interval(0.25, 1), Family::ConvexQ, 3},
      {make_catalog_fn("exp"), Interval(0.5, 3), Family::ConvexAbs, 2},
      {make_catalog_fn("power", {2.5}), Interval(1, 4), Family::ConcaveQ, 2},
      {make_catalog_fn("neglog"), Interval(1, 2), Family::ConvexQ, 1.5},
  };
  for (const Case& c : cases) {
    const double x = optimize_x(c.fn, c.iv, c.family, c.p);
    std::optional<HolderPair> hp;
    if (c.family != Family::ConvexAbs) hp = HolderPair::from_p(c.p);
    const BoundObjective bound(c.fn, c.iv, c.family, hp);
    EXPECT_LE(bound(x), dense_min(bound, c.iv) + 1e-9) << c.fn.name();
    EXPECT_GE(x, c.iv.a());
    EXPECT_LE(x, c.iv.midpoint());
  }
}

TEST(OptimizeX, RefusesUnverifiedFamily) {
  EXPECT_EQ(code_of([] { optimize_x(kRecip, Interval(1, 2), Family::ConcaveQ, 2); }),
            ErrorCode::ShapeHypothesisUnverified);
  EXPECT_NO_THROW(optimize_x(kRecip, Interval(1, 2), Family::ConcaveQ, 2, Gate::Force));
  EXPECT_EQ(code_of([] { optimize_x(kRecip, Interval(1, 2), Family::Auto); }),
            ErrorCode::InvalidArgument);
}

TEST(OptimizeP, BeatsFixedExponents) {
  const HolderPair hp = optimize_p(kSquare, kUnit, 0.25, Family::ConcaveQ);
  const double best = BoundObjective(kSquare, kUnit, Family::ConcaveQ, hp)(0.25);
  for (double p : {1.1, 2.0, 4.0, 16.0, 64.0}) {
    EXPECT_LE(best, BoundObjective(kSquare, kUnit, Family::ConcaveQ, HolderPair::from_p(p))(0.25));
  }
}

TEST(OptimizeP, MatchesDenseScanOverFeasibleP) {
  const Fn2 f = make_catalog_fn("power", {2.5});
  const Interval iv(1, 4);
  const double x = iv.quarter_point();
  const HolderPair hp = optimize_p(f, iv, x, Family::ConcaveQ);
  // |f''|^q = c t^(q/2) is concave exactly for q <= 2, i.e. p >= 2.
  EXPECT_GE(hp.p(), 2 - 1e-9);
  double best = INFINITY;
  for (int i = 0; i <= 1000; ++i) {
    const double p = std::exp(std::log(2.0) + (std::log(1024.0) - std::log(2.0)) * i / 1000);
    best = std::min(best, BoundObjective(f, iv, Family::ConcaveQ, HolderPair::from_p(p))(x));
  }
  EXPECT_LE(BoundObjective(f, iv, Family::ConcaveQ, hp)(x), best + 1e-9);
}

TEST(OptimizeP, ZeroBoundGivesTwo) {
  const Fn2 lin = make_catalog_fn("poly", {0, 1});
  EXPECT_EQ(optimize_p(lin, kUnit, 0.25, Family::ConvexQ).p(), 2);
}

TEST(OptimizeP, NoFeasibleExponent) {
  EXPECT_EQ(code_of([] { optimize_p(kRecip, Interval(1, 2), 1.25, Family::ConcaveQ); }),
            ErrorCode::NoFeasibleP);
  EXPECT_EQ(code_of([] { optimize_p(kRecip, Interval(1, 2), 1.25, Family::ConvexAbs); }),
            ErrorCode::InvalidArgument);
}

CertRequest quarter_request(int n) {
  CertRequest r(kSquare, kUnit);
  r.x = XChoice::quarter();
  r.family = Family::ConvexAbs;
  r.subdivisions = n;
  return r;
}

TEST(Composite, QuarterPointScaling) {
  for (int n : {1, 2, 4, 8, 16}) {
    const CompositeCertificate c = composite_certify(quarter_request(n));
    EXPECT_LE(testing::rel_diff(c.total_bound, 1.0 / 48 / (n * n)), 1e-12) << n;
    EXPECT_EQ(c.n, n);
    ASSERT_EQ(c.cells.size(), static_cast<std::size_t>(n));
    EXPECT_EQ(c.cells.front().a, 0);
    EXPECT_EQ(c.cells.back().b, 1);
    EXPECT_NEAR(c.estimate, 1.0 / 3 - 1.0 / 48 / (n * n), 1e-15);
  }
}

TEST(Composite, EstimateWithinBound) {
  for (const char* spec : {"exp", "recip", "neglog", "power:2.5"}) {
    const Fn2 fn = parse_catalog_spec(spec);
    const Interval iv(0.5, 3);
    const double truth = oracle::mean_value(fn, iv, 1e-13).value;
    double prev = INFINITY;
    for (int n : {1, 2, 4, 8}) {
      CertRequest r(fn, iv);
      r.subdivisions = n;
      const CompositeCertificate c = certify(r);
      EXPECT_LE(std::abs(truth - c.estimate), c.total_bound + 1e-12) << spec << " n=" << n;
      EXPECT_LT(c.total_bound, prev) << spec;
      prev = c.total_bound;
    }
  }
}

TEST(Certify, AutoRouting) {
  CertRequest recip(kRecip, Interval(1, 2));
  EXPECT_EQ(certify(recip).family, Family::ConvexAbs);
  EXPECT_EQ(certify(recip).cells[0].cert.theorem, Theorem::ConvexAbs);
  EXPECT_EQ(certify(CertRequest(kSquare, kUnit)).family, Family::ConvexAbs);

  const Fn2 f = make_catalog_fn("power", {2.5});
  const CompositeCertificate c = certify(CertRequest(f, Interval(1, 4)));
  EXPECT_EQ(c.family, Family::ConcaveQ);
  const double truth = (std::pow(4.0, 3.5) - 1) / 3.5 / 3;
  EXPECT_LE(std::abs(truth - c.estimate), c.total_bound);
}

TEST(Certify, AffinePowerComparesBothFamilies) {
  CertRequest r(make_catalog_fn("power", {2.5}), Interval(1, 4));
  r.p = 2;
  const CompositeCertificate c = certify(r);
  EXPECT_FALSE(c.note.empty());
  EXPECT_TRUE(c.family == Family::ConcaveQ || c.family == Family::ConvexQ);

  CertRequest t22 = r, t23 = r;
  t22.family = Family::ConvexQ;
  t23.family = Family::ConcaveQ;
  EXPECT_EQ(c.total_bound,
            std::min(certify(t22).total_bound, certify(t23).total_bound));
}

TEST(Certify, NoApplicableTheorem) {
  // f'' = 12 t^2 - 2 changes sign inside [-1, 1].
  CertRequest r(make_catalog_fn("poly", {0, 0, -1, 0, 1}), Interval(-1, 1));
  EXPECT_EQ(code_of([&] { certify(r); }), ErrorCode::NoApplicableTheorem);
}

TEST(Certify, FixedXMapsToEveryCell) {
  CertRequest r(kSquare, Interval(0, 2));
  r.family = Family::ConvexAbs;
  r.subdivisions = 4;
  r.x = XChoice::fixed(0.5);  // the quarter point of [0, 2]
  const CompositeCertificate q = certify(r);
  for (const auto& cell : q.cells) {
    EXPECT_EQ(cell.cert.x, Interval(cell.a, cell.b).quarter_point());
    EXPECT_EQ(cell.derivative_term, 0);
  }
  r.x = XChoice::fixed(0.2);
  for (const auto& cell : certify(r).cells) {
    EXPECT_NEAR((cell.cert.x - cell.a) / (cell.b - cell.a), 0.1, 1e-15);
  }
  r.x = XChoice::fixed(0);
  for (const auto& cell : certify(r).cells) EXPECT_EQ(cell.cert.x, cell.a);
}

TEST(Certify, SerialMatchesParallel) {
  for (const char* spec : {"exp", "recip", "power:2.5"}) {
    CertRequest r(parse_catalog_spec(spec), Interval(1, 3));
    r.subdivisions = 7;
    const CompositeCertificate par = certify(r);
    const CompositeCertificate ser = serial::composite_certify(r);
    EXPECT_EQ(par.total_bound, ser.total_bound);
    EXPECT_EQ(par.estimate, ser.estimate);
    ASSERT_EQ(par.cells.size(), ser.cells.size());
    for (std::size_t i = 0; i < par.cells.size(); ++i) {
      EXPECT_EQ(par.cells[i].cert.x, ser.cells[i].cert.x);
      EXPECT_EQ(par.cells[i].cert.bound, ser.cells[i].cert.bound);
    }
    EXPECT_EQ(certify(r).total_bound, par.total_bound);
  }
}

TEST(Certify, Errors) {
  CertRequest r(kSquare, kUnit);
  r.subdivisions = 0;
  EXPECT_EQ(code_of([&] { certify(r); }), ErrorCode::InvalidArgument);
  r.subdivisions = kMaxSubdivisions + 1;
  EXPECT_EQ(code_of([&] { certify(r); }), ErrorCode::InvalidArgument);
  r.subdivisions = 1;
  r.x = XChoice::fixed(0.9);
  EXPECT_EQ(code_of([&] { certify(r); }), ErrorCode::PointOutOfRange);
  r.x = XChoice::optimize();
  r.p = 0.5;
  EXPECT_EQ(code_of([&] { certify(r); }), ErrorCode::InvalidHolder);
  CertRequest d(kRecip, Interval(-1, 1));
  EXPECT_EQ(code_of([&] { certify(d); }), ErrorCode::DomainViolation);
  CertRequest wrong(kRecip, Interval(1, 2));
  wrong.family = Family::ConcaveQ;
  wrong.p = 2;
  EXPECT_EQ(code_of([&] { certify(wrong); }), ErrorCode::ShapeHypothesisUnverified);
  wrong.gate = Gate::Force;
  EXPECT_EQ(certify(wrong).cells[0].cert.hypothesis, Gate::Force);
}

}  // namespace
}  // namespace ccq
