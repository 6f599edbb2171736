#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "ccq/error.hpp"
#include "ccq/funcat.hpp"
#include "support.hpp"

namespace ccq {
namespace {

template <class F>
ErrorCode code_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no ccq::Error thrown";
  return ErrorCode::InvalidArgument;
}

TEST(Interval, RejectsDegenerateAndNonFinite) {
  const double inf = std::numeric_limits<double>::infinity();
  const double nan = std::numeric_limits<double>::quiet_NaN();
  EXPECT_EQ(code_of([] { Interval(1, 1); }), ErrorCode::InvalidInterval);
  EXPECT_EQ(code_of([] { Interval(2, 1); }), ErrorCode::InvalidInterval);
  EXPECT_EQ(code_of([&] { Interval(0, inf); }), ErrorCode::InvalidInterval);
  EXPECT_EQ(code_of([&] { Interval(nan, 1); }), ErrorCode::InvalidInterval);
  EXPECT_EQ(code_of([] { Interval(1, std::nextafter(1.0, 2.0)); }), ErrorCode::InvalidInterval);
}

TEST(Interval, DerivedPoints) {
  const Interval iv(1, 3);
  EXPECT_EQ(iv.width(), 2);
  EXPECT_EQ(iv.midpoint(), 2);
  EXPECT_EQ(iv.quarter_point(), 1.5);
  EXPECT_EQ(iv.reflect(1.25), 2.75);
  EXPECT_TRUE(iv.contains(1));
  EXPECT_TRUE(iv.contains(3));
  EXPECT_FALSE(iv.contains(3.0000001));
}

TEST(Catalog, PowerTwo) {
  const Fn2 f = make_catalog_fn("power", {2});
  EXPECT_EQ(f.f(3), 9);
  EXPECT_EQ(f.df(3), 6);
  EXPECT_EQ(f.d2f(3), 2);
  EXPECT_EQ(f.name(), "power:2");
  EXPECT_EQ(f.kind(), Fn2::Kind::Catalog);
  EXPECT_TRUE(f.admits(Interval(-1, 1)));
}

TEST(Catalog, RecipAndNeglogArePositiveOnly) {
  const Fn2 r = make_catalog_fn("recip");
  EXPECT_DOUBLE_EQ(r.d2f(2), 2.0 / 8);
  EXPECT_FALSE(r.admits(0.0));
  EXPECT_EQ(code_of([&] { r.require(Interval(-1, 1)); }), ErrorCode::DomainViolation);
  EXPECT_EQ(code_of([&] { r.require(Interval(0, 1)); }), ErrorCode::DomainViolation);

  const Fn2 n = make_catalog_fn("neglog");
  EXPECT_DOUBLE_EQ(n.f(std::numbers::e), -1);
  EXPECT_DOUBLE_EQ(n.df(2), -0.5);
  EXPECT_DOUBLE_EQ(n.d2f(2), 0.25);
  EXPECT_FALSE(n.admits(Interval(0, 1)));
}

TEST(Catalog, PolyUsesAscendingCoefficients) {
  const Fn2 p = parse_catalog_spec("poly:1,-2,0,1");  // t^3 - 2t + 1
  EXPECT_EQ(p.f(2), 5);
  EXPECT_EQ(p.df(2), 10);
  EXPECT_EQ(p.d2f(2), 12);
  EXPECT_EQ(p.name(), "poly:1,-2,0,1");
}

TEST(Catalog, NegativeIntegerPowerExcludesZeroOnly) {
  const Fn2 f = parse_catalog_spec("power:-2");
  EXPECT_TRUE(f.admits(Interval(-3, -1)));
  EXPECT_FALSE(f.admits(Interval(-1, 1)));
  EXPECT_DOUBLE_EQ(f.d2f(-1), 6);
}

TEST(Catalog, LowOrderPowersHaveZeroDerivatives) {
  const Fn2 c = make_catalog_fn("power", {0});
  EXPECT_EQ(c.f(5), 1);
  EXPECT_EQ(c.df(5), 0);
  EXPECT_EQ(c.d2f(5), 0);
  const Fn2 l = make_catalog_fn("power", {1});
  EXPECT_EQ(l.df(0), 1);
  EXPECT_EQ(l.d2f(0), 0);
}

TEST(Catalog, Errors) {
  EXPECT_EQ(code_of([] { make_catalog_fn("sin"); }), ErrorCode::UnknownCatalogName);
  EXPECT_EQ(code_of([] { make_catalog_fn("power"); }), ErrorCode::InvalidParams);
  EXPECT_EQ(code_of([] { make_catalog_fn("recip", {1}); }), ErrorCode::InvalidParams);
  EXPECT_EQ(code_of([] { make_catalog_fn("poly"); }), ErrorCode::InvalidParams);
  EXPECT_EQ(code_of([] { parse_catalog_spec("power:x"); }), ErrorCode::InvalidParams);
  EXPECT_EQ(code_of([] { parse_catalog_spec("poly:1,,2"); }), ErrorCode::InvalidParams);
}

TEST(Catalog, SpecRoundTripsThroughName) {
  for (const char* spec : {"power:2", "power:-3", "power:2.5", "recip", "neglog", "exp",
                           "poly:0.1,-2,3"}) {
    EXPECT_EQ(parse_catalog_spec(spec).name(), spec);
    EXPECT_EQ(parse_catalog_spec(parse_catalog_spec(spec).name()).name(), spec);
  }
}

// |df - D f| <= 1e-5 (1 + |df|) with independent central differences.
TEST(Catalog, DerivativesAgreeWithFiniteDifferences) {
  const double eps = std::numeric_limits<double>::epsilon();
  std::mt19937_64 rng(11);
  for (const auto& c : testing::catalog()) {
    const Fn2 fn = parse_catalog_spec(c.spec);
    std::uniform_real_distribution<double> pick(testing::positive_domain(c.spec) ? 0.2 : -2.0, 3.0);
    for (int i = 0; i < 200; ++i) {
      const double t = pick(rng);
      const double h1 = std::cbrt(eps) * (1 + std::abs(t));
      const double d1 = (fn.f(t + h1) - fn.f(t - h1)) / (2 * h1);
      const double h2 = std::pow(eps, 0.25) * (1 + std::abs(t));
      const double d2 = (fn.f(t + h2) - 2 * fn.f(t) + fn.f(t - h2)) / (h2 * h2);
      EXPECT_LE(std::abs(fn.df(t) - d1), 1e-5 * (1 + std::abs(fn.df(t)))) << c.spec << " t=" << t;
      EXPECT_LE(std::abs(fn.d2f(t) - d2), 1e-5 * (1 + std::abs(fn.d2f(t)))) << c.spec << " t=" << t;
    }
  }
}

TEST(Sampled, FiniteDifferenceDerivatives) {
  const Fn2 s = make_sampled_fn("sin", [](double t) { return std::sin(t); });
  EXPECT_EQ(s.kind(), Fn2::Kind::UserSampled);
  EXPECT_EQ(s.name(), "sin");
  for (double t : {-1.0, 0.0, 0.7, 2.5}) {
    EXPECT_NEAR(s.df(t), std::cos(t), 1e-8);
    EXPECT_NEAR(s.d2f(t), -std::sin(t), 1e-5);
  }
}

TEST(Sampled, StepSizes) {
  const Evaluator cube = [](double t) { return t * t * t; };
  EXPECT_NEAR(central_diff(cube, 2), 12, 1e-8);
  EXPECT_NEAR(second_central_diff(cube, 2), 12, 1e-6);
}

}  // namespace
}  // namespace ccq
