#pragma once

// Closed-form references used as independent oracles in the tests.

#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "ccq/interval.hpp"

namespace ccq::testing {

struct CatalogCase {
  std::string spec;
  double (*antiderivative)(double);
};

inline double anti_power2(double t) { return t * t * t / 3; }
inline double anti_power3(double t) { return t * t * t * t / 4; }
inline double anti_power25(double t) { return std::pow(t, 3.5) / 3.5; }
inline double anti_exp(double t) { return std::exp(t); }
inline double anti_recip(double t) { return std::log(t); }
inline double anti_neglog(double t) { return t - t * std::log(t); }
// t^3 - 2t + 1
inline double anti_poly3(double t) { return t * t * t * t / 4 - t * t + t; }

inline const std::vector<CatalogCase>& catalog() {
  static const std::vector<CatalogCase> c = {
      {"power:2", anti_power2}, {"power:3", anti_power3}, {"power:2.5", anti_power25},
      {"exp", anti_exp},        {"recip", anti_recip},    {"neglog", anti_neglog},
      {"poly:1,-2,0,1", anti_poly3},
  };
  return c;
}

inline bool positive_domain(const std::string& spec) {
  return spec == "recip" || spec == "neglog" || spec == "power:2.5";
}

inline std::vector<Interval> intervals_for(const std::string& spec) {
  if (positive_domain(spec)) return {Interval(0.25, 1), Interval(1, 2), Interval(0.5, 3)};
  return {Interval(0, 1), Interval(1, 2), Interval(0.5, 3)};
}

inline double exact_mean(const CatalogCase& c, const Interval& iv) {
  return (c.antiderivative(iv.b()) - c.antiderivative(iv.a())) / iv.width();
}

inline std::vector<double> x_grid(const Interval& iv, int n = 21) {
  std::vector<double> xs;
  for (int i = 0; i < n; ++i) xs.push_back(iv.a() + (iv.midpoint() - iv.a()) * i / (n - 1));
  xs.back() = iv.midpoint();
  return xs;
}

inline double rel_diff(double x, double y) {
  const double s = std::max(std::abs(x), std::abs(y));
  return s == 0 ? 0 : std::abs(x - y) / s;
}

}  // namespace ccq::testing
