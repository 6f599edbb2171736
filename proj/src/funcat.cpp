#include "ccq/funcat.hpp"

#include <cstdio>
#include <cstdlib>
#include <cmath>
#include <limits>
#include <sstream>

#include "ccq/error.hpp"

namespace ccq {

namespace {

std::string format_param(double v) {
  char buf[32];
  const int n = std::snprintf(buf, sizeof buf, "%.17g", v);
  std::string s(buf, static_cast<std::size_t>(n));
  // Prefer the short spelling when it round-trips.
  for (int prec = 1; prec < 17; ++prec) {
    std::snprintf(buf, sizeof buf, "%.*g", prec, v);
    if (std::strtod(buf, nullptr) == v) return buf;
  }
  return s;
}

bool is_integer(double n) { return std::floor(n) == n; }

Fn2 make_power(double n) {
  if (!std::isfinite(n)) throw Error(ErrorCode::InvalidParams, "power exponent must be finite");
  Domain domain = Domain::Real;
  if (!is_integer(n)) {
    domain = Domain::Positive;
  } else if (n < 0) {
    domain = Domain::NonZero;
  }
  Evaluator f = [n](double t) { return std::pow(t, n); };
  Evaluator df = [n](double t) { return n == 0 ? 0.0 : n * std::pow(t, n - 1); };
  Evaluator d2f = [n](double t) {
    return (n == 0 || n == 1) ? 0.0 : n * (n - 1) * std::pow(t, n - 2);
  };
  return Fn2(Fn2::Kind::Catalog, "power:" + format_param(n), {n}, std::move(f), std::move(df),
             std::move(d2f), domain);
}

Fn2 make_poly(std::vector<double> c) {
  if (c.empty()) throw Error(ErrorCode::InvalidParams, "poly needs at least one coefficient");
  std::string name = "poly:";
  for (std::size_t k = 0; k < c.size(); ++k) {
    if (!std::isfinite(c[k])) throw Error(ErrorCode::InvalidParams, "poly coefficient not finite");
    if (k) name += ',';
    name += format_param(c[k]);
  }
  // Horner on the coefficient lists of f, f', f''.
  auto horner = [](const std::vector<double>& coef) {
    return [coef](double t) {
      double acc = 0;
      for (auto it = coef.rbegin(); it != coef.rend(); ++it) acc = acc * t + *it;
      return acc;
    };
  };
  std::vector<double> d1, d2;
  for (std::size_t k = 1; k < c.size(); ++k) d1.push_back(static_cast<double>(k) * c[k]);
  for (std::size_t k = 1; k < d1.size(); ++k) d2.push_back(static_cast<double>(k) * d1[k]);
  return Fn2(Fn2::Kind::Catalog, std::move(name), c, horner(c), horner(d1), horner(d2),
             Domain::Real);
}

void expect_no_params(std::string_view name, const std::vector<double>& params) {
  if (!params.empty()) {
    throw Error(ErrorCode::InvalidParams, std::string(name) + " takes no parameters");
  }
}

}  // namespace

Fn2::Fn2(Kind kind, std::string name, std::vector<double> params, Evaluator f, Evaluator df,
         Evaluator d2f, Domain domain)
    : kind_(kind),
      name_(std::move(name)),
      params_(std::move(params)),
      f_(std::move(f)),
      df_(std::move(df)),
      d2f_(std::move(d2f)),
      domain_(domain) {}

bool Fn2::admits(double t) const noexcept {
  switch (domain_) {
    case Domain::Real: return std::isfinite(t);
    case Domain::Positive: return t > 0;
    case Domain::NonZero: return t != 0;
  }
  return false;
}

bool Fn2::admits(const Interval& iv) const noexcept {
  switch (domain_) {
    case Domain::Real: return true;
    case Domain::Positive: return iv.a() > 0;
    case Domain::NonZero: return iv.a() > 0 || iv.b() < 0;
  }
  return false;
}

void Fn2::require(const Interval& iv) const {
  if (!admits(iv)) {
    std::ostringstream os;
    os << name_ << " is not defined on all of [" << iv.a() << ", " << iv.b() << "]";
    throw Error(ErrorCode::DomainViolation, os.str());
  }
}

Fn2 make_catalog_fn(std::string_view name, std::vector<double> params) {
  if (name == "power") {
    if (params.size() != 1) throw Error(ErrorCode::InvalidParams, "power needs exactly one exponent");
    return make_power(params[0]);
  }
  if (name == "poly") return make_poly(std::move(params));
  if (name == "recip") {
    expect_no_params(name, params);
    return Fn2(
        Fn2::Kind::Catalog, "recip", {}, [](double t) { return 1 / t; },
        [](double t) { return -1 / (t * t); }, [](double t) { return 2 / (t * t * t); },
        Domain::Positive);
  }
  if (name == "neglog") {
    expect_no_params(name, params);
    return Fn2(
        Fn2::Kind::Catalog, "neglog", {}, [](double t) { return -std::log(t); },
        [](double t) { return -1 / t; }, [](double t) { return 1 / (t * t); }, Domain::Positive);
  }
  if (name == "exp") {
    expect_no_params(name, params);
    auto e = [](double t) { return std::exp(t); };
    return Fn2(Fn2::Kind::Catalog, "exp", {}, e, e, e, Domain::Real);
  }
  throw Error(ErrorCode::UnknownCatalogName, "'" + std::string(name) + "'");
}

Fn2 parse_catalog_spec(std::string_view spec) {
  const auto colon = spec.find(':');
  const std::string_view name = spec.substr(0, colon);
  std::vector<double> params;
  if (colon != std::string_view::npos) {
    std::string_view rest = spec.substr(colon + 1);
    while (true) {
      const auto comma = rest.find(',');
      const std::string token(rest.substr(0, comma));
      char* end = nullptr;
      const double v = std::strtod(token.c_str(), &end);
      if (token.empty() || end != token.c_str() + token.size()) {
        throw Error(ErrorCode::InvalidParams, "bad number '" + token + "' in '" + std::string(spec) + "'");
      }
      params.push_back(v);
      if (comma == std::string_view::npos) break;
      rest = rest.substr(comma + 1);
    }
  }
  return make_catalog_fn(name, std::move(params));
}

double central_diff(const Evaluator& f, double t) {
  const double h = std::cbrt(std::numeric_limits<double>::epsilon()) * (1 + std::abs(t));
  return (f(t + h) - f(t - h)) / (2 * h);
}

double second_central_diff(const Evaluator& f, double t) {
  const double h = std::pow(std::numeric_limits<double>::epsilon(), 0.25) * (1 + std::abs(t));
  return (f(t + h) - 2 * f(t) + f(t - h)) / (h * h);
}

Fn2 make_sampled_fn(std::string label, Evaluator f, Domain domain) {
  Evaluator df = [f](double t) { return central_diff(f, t); };
  Evaluator d2f = [f](double t) { return second_central_diff(f, t); };
  return Fn2(Fn2::Kind::UserSampled, std::move(label), {}, f, std::move(df), std::move(d2f),
             domain);
}

}  // namespace ccq
