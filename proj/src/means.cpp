#include "ccq/means.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>

#include "ccq/bounds.hpp"
#include "ccq/error.hpp"
#include "ccq/funcat.hpp"
#include "ccq/interval.hpp"

namespace ccq {

namespace {

// Below this half-width/midpoint ratio the differences of means are summed
// as even power series in r, which avoids the cancellation of the closed forms.
constexpr double kSeriesRatio = 0.5;

struct Centered {
  double lo, hi, m, r;
};

Centered center(double alpha, double beta) {
  const double lo = std::min(alpha, beta), hi = std::max(alpha, beta);
  const double m = lo + (hi - lo) / 2;
  return {lo, hi, m, (hi - lo) / 2 / m};
}

void require_positive(double alpha, double beta) {
  if (!(alpha > 0) || !(beta > 0) || !std::isfinite(alpha) || !std::isfinite(beta)) {
    throw Error(ErrorCode::NonPositiveArgument, "means need finite positive arguments");
  }
}

void require_order(int n) {
  if (n == 0 || n == -1) throw Error(ErrorCode::InvalidOrder, "order n must not be -1 or 0");
}

// sum_{j>=1} c_j r^(2j); coeff(j) is called with increasing j.
template <class Coeff>
double even_series(double r, Coeff coeff) {
  const double r2 = r * r;
  double pw = 1, sum = 0;
  for (int j = 1; j < 4096; ++j) {
    pw *= r2;
    const double term = coeff(j) * pw;
    sum += term;
    if (std::abs(term) <= 1e-18 * std::abs(sum)) break;
  }
  return sum;
}

}  // namespace

double generalized_log_pow(double alpha, double beta, int n) {
  require_positive(alpha, beta);
  require_order(n);
  if (alpha == beta) return std::pow(alpha, n);
  const double lo = std::min(alpha, beta), hi = std::max(alpha, beta);
  double sum = 0;
  if (n > 0) {
    for (int k = 0; k <= n; ++k) sum += std::pow(lo, k) * std::pow(hi, n - k);
    return sum / (n + 1);
  }
  const int m = -(n + 1);
  for (int k = 0; k < m; ++k) sum += std::pow(lo, k) * std::pow(hi, m - 1 - k);
  return sum / (m * std::pow(lo, m) * std::pow(hi, m));
}

double log_identric(double alpha, double beta) {
  require_positive(alpha, beta);
  if (alpha == beta) return std::log(alpha);
  const Centered c = center(alpha, beta);
  if (c.r < kSeriesRatio) {
    return std::log(c.m) - even_series(c.r, [](int j) { return 1.0 / (2.0 * j * (2 * j + 1)); });
  }
  return (c.hi * std::log(c.hi) - c.lo * std::log(c.lo)) / (c.hi - c.lo) - 1;
}

double mean(MeanKind kind, double alpha, double beta, int n) {
  require_positive(alpha, beta);
  switch (kind) {
    case MeanKind::Arithmetic: return (alpha + beta) / 2;
    case MeanKind::Logarithmic: {
      if (alpha == beta) return alpha;
      const double lo = std::min(alpha, beta), hi = std::max(alpha, beta);
      return (hi - lo) / std::log1p((hi - lo) / lo);
    }
    case MeanKind::GeneralizedLog:
      return std::pow(generalized_log_pow(alpha, beta, n), 1.0 / n);
    case MeanKind::Identric: return alpha == beta ? alpha : std::exp(log_identric(alpha, beta));
  }
  return 0;
}

std::string_view to_string(PropositionId id) {
  switch (id) {
    case PropositionId::P31: return "P31";
    case PropositionId::P32: return "P32";
    case PropositionId::P33: return "P33";
    case PropositionId::P33_literal: return "P33_literal";
    case PropositionId::P33_rigorous: return "P33_rigorous";
    case PropositionId::P34: return "P34";
    case PropositionId::P34_literal: return "P34_literal";
  }
  return "?";
}

std::optional<PropositionId> parse_proposition_id(std::string_view s) {
  for (PropositionId id : kAllPropositions) {
    if (to_string(id) == s) return id;
  }
  return std::nullopt;
}

bool is_asserted(PropositionId id) {
  return id == PropositionId::P31 || id == PropositionId::P32 ||
         id == PropositionId::P33_rigorous || id == PropositionId::P34;
}

bool proposition_holds(double lhs, double rhs) { return lhs <= rhs + 1e-12 * (1 + rhs); }

namespace {

// |1/L(a,b) - A(4/(3a+b), 4/(a+3b))|: mean of 1/t minus the quarter-point rule.
double quarter_recip_error(const Centered& c) {
  if (c.r < kSeriesRatio) {
    return even_series(c.r, [](int j) { return 1.0 / (2 * j + 1) - std::ldexp(1.0, -2 * j); }) /
           c.m;
  }
  const double inv_l = 1 / mean(MeanKind::Logarithmic, c.lo, c.hi);
  return std::abs(inv_l - mean(MeanKind::Arithmetic, 4 / (3 * c.lo + c.hi), 4 / (c.lo + 3 * c.hi)));
}

// |L_n^n - A^n|: mean of t^n minus the midpoint rule.
double midpoint_power_error(const Centered& c, int n) {
  if (c.r < kSeriesRatio) {
    // binom(n, 2j) / (2j + 1), generalized binomial for negative n.
    double binom = 1;
    int k = 0;
    const double s = even_series(c.r, [&](int j) {
      for (; k < 2 * j; ++k) binom *= static_cast<double>(n - k) / (k + 1);
      return binom / (2 * j + 1);
    });
    return std::abs(std::pow(c.m, n) * s);
  }
  return std::abs(generalized_log_pow(c.lo, c.hi, n) - std::pow(c.m, n));
}

// |A(ln a, ln b) - ln I(a, b)|: trapezoid error for -ln t.
double trapezoid_log_error(const Centered& c) {
  if (c.r < kSeriesRatio) return even_series(c.r, [](int j) { return 1.0 / (2 * j + 1); });
  return std::abs((std::log(c.lo) + std::log(c.hi)) / 2 - log_identric(c.lo, c.hi));
}

// Error of the trapezoid rule for -ln t with the derivative correction
// (b-a)^2/(8ab) added, i.e. the companion rule at x = a.
double corrected_trapezoid_log_error(const Centered& c) {
  if (c.r < kSeriesRatio) return even_series(c.r, [](int j) { return 0.5 - 1.0 / (2 * j + 1); });
  const double w = c.hi - c.lo;
  const double rule = -(std::log(c.lo) + std::log(c.hi)) / 2 - w * w / (8 * c.lo * c.hi);
  return std::abs(-log_identric(c.lo, c.hi) - rule);
}

double require_p(const PropositionParams& params, PropositionId id) {
  if (!params.p) {
    throw Error(ErrorCode::InvalidArgument, std::string(to_string(id)) + " needs p");
  }
  return *params.p;
}

}  // namespace

PropositionReport check_proposition(PropositionId id, double a, double b,
                                    const PropositionParams& params) {
  if (!(a > 0) || !(a < b) || !std::isfinite(b)) {
    throw Error(ErrorCode::NonPositiveArgument, "propositions need 0 < a < b");
  }
  const Interval iv(a, b);
  const Centered c = center(a, b);
  const double w2 = (b - a) * (b - a);

  PropositionReport rep;
  rep.id = id;
  rep.a = a;
  rep.b = b;
  rep.asserted = is_asserted(id);

  switch (id) {
    case PropositionId::P31: {
      rep.lhs = quarter_recip_error(c);
      rep.rhs = w2 / 768 *
                ((a * a * a + b * b * b) / (a * a * a * b * b * b) +
                 448 * (1 / std::pow(3 * a + b, 3) + 1 / std::pow(a + 3 * b, 3)));
      rep.general_rhs =
          bound_convex_abs(make_catalog_fn("recip"), iv, iv.quarter_point()).bound;
      break;
    }
    case PropositionId::P32: {
      if (!params.n) throw Error(ErrorCode::InvalidArgument, "P32 needs n");
      const int n = *params.n;
      if (std::abs(n) < 2) throw Error(ErrorCode::InvalidOrder, "P32 needs |n| >= 2");
      const double A = mean(MeanKind::Arithmetic, a, b);
      rep.lhs = midpoint_power_error(c, n);
      rep.rhs = static_cast<double>(n) * (n - 1) * w2 / 192 *
                (std::pow(a, n - 2) + 6 * std::pow(A, n - 2) + std::pow(b, n - 2));
      rep.general_rhs = bound_convex_abs(make_catalog_fn("power", {static_cast<double>(n)}), iv,
                                         iv.midpoint())
                            .bound;
      rep.params.push_back({"n", static_cast<double>(n)});
      break;
    }
    case PropositionId::P33:
    case PropositionId::P33_literal:
    case PropositionId::P33_rigorous: {
      const HolderPair hp = HolderPair::from_p(require_p(params, id));
      const double p = hp.p(), q = hp.q();
      const double k = w2 / (std::pow(2, 3 + 1 / q) * std::pow(2 * p + 1, 1 / p));
      const double bracket = 1 / std::pow(a, 2 * q) + 1 / std::pow(b, 2 * q);
      rep.lhs = id == PropositionId::P33_rigorous ? corrected_trapezoid_log_error(c)
                                                  : trapezoid_log_error(c);
      rep.rhs = id == PropositionId::P33_literal ? k * bracket
                                                       : k * std::pow(bracket, 1 / q);
      rep.general_rhs = trapezoid_certificate(make_catalog_fn("neglog"), iv, hp).cert.bound;
      rep.params.push_back({"p", p});
      rep.params.push_back({"q", q});
      break;
    }
    case PropositionId::P34:
    case PropositionId::P34_literal: {
      const HolderPair hp = HolderPair::from_p(require_p(params, id));
      const double p = hp.p(), q = hp.q();
      const double k = w2 / (std::pow(2, 7 + 1 / q) * std::pow(2 * p + 1, 1 / p));
      const double c1 = std::pow(3 * a + b, 3), c3 = std::pow(a + 3 * b, 3);
      rep.lhs = quarter_recip_error(c);
      if (id == PropositionId::P34) {
        using formulas::qnorm;
        rep.rhs = k * (qnorm(2 / (a * a * a), 128 / c1, q) + 2 * qnorm(128 / c1, 128 / c3, q) +
                       qnorm(128 / c3, 2 / (b * b * b), q));
      } else {
        auto lit = [q](double u, double v) { return std::pow(u + v, 1 / q); };
        rep.rhs = k * (lit(2 / std::pow(a, 3 * q), 128 / std::pow(c1, q)) +
                       2 * lit(128 / std::pow(c1, q), 128 / std::pow(c3, q)) +
                       lit(128 / std::pow(c3, q), 2 / std::pow(b, 3 * q)));
      }
      rep.general_rhs =
          bound_convex_q(make_catalog_fn("recip"), iv, iv.quarter_point(), hp).bound;
      rep.params.push_back({"p", p});
      rep.params.push_back({"q", q});
      break;
    }
  }
  rep.holds = proposition_holds(rep.lhs, rep.rhs);
  rep.rhs_gap = std::abs(rep.rhs - rep.general_rhs) / std::max(std::abs(rep.general_rhs), DBL_MIN);
  return rep;
}

}  // namespace ccq
