#include "ccq/certify.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <exception>
#include <functional>
#include <sstream>

#include "ccq/error.hpp"
#include "ccq/identity.hpp"
#include "ccq/kernels.hpp"
#include "ccq/shape.hpp"

namespace ccq {

std::string_view to_string(Family f) {
  switch (f) {
    case Family::Auto: return "auto";
    case Family::ConvexAbs: return "t21";
    case Family::ConvexQ: return "t22";
    case Family::ConcaveQ: return "t23";
  }
  return "?";
}

Theorem theorem_of(Family f) {
  switch (f) {
    case Family::ConvexAbs: return Theorem::ConvexAbs;
    case Family::ConvexQ: return Theorem::ConvexPower;
    case Family::ConcaveQ: return Theorem::ConcavePower;
    case Family::Auto: break;
  }
  throw Error(ErrorCode::InvalidArgument, "family must be resolved");
}

namespace {

struct Minimum {
  double x;
  double value;
};

// Golden-section search on [lo, hi]. On equal interior values the upper part
// is kept, so flat objectives drift to the larger abscissa.
Minimum golden_section(const std::function<double(double)>& f, double lo, double hi, double tol) {
  const double r = (std::sqrt(5.0) - 1) / 2;
  double c = hi - r * (hi - lo), d = lo + r * (hi - lo);
  double fc = f(c), fd = f(d);
  while (hi - lo > tol) {
    if (fc < fd) {
      hi = d;
      d = c;
      fd = fc;
      c = hi - r * (hi - lo);
      fc = f(c);
    } else {
      lo = c;
      c = d;
      fc = fd;
      d = lo + r * (hi - lo);
      fd = f(d);
    }
  }
  return fc < fd ? Minimum{c, fc} : Minimum{d, fd};
}

bool needs_convex(Family f) { return f == Family::ConvexAbs || f == Family::ConvexQ; }

void require_concrete(Family f, std::string_view what) {
  if (f == Family::Auto) {
    throw Error(ErrorCode::InvalidArgument, std::string(what) + " needs a concrete family");
  }
}

bool admits(const ShapeReport& s, Family f) {
  return needs_convex(f) ? s.admits_convex() : s.admits_concave();
}

ShapeReport verify_family(const Fn2& fn, const Interval& iv, Family family, double q) {
  ShapeReport s = check_shape(fn, iv, q);
  if (!admits(s, family)) {
    std::ostringstream os;
    os << "family " << to_string(family) << " needs |f''|^" << q << " "
       << (needs_convex(family) ? "convex" : "concave") << ", got " << to_string(s.verdict);
    throw Error(ErrorCode::ShapeHypothesisUnverified, os.str());
  }
  return s;
}

}  // namespace

BoundObjective::BoundObjective(const Fn2& fn, const Interval& iv, Family family,
                               std::optional<HolderPair> hp)
    : fn_(fn), iv_(iv), family_(family), hp_(hp) {
  require_concrete(family, "BoundObjective");
  if (family != Family::ConvexAbs && !hp) {
    throw Error(ErrorCode::InvalidArgument, "power families need a Holder pair");
  }
}

double BoundObjective::operator()(double x) const {
  switch (family_) {
    case Family::ConvexAbs: return bound_convex_abs(fn_, iv_, x, Gate::Force).bound;
    case Family::ConvexQ: return bound_convex_q(fn_, iv_, x, *hp_, Gate::Force).bound;
    case Family::ConcaveQ: return bound_concave_q(fn_, iv_, x, *hp_, Gate::Force).bound;
    case Family::Auto: break;
  }
  return 0;
}

double optimize_x(const Fn2& fn, const Interval& iv, Family family, double p, Gate gate) {
  require_concrete(family, "optimize_x");
  std::optional<HolderPair> hp;
  if (family != Family::ConvexAbs) hp = HolderPair::from_p(p);
  if (gate == Gate::Verify) verify_family(fn, iv, family, hp ? hp->q() : 1.0);

  const BoundObjective bound(fn, iv, family, hp);
  constexpr std::size_t kCells = 32;
  const double a = iv.a(), m = iv.midpoint();
  std::array<double, kCells + 1> xs{}, vals{};
  std::size_t k = 0;
  for (std::size_t i = 0; i <= kCells; ++i) {
    xs[i] = kernels::grid_point(a, m, kCells, i);
    vals[i] = bound(xs[i]);
    if (vals[i] <= vals[k]) k = i;
  }
  const double lo = xs[k == 0 ? 0 : k - 1];
  const double hi = xs[std::min(k + 1, kCells)];
  const Minimum g = golden_section([&](double x) { return bound(x); }, lo, hi, 1e-10 * iv.width());
  if (g.value < vals[k]) return g.x;
  if (g.value == vals[k]) return std::max(g.x, xs[k]);
  return xs[k];
}

HolderPair optimize_p(const Fn2& fn, const Interval& iv, double x, Family family, Gate gate) {
  if (family != Family::ConvexQ && family != Family::ConcaveQ) {
    throw Error(ErrorCode::InvalidArgument, "optimize_p needs the t22 or t23 family");
  }
  require_left_half(iv, x);
  fn.require(iv);

  auto feasible = [&](double logp) {
    if (gate == Gate::Force) return true;
    const HolderPair hp = HolderPair::from_p(std::exp(logp));
    return admits(check_shape(fn, iv, hp.q()), family);
  };
  auto bound_at = [&](double logp) {
    return BoundObjective(fn, iv, family, HolderPair::from_p(std::exp(logp)))(x);
  };
  auto clamp_log = [](double lp) {
    return std::clamp(lp, std::log(kMinSearchP), std::log(kMaxHolderP));
  };

  // Scan grid in log p, plus the conjugates of the concave probe exponents.
  std::vector<double> grid;
  constexpr int kScan = 32;
  const double lmin = std::log(kMinSearchP), lmax = std::log(kMaxHolderP);
  for (int i = 0; i <= kScan; ++i) grid.push_back(kernels::grid_point(lmin, lmax, kScan, i));
  for (double q : kConcaveProbeQ) grid.push_back(clamp_log(std::log(q / (q - 1))));
  grid.push_back(std::log(2.0));
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());

  std::vector<char> ok(grid.size());
  bool any = false;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    ok[i] = feasible(grid[i]);
    any = any || ok[i];
  }
  if (!any) {
    throw Error(ErrorCode::NoFeasibleP, "no p in [" + std::to_string(kMinSearchP) +
                                            ", 1024] satisfies the shape hypothesis for " +
                                            fn.name());
  }

  // Candidates: feasible grid points and the feasible side of every
  // feasibility edge. `run` numbers maximal feasible stretches.
  struct Candidate {
    double logp;
    int run;
    double value = 0;
  };
  std::vector<Candidate> cand;
  int run = 0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (i > 0 && ok[i] != ok[i - 1]) {
      double bad = ok[i] ? grid[i - 1] : grid[i];
      double good = ok[i] ? grid[i] : grid[i - 1];
      for (int it = 0; it < 60 && std::abs(good - bad) > 1e-15; ++it) {
        const double mid = (good + bad) / 2;
        (feasible(mid) ? good : bad) = mid;
      }
      cand.push_back({good, run});
      if (!ok[i]) ++run;
    }
    if (ok[i]) cand.push_back({grid[i], run});
  }
  std::sort(cand.begin(), cand.end(), [](auto& l, auto& r) { return l.logp < r.logp; });

  const double log2 = std::log(2.0);
  std::size_t k = 0;
  for (std::size_t i = 0; i < cand.size(); ++i) {
    cand[i].value = bound_at(cand[i].logp);
    const bool better = cand[i].value < cand[k].value ||
                        (cand[i].value == cand[k].value &&
                         std::abs(cand[i].logp - log2) < std::abs(cand[k].logp - log2));
    if (i == 0 || better) k = i;
  }
  if (cand[k].value == 0) return HolderPair::from_p(std::exp(cand[k].logp));

  double lo = cand[k].logp, hi = cand[k].logp;
  if (k > 0 && cand[k - 1].run == cand[k].run) lo = cand[k - 1].logp;
  if (k + 1 < cand.size() && cand[k + 1].run == cand[k].run) hi = cand[k + 1].logp;
  double best = cand[k].logp;
  if (lo < hi) {
    const Minimum g = golden_section(bound_at, lo, hi, 1e-8);
    if (g.value < cand[k].value && feasible(g.x)) best = g.x;
  }
  return HolderPair::from_p(std::exp(best));
}

FamilyChoice resolve_family(const Fn2& fn, const Interval& iv, std::optional<double> p) {
  fn.require(iv);
  if (check_shape(fn, iv, 1).admits_convex()) return {Family::ConvexAbs, std::nullopt};

  auto at = [&](double q) -> std::optional<FamilyChoice> {
    const ShapeReport s = check_shape(fn, iv, q);
    if (s.admits_concave()) {
      FamilyChoice c{Family::ConcaveQ, std::nullopt};
      if (s.verdict == ShapeVerdict::Affine) c.also = Family::ConvexQ;
      return c;
    }
    return std::nullopt;
  };

  if (p) {
    const HolderPair hp = HolderPair::from_p(*p);
    if (auto c = at(hp.q())) return *c;
    if (check_shape(fn, iv, hp.q()).admits_convex()) return {Family::ConvexQ, std::nullopt};
  } else {
    for (double q : kConcaveProbeQ) {
      if (auto c = at(q)) return *c;
    }
    // Convexity of |f''|^q persists for larger q, so the largest searched q
    // decides whether any p works.
    if (check_shape(fn, iv, HolderPair::from_p(kMinSearchP).q()).admits_convex()) {
      return {Family::ConvexQ, std::nullopt};
    }
  }
  throw Error(ErrorCode::NoApplicableTheorem,
              "|f''|^q of " + fn.name() + " is neither convex nor concave on the interval");
}

namespace {

XChoice cell_choice(const XChoice& x, const Interval& iv, const Interval& cell, int n) {
  if (x.kind != XChoice::Kind::Fixed) return x;
  require_left_half(iv, x.value);
  if (n == 1) return x;
  if (x.value == iv.quarter_point()) return XChoice::quarter();
  if (x.value == iv.midpoint()) return XChoice::midpoint();
  if (x.value == iv.a()) return XChoice::fixed(cell.a());
  const double frac = (x.value - iv.a()) / iv.width();
  return XChoice::fixed(std::clamp(cell.a() + frac * cell.width(), cell.a(), cell.midpoint()));
}

BoundCertificate family_bound(const Fn2& fn, const Interval& cell, Family family, double x,
                              const std::optional<HolderPair>& hp, Gate gate) {
  switch (family) {
    case Family::ConvexAbs: return bound_convex_abs(fn, cell, x, gate);
    case Family::ConvexQ: return bound_convex_q(fn, cell, x, *hp, gate);
    case Family::ConcaveQ: return bound_concave_q(fn, cell, x, *hp, gate);
    case Family::Auto: break;
  }
  throw Error(ErrorCode::InvalidArgument, "family must be resolved");
}

CellCertificate certify_cell(const Fn2& fn, const Interval& cell, Family family, XChoice xc,
                             std::optional<double> p, Gate gate) {
  auto fixed_x = [&]() {
    switch (xc.kind) {
      case XChoice::Kind::Quarter: return cell.quarter_point();
      case XChoice::Kind::Midpoint: return cell.midpoint();
      default: return xc.value;
    }
  };
  const bool opt_x = xc.kind == XChoice::Kind::Optimize;

  double x = 0;
  std::optional<HolderPair> hp;
  if (family == Family::ConvexAbs) {
    if (gate == Gate::Verify) verify_family(fn, cell, family, 1);
    x = opt_x ? optimize_x(fn, cell, family, 2, Gate::Force) : fixed_x();
  } else if (p) {
    hp = HolderPair::from_p(*p);
    if (gate == Gate::Verify) verify_family(fn, cell, family, hp->q());
    x = opt_x ? optimize_x(fn, cell, family, hp->p(), Gate::Force) : fixed_x();
  } else if (opt_x) {
    // Coordinate descent on (x, p); exact after one round when the bound
    // separates (concave family).
    x = cell.quarter_point();
    for (int round = 0; round < 2; ++round) {
      hp = optimize_p(fn, cell, x, family, gate);
      x = optimize_x(fn, cell, family, hp->p(), Gate::Force);
    }
  } else {
    x = fixed_x();
    hp = optimize_p(fn, cell, x, family, gate);
  }

  CellCertificate out;
  out.a = cell.a();
  out.b = cell.b();
  out.cert = family_bound(fn, cell, family, x, hp, gate);
  const CompanionValue rule = companion_rule(fn, cell, x);
  out.rule_value = rule.rule_value;
  out.derivative_term = rule.derivative_term;
  return out;
}

CompositeCertificate run_family(const CertRequest& req, Family family, bool parallel) {
  const int n = req.subdivisions;
  const Interval& iv = req.iv;
  std::vector<CellCertificate> cells(static_cast<std::size_t>(n));
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(n));

  auto one = [&](int i) {
    const auto ui = static_cast<std::size_t>(i);
    try {
      const Interval cell(kernels::grid_point(iv.a(), iv.b(), static_cast<std::size_t>(n), ui),
                          kernels::grid_point(iv.a(), iv.b(), static_cast<std::size_t>(n), ui + 1));
      cells[ui] = certify_cell(req.fn, cell, family, cell_choice(req.x, iv, cell, n), req.p, req.gate);
    } catch (...) {
      errors[ui] = std::current_exception();
    }
  };
  if (parallel) {
#pragma omp parallel for schedule(dynamic, 1)
    for (int i = 0; i < n; ++i) one(i);
  } else {
    for (int i = 0; i < n; ++i) one(i);
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  std::vector<double> est(cells.size()), bnd(cells.size());
  for (std::size_t i = 0; i < cells.size(); ++i) {
    const double w = (cells[i].b - cells[i].a) / iv.width();
    est[i] = cells[i].rule_value * w;
    bnd[i] = cells[i].cert.bound * w;
  }
  CompositeCertificate c;
  c.estimate = kernels::pairwise_sum(est);
  c.total_bound = kernels::pairwise_sum(bnd);
  c.n = n;
  c.family = family;
  c.cells = std::move(cells);
  return c;
}

void validate(const CertRequest& req) {
  if (req.subdivisions < 1 || req.subdivisions > kMaxSubdivisions) {
    throw Error(ErrorCode::InvalidArgument, "subdivisions must be in [1, 2^20]");
  }
  if (req.x.kind == XChoice::Kind::Fixed) require_left_half(req.iv, req.x.value);
  if (req.p) HolderPair::from_p(*req.p);
  req.fn.require(req.iv);
}

CompositeCertificate run(const CertRequest& req, bool parallel) {
  validate(req);
  if (req.family != Family::Auto) return run_family(req, req.family, parallel);

  const FamilyChoice choice = resolve_family(req.fn, req.iv, req.p);
  CompositeCertificate c = run_family(req, choice.family, parallel);
  if (choice.also) {
    CompositeCertificate other = run_family(req, *choice.also, parallel);
    const std::string both = "both t23 and t22 apply (|f''|^q affine); reported the smaller bound";
    if (other.total_bound < c.total_bound) c = std::move(other);
    c.note = both;
  }
  return c;
}

}  // namespace

CompositeCertificate composite_certify(const CertRequest& req) { return run(req, true); }

CompositeCertificate certify(const CertRequest& req) { return run(req, true); }

namespace serial {
CompositeCertificate composite_certify(const CertRequest& req) { return run(req, false); }
}  // namespace serial

}  // namespace ccq
