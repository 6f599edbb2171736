#include "ccq/suite.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <tuple>

#include "ccq/bounds.hpp"
#include "ccq/certify.hpp"
#include "ccq/error.hpp"
#include "ccq/identity.hpp"
#include "ccq/kernels.hpp"
#include "ccq/means.hpp"
#include "ccq/oracle.hpp"
#include "ccq/shape.hpp"

namespace ccq {

std::string_view to_string(CaseStatus s) {
  switch (s) {
    case CaseStatus::Pass: return "pass";
    case CaseStatus::Fail: return "fail";
    case CaseStatus::Flagged: return "flagged";
  }
  return "?";
}

double unit_open_closed(std::uint64_t x) {
  return static_cast<double>((x >> 11) + 1) * 0x1.0p-53;
}

std::vector<std::pair<double, double>> proposition_pairs(std::uint64_t seed, int count) {
  std::mt19937_64 rng(seed);
  std::vector<std::pair<double, double>> out;
  out.reserve(static_cast<std::size_t>(std::max(count, 0)));
  while (static_cast<int>(out.size()) < count) {
    const double u = 10 * unit_open_closed(rng());
    const double v = 10 * unit_open_closed(rng());
    if (u == v) continue;
    out.emplace_back(std::min(u, v), std::max(u, v));
  }
  return out;
}

namespace {

constexpr double kPGrid[] = {1.1, 1.5, 2, 4, 16};
constexpr double kPropP[] = {1.5, 2, 4};
constexpr int kPropN[] = {-4, -3, -2, 2, 3, 4};
constexpr int kCells[] = {1, 2, 4, 8, 16};
constexpr double kOracleTol = 1e-12;

struct Subject {
  std::string label;
  std::string spec;
  std::vector<Interval> ivs;
};

// Positive-domain entries use [0.25, 1] in place of [0, 1].
std::vector<Subject> subjects() {
  const Interval i01(0, 1), i12(1, 2), i053(0.5, 3), iq1(0.25, 1), i14(1, 4);
  return {
      {"power2", "power:2", {i01, i12, i053}},
      {"power3", "power:3", {i01, i12, i053}},
      {"power2.5", "power:2.5", {iq1, i12, i14}},
      {"exp", "exp", {i01, i12, i053}},
      {"poly3", "poly:1,-2,0,1", {i01, i12, i053}},
      {"recip", "recip", {iq1, i12, i053}},
      {"neglog", "neglog", {iq1, i12, i053}},
  };
}

std::string pad(int i, int width = 3) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%0*d", width, i);
  return buf;
}

std::string pstr(double p) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "p%g", p);
  return buf;
}

struct Where {
  std::string id;
  std::string group;
  std::string theorem;
  double a = 0, b = 0;
  std::optional<double> x, p;
};

SuiteCase make_case(const Where& w, double lhs, double rhs, CaseStatus status) {
  SuiteCase c;
  c.case_id = w.id;
  c.group = w.group;
  c.theorem = w.theorem;
  c.a = w.a;
  c.b = w.b;
  c.x = w.x;
  c.p = w.p;
  c.lhs = lhs;
  c.rhs = rhs;
  c.margin = rhs - lhs;
  c.status = status;
  return c;
}

// lhs <= rhs + 1e-12 (1 + rhs). Violations of non-asserted inequalities are
// flagged rather than failed.
SuiteCase inequality(const Where& w, double lhs, double rhs, bool asserted = true) {
  const bool ok = lhs <= rhs + 1e-12 * (1 + rhs);
  return make_case(w, lhs, rhs, ok ? CaseStatus::Pass : asserted ? CaseStatus::Fail : CaseStatus::Flagged);
}

// |value - reference| <= rel |reference|
SuiteCase equality(const Where& w, double value, double reference, double rel,
                   bool asserted = true) {
  const double diff = std::abs(value - reference), tol = rel * std::abs(reference);
  return make_case(w, diff, tol, diff <= tol ? CaseStatus::Pass
                                 : asserted  ? CaseStatus::Fail
                                             : CaseStatus::Flagged);
}

Where at(std::string id, std::string group, std::string theorem, const Interval& iv,
         std::optional<double> x = std::nullopt, std::optional<double> p = std::nullopt) {
  return {std::move(id), std::move(group), std::move(theorem), iv.a(), iv.b(), x, p};
}

std::string wire(Theorem t) { return std::string(wire_name(t)); }

std::vector<double> x_grid(const Interval& iv, int grid) {
  std::vector<double> xs;
  for (int i = 0; i < grid; ++i) {
    xs.push_back(kernels::grid_point(iv.a(), iv.midpoint(), static_cast<std::size_t>(grid - 1),
                                     static_cast<std::size_t>(i)));
  }
  return xs;
}

using Task = std::function<std::vector<SuiteCase>()>;

void identity_tasks(std::vector<Task>& tasks, int grid) {
  for (const Subject& s : subjects()) {
    for (std::size_t k = 0; k < s.ivs.size(); ++k) {
      tasks.push_back([s, k, grid] {
        const Fn2 fn = parse_catalog_spec(s.spec);
        const Interval& iv = s.ivs[k];
        std::vector<SuiteCase> out;
        const auto xs = x_grid(iv, grid);
        for (std::size_t i = 0; i < xs.size(); ++i) {
          const IdentityCheck chk = identity_check(fn, iv, xs[i], kOracleTol);
          out.push_back(inequality(at("identity/" + s.label + "/i" + std::to_string(k) + "/x" +
                                          pad(static_cast<int>(i)),
                                      "identity", "identity", iv, xs[i]),
                                   chk.residual, 1e-9 * (1 + std::abs(chk.mean))));
        }
        return out;
      });
    }
  }
}

void validity_tasks(std::vector<Task>& tasks, int grid) {
  for (const Subject& s : subjects()) {
    for (std::size_t k = 0; k < s.ivs.size(); ++k) {
      tasks.push_back([s, k, grid] {
        const Fn2 fn = parse_catalog_spec(s.spec);
        const Interval& iv = s.ivs[k];
        const double mean = oracle::mean_value(fn, iv, kOracleTol).value;
        const auto xs = x_grid(iv, grid);
        const std::string base = "validity/" + s.label + "/i" + std::to_string(k) + "/";
        std::vector<SuiteCase> out;
        auto run = [&](const ShapeReport& shape, Theorem th, std::optional<HolderPair> hp) {
          for (std::size_t i = 0; i < xs.size(); ++i) {
            const double err = std::abs(mean - companion_rule(fn, iv, xs[i]).rule_value);
            double bound = 0;
            switch (th) {
              case Theorem::ConvexAbs: bound = bound_convex_abs(fn, iv, xs[i], shape).bound; break;
              case Theorem::ConvexPower: bound = bound_convex_q(fn, iv, xs[i], *hp, shape).bound; break;
              default: bound = bound_concave_q(fn, iv, xs[i], *hp, shape).bound; break;
            }
            std::optional<double> p;
            if (hp) p = hp->p();
            out.push_back(inequality(at(base + wire(th) + "/" + (hp ? pstr(hp->p()) : "p-") +
                                            "/x" + pad(static_cast<int>(i)),
                                        "validity", wire(th), iv, xs[i], p),
                                     err, bound));
          }
        };
        const ShapeReport s1 = check_shape(fn, iv, 1);
        if (s1.admits_convex()) run(s1, Theorem::ConvexAbs, std::nullopt);
        for (double p : kPGrid) {
          const HolderPair hp = HolderPair::from_p(p);
          const ShapeReport sq = check_shape(fn, iv, hp.q());
          if (sq.admits_convex()) run(sq, Theorem::ConvexPower, hp);
          if (sq.admits_concave()) run(sq, Theorem::ConcavePower, hp);
        }
        return out;
      });
    }
  }
}

BoundCertificate general_at(const Fn2& fn, const Interval& iv, const BoundCertificate& c) {
  switch (c.theorem) {
    case Theorem::ConvexAbs: return bound_convex_abs(fn, iv, c.x, Gate::Force);
    case Theorem::ConvexPower: return bound_convex_q(fn, iv, c.x, *c.holder, Gate::Force);
    default: return bound_concave_q(fn, iv, c.x, *c.holder, Gate::Force);
  }
}

void specialization_tasks(std::vector<Task>& tasks) {
  for (const Subject& s : subjects()) {
    for (std::size_t k = 0; k < s.ivs.size(); ++k) {
      tasks.push_back([s, k] {
        const Fn2 fn = parse_catalog_spec(s.spec);
        const Interval& iv = s.ivs[k];
        const std::string base = "special/" + s.label + "/i" + std::to_string(k) + "/";
        std::vector<SuiteCase> out;
        bool hp_pass = false;
        auto compare = [&](const std::vector<BoundCertificate>& certs) {
          for (const BoundCertificate& c : certs) {
            if (hp_pass && c.theorem == Theorem::ConvexAbs) continue;
            std::optional<double> p;
            if (c.holder) p = c.holder->p();
            out.push_back(equality(at(base + c.variant + "/" + wire(c.theorem) + "/" +
                                          (p ? pstr(*p) : "p-"),
                                      "specialization", wire(c.theorem), iv, c.x, p),
                                   c.bound, general_at(fn, iv, c).bound, 1e-14));
          }
        };
        auto guarded = [&](auto make) {
          try {
            compare(make());
          } catch (const Error& e) {
            if (e.code() != ErrorCode::ShapeHypothesisUnverified) throw;
          }
        };
        guarded([&] { return midpoint_certificates(fn, iv); });
        guarded([&] { return quarter_certificates(fn, iv); });
        hp_pass = true;
        for (double p : kPGrid) {
          const HolderPair hp = HolderPair::from_p(p);
          guarded([&] { return midpoint_certificates(fn, iv, hp); });
          guarded([&] { return quarter_certificates(fn, iv, hp); });
          if (check_shape(fn, iv, hp.q()).admits_convex()) {
            const TrapezoidCertificate t = trapezoid_certificate(fn, iv, hp);
            out.push_back(equality(at(base + "trapezoid/" + wire(t.cert.theorem) + "/" + pstr(p),
                                      "specialization", wire(t.cert.theorem), iv, iv.a(), p),
                                   t.cert.bound,
                                   bound_convex_q(fn, iv, iv.a(), hp, Gate::Force).bound, 1e-14));
          }
        }
        return out;
      });
    }
  }
}

void sharpness_tasks(std::vector<Task>& tasks, const std::vector<std::pair<double, double>>& pairs) {
  tasks.push_back([] {
    const Fn2 fn = make_catalog_fn("power", {2});
    std::vector<SuiteCase> out;
    const Interval ivs[] = {Interval(0, 1), Interval(1, 2), Interval(0.5, 3)};
    for (std::size_t k = 0; k < std::size(ivs); ++k) {
      const Interval& iv = ivs[k];
      const double mean = oracle::mean_value(fn, iv, kOracleTol).value;
      const double w2 = iv.width() * iv.width();
      const std::string base = "sharp/power2/i" + std::to_string(k) + "/";
      for (const auto& [name, x, exact] :
           {std::tuple<std::string, double, double>{"midpoint", iv.midpoint(), w2 / 12},
            {"quarter", iv.quarter_point(), w2 / 48}}) {
        const auto certs = name == "midpoint" ? midpoint_certificates(fn, iv)
                                              : quarter_certificates(fn, iv);
        const Where w = at(base + name, "sharpness", wire(Theorem::ConvexAbs), iv, x);
        out.push_back(equality(w, certs.front().bound, exact, 1e-14));
        // The oracle error matches to rounding of the mean only.
        Where wo = w;
        wo.id += "/oracle";
        out.push_back(equality(wo, std::abs(mean - companion_rule(fn, iv, x).rule_value), exact,
                               k == 0 ? 1e-14 : 1e-12));
      }
    }
    return out;
  });
  tasks.push_back([pairs] {
    std::vector<SuiteCase> out;
    std::vector<std::pair<double, double>> all{{1, 2}};
    all.insert(all.end(), pairs.begin(), pairs.end());
    for (std::size_t i = 0; i < all.size(); ++i) {
      const auto [a, b] = all[i];
      const PropositionReport r = check_proposition(PropositionId::P32, a, b, {2, std::nullopt});
      const std::string id = i == 0 ? "sharp/P32n2/fixed" : "sharp/P32n2/r" + pad(static_cast<int>(i - 1));
      out.push_back(equality(at(id, "sharpness", "P32", Interval(a, b)), r.lhs, r.rhs, 1e-14));
      out.push_back(equality(at(id + "/closed", "sharpness", "P32", Interval(a, b)), r.rhs,
                             (b - a) * (b - a) / 12, 1e-14));
    }
    return out;
  });
}

void midconcave_tasks(std::vector<Task>& tasks) {
  for (const Subject& s : subjects()) {
    for (std::size_t k = 0; k < s.ivs.size(); ++k) {
      tasks.push_back([s, k] {
        const Fn2 fn = parse_catalog_spec(s.spec);
        const Interval& iv = s.ivs[k];
        std::vector<SuiteCase> out;
        for (double p : kPGrid) {
          const HolderPair hp = HolderPair::from_p(p);
          const ShapeReport sq = check_shape(fn, iv, hp.q());
          if (!sq.admits_concave()) continue;
          out.push_back(equality(at("midconcave/" + s.label + "/i" + std::to_string(k) + "/" + pstr(p),
                                    "midconcave", wire(Theorem::MidpointConcave), iv, iv.midpoint(), p),
                                 bound_concave_q(fn, iv, iv.midpoint(), hp, sq).bound,
                                 midpoint_concave_bound(fn, iv, hp), 1e-14));
        }
        return out;
      });
    }
  }
}

void trapezoid_tasks(std::vector<Task>& tasks) {
  std::vector<Subject> subs = subjects();
  subs.push_back({"symcubic", "poly:0,0,-1.5,1", {Interval(0, 1)}});
  for (const Subject& s : subs) {
    for (std::size_t k = 0; k < s.ivs.size(); ++k) {
      tasks.push_back([s, k] {
        const Fn2 fn = parse_catalog_spec(s.spec);
        const Interval& iv = s.ivs[k];
        const double mean = oracle::mean_value(fn, iv, kOracleTol).value;
        const std::string base = "trapezoid/" + s.label + "/i" + std::to_string(k) + "/";
        std::vector<SuiteCase> out;
        for (double p : kPropP) {
          const HolderPair hp = HolderPair::from_p(p);
          if (!check_shape(fn, iv, hp.q()).admits_convex()) continue;
          const TrapezoidCertificate t = trapezoid_certificate(fn, iv, hp);
          const std::string th = wire(t.cert.theorem);
          // The raw trapezoid form needs f'(a) = f'(b); without it a violation
          // is the documented caveat, not a defect.
          SuiteCase raw = inequality(at(base + pstr(p) + "/raw", "trapezoid", th, iv, iv.a(), p),
                                     std::abs(mean - t.raw_rule), t.cert.bound,
                                     !t.symmetry_violated);
          if (t.symmetry_violated) raw.detail = "f'(a) != f'(b)";
          out.push_back(std::move(raw));
          out.push_back(inequality(at(base + pstr(p) + "/corrected", "trapezoid", th, iv, iv.a(), p),
                                   std::abs(mean - t.corrected_rule), t.cert.bound));
        }
        return out;
      });
    }
  }
}

void composite_tasks(std::vector<Task>& tasks) {
  for (const Subject& s : subjects()) {
    for (std::size_t k = 0; k < s.ivs.size(); ++k) {
      tasks.push_back([s, k] {
        const Fn2 fn = parse_catalog_spec(s.spec);
        const Interval& iv = s.ivs[k];
        const double mean = oracle::mean_value(fn, iv, kOracleTol).value;
        const std::string base = "composite/" + s.label + "/i" + std::to_string(k) + "/";
        std::vector<SuiteCase> out;
        std::optional<CompositeCertificate> prev;
        for (int n : kCells) {
          CertRequest req(fn, iv);
          req.subdivisions = n;
          // Cells run serially here; the suite already parallelizes over tasks.
          const CompositeCertificate c = serial::composite_certify(req);
          const std::string th = std::string(to_string(c.family));
          out.push_back(inequality(at(base + "n" + pad(n, 2), "composite", th, iv),
                                   std::abs(c.estimate - mean), c.total_bound));
          if (prev && c.family == Family::ConvexAbs && prev->family == Family::ConvexAbs) {
            out.push_back(inequality(at(base + "n" + pad(n, 2) + "/decay", "composite", th, iv),
                                     c.total_bound, prev->total_bound));
          }
          prev = c;
        }
        return out;
      });
    }
  }
  tasks.push_back([] {
    const Fn2 fn = make_catalog_fn("power", {2});
    const Interval iv(0, 1);
    std::vector<SuiteCase> out;
    for (int n : kCells) {
      CertRequest req(fn, iv);
      req.x = XChoice::quarter();
      req.subdivisions = n;
      const CompositeCertificate c = serial::composite_certify(req);
      out.push_back(equality(at("composite/power2/quarter/n" + pad(n, 2), "composite",
                                std::string(to_string(c.family)), iv),
                             c.total_bound, 1.0 / 48 / (n * n), 1e-12));
    }
    return out;
  });
}

void proposition_tasks(std::vector<Task>& tasks, const std::vector<std::pair<double, double>>& pairs) {
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    tasks.push_back([i, ab = pairs[i]] {
      const auto [a, b] = ab;
      const Interval iv(a, b);
      const std::string base = "prop/r" + pad(static_cast<int>(i)) + "/";
      std::vector<SuiteCase> out;
      auto add = [&](const PropositionReport& r, const std::string& suffix,
                     std::optional<double> p) {
        const std::string id(to_string(r.id));
        out.push_back(inequality(at(base + id + suffix, "propositions", id, iv, std::nullopt, p),
                                 r.lhs, r.rhs, r.asserted));
        // The printed right side should coincide with the general certificate
        // on the underlying function. P31 is reported, not asserted.
        if (r.id == PropositionId::P33_literal || r.id == PropositionId::P34_literal) {
          return;
        }
        SuiteCase c = make_case(at(base + id + suffix + "/general", "propositions", id, iv,
                                   std::nullopt, p),
                                r.rhs_gap, 1e-12, CaseStatus::Pass);
        if (r.rhs_gap > 1e-12) c.status = r.id == PropositionId::P31 ? CaseStatus::Flagged : CaseStatus::Fail;
        out.push_back(std::move(c));
      };
      add(check_proposition(PropositionId::P31, a, b, {}), "", std::nullopt);
      for (int n : kPropN) {
        add(check_proposition(PropositionId::P32, a, b, {n, std::nullopt}),
            "/n" + std::to_string(n), std::nullopt);
      }
      for (double p : kPropP) {
        for (PropositionId id : {PropositionId::P33, PropositionId::P33_literal,
                                 PropositionId::P33_rigorous, PropositionId::P34,
                                 PropositionId::P34_literal}) {
          add(check_proposition(id, a, b, {std::nullopt, p}), "/" + pstr(p), p);
        }
      }
      return out;
    });
  }
}

std::vector<Task> build_tasks(const SuiteConfig& cfg) {
  if (cfg.grid < 2) throw Error(ErrorCode::InvalidArgument, "suite grid must be >= 2");
  if (cfg.prop_pairs < 0) throw Error(ErrorCode::InvalidArgument, "prop_pairs must be >= 0");
  const auto pairs = proposition_pairs(cfg.seed, cfg.prop_pairs);
  std::vector<Task> tasks;
  identity_tasks(tasks, cfg.grid);
  validity_tasks(tasks, cfg.grid);
  specialization_tasks(tasks);
  sharpness_tasks(tasks, pairs);
  midconcave_tasks(tasks);
  trapezoid_tasks(tasks);
  composite_tasks(tasks);
  proposition_tasks(tasks, pairs);
  return tasks;
}

std::vector<SuiteCase> run_task(const Task& task, std::size_t index) {
  try {
    return task();
  } catch (const std::exception& e) {
    SuiteCase c;
    c.case_id = "error/task" + pad(static_cast<int>(index), 4);
    c.group = "error";
    c.status = CaseStatus::Fail;
    c.detail = e.what();
    return {c};
  }
}

SuiteResult collect(std::vector<std::vector<SuiteCase>> parts) {
  SuiteResult r;
  for (auto& part : parts) {
    for (auto& c : part) r.cases.push_back(std::move(c));
  }
  std::sort(r.cases.begin(), r.cases.end(),
            [](const SuiteCase& l, const SuiteCase& rr) { return l.case_id < rr.case_id; });
  for (const auto& c : r.cases) {
    switch (c.status) {
      case CaseStatus::Pass: ++r.passed; break;
      case CaseStatus::Fail: ++r.failed; break;
      case CaseStatus::Flagged: ++r.flagged; break;
    }
  }
  return r;
}

}  // namespace

SuiteResult run_suite(const SuiteConfig& cfg) {
  const std::vector<Task> tasks = build_tasks(cfg);
  std::vector<std::vector<SuiteCase>> parts(tasks.size());
  const auto n = static_cast<std::ptrdiff_t>(tasks.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    parts[static_cast<std::size_t>(i)] = run_task(tasks[static_cast<std::size_t>(i)], static_cast<std::size_t>(i));
  }
  return collect(std::move(parts));
}

namespace serial {
SuiteResult run_suite(const SuiteConfig& cfg) {
  const std::vector<Task> tasks = build_tasks(cfg);
  std::vector<std::vector<SuiteCase>> parts;
  for (std::size_t i = 0; i < tasks.size(); ++i) parts.push_back(run_task(tasks[i], i));
  return collect(std::move(parts));
}
}  // namespace serial

}  // namespace ccq
