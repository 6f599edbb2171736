// ccq: certify mean values with companion-rule error bounds, check the
// special-means inequalities, and run the property suites.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "ccq/certify.hpp"
#include "ccq/error.hpp"
#include "ccq/means.hpp"
#include "ccq/report.hpp"
#include "ccq/suite.hpp"

namespace {

using ccq::report::Json;
using ccq::report::format_real;

enum Exit { kOk = 0, kSuiteFailure = 1, kNoTheorem = 2, kUsage = 64, kDomain = 65 };

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Output {
  bool json = false;
  bool csv = false;
  std::string path;
};

void emit(const Output& o, const std::string& text) {
  if (o.path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(o.path, std::ios::binary);
  if (!f) throw UsageError("cannot write " + o.path);
  f << text;
}

double parse_real(const std::string& s, const char* flag) {
  std::size_t used = 0;
  double v = 0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != s.size()) throw UsageError(std::string(flag) + ": not a number: " + s);
  return v;
}

ccq::XChoice parse_x(const std::string& s) {
  if (s == "auto") return ccq::XChoice::optimize();
  if (s == "quarter") return ccq::XChoice::quarter();
  if (s == "midpoint") return ccq::XChoice::midpoint();
  return ccq::XChoice::fixed(parse_real(s, "--x"));
}

ccq::Family parse_family(const std::string& s) {
  if (s == "auto") return ccq::Family::Auto;
  if (s == "t21") return ccq::Family::ConvexAbs;
  if (s == "t22") return ccq::Family::ConvexQ;
  if (s == "t23") return ccq::Family::ConcaveQ;
  throw UsageError("--family must be auto, t21, t22 or t23");
}

struct CertifyArgs {
  std::string fn;
  double a = 0, b = 0;
  std::string x = "auto";
  std::string p = "auto";
  std::string family = "auto";
  int cells = 1;
  bool force = false;
  Output out;
};

int cmd_certify(const CertifyArgs& args) {
  ccq::CertRequest req(ccq::parse_catalog_spec(args.fn), ccq::Interval(args.a, args.b));
  req.x = parse_x(args.x);
  if (args.p != "auto") req.p = parse_real(args.p, "--p");
  req.family = parse_family(args.family);
  req.subdivisions = args.cells;
  if (args.force) {
    if (req.family == ccq::Family::Auto) throw UsageError("--force needs an explicit --family");
    req.gate = ccq::Gate::Force;
  }

  const ccq::CompositeCertificate c = ccq::certify(req);
  const double w = req.iv.width();
  const std::string theorem(ccq::wire_name(c.cells.front().cert.theorem));

  if (args.out.json) {
    Json inputs;
    inputs["fn"] = req.fn.name();
    inputs["a"] = args.a;
    inputs["b"] = args.b;
    inputs["x"] = args.x;
    inputs["p"] = args.p;
    inputs["family"] = args.family;
    inputs["cells"] = args.cells;
    inputs["force"] = args.force;
    Json outputs;
    outputs["theorem"] = theorem;
    outputs["mean_estimate"] = c.estimate;
    outputs["mean_bound"] = c.total_bound;
    outputs["integral_estimate"] = c.estimate * w;
    outputs["integral_bound"] = c.total_bound * w;
    outputs["certificate"] = ccq::report::to_json(c);
    emit(args.out, ccq::report::dump(ccq::report::envelope("certify", inputs, outputs)));
    return kOk;
  }
  if (args.out.csv) {
    std::string text = std::string(ccq::report::kCsvHeader) + "\n";
    for (std::size_t i = 0; i < c.cells.size(); ++i) {
      const auto& cell = c.cells[i];
      char id[32];
      std::snprintf(id, sizeof id, "cell/%06zu", i);
      text += std::string(id) + "," + std::string(ccq::wire_name(cell.cert.theorem)) + "," +
              format_real(cell.a) + "," + format_real(cell.b) + "," + format_real(cell.cert.x) +
              "," + (cell.cert.holder ? format_real(cell.cert.holder->p()) : "") + ",," +
              format_real(cell.cert.bound) + ",,certified\n";
    }
    emit(args.out, text);
    return kOk;
  }

  std::ostringstream os;
  os << "function         " << req.fn.name() << "\n"
     << "interval         [" << format_real(args.a) << ", " << format_real(args.b) << "]\n"
     << "theorem          " << theorem << "\n"
     << "cells            " << c.n << "\n"
     << "mean estimate    " << format_real(c.estimate) << "\n"
     << "mean bound       " << format_real(c.total_bound) << "\n"
     << "integral est.    " << format_real(c.estimate * w) << "\n"
     << "integral bound   " << format_real(c.total_bound * w) << "\n";
  if (c.n == 1) {
    const auto& cert = c.cells.front().cert;
    os << "x                " << format_real(cert.x) << "\n";
    if (cert.holder) {
      os << "p                " << format_real(cert.holder->p()) << "\n"
         << "q                " << format_real(cert.holder->q()) << "\n";
    }
  }
  if (!c.note.empty()) os << "note             " << c.note << "\n";
  emit(args.out, os.str());
  return kOk;
}

struct MeansArgs {
  std::string prop = "all";
  double a = 0, b = 0;
  int n = 2;
  double p = 2;
  Output out;
};

int cmd_means(const MeansArgs& args) {
  using ccq::PropositionId;
  std::vector<PropositionId> ids;
  if (args.prop == "p31" || args.prop == "all") ids.push_back(PropositionId::P31);
  if (args.prop == "p32" || args.prop == "all") ids.push_back(PropositionId::P32);
  if (args.prop == "p33" || args.prop == "all") {
    ids.insert(ids.end(), {PropositionId::P33_literal, PropositionId::P33,
                           PropositionId::P33_rigorous});
  }
  if (args.prop == "p34" || args.prop == "all") {
    ids.insert(ids.end(), {PropositionId::P34, PropositionId::P34_literal});
  }
  if (ids.empty()) throw UsageError("--prop must be p31, p32, p33, p34 or all");

  std::vector<ccq::PropositionReport> reports;
  for (PropositionId id : ids) {
    reports.push_back(ccq::check_proposition(id, args.a, args.b, {args.n, args.p}));
  }
  bool failed = false;
  for (const auto& r : reports) failed = failed || (r.asserted && !r.holds);
  auto status = [](const ccq::PropositionReport& r) {
    return r.holds ? "pass" : r.asserted ? "fail" : "flagged";
  };

  if (args.out.json) {
    Json inputs;
    inputs["prop"] = args.prop;
    inputs["a"] = args.a;
    inputs["b"] = args.b;
    inputs["n"] = args.n;
    inputs["p"] = args.p;
    Json rows = Json::array();
    for (const auto& r : reports) rows.push_back(ccq::report::to_json(r));
    Json outputs;
    outputs["propositions"] = std::move(rows);
    emit(args.out, ccq::report::dump(ccq::report::envelope("means", inputs, outputs)));
  } else if (args.out.csv) {
    std::string text = std::string(ccq::report::kCsvHeader) + "\n";
    for (const auto& r : reports) {
      const std::string id(ccq::to_string(r.id));
      const bool has_p = r.id != PropositionId::P31 && r.id != PropositionId::P32;
      text += id + "," + id + "," + format_real(r.a) + "," + format_real(r.b) + ",," +
              (has_p ? format_real(args.p) : "") + "," + format_real(r.lhs) + "," +
              format_real(r.rhs) + "," + format_real(r.rhs - r.lhs) + "," + status(r) + "\n";
    }
    emit(args.out, text);
  } else {
    std::ostringstream os;
    char line[256];
    std::snprintf(line, sizeof line, "%-18s %-24s %-24s %-24s %s\n", "id", "lhs", "rhs",
                  "general_rhs", "status");
    os << line;
    for (const auto& r : reports) {
      std::snprintf(line, sizeof line, "%-18s %-24s %-24s %-24s %s%s\n",
                    std::string(ccq::to_string(r.id)).c_str(), format_real(r.lhs).c_str(),
                    format_real(r.rhs).c_str(), format_real(r.general_rhs).c_str(), status(r),
                    r.asserted ? "" : " (reported only)");
      os << line;
    }
    emit(args.out, os.str());
  }
  return failed ? kSuiteFailure : kOk;
}

struct SuiteArgs {
  std::uint64_t seed = 7;
  int grid = 21;
  int pairs = 200;
  bool serial = false;
  Output out;
};

int cmd_suite(const SuiteArgs& args) {
  const ccq::SuiteConfig cfg{args.seed, args.grid, args.pairs};
  const ccq::SuiteResult r = args.serial ? ccq::serial::run_suite(cfg) : ccq::run_suite(cfg);
  if (args.out.json) {
    Json inputs;
    inputs["seed"] = args.seed;
    inputs["grid"] = args.grid;
    inputs["pairs"] = args.pairs;
    Json outputs;
    outputs["passed"] = r.passed;
    outputs["failed"] = r.failed;
    outputs["flagged"] = r.flagged;
    Json env = ccq::report::envelope("suite", inputs, outputs);
    Json cases = Json::array();
    for (const auto& c : r.cases) cases.push_back(ccq::report::to_json(c));
    env["suite_results"] = std::move(cases);
    emit(args.out, ccq::report::dump(env));
  } else if (args.out.csv) {
    emit(args.out, ccq::report::to_csv(r));
  } else {
    std::ostringstream os;
    os << "cases " << r.cases.size() << "  pass " << r.passed << "  fail " << r.failed
       << "  flagged " << r.flagged << "\n";
    for (const auto& c : r.cases) {
      if (c.status == ccq::CaseStatus::Pass) continue;
      os << ccq::to_string(c.status) << "  " << c.case_id << "  lhs " << format_real(c.lhs)
         << "  rhs " << format_real(c.rhs);
      if (!c.detail.empty()) os << "  (" << c.detail << ")";
      os << "\n";
    }
    emit(args.out, os.str());
  }
  return r.failed > 0 ? kSuiteFailure : kOk;
}

void add_output(CLI::App* cmd, Output& out) {
  auto* json = cmd->add_flag("--json", out.json, "JSON report");
  cmd->add_flag("--csv", out.csv, "CSV rows")->excludes(json);
  cmd->add_option("--out", out.path, "write to file instead of stdout");
}

int exit_code(const ccq::Error& e) {
  switch (e.code()) {
    case ccq::ErrorCode::NoApplicableTheorem: return kNoTheorem;
    case ccq::ErrorCode::InvalidArgument:
    case ccq::ErrorCode::UnknownCatalogName:
    case ccq::ErrorCode::InvalidParams: return kUsage;
    default: return kDomain;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Companion-rule quadrature with certified error bounds"};
  app.require_subcommand(1);

  CertifyArgs cert;
  auto* c = app.add_subcommand("certify", "certify the mean value of a catalog function");
  c->add_option("--fn", cert.fn, "power:n, recip, neglog, exp, poly:c0,c1,...")->required();
  c->add_option("--a", cert.a, "left endpoint")->required();
  c->add_option("--b", cert.b, "right endpoint")->required();
  c->add_option("--x", cert.x, "evaluation point in [a, (a+b)/2], auto, quarter or midpoint")
      ->capture_default_str();
  c->add_option("--p", cert.p, "Hölder exponent in (1, 1024] or auto")->capture_default_str();
  c->add_option("--family", cert.family, "auto, t21, t22 or t23")->capture_default_str();
  c->add_option("--cells", cert.cells, "uniform subdivisions")->capture_default_str();
  c->add_flag("--force", cert.force, "skip the shape check (explicit family only)");
  add_output(c, cert.out);

  MeansArgs means;
  auto* m = app.add_subcommand("means", "check the special-means inequalities");
  m->add_option("--prop", means.prop, "p31, p32, p33, p34 or all")->capture_default_str();
  m->add_option("--a", means.a, "0 < a")->required();
  m->add_option("--b", means.b, "a < b")->required();
  m->add_option("--n", means.n, "order for p32, |n| >= 2")->capture_default_str();
  m->add_option("--p", means.p, "Hölder exponent for p33 and p34")->capture_default_str();
  add_output(m, means.out);

  SuiteArgs suite;
  auto* s = app.add_subcommand("suite", "run the property suites");
  s->add_option("--seed", suite.seed, "seed for the random pairs")->capture_default_str();
  s->add_option("--grid", suite.grid, "x points per interval")->capture_default_str();
  s->add_option("--pairs", suite.pairs, "random (a, b) pairs")->capture_default_str();
  s->add_flag("--serial", suite.serial, "single-threaded reference run");
  add_output(s, suite.out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (c->parsed()) return cmd_certify(cert);
    if (m->parsed()) return cmd_means(means);
    return cmd_suite(suite);
  } catch (const UsageError& e) {
    std::cerr << "usage: " << e.what() << "\n";
    return kUsage;
  } catch (const ccq::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code(e);
  }
}
