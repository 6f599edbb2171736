#include "ccq/report.hpp"

#include <cstdio>

namespace ccq::report {

namespace {

Json opt(const std::optional<double>& v) { return v ? Json(*v) : Json(nullptr); }

std::string quote_csv(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

Json to_json(const BoundCertificate& c) {
  Json j;
  j["theorem"] = wire_name(c.theorem);
  j["variant"] = c.variant;
  j["x"] = c.x;
  if (c.holder) {
    j["p"] = c.holder->p();
    j["q"] = c.holder->q();
  }
  j["bound"] = c.bound;
  Json samples = Json::array();
  for (const Sample& s : c.samples) {
    samples.push_back({{"label", s.label}, {"t", s.t}, {"value", s.value}});
  }
  j["samples"] = std::move(samples);
  j["assumes_symmetric_derivative"] = c.assumes_symmetric_derivative;
  j["hypothesis"] = c.hypothesis == Gate::Verify ? "verified" : "forced";
  if (c.verdict) j["verdict"] = to_string(*c.verdict);
  if (c.correction_term) j["correction_term"] = *c.correction_term;
  return j;
}

Json to_json(const CellCertificate& c) {
  Json j;
  j["a"] = c.a;
  j["b"] = c.b;
  j["rule_value"] = c.rule_value;
  j["derivative_term"] = c.derivative_term;
  j["certificate"] = to_json(c.cert);
  return j;
}

Json to_json(const CompositeCertificate& c) {
  Json j;
  j["estimate"] = c.estimate;
  j["total_bound"] = c.total_bound;
  j["n"] = c.n;
  j["family"] = to_string(c.family);
  if (!c.note.empty()) j["note"] = c.note;
  Json cells = Json::array();
  for (const auto& cell : c.cells) cells.push_back(to_json(cell));
  j["cells"] = std::move(cells);
  return j;
}

Json to_json(const ShapeReport& s) {
  Json j;
  j["a"] = s.a;
  j["b"] = s.b;
  j["q"] = s.q;
  j["verdict"] = to_string(s.verdict);
  j["grid_size"] = s.grid_size;
  j["max_violation"] = s.max_violation;
  j["violating_point"] = opt(s.violating_point);
  j["tolerance"] = s.tolerance;
  return j;
}

Json to_json(const PropositionReport& r) {
  Json j;
  j["id"] = to_string(r.id);
  j["a"] = r.a;
  j["b"] = r.b;
  j["lhs"] = r.lhs;
  j["rhs"] = r.rhs;
  j["holds"] = r.holds;
  j["asserted"] = r.asserted;
  j["general_rhs"] = r.general_rhs;
  j["rhs_gap"] = r.rhs_gap;
  Json params = Json::object();
  for (const Param& p : r.params) params[p.name] = p.value;
  j["params"] = std::move(params);
  return j;
}

Json to_json(const SuiteCase& c) {
  Json j;
  j["case_id"] = c.case_id;
  j["group"] = c.group;
  j["theorem"] = c.theorem;
  j["a"] = c.a;
  j["b"] = c.b;
  j["x"] = opt(c.x);
  j["p"] = opt(c.p);
  j["lhs"] = c.lhs;
  j["rhs"] = c.rhs;
  j["margin"] = c.margin;
  j["status"] = to_string(c.status);
  if (!c.detail.empty()) j["detail"] = c.detail;
  return j;
}

Json to_json(const SuiteResult& r) {
  Json j;
  j["passed"] = r.passed;
  j["failed"] = r.failed;
  j["flagged"] = r.flagged;
  Json cases = Json::array();
  for (const auto& c : r.cases) cases.push_back(to_json(c));
  j["cases"] = std::move(cases);
  return j;
}

Json envelope(std::string command, Json inputs, Json outputs) {
  Json j;
  j["command"] = std::move(command);
  j["inputs"] = std::move(inputs);
  j["outputs"] = std::move(outputs);
  return j;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

std::string format_real(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string csv_row(const SuiteCase& c) {
  auto real = [](const std::optional<double>& v) { return v ? format_real(*v) : std::string(); };
  std::string row = quote_csv(c.case_id);
  for (const std::string& field :
       {quote_csv(c.theorem), format_real(c.a), format_real(c.b), real(c.x), real(c.p),
        format_real(c.lhs), format_real(c.rhs), format_real(c.margin),
        std::string(to_string(c.status))}) {
    row += ',';
    row += field;
  }
  return row;
}

std::string to_csv(const SuiteResult& r) {
  std::string out = std::string(kCsvHeader) + "\n";
  for (const auto& c : r.cases) out += csv_row(c) + "\n";
  return out;
}

}  // namespace ccq::report
