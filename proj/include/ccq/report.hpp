#pragma once

// JSON and CSV encodings of certificates and suite results.

#include <string>

#include <json.hpp>

#include "ccq/bounds.hpp"
#include "ccq/certify.hpp"
#include "ccq/means.hpp"
#include "ccq/shape.hpp"
#include "ccq/suite.hpp"

namespace ccq::report {

using Json = nlohmann::ordered_json;

Json to_json(const BoundCertificate& c);
Json to_json(const CellCertificate& c);
Json to_json(const CompositeCertificate& c);
Json to_json(const ShapeReport& s);
Json to_json(const PropositionReport& r);
Json to_json(const SuiteCase& c);
Json to_json(const SuiteResult& r);

// Top-level report {command, inputs, outputs[, suite_results]}.
Json envelope(std::string command, Json inputs, Json outputs);

// Two-space indented, trailing newline.
std::string dump(const Json& j);

// %.17g
std::string format_real(double v);

inline constexpr const char* kCsvHeader = "case_id,theorem,a,b,x,p,lhs,rhs,margin,status";
std::string csv_row(const SuiteCase& c);
std::string to_csv(const SuiteResult& r);

}  // namespace ccq::report
