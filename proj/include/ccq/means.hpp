#pragma once

// Arithmetic, logarithmic, generalized logarithmic and identric means, and
// four inequalities between them that follow from the companion-rule bounds.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace ccq {

enum class MeanKind { Arithmetic, Logarithmic, GeneralizedLog, Identric };

// alpha, beta > 0 (NonPositiveArgument), order irrelevant. n is read only for
// GeneralizedLog and must not be -1 or 0 (InvalidOrder). Equal arguments
// return alpha for every kind.
double mean(MeanKind kind, double alpha, double beta, int n = 0);

// L_n(alpha, beta)^n, i.e. the mean of t^n over [alpha, beta].
double generalized_log_pow(double alpha, double beta, int n);

// ln I(alpha, beta), the mean of ln t over [alpha, beta].
double log_identric(double alpha, double beta);

enum class PropositionId {
  P31,                // |1/L - A(4/(3a+b), 4/(a+3b))|, quarter-point bound for 1/x
  P32,                // |L_n^n - A^n|, midpoint bound for x^n
  P33,                // |A(ln a, ln b) - ln I|, trapezoid bound for -ln x
  P33_literal,  // P33 with the q-th root on the bracket dropped
  P33_rigorous,       // P33 rhs against the derivative-corrected trapezoid error
  P34,                // P31 lhs, quarter-point Hölder bound for 1/x
  P34_literal,  // P34 with the numerators 2 and 128 not raised to q
};

std::string_view to_string(PropositionId id);
std::optional<PropositionId> parse_proposition_id(std::string_view s);

// The ids whose inequality is a theorem (asserted by the suites); the others
// are reported for comparison only.
bool is_asserted(PropositionId id);

inline constexpr PropositionId kAllPropositions[] = {
    PropositionId::P31,          PropositionId::P32, PropositionId::P33,
    PropositionId::P33_literal, PropositionId::P33_rigorous,
    PropositionId::P34,          PropositionId::P34_literal,
};

struct PropositionParams {
  std::optional<int> n;     // P32: |n| >= 2
  std::optional<double> p;  // P33*, P34*: 1 < p <= 1024
};

struct Param {
  std::string name;
  double value = 0;
};

struct PropositionReport {
  PropositionId id = PropositionId::P31;
  double a = 0, b = 0;
  double lhs = 0;
  double rhs = 0;
  bool holds = false;  // lhs <= rhs + 1e-12 (1 + rhs)
  bool asserted = false;
  // The same bound from the general certificate on the underlying function.
  double general_rhs = 0;
  double rhs_gap = 0;  // |rhs - general_rhs| / max(|general_rhs|, tiny)
  std::vector<Param> params;
};

bool proposition_holds(double lhs, double rhs);

// 0 < a < b; InvalidArgument when a required parameter is missing.
PropositionReport check_proposition(PropositionId id, double a, double b,
                                    const PropositionParams& params);

}  // namespace ccq
