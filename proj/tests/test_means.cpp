#include <cmath>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "ccq/error.hpp"
#include "ccq/means.hpp"

namespace ccq {
namespace {

using LD = long double;

// Closed forms in extended precision; used only on well-separated pairs.
LD ld_log_mean(LD a, LD b) { return (b - a) / (std::log(b) - std::log(a)); }
LD ld_gen_log_pow(LD a, LD b, int n) {
  return (std::pow(b, LD(n + 1)) - std::pow(a, LD(n + 1))) / (LD(n + 1) * (b - a));
}
LD ld_log_identric(LD a, LD b) { return (b * std::log(b) - a * std::log(a)) / (b - a) - 1; }

LD ld_lhs(PropositionId id, LD a, LD b, int n) {
  switch (id) {
    case PropositionId::P31:
    case PropositionId::P34:
    case PropositionId::P34_literal:
      return std::fabs(1 / ld_log_mean(a, b) - (2 / (3 * a + b) + 2 / (a + 3 * b)));
    case PropositionId::P32:
      return std::fabs(ld_gen_log_pow(a, b, n) - std::pow((a + b) / 2, LD(n)));
    case PropositionId::P33:
    case PropositionId::P33_literal:
      return std::fabs((std::log(a) + std::log(b)) / 2 - ld_log_identric(a, b));
    case PropositionId::P33_rigorous:
      return std::fabs((std::log(a) + std::log(b)) / 2 - ld_log_identric(a, b) +
                       (b - a) * (b - a) / (8 * a * b));
  }
  return 0;
}

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::InvalidArgument;
}

TEST(Means, Examples) {
  EXPECT_EQ(mean(MeanKind::Arithmetic, 1, 3), 2);
  EXPECT_NEAR(mean(MeanKind::Logarithmic, 1, std::exp(1.0)), std::exp(1.0) - 1, 1e-15);
  for (MeanKind k : {MeanKind::Arithmetic, MeanKind::Logarithmic, MeanKind::Identric})
    EXPECT_EQ(mean(k, 2.5, 2.5), 2.5);
  EXPECT_EQ(mean(MeanKind::GeneralizedLog, 2.5, 2.5, 3), 2.5);
  EXPECT_NEAR(mean(MeanKind::Identric, 1, 2), 4 / std::exp(1.0), 1e-15);
  EXPECT_NEAR(log_identric(1, 2), 2 * std::log(2.0) - 1, 1e-15);
  EXPECT_NEAR(generalized_log_pow(1, 2, 2), 7.0 / 3, 1e-15);
  EXPECT_NEAR(generalized_log_pow(1, 2, -2), 0.5, 1e-15);
}

TEST(Means, Errors) {
  EXPECT_EQ(code_of([] { mean(MeanKind::Arithmetic, 0, 1); }), ErrorCode::NonPositiveArgument);
  EXPECT_EQ(code_of([] { mean(MeanKind::Identric, 1, -2); }), ErrorCode::NonPositiveArgument);
  EXPECT_EQ(code_of([] { mean(MeanKind::GeneralizedLog, 1, 2, 0); }), ErrorCode::InvalidOrder);
  EXPECT_EQ(code_of([] { mean(MeanKind::GeneralizedLog, 1, 2, -1); }), ErrorCode::InvalidOrder);
}

TEST(Means, NearlyEqualArgumentsAreStable) {
  const double a = 3, b = 3 * (1 + 1e-9);
  EXPECT_NEAR(mean(MeanKind::Logarithmic, a, b), (a + b) / 2, 1e-15 * a);
  EXPECT_NEAR(mean(MeanKind::Identric, a, b), (a + b) / 2, 1e-15 * a);
  EXPECT_NEAR(generalized_log_pow(a, b, 3), std::pow((a + b) / 2, 3.0), 1e-13);
}

TEST(Means, AgreeWithExtendedPrecisionClosedForms) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.01, 10);
  for (int k = 0; k < 500; ++k) {
    double a = u(rng), b = u(rng);
    if (std::abs(a - b) < 0.01) continue;
    EXPECT_NEAR(mean(MeanKind::Logarithmic, a, b), double(ld_log_mean(a, b)),
                1e-14 * std::max(a, b));
    EXPECT_NEAR(log_identric(a, b),
                double(ld_log_identric(std::min<LD>(a, b), std::max<LD>(a, b))), 1e-13);
    for (int n : {-3, -2, 2, 3, 4}) {
      const LD ref = ld_gen_log_pow(std::min<LD>(a, b), std::max<LD>(a, b), n);
      EXPECT_LE(std::abs(generalized_log_pow(a, b, n) - double(ref)), 1e-13 * double(ref));
    }
  }
}

// min <= L <= I <= A <= max, symmetric in the arguments.
TEST(Means, OrderingAndSymmetry) {
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> u(1e-3, 100);
  for (int k = 0; k < 1000; ++k) {
    const double a = u(rng), b = u(rng);
    const double L = mean(MeanKind::Logarithmic, a, b);
    const double I = mean(MeanKind::Identric, a, b);
    const double A = mean(MeanKind::Arithmetic, a, b);
    const double slack = 1e-14 * std::max(a, b);
    EXPECT_LE(std::min(a, b), L + slack);
    EXPECT_LE(L, I + slack);
    EXPECT_LE(I, A + slack);
    EXPECT_LE(A, std::max(a, b) + slack);
    EXPECT_EQ(L, mean(MeanKind::Logarithmic, b, a));
    EXPECT_EQ(I, mean(MeanKind::Identric, b, a));
    EXPECT_EQ(mean(MeanKind::GeneralizedLog, a, b, 3), mean(MeanKind::GeneralizedLog, b, a, 3));
  }
}

TEST(Propositions, IdsRoundTrip) {
  for (PropositionId id : kAllPropositions) EXPECT_EQ(parse_proposition_id(to_string(id)), id);
  EXPECT_FALSE(parse_proposition_id("p35").has_value());
  EXPECT_TRUE(is_asserted(PropositionId::P33_rigorous));
  EXPECT_FALSE(is_asserted(PropositionId::P33));
  EXPECT_FALSE(is_asserted(PropositionId::P34_literal));
}

TEST(Propositions, P32IsEqualityAtN2) {
  const PropositionReport r = check_proposition(PropositionId::P32, 1, 2, {.n = 2, .p = {}});
  EXPECT_NEAR(r.lhs, 1.0 / 12, 1e-16);
  EXPECT_NEAR(r.rhs, 1.0 / 12, 1e-16);
  EXPECT_TRUE(r.holds);
  EXPECT_TRUE(r.asserted);
  // L_2^2 - A^2 = (b-a)^2/12 for every pair.
  const PropositionReport s = check_proposition(PropositionId::P32, 0.3, 7.9, {.n = 2, .p = {}});
  EXPECT_NEAR(s.lhs, 7.6 * 7.6 / 12, 1e-13);
  EXPECT_NEAR(s.rhs, s.lhs, 1e-13);
}

TEST(Propositions, P31AtOneTwo) {
  const PropositionReport r = check_proposition(PropositionId::P31, 1, 2, {});
  EXPECT_NEAR(r.rhs, (9.0 / 8 + 448 * (1.0 / 125 + 1.0 / 343)) / 768, 1e-16);
  EXPECT_NEAR(r.lhs, double(ld_lhs(PropositionId::P31, 1, 2, 0)), 1e-17);
  EXPECT_TRUE(r.holds);
  EXPECT_LE(r.rhs_gap, 1e-14);
}

TEST(Propositions, P33ReadingsAtOneTwo) {
  const PropositionParams p{.n = {}, .p = 2};
  const PropositionReport restored = check_proposition(PropositionId::P33, 1, 2, p);
  EXPECT_NEAR(restored.lhs, 0.0397207708399179, 1e-13);
  EXPECT_NEAR(restored.rhs, std::sqrt(1 + 1.0 / 16) / (std::pow(2.0, 3.5) * std::sqrt(5.0)),
              1e-16);
  EXPECT_TRUE(restored.holds);
  const PropositionReport rigorous = check_proposition(PropositionId::P33_rigorous, 1, 2, p);
  EXPECT_NEAR(rigorous.lhs, 1.0 / 16 - 0.0397207708399179, 1e-13);
  EXPECT_EQ(rigorous.rhs, restored.rhs);
  EXPECT_TRUE(rigorous.holds);
  EXPECT_GT(check_proposition(PropositionId::P33_literal, 1, 2, p).rhs, restored.rhs);
}

TEST(Propositions, P34LiteralFailsAtOneTwo) {
  const PropositionParams p{.n = {}, .p = 2};
  const PropositionReport literal = check_proposition(PropositionId::P34_literal, 1, 2, p);
  EXPECT_FALSE(literal.holds);
  EXPECT_FALSE(literal.asserted);
  const PropositionReport fixed = check_proposition(PropositionId::P34, 1, 2, p);
  EXPECT_TRUE(fixed.holds);
  EXPECT_LE(fixed.rhs_gap, 1e-12);
}

TEST(Propositions, Errors) {
  EXPECT_EQ(code_of([] { check_proposition(PropositionId::P32, 1, 2, {}); }),
            ErrorCode::InvalidArgument);
  EXPECT_EQ(code_of([] { check_proposition(PropositionId::P33, 1, 2, {}); }),
            ErrorCode::InvalidArgument);
  EXPECT_THROW(check_proposition(PropositionId::P31, 2, 1, {}), Error);
  EXPECT_THROW(check_proposition(PropositionId::P31, 0, 1, {}), Error);
  EXPECT_THROW(check_proposition(PropositionId::P32, 1, 2, {.n = 1, .p = {}}), Error);
  EXPECT_THROW(check_proposition(PropositionId::P34, 1, 2, {.n = {}, .p = 1}), Error);
}

TEST(Propositions, LhsMatchesExtendedPrecision) {
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> u(0.05, 10);
  for (int k = 0; k < 200; ++k) {
    double a = u(rng), b = u(rng);
    if (a > b) std::swap(a, b);
    if (b / a < 1.05) continue;
    for (PropositionId id : kAllPropositions) {
      const int n = 3;
      const PropositionReport r = check_proposition(id, a, b, {.n = n, .p = 2});
      const double ref = double(ld_lhs(id, a, b, n));
      EXPECT_LE(std::abs(r.lhs - ref), 1e-9 * ref + 1e-16) << to_string(id) << " " << a << " " << b;
    }
  }
}

TEST(Propositions, AssertedIdsHoldOnRandomPairs) {
  std::mt19937_64 rng(14);
  std::uniform_real_distribution<double> u(1e-3, 10);
  for (int k = 0; k < 300; ++k) {
    double a = u(rng), b = u(rng);
    if (a == b) continue;
    if (a > b) std::swap(a, b);
    for (PropositionId id : kAllPropositions) {
      if (!is_asserted(id)) continue;
      for (int n : {-4, -2, 2, 3, 4}) {
        for (double p : {1.5, 2.0, 4.0}) {
          const PropositionReport r = check_proposition(id, a, b, {.n = n, .p = p});
          EXPECT_TRUE(r.holds) << to_string(id) << " " << a << " " << b;
          EXPECT_GE(r.lhs, 0);
        }
      }
    }
  }
}

}  // namespace
}  // namespace ccq
