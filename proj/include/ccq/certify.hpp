#pragma once

// Top-level certification: pick the bound family from the shape of f'',
// choose x and p to minimize the bound, and apply it on a uniform
// subdivision.

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ccq/bounds.hpp"
#include "ccq/funcat.hpp"
#include "ccq/interval.hpp"

namespace ccq {

enum class Family { Auto, ConvexAbs, ConvexQ, ConcaveQ };

std::string_view to_string(Family f);
Theorem theorem_of(Family f);  // Auto -> InvalidArgument

// Evaluation point policy. Fixed x refers to the whole interval; on a
// subdivision it is mapped to the same relative position in every cell.
struct XChoice {
  enum class Kind { Optimize, Quarter, Midpoint, Fixed };
  Kind kind = Kind::Optimize;
  double value = 0;

  static XChoice optimize() { return {}; }
  static XChoice quarter() { return {Kind::Quarter, 0}; }
  static XChoice midpoint() { return {Kind::Midpoint, 0}; }
  static XChoice fixed(double x) { return {Kind::Fixed, x}; }
};

inline constexpr int kMaxSubdivisions = 1 << 20;
// Holder exponents searched by optimize_p: p in [1024/1023, 1024], so q <= 1024 too.
inline constexpr double kMinSearchP = 1024.0 / 1023.0;
// q values probed when deciding whether the concave family applies at all.
inline constexpr double kConcaveProbeQ[] = {1.25, 1.5, 2, 3, 4};

struct CertRequest {
  CertRequest(Fn2 f, Interval i) : fn(std::move(f)), iv(i) {}

  Fn2 fn;
  Interval iv;
  XChoice x = XChoice::optimize();
  std::optional<double> p;  // absent: optimized
  Family family = Family::Auto;
  int subdivisions = 1;
  Gate gate = Gate::Verify;  // Force skips hypothesis checks (explicit family only)
};

struct CellCertificate {
  double a = 0, b = 0;
  double rule_value = 0;
  double derivative_term = 0;
  BoundCertificate cert;
};

struct CompositeCertificate {
  double estimate = 0;     // mean-value estimate: sum of rule_value * width / (b-a)
  double total_bound = 0;  // sum of cell bound * width / (b-a)
  int n = 0;
  Family family = Family::Auto;  // resolved family
  std::vector<CellCertificate> cells;
  std::string note;
};

// Bound of a concrete family as a function of x (no hypothesis check).
class BoundObjective {
 public:
  BoundObjective(const Fn2& fn, const Interval& iv, Family family,
                 std::optional<HolderPair> hp = std::nullopt);
  double operator()(double x) const;

 private:
  Fn2 fn_;
  Interval iv_;
  Family family_;
  std::optional<HolderPair> hp_;
};

// x* in [a, (a+b)/2] minimizing the family's bound: 33-point scan, then
// golden-section on the bracketing cell to 1e-10 (b-a). Ties go to the larger
// x. p is ignored for ConvexAbs.
double optimize_x(const Fn2& fn, const Interval& iv, Family family, double p = 2,
                  Gate gate = Gate::Verify);

// p* in [1024/1023, 1024] minimizing the bound at x, restricted to p whose
// q passes the family's shape hypothesis. Golden-section on log p to relative
// 1e-8. Returns p = 2 when the bound is identically zero. NoFeasibleP if no
// scanned p is admissible.
HolderPair optimize_p(const Fn2& fn, const Interval& iv, double x, Family family,
                      Gate gate = Gate::Verify);

// Resolves Family::Auto on the whole interval. The optional second family is
// set when both power families apply (affine |f''|^q) and should be compared.
struct FamilyChoice {
  Family family = Family::Auto;
  std::optional<Family> also;
};
FamilyChoice resolve_family(const Fn2& fn, const Interval& iv, std::optional<double> p);

// Uniform subdivision, every cell certified with the same family and x/p
// policy. Cells run in parallel; totals are pairwise sums in cell order.
CompositeCertificate composite_certify(const CertRequest& req);

// composite_certify after resolving Family::Auto.
CompositeCertificate certify(const CertRequest& req);

namespace serial {
// Reference implementation of composite_certify with a plain cell loop.
CompositeCertificate composite_certify(const CertRequest& req);
}  // namespace serial

}  // namespace ccq
