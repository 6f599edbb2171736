#pragma once

// Function catalog: twice-differentiable functions with f, f' and f''.

#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ccq/interval.hpp"

namespace ccq {

using Evaluator = std::function<double(double)>;

enum class Domain {
  Real,      // no restriction
  Positive,  // t > 0
  NonZero,   // t != 0
};

class Fn2 {
 public:
  enum class Kind { Catalog, UserSampled };

  Fn2(Kind kind, std::string name, std::vector<double> params, Evaluator f, Evaluator df,
      Evaluator d2f, Domain domain);

  Kind kind() const noexcept { return kind_; }
  // Canonical catalog spec ("power:2", "recip", ...) or the user label.
  const std::string& name() const noexcept { return name_; }
  std::span<const double> params() const noexcept { return params_; }
  Domain domain() const noexcept { return domain_; }

  double f(double t) const { return f_(t); }
  double df(double t) const { return df_(t); }
  double d2f(double t) const { return d2f_(t); }

  const Evaluator& f_evaluator() const noexcept { return f_; }
  const Evaluator& d2f_evaluator() const noexcept { return d2f_; }

  bool admits(double t) const noexcept;
  bool admits(const Interval& iv) const noexcept;
  // Throws DomainViolation if any point of iv is outside the domain.
  void require(const Interval& iv) const;

 private:
  Kind kind_;
  std::string name_;
  std::vector<double> params_;
  Evaluator f_;
  Evaluator df_;
  Evaluator d2f_;
  Domain domain_;
};

// name is one of power, recip, neglog, exp, poly.
//   power  params {n}         t^n (any real n; t > 0 unless n is a non-negative integer)
//   recip  params {}          1/t, t > 0
//   neglog params {}          -ln t, t > 0
//   exp    params {}          e^t
//   poly   params {c0,c1,..}  c0 + c1 t + c2 t^2 + ...
Fn2 make_catalog_fn(std::string_view name, std::vector<double> params = {});

// Parses the CLI spelling: "power:n", "recip", "neglog", "exp", "poly:c0,c1,...".
Fn2 parse_catalog_spec(std::string_view spec);

// f given by samples only; f' and f'' come from central differences.
Fn2 make_sampled_fn(std::string label, Evaluator f, Domain domain = Domain::Real);

// Central-difference derivatives with the usual truncation/round-off balanced
// steps: h = cbrt(eps)(1+|t|) for f', h = eps^(1/4)(1+|t|) for f''.
double central_diff(const Evaluator& f, double t);
double second_central_diff(const Evaluator& f, double t);

}  // namespace ccq
