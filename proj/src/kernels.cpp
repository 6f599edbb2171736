#include "ccq/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <tuple>

namespace ccq::kernels {

namespace {

// Better-than for the max side: larger value, then smaller (i, j).
bool beats_max(double v, std::size_t i, std::size_t j, double best, std::size_t bi,
               std::size_t bj) {
  if (v != best) return v > best;
  return std::tie(i, j) < std::tie(bi, bj);
}

bool beats_min(double v, std::size_t i, std::size_t j, double best, std::size_t bi,
               std::size_t bj) {
  if (v != best) return v < best;
  return std::tie(i, j) < std::tie(bi, bj);
}

struct Partial {
  DefectScan scan;
  bool any = false;
};

// Input of one scan. For Scale::Log, e holds exp(g_i - max g), which keeps
// full relative precision wherever the largest value of a pair is normal.
struct Values {
  std::span<const double> g;
  std::vector<double> e;
  Scale scale;
};

Values prepare(std::span<const double> g, Scale scale) {
  Values v{g, {}, scale};
  if (scale == Scale::Log && !g.empty()) {
    const double top = *std::max_element(g.begin(), g.end());
    v.e.resize(g.size(), 0.0);
    if (top != -INFINITY) {
      for (std::size_t i = 0; i < g.size(); ++i) v.e[i] = std::exp(g[i] - top);
    }
  }
  return v;
}

double linear_defect(double u, double m, double v) {
  const double s = std::max({std::abs(u), std::abs(m), std::abs(v)});
  return s == 0 ? 0 : m / s - (u / s + v / s) / 2;
}

double relative_defect(const Values& in, std::size_t i, std::size_t k, std::size_t j) {
  if (in.scale == Scale::Linear) return linear_defect(in.g[i], in.g[k], in.g[j]);
  constexpr double kNormal = 0x1p-960;
  if (std::max({in.e[i], in.e[k], in.e[j]}) >= kNormal) {
    return linear_defect(in.e[i], in.e[k], in.e[j]);
  }
  const double u = in.g[i], m = in.g[k], v = in.g[j];
  const double top = std::max({u, m, v});
  if (top == -INFINITY) return 0;
  return std::exp(m - top) - (std::exp(u - top) + std::exp(v - top)) / 2;
}

void scan_row(const Values& in, std::size_t i, Partial& acc) {
  const std::size_t n = in.g.size();
  for (std::size_t j = i + 2; j < n; j += 2) {
    const double d = relative_defect(in, i, (i + j) / 2, j);
    DefectScan& s = acc.scan;
    if (!acc.any) {
      s.max_defect = s.min_defect = d;
      s.max_i = s.min_i = i;
      s.max_j = s.min_j = j;
      acc.any = true;
    } else {
      if (beats_max(d, i, j, s.max_defect, s.max_i, s.max_j)) {
        s.max_defect = d;
        s.max_i = i;
        s.max_j = j;
      }
      if (beats_min(d, i, j, s.min_defect, s.min_i, s.min_j)) {
        s.min_defect = d;
        s.min_i = i;
        s.min_j = j;
      }
    }
    ++s.pairs;
  }
}

void merge(Partial& into, const Partial& from) {
  if (!from.any) return;
  if (!into.any) {
    into = from;
    return;
  }
  DefectScan& s = into.scan;
  const DefectScan& o = from.scan;
  if (beats_max(o.max_defect, o.max_i, o.max_j, s.max_defect, s.max_i, s.max_j)) {
    s.max_defect = o.max_defect;
    s.max_i = o.max_i;
    s.max_j = o.max_j;
  }
  if (beats_min(o.min_defect, o.min_i, o.min_j, s.min_defect, s.min_i, s.min_j)) {
    s.min_defect = o.min_defect;
    s.min_i = o.min_i;
    s.min_j = o.min_j;
  }
  s.pairs += o.pairs;
}

}  // namespace

double grid_point(double a, double b, std::size_t n, std::size_t i) noexcept {
  if (i == n) return b;
  return a + static_cast<double>(i) * ((b - a) / static_cast<double>(n));
}

namespace serial {

DefectScan midpoint_defects(std::span<const double> g, Scale scale) {
  const Values in = prepare(g, scale);
  Partial acc;
  for (std::size_t i = 0; i < g.size(); ++i) scan_row(in, i, acc);
  return acc.scan;
}

std::vector<double> sample(const Evaluator& fn, double a, double b, std::size_t n) {
  std::vector<double> out(n + 1);
  for (std::size_t i = 0; i <= n; ++i) out[i] = fn(grid_point(a, b, n, i));
  return out;
}

}  // namespace serial

namespace omp {

DefectScan midpoint_defects(std::span<const double> g, Scale scale) {
  const Values in = prepare(g, scale);
  Partial result;
  const auto rows = static_cast<long long>(g.size());
#pragma omp parallel
  {
    Partial local;
#pragma omp for schedule(dynamic, 8) nowait
    for (long long i = 0; i < rows; ++i) scan_row(in, static_cast<std::size_t>(i), local);
#pragma omp critical(ccq_defect_merge)
    merge(result, local);
  }
  return result.scan;
}

std::vector<double> sample(const Evaluator& fn, double a, double b, std::size_t n) {
  std::vector<double> out(n + 1);
  const auto count = static_cast<long long>(n + 1);
#pragma omp parallel for schedule(static)
  for (long long i = 0; i < count; ++i) {
    out[static_cast<std::size_t>(i)] = fn(grid_point(a, b, n, static_cast<std::size_t>(i)));
  }
  return out;
}

}  // namespace omp

double pairwise_sum(std::span<const double> terms) noexcept {
  if (terms.size() <= 8) {
    double s = 0;
    for (double t : terms) s += t;
    return s;
  }
  const std::size_t half = terms.size() / 2;
  return pairwise_sum(terms.first(half)) + pairwise_sum(terms.subspan(half));
}

}  // namespace ccq::kernels
