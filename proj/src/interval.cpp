#include "ccq/interval.hpp"

#include <cmath>
#include <sstream>

#include "ccq/error.hpp"

namespace ccq {

Interval::Interval(double a, double b) : a_(a), b_(b) {
  if (!std::isfinite(a) || !std::isfinite(b) || !(a < b)) {
    std::ostringstream os;
    os << "need finite a < b, got [" << a << ", " << b << "]";
    throw Error(ErrorCode::InvalidInterval, os.str());
  }
  const double m = midpoint();
  if (!(a < m && m < b)) {
    throw Error(ErrorCode::InvalidInterval, "interval too narrow to have an interior midpoint");
  }
}

}  // namespace ccq
