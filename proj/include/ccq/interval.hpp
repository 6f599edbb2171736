#pragma once

namespace ccq {

// Closed integration domain [a, b] with a < b.
class Interval {
 public:
  // Throws InvalidInterval unless a < b, both finite, and the midpoint lies
  // strictly between them.
  Interval(double a, double b);

  double a() const noexcept { return a_; }
  double b() const noexcept { return b_; }
  double width() const noexcept { return b_ - a_; }
  double midpoint() const noexcept { return (a_ + b_) / 2; }
  // (3a+b)/4. Every caller that needs "the quarter point" goes through here so
  // that x - quarter_point() cancels exactly.
  double quarter_point() const noexcept { return (3 * a_ + b_) / 4; }
  // a + b - x
  double reflect(double x) const noexcept { return a_ + b_ - x; }
  bool contains(double t) const noexcept { return a_ <= t && t <= b_; }

  friend bool operator==(const Interval&, const Interval&) = default;

 private:
  double a_;
  double b_;
};

}  // namespace ccq
