#pragma once

#include <vector>

namespace sqm {

/// Finite union of disjoint half-open intervals [lo, hi), kept ascending.
class IntervalSet {
 public:
  struct Interval {
    double lo;
    double hi;
  };

  IntervalSet() = default;
  /// Sorts the input; throws if an interval is empty, unbounded, or overlaps another.
  explicit IntervalSet(std::vector<Interval> intervals);
  static IntervalSet single(double lo, double hi) { return IntervalSet({{lo, hi}}); }

  const std::vector<Interval>& intervals() const { return iv_; }
  bool empty() const { return iv_.empty(); }
  double measure() const;
  double lower() const;
  double upper() const;
  bool contains(double x) const;
  /// Length of [a, b) intersected with the set.
  double overlap(double a, double b) const;

  IntervalSet shifted(double dx) const;
  /// Image under x -> c x. Negative c flips orientation; endpoints stay half-open [lo, hi).
  IntervalSet scaled(double c) const;
  IntervalSet united(const IntervalSet& other) const;

 private:
  std::vector<Interval> iv_;
};

}  // namespace sqm
