#include "sqm/interval_set.hpp"

#include "sqm/errors.hpp"

#include <algorithm>
#include <cmath>

namespace sqm {

IntervalSet::IntervalSet(std::vector<Interval> intervals) : iv_(std::move(intervals)) {
  for (const auto& i : iv_) {
    if (!std::isfinite(i.lo) || !std::isfinite(i.hi)) throw ValidationError("IntervalSet: unbounded interval");
    if (!(i.lo < i.hi)) throw ValidationError("IntervalSet: interval with lo >= hi");
  }
  std::sort(iv_.begin(), iv_.end(), [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
  for (std::size_t i = 1; i < iv_.size(); ++i)
    if (iv_[i].lo < iv_[i - 1].hi) throw ValidationError("IntervalSet: overlapping intervals");
}

double IntervalSet::measure() const {
  double s = 0.0;
  for (const auto& i : iv_) s += i.hi - i.lo;
  return s;
}

double IntervalSet::lower() const {
  if (iv_.empty()) throw ValidationError("IntervalSet: empty set has no bounds");
  return iv_.front().lo;
}

double IntervalSet::upper() const {
  if (iv_.empty()) throw ValidationError("IntervalSet: empty set has no bounds");
  return iv_.back().hi;
}

bool IntervalSet::contains(double x) const {
  return std::any_of(iv_.begin(), iv_.end(), [x](const Interval& i) { return i.lo <= x && x < i.hi; });
}

double IntervalSet::overlap(double a, double b) const {
  double s = 0.0;
  for (const auto& i : iv_) {
    const double lo = std::max(a, i.lo);
    const double hi = std::min(b, i.hi);
    if (hi > lo) s += hi - lo;
  }
  return s;
}

IntervalSet IntervalSet::shifted(double dx) const {
  std::vector<Interval> out;
  for (const auto& i : iv_) out.push_back({i.lo + dx, i.hi + dx});
  return IntervalSet(std::move(out));
}

IntervalSet IntervalSet::scaled(double c) const {
  if (c == 0.0) throw ValidationError("IntervalSet: zero scale");
  std::vector<Interval> out;
  for (const auto& i : iv_) {
    const double a = c * i.lo, b = c * i.hi;
    out.push_back({std::min(a, b), std::max(a, b)});
  }
  return IntervalSet(std::move(out));
}

IntervalSet IntervalSet::united(const IntervalSet& other) const {
  std::vector<Interval> all = iv_;
  all.insert(all.end(), other.iv_.begin(), other.iv_.end());
  std::sort(all.begin(), all.end(), [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
  std::vector<Interval> merged;
  for (const auto& i : all) {
    if (!merged.empty() && i.lo <= merged.back().hi)
      merged.back().hi = std::max(merged.back().hi, i.hi);
    else
      merged.push_back(i);
  }
  return IntervalSet(std::move(merged));
}

}  // namespace sqm
