#pragma once

#include <span>
#include <vector>

#include "skewtent/core_map.hpp"

namespace skewtent {

struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  double width() const noexcept { return hi - lo; }
  double mid() const noexcept { return 0.5 * (lo + hi); }
  bool contains(double x, double slack = 0.0) const noexcept { return lo - slack <= x && x <= hi + slack; }
  bool contains(const Interval& o, double slack = 0.0) const noexcept {
    return lo - slack <= o.lo && o.hi <= hi + slack;
  }

  friend bool operator==(const Interval&, const Interval&) = default;
};

/// One-kink continuous piecewise-linear map y = offset + slope * x on either
/// side of `kink` (points at the kink use the left branch).
struct PiecewiseLinear {
  double kink;
  double left_offset;
  double left_slope;
  double right_offset;
  double right_slope;

  static PiecewiseLinear canonical(const MapParams& p);
  static PiecewiseLinear unit(const UnitMap& u);

  double operator()(double x) const noexcept {
    return x <= kink ? left_offset + left_slope * x : right_offset + right_slope * x;
  }
  double slope_at(double x) const noexcept { return x <= kink ? left_slope : right_slope; }

  /// Exact image of a closed interval: the hull of the monotone pieces.
  Interval image(const Interval& iv) const noexcept;
};

/// Smallest `next.lo - prev.hi` after sorting by lower endpoint; +inf for
/// fewer than two intervals, <= 0 when two intervals overlap or touch.
double min_gap(std::span<const Interval> intervals);

/// Finite ordered list of pairwise disjoint closed intervals.
class IntervalUnion {
 public:
  IntervalUnion() = default;

  /// Sorts; throws PrecisionLoss (with the measured gap) unless all gaps are > 0.
  static IntervalUnion disjoint(std::vector<Interval> intervals);
  /// Sorts and merges overlapping or touching intervals.
  static IntervalUnion merged(std::vector<Interval> intervals);

  const std::vector<Interval>& intervals() const noexcept { return intervals_; }
  std::size_t size() const noexcept { return intervals_.size(); }
  bool empty() const noexcept { return intervals_.empty(); }
  const Interval& operator[](std::size_t i) const { return intervals_[i]; }
  auto begin() const noexcept { return intervals_.begin(); }
  auto end() const noexcept { return intervals_.end(); }

  double total_length() const noexcept;
  double distance(double x) const noexcept;
  bool contains(double x, double slack = 0.0) const noexcept;
  /// Every interval of `other` lies inside one interval of this union, up to `slack`.
  bool covers(const IntervalUnion& other, double slack = 0.0) const noexcept;

  IntervalUnion image(const PiecewiseLinear& map) const;

 private:
  explicit IntervalUnion(std::vector<Interval> iv) : intervals_(std::move(iv)) {}
  std::vector<Interval> intervals_;
};

/// Hausdorff distance between two nonempty finite unions of closed intervals.
double hausdorff_distance(const IntervalUnion& a, const IntervalUnion& b);

}  // namespace skewtent
