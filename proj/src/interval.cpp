#include "skewtent/interval.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <fmt/format.h>

namespace skewtent {

PiecewiseLinear PiecewiseLinear::canonical(const MapParams& p) {
  return PiecewiseLinear{0.0, 1.0, p.r(), 1.0, -p.k()};
}

PiecewiseLinear PiecewiseLinear::unit(const UnitMap& u) {
  return PiecewiseLinear{u.a(), u.b(), u.r(), u.k(), -u.k()};
}

Interval PiecewiseLinear::image(const Interval& iv) const noexcept {
  const double ylo = (*this)(iv.lo);
  const double yhi = (*this)(iv.hi);
  Interval out{std::min(ylo, yhi), std::max(ylo, yhi)};
  if (iv.lo < kink && kink < iv.hi) {
    const double yk = (*this)(kink);
    out.lo = std::min(out.lo, yk);
    out.hi = std::max(out.hi, yk);
  }
  return out;
}

namespace {

void sort_by_lo(std::vector<Interval>& v) {
  std::sort(v.begin(), v.end(), [](const Interval& a, const Interval& b) {
    return a.lo < b.lo || (a.lo == b.lo && a.hi < b.hi);
  });
}

}  // namespace

double min_gap(std::span<const Interval> intervals) {
  std::vector<Interval> v(intervals.begin(), intervals.end());
  sort_by_lo(v);
  double gap = std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i < v.size(); ++i) {
    gap = std::min(gap, v[i].lo - v[i - 1].hi);
  }
  return gap;
}

IntervalUnion IntervalUnion::disjoint(std::vector<Interval> intervals) {
  for (const auto& iv : intervals) {
    if (!(iv.lo <= iv.hi)) {
      throw Error(ErrorCode::PrecisionLoss, fmt::format("inverted interval [{}, {}]", iv.lo, iv.hi));
    }
  }
  sort_by_lo(intervals);
  for (std::size_t i = 1; i < intervals.size(); ++i) {
    const double gap = intervals[i].lo - intervals[i - 1].hi;
    if (!(gap > 0.0)) {
      throw Error(ErrorCode::PrecisionLoss,
                  fmt::format("intervals [{}, {}] and [{}, {}] are not disjoint (gap {:.3e})", intervals[i - 1].lo,
                              intervals[i - 1].hi, intervals[i].lo, intervals[i].hi, gap));
    }
  }
  return IntervalUnion(std::move(intervals));
}

IntervalUnion IntervalUnion::merged(std::vector<Interval> intervals) {
  sort_by_lo(intervals);
  std::vector<Interval> out;
  out.reserve(intervals.size());
  for (const auto& iv : intervals) {
    if (!out.empty() && iv.lo <= out.back().hi) {
      out.back().hi = std::max(out.back().hi, iv.hi);
    } else {
      out.push_back(iv);
    }
  }
  return IntervalUnion(std::move(out));
}

double IntervalUnion::total_length() const noexcept {
  double s = 0.0;
  for (const auto& iv : intervals_) s += iv.width();
  return s;
}

double IntervalUnion::distance(double x) const noexcept {
  // first interval with hi >= x
  auto it = std::lower_bound(intervals_.begin(), intervals_.end(), x,
                             [](const Interval& iv, double v) { return iv.hi < v; });
  double d = std::numeric_limits<double>::infinity();
  if (it != intervals_.end()) {
    d = it->lo <= x ? 0.0 : it->lo - x;
  }
  if (it != intervals_.begin()) {
    d = std::min(d, x - std::prev(it)->hi);
  }
  return d;
}

bool IntervalUnion::contains(double x, double slack) const noexcept { return distance(x) <= slack; }

bool IntervalUnion::covers(const IntervalUnion& other, double slack) const noexcept {
  for (const auto& t : other.intervals_) {
    const bool inside = std::any_of(intervals_.begin(), intervals_.end(),
                                    [&](const Interval& iv) { return iv.contains(t, slack); });
    if (!inside) return false;
  }
  return true;
}

IntervalUnion IntervalUnion::image(const PiecewiseLinear& map) const {
  std::vector<Interval> out;
  out.reserve(intervals_.size());
  for (const auto& iv : intervals_) out.push_back(map.image(iv));
  return merged(std::move(out));
}

namespace {

// sup over x in a of dist(x, b)
double directed_hausdorff(const IntervalUnion& a, const IntervalUnion& b) {
  double worst = 0.0;
  for (const auto& iv : a) {
    worst = std::max({worst, b.distance(iv.lo), b.distance(iv.hi)});
  }
  // inside an interval of a, dist(., b) peaks at endpoints or at gap midpoints of b
  for (std::size_t j = 1; j < b.size(); ++j) {
    const double m = 0.5 * (b[j - 1].hi + b[j].lo);
    if (a.contains(m)) worst = std::max(worst, b.distance(m));
  }
  return worst;
}

}  // namespace

double hausdorff_distance(const IntervalUnion& a, const IntervalUnion& b) {
  if (a.empty() || b.empty()) {
    return a.empty() && b.empty() ? 0.0 : std::numeric_limits<double>::infinity();
  }
  return std::max(directed_hausdorff(a, b), directed_hausdorff(b, a));
}

}  // namespace skewtent
