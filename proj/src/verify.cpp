#include "skewtent/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include <fmt/format.h>

namespace skewtent {

Interval seed_box(const MapParams& p) {
  const TrappingInterval ti = trapping_interval(p);
  if (ti.bounded()) return {ti.alpha, ti.beta};
  return {1.0 - p.k() - 10.0, 11.0};
}

SeedFate seed_fate(const MapParams& p, const IntervalUnion& target, double x, std::size_t horizon, double eps) {
  const bool has_target = !target.empty();
  for (std::size_t n = 0; n <= horizon; ++n) {
    if (!(std::abs(x) <= kEscapeThreshold)) return {Fate::Escaped, n};
    if (has_target && target.distance(x) <= eps) return {Fate::Attracted, n};
    x = eval_f(p, x);
  }
  return {Fate::Undecided, horizon};
}

FateStats basin_experiment(const MapParams& p, std::size_t n_samples, std::size_t horizon, double eps,
                           std::uint64_t seed) {
  const RegionTag tag = classify(p);
  IntervalUnion target;
  if (!std::holds_alternative<region::EscapeCantor>(tag)) target = attractor(p).support();

  const Interval box = seed_box(p);
  UniformSampler rng(seed);
  FateStats stats;
  stats.n_samples = n_samples;
  stats.seed = seed;
  std::vector<double> landing;
  for (std::size_t i = 0; i < n_samples; ++i) {
    double x = rng.in(box.lo, box.hi);
    if (x == box.lo) x = box.mid();  // open interval
    const SeedFate sf = seed_fate(p, target, x, horizon, eps);
    switch (sf.fate) {
      case Fate::Attracted:
        ++stats.n_to_attractor;
        landing.push_back(static_cast<double>(sf.steps));
        break;
      case Fate::Escaped: ++stats.n_escaped; break;
      case Fate::Undecided: ++stats.n_undecided; break;
    }
  }
  if (landing.empty()) {
    stats.median_landing_time = std::numeric_limits<double>::quiet_NaN();
  } else {
    const std::size_t mid = landing.size() / 2;
    std::nth_element(landing.begin(), landing.begin() + static_cast<std::ptrdiff_t>(mid), landing.end());
    double med = landing[mid];
    if (landing.size() % 2 == 0) {
      med = 0.5 * (med + *std::max_element(landing.begin(), landing.begin() + static_cast<std::ptrdiff_t>(mid)));
    }
    stats.median_landing_time = med;
  }
  return stats;
}

LyapunovEstimate lyapunov(const MapParams& p, std::size_t n, std::size_t n_seeds, std::size_t burn_in,
                          std::uint64_t seed) {
  if (n < 1000) throw Error(ErrorCode::OutOfDomain, fmt::format("lyapunov needs n >= 1000, got {}", n));
  if (n_seeds == 0) throw Error(ErrorCode::OutOfDomain, "lyapunov needs at least one seed");
  const double k = p.k();
  const double r = p.r();
  const bool reducible = k > 1.0 && r <= k / (k - 1.0);
  const Interval box = reducible ? Interval{1.0 - k, 1.0} : seed_box(p);
  const double log_r = std::log(r);
  const double log_k = std::log(k);

  UniformSampler rng(seed);
  std::vector<double> per_seed;
  per_seed.reserve(n_seeds);
  for (std::size_t s = 0; s < n_seeds; ++s) {
    double x = rng.in(box.lo, box.hi);
    bool escaped = false;
    for (std::size_t i = 0; i < burn_in && !escaped; ++i) {
      x = eval_f(p, x);
      escaped = !(std::abs(x) <= kEscapeThreshold);
    }
    std::size_t n_left = 0;
    for (std::size_t i = 0; i < n && !escaped; ++i) {
      if (x <= 0.0) ++n_left;
      x = eval_f(p, x);
      escaped = !(std::abs(x) <= kEscapeThreshold);
    }
    if (escaped) continue;
    const auto n_right = n - n_left;
    per_seed.push_back((static_cast<double>(n_left) * log_r + static_cast<double>(n_right) * log_k) /
                       static_cast<double>(n));
  }
  if (per_seed.empty()) {
    throw Error(ErrorCode::NoBoundedOrbit, fmt::format("all {} orbits escaped at k={} r={}", n_seeds, k, r));
  }
  const double count = static_cast<double>(per_seed.size());
  double mean = 0.0;
  for (double v : per_seed) mean += v;
  mean /= count;
  double var = 0.0;
  for (double v : per_seed) var += (v - mean) * (v - mean);
  const double se = per_seed.size() > 1 ? std::sqrt(var / (count - 1.0) / count) : 0.0;
  return {mean, se, n, per_seed.size(), burn_in};
}

double check_invariance(const IntervalUnion& u, const MapParams& p) {
  return hausdorff_distance(u.image(PiecewiseLinear::canonical(p)), u);
}

double check_disjoint(std::span<const Interval> intervals) { return min_gap(intervals); }

double check_disjoint(const IntervalUnion& u) { return min_gap(u.intervals()); }

CoveringResult covering_test(const MapParams& p, std::size_t power, const Interval& start,
                             const IntervalUnion& target, std::size_t horizon) {
  if (!(start.width() > 0.0)) throw Error(ErrorCode::OutOfDomain, "covering start interval has no width");
  if (power == 0) throw Error(ErrorCode::OutOfDomain, "covering power must be >= 1");
  const auto f = PiecewiseLinear::canonical(p);
  IntervalUnion current = IntervalUnion::merged({start});
  for (std::size_t n = 1; n <= horizon; ++n) {
    for (std::size_t i = 0; i < power; ++i) current = current.image(f);
    if (current.covers(target, kCoveringSlack)) return CoveredAt{n};
    const auto& ivs = current.intervals();
    if (!std::isfinite(ivs.front().lo) || !std::isfinite(ivs.back().hi)) break;
  }
  return NotCovered{};
}

}  // namespace skewtent
