#pragma once

// Desk-scale numerical diagnostics: basins, invariance, disjointness,
// Lyapunov exponents and interval covering.

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <string_view>
#include <variant>

#include "skewtent/attractors.hpp"
#include "skewtent/core_map.hpp"
#include "skewtent/interval.hpp"

namespace skewtent {

inline constexpr double kDefaultEps = 1e-6;
inline constexpr std::uint64_t kDefaultSeed = 1;

/// Name of the sampling algorithm, recorded in reports for reproducibility.
inline constexpr std::string_view kRngAlgorithm = "mt19937_64; u = (x >> 11) * 2^-53";

/// Uniform doubles in [0, 1) from a seeded 64-bit Mersenne twister.
class UniformSampler {
 public:
  explicit UniformSampler(std::uint64_t seed) : engine_(seed) {}
  double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double in(double lo, double hi) { return lo + (hi - lo) * unit(); }

 private:
  std::mt19937_64 engine_;
};

/// Box seeds are drawn from: int(I) when bounded, else [1 - k - 10, 11].
Interval seed_box(const MapParams& p);

enum class Fate { Attracted, Escaped, Undecided };

struct SeedFate {
  Fate fate;
  std::size_t steps;  ///< first step at which the fate was decided; horizon when undecided
};

/// Attracted: within eps of `target` at some step <= horizon. Escaped: |x|
/// exceeds kEscapeThreshold. An empty target can only escape or stay undecided.
SeedFate seed_fate(const MapParams& p, const IntervalUnion& target, double x, std::size_t horizon, double eps);

struct FateStats {
  std::size_t n_samples = 0;
  std::size_t n_to_attractor = 0;
  std::size_t n_escaped = 0;
  std::size_t n_undecided = 0;
  double median_landing_time = 0.0;  ///< over attracted seeds; NaN when none
  std::uint64_t seed = 0;

  double attracted_fraction() const noexcept {
    return n_samples ? static_cast<double>(n_to_attractor) / static_cast<double>(n_samples) : 0.0;
  }
  double escaped_fraction() const noexcept {
    return n_samples ? static_cast<double>(n_escaped) / static_cast<double>(n_samples) : 0.0;
  }
};

/// Uniform seeds in seed_box(p) classified against attractor(p).support()
/// (empty for the escape region).
FateStats basin_experiment(const MapParams& p, std::size_t n_samples, std::size_t horizon = kDefaultHorizon,
                           double eps = kDefaultEps, std::uint64_t seed = kDefaultSeed);

struct LyapunovEstimate {
  double lambda;
  double stderr_;  ///< standard error across seeds; 0 for one seed
  std::size_t n;
  std::size_t n_seeds;  ///< seeds whose orbits stayed bounded
  std::size_t burn_in;
};

/// Mean over seeds of (n_L ln r + n_R ln k) / n counted after burn_in.
/// Seeds come from [1-k, 1] when k > 1 and r <= k/(k-1), else seed_box(p).
/// Throws OutOfDomain for n < 1000, NoBoundedOrbit when every orbit escapes.
LyapunovEstimate lyapunov(const MapParams& p, std::size_t n, std::size_t n_seeds, std::size_t burn_in,
                          std::uint64_t seed);

/// Hausdorff distance between f(u), computed exactly, and u.
double check_invariance(const IntervalUnion& u, const MapParams& p);

/// Smallest gap between consecutive intervals; +inf for one interval, <= 0 on overlap.
double check_disjoint(std::span<const Interval> intervals);
double check_disjoint(const IntervalUnion& u);

struct CoveredAt {
  std::size_t n;  ///< applications of f^power
};
struct NotCovered {};
using CoveringResult = std::variant<CoveredAt, NotCovered>;

inline constexpr double kCoveringSlack = 1e-9;

/// Iterates `start` under f^power until the image covers `target` within
/// kCoveringSlack or `horizon` applications pass.
CoveringResult covering_test(const MapParams& p, std::size_t power, const Interval& start,
                             const IntervalUnion& target, std::size_t horizon);

}  // namespace skewtent
