#pragma once

// Closed-form attractors and exceptional sets for every open region.
// Results are in f-coordinates unless a field says otherwise.

#include <optional>
#include <variant>
#include <vector>

#include "skewtent/core_map.hpp"
#include "skewtent/interval.hpp"
#include "skewtent/regions.hpp"
#include "skewtent/symbolic.hpp"

namespace skewtent {

/// Deepest cascade whose 2^p bands are built explicitly.
inline constexpr int kMaxCascadeBandDepth = 20;

struct PeriodicOrbit {
  std::vector<double> points;
  int period = 0;
  double multiplier = 0.0;  ///< product of branch slopes (r or -k) over one period
  bool stable = false;
};

/// Orbit of x0 under f with its multiplier. Throws PrecisionLoss unless
/// |f^period(x0) - x0| <= 1e-10 max(1, |x0|).
PeriodicOrbit make_periodic_orbit(const MapParams& p, double x0, int period);

struct CascadeData {
  int p;
  double B_p;  ///< g^{2^p}(1), unit coordinates
  double A_p;  ///< 1 - (1 - B_p)/k_p
  double C_p;  ///< (B_p + k_p)/(k_p + 1)
  IntervalUnion bands;
  /// (f^{2^m}(1) + k_m)/(k_m + 1) for m = 0..p-1: unstable points of period 2^m
  std::vector<double> unstable_points;
  /// |slope product| along the 2^p-step orbit of 1; bounds endpoint error growth
  double amplification;
};

/// The 2^p bands f^i([f^{2^p}(1), 1]). Needs (k, r) in int(S_depth), i.e.
/// t_q(k, r) < 0 for q < depth; throws WrongRegion otherwise, DepthOverflow
/// past kMaxCascadeBandDepth and PrecisionLoss if a check fails.
CascadeData cascade_attractor(const MapParams& p, int depth);

/// Period-window data in unit coordinates.
struct WindowData {
  int m;
  double a;  ///< kink of g
  double b;  ///< g(0)
  double x_m;
  double K;  ///< k r^m
  double R;  ///< k^2 r^{m-1}
  double a1;
  double b1;
  std::vector<double> a_orbit;  ///< a_orbit[i-1] = a_i, i = 1..m+1
  std::vector<double> b_orbit;  ///< b_orbit[i-1] = b_i
  std::vector<double> bhat;     ///< bhat[i-2] = hat b_i, i = 2..m+1; filled by window_periodic_orbits
  /// [0, b_1), (hat b_i, b_i) for i = 2..m, (b_{m+1}, 1]; filled by window_periodic_orbits
  std::vector<Interval> U;
  double p_val;  ///< k r^m x_m
  double p1;     ///< k^2 r^{m-1} (k r^m - 1) x_m
  double p2;     ///< p_val - k r^m p1

  /// Right end of the domain [0, b + r x_m] of return_map.
  double return_domain_end(double r) const noexcept { return b + r * x_m; }
  /// Three-segment closed form of g^{m+1} on [0, b + r x_m].
  double return_map(double r, double x) const;
};

/// Throws WrongRegion unless K_m(r) < k < K_{m+1}(r) with 0 < r < 1, and
/// PrecisionLoss if the closed form of g^{m+1} disagrees with iteration.
WindowData window_core(const MapParams& p);

struct WindowOrbits {
  WindowData data;
  PeriodicOrbit a;  ///< orbit of a_1 in f-coordinates
  PeriodicOrbit b;  ///< orbit of b_1 in f-coordinates, always unstable
};

/// Requires r^m k^2 - k - r < 0 (WrongRegion); ordering chains that fail in
/// binary64 raise PrecisionLoss.
WindowOrbits window_periodic_orbits(const MapParams& p);

/// Lambda (m+1 bands) in R2 or Lambda_1 (2m+2 bands) in R3, in f-coordinates.
IntervalUnion window_band_attractor(const MapParams& p);

enum class AttractorKind { Point, Cycle, Bands, FullInterval, NoneEscape };

struct PointAttractor {
  PeriodicOrbit orbit;  ///< period 1
};
struct CycleAttractor {
  PeriodicOrbit orbit;
};
struct BandAttractor {
  IntervalUnion bands;
  std::optional<CascadeData> cascade;  ///< set for cascade regions
};
struct FullIntervalAttractor {
  Interval interval;
};
struct NoAttractor {};

using AttractorPayload =
    std::variant<PointAttractor, CycleAttractor, BandAttractor, FullIntervalAttractor, NoAttractor>;

/// Points not attracted: unstable periodic orbits (plus preimages, implied)
/// and the Cantor repeller when there is one.
struct ExceptionalSet {
  std::vector<PeriodicOrbit> unstable_orbits;
  std::optional<CantorSystem> cantor;
};

struct Attractor {
  RegionTag region;
  AttractorPayload payload;
  ExceptionalSet exceptional;

  AttractorKind kind() const noexcept { return static_cast<AttractorKind>(payload.index()); }
  /// The attracting set as intervals (degenerate for points); empty for NoneEscape.
  IntervalUnion support() const;
};

std::string to_string(AttractorKind k);

Attractor fixed_point_attractor(const MapParams& p);
Attractor two_cycle(const MapParams& p);

/// Dispatch on classify(). Boundary -> NotClassified; a capped cascade -> DepthOverflow.
Attractor attractor(const MapParams& p, const ClassifyOptions& opts = {});

}  // namespace skewtent
