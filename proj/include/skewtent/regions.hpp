#pragma once

// Parameter-plane atlas: classification of (k, r) into the fixed-point,
// two-cycle, full-interval chaos, escape, band-cascade and period-window
// regions, and the curves that bound them.

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "skewtent/core_map.hpp"

namespace skewtent {

inline constexpr double kDefaultTau = 1e-12;
inline constexpr int kDefaultDepthCap = 40;

/// Boundaries that classify() can land on.
enum class BoundaryKind {
  KEqualsOne,          ///< k = 1
  TwoCycleEdge,        ///< r = 1/k
  EscapeEdge,          ///< r = k/(k-1)
  CascadeEdge,         ///< r = k/(k^2-1), closure of S_1
  CascadeLevel,        ///< r = rho_p(k), between cascade depths
  ChaosWindowEdge,     ///< r = 1/(k-1), i.e. k = K_2(r)
  UnitSlope,           ///< r = 1 with k > 2
  WindowWall,          ///< k = K_m(r)
  StableOrbitEdge,     ///< k r^m = 1
  FullChaosEdge,       ///< k = L_m(r)
  BandSplitEdge,       ///< k = N_m(r)
};

std::string to_string(BoundaryKind b);

enum class WindowSub { R1, R2, R3, R4 };
std::string to_string(WindowSub s);

namespace region {
struct Trivial {};
struct FixedPoint {};
struct TwoCycle {};
struct FullIntervalChaos {};
struct EscapeCantor {};
struct Cascade {
  int p;          ///< (k, r) in int(S_p) \ S_{p+1} when terminal
  bool terminal;  ///< false: the depth cap p_max was reached first
};
struct Window {
  int m;
  WindowSub sub;
};
struct Boundary {
  BoundaryKind which;
  int index = 0;  ///< m for window boundaries, p for cascade levels
};
}  // namespace region

using RegionTag = std::variant<region::Trivial, region::FixedPoint, region::TwoCycle, region::FullIntervalChaos,
                               region::EscapeCantor, region::Cascade, region::Window, region::Boundary>;

/// Short machine tag: "FixedPoint", "Cascade", "Window", ...
std::string tag_name(const RegionTag& tag);
/// Human-readable one-liner, e.g. "Window m=2 sub=R1 (attracting period-3 orbit)".
std::string describe(const RegionTag& tag);
bool is_boundary(const RegionTag& tag);

struct ClassifyOptions {
  double tau = kDefaultTau;  ///< relative tolerance for "on a boundary"
  int p_max = kDefaultDepthCap;
};

/// Throws InvalidMap for nonpositive or non-finite input.
RegionTag classify(double k, double r, const ClassifyOptions& opts = {});
RegionTag classify(const MapParams& p, const ClassifyOptions& opts = {});

/// Signed values of the inequalities that decided the classification, in a
/// fixed order (name, value); positive means the left side is larger.
std::vector<std::pair<std::string, double>> boundary_distances(const MapParams& p, const RegionTag& tag);

// --- band-cascade renormalization -------------------------------------------

/// chi(p) = (2^{p+1} + 2(-1)^{p+1}) / 3
std::int64_t chi(int p);

struct RenormState {
  int p;
  double r_p;
  double k_p;
  std::int64_t chi_p;
};

/// States 0..depth of r_{p+1} = k_p^2, k_{p+1} = r_p k_p, cross-checked
/// against the closed form. Throws DepthOverflow past 1e300.
std::vector<RenormState> renorm_sequence(const MapParams& p, int depth);

/// t_p(k, r): r^chi k^{2chi-1} - k - r (p odd), r^{chi+1} k^{2chi+2} - k - r (p even).
/// Direct for p < 8, log-domain above; throws DepthOverflow when not representable.
double t_poly(int p, double k, double r);
/// Sign of t_p(k, r) (-1, 0, +1); never overflows.
int t_sign(int p, double k, double r);

/// Positive root in r of t_p(k, r) = 0. Closed form for p <= 2, bisection above.
double rho(int p, double k);

/// Root of t_p(k, 1/k) in (1, 2), p >= 2.
double K_threshold(int p);

struct CascadeDepth {
  int p;
  bool terminal;
};

/// Smallest p >= 1 with t_p(k, r) > 0. Throws OutOfDomain outside int(S_1).
CascadeDepth cascade_depth(const MapParams& p, int p_max = kDefaultDepthCap);

// --- period windows ----------------------------------------------------------

/// K_m(r) = 1 + 1/r + ... + 1/r^{m-1}
double K_wall(int m, double r);
/// L_m(r) = (1 + sqrt(1 + 4 r^{m+1})) / (2 r^m)
double L_curve(int m, double r);
/// Root in k of r^{2m} k^3 - k - r on (1/r^m, L_m(r)).
double N_curve(int m, double r);
/// Root of 1 - 2r + r^{m+1} in (1/2, 1).
double alpha_m(int m);
/// Root of r (1 + ... + r^{m-1})^2 - (1 + ... + r^m) in (0, 1).
double beta_m(int m);
/// Root of r^2 (1 + ... + r^{m-1})^3 - (1 + ... + r^m) in (0, 1).
double gamma_m(int m);

struct WindowLocation {
  enum class Kind { Inside, OnWall, NotInWindow } kind;
  int m = 0;  ///< window index, or the wall index K_m for OnWall
};

/// m >= 2 with K_m(r) < k < K_{m+1}(r). Throws OutOfDomain unless 0 < r < 1.
WindowLocation window_index(double k, double r, double tau = kDefaultTau);

struct WindowGeometry {
  int m;
  double r;
  double K_m;
  double K_m1;
  double inv_rm;
  double N_m;
  double L_m;
  double alpha_m;
  double beta_m;
  double gamma_m;
};

WindowGeometry window_geometry(int m, double r);

/// Bisection for a sign change of `f` on [lo, hi]; `f(lo)` and `f(hi)` must
/// have opposite signs. Runs to interval collapse or `iterations`.
template <class F>
double bisect(F&& f, double lo, double hi, int iterations = 200) {
  const bool lo_negative = f(lo) < 0.0;
  for (int i = 0; i < iterations; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if ((f(mid) < 0.0) == lo_negative) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace skewtent
