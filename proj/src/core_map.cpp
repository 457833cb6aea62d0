#include "skewtent/core_map.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

namespace skewtent {

MapParams::MapParams(double k, double r) : k_(k), r_(r) {
  if (!std::isfinite(k) || !std::isfinite(r)) {
    throw Error(ErrorCode::InvalidMap, fmt::format("non-finite parameters k={} r={}", k, r));
  }
  if (k <= 0.0 || r <= 0.0) {
    throw Error(ErrorCode::InvalidMap, fmt::format("parameters must be positive, got k={} r={}", k, r));
  }
}

char branch_letter(Branch b) { return b == Branch::Left ? 'L' : 'R'; }

GeneralTent GeneralTent::from_kink(double r, double k, double x0, double y0) {
  return GeneralTent{r, k, x0, y0};
}

GeneralTent GeneralTent::from_lines(double s, double r, double t, double k) {
  // s + r x = t - k x  =>  x0 = (t - s) / (r + k)
  if (r + k == 0.0) {
    throw Error(ErrorCode::InvalidMap, "parallel lines have no kink");
  }
  const double x0 = (t - s) / (r + k);
  return GeneralTent{r, k, x0, s + r * x0};
}

NormalizeResult normalize(const GeneralTent& gt) {
  if (!std::isfinite(gt.r) || !std::isfinite(gt.k) || !std::isfinite(gt.x0) || !std::isfinite(gt.y0)) {
    throw Error(ErrorCode::InvalidMap, "non-finite tent map data");
  }
  if (gt.r == 0.0 || gt.k == 0.0) {
    throw Error(ErrorCode::InvalidMap, "horizontal branch");
  }
  if (gt.r == -gt.k) {
    throw Error(ErrorCode::InvalidMap, "parallel branches");
  }
  if (gt.r * gt.k < 0.0) {
    return Trivial{TrivialReason::Homeomorphism};
  }

  double r = gt.r;
  double k = gt.k;
  double x0 = gt.x0;
  double y0 = gt.y0;
  bool flipped = false;
  if (r < 0.0) {
    // x -> -x: new left slope -k, new right slope r, kink (-x0, -y0)
    const double left = -k;
    const double right_mag = -r;
    r = left;
    k = right_mag;
    x0 = -x0;
    y0 = -y0;
    flipped = true;
  }

  const double gamma = y0 - x0;
  if (gamma <= 0.0) {
    return Trivial{TrivialReason::MonotoneTrap};
  }
  // H(x) = x + x0 followed by l(x) = gamma x leaves the slopes untouched.
  return Canonical{MapParams(k, r), gamma, flipped};
}

double eval_f(const MapParams& p, double x) noexcept {
  return x <= 0.0 ? 1.0 + p.r() * x : 1.0 - p.k() * x;
}

Branch branch_of(double x) noexcept { return x <= 0.0 ? Branch::Left : Branch::Right; }

Orbit iterate_f(const MapParams& p, double x0, std::size_t n, double escape_threshold) {
  Orbit orbit;
  orbit.x0 = x0;
  orbit.points.reserve(n + 1);
  orbit.branches.reserve(n);
  orbit.points.push_back(x0);
  double x = x0;
  for (std::size_t i = 0; i < n; ++i) {
    orbit.branches.push_back(branch_of(x));
    x = eval_f(p, x);
    orbit.points.push_back(x);
    if (!(std::abs(x) <= escape_threshold)) {
      orbit.escaped = true;
      break;
    }
  }
  return orbit;
}

TrappingInterval trapping_interval(const MapParams& p) noexcept {
  TrappingInterval ti;
  if (p.r() > 1.0) {
    ti.alpha = -1.0 / (p.r() - 1.0);
    ti.beta = p.r() / (p.k() * (p.r() - 1.0));
  }
  return ti;
}

LandingResult landing_time(const MapParams& p, double x, std::size_t horizon, double escape_threshold) {
  const TrappingInterval ti = trapping_interval(p);
  const double lo = 1.0 - p.k();
  for (std::size_t n = 0; n <= horizon; ++n) {
    if ((ti.bounded() && !ti.contains(x)) || x < -escape_threshold) {
      return Escaped{n};
    }
    if (lo <= x && x <= 1.0) {
      return Landed{n};
    }
    x = eval_f(p, x);
  }
  return Undecided{};
}

UnitMap to_unit(const MapParams& p) {
  const double k = p.k();
  const double r = p.r();
  if (!(k > 1.0)) {
    throw Error(ErrorCode::NotReducible, fmt::format("unit map needs k > 1, got k={}", k));
  }
  if (r > k / (k - 1.0)) {
    throw Error(ErrorCode::NotReducible,
                fmt::format("unit map needs r <= k/(k-1) = {}, got r={}", k / (k - 1.0), r));
  }
  const double a = 1.0 - 1.0 / k;
  return UnitMap(p, a, 1.0 - r * a);
}

double UnitMap::operator()(double x) const {
  if (!(x >= 0.0 && x <= 1.0)) {
    throw Error(ErrorCode::OutOfDomain, fmt::format("unit map evaluated at {}", x));
  }
  // b may round to a hair below zero at r = k/(k-1)
  return std::clamp(eval_unchecked(x), 0.0, 1.0);
}

double eval_g(const UnitMap& u, double x) { return u(x); }

Orbit iterate_g(const UnitMap& u, double x0, std::size_t n) {
  Orbit orbit;
  orbit.x0 = x0;
  orbit.points.reserve(n + 1);
  orbit.branches.reserve(n);
  double x = x0;
  if (n == 0) {
    (void)u(x0);  // domain check
  }
  orbit.points.push_back(x);
  for (std::size_t i = 0; i < n; ++i) {
    orbit.branches.push_back(u.branch(x));
    x = u(x);
    orbit.points.push_back(x);
  }
  return orbit;
}

}  // namespace skewtent
