#include "skewtent/attractors.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include <fmt/format.h>

namespace skewtent {

namespace {

constexpr double kOrbitResidual = 1e-10;
constexpr double kClosedFormTol = 1e-10;
constexpr double kInvarianceTol = 1e-9;

double slope_f(const MapParams& p, double x) { return x <= 0.0 ? p.r() : -p.k(); }

void precision_check(bool ok, std::string_view what) {
  if (!ok) throw Error(ErrorCode::PrecisionLoss, std::string(what));
}

double iterate_unit(const UnitMap& u, double x, int n) {
  for (int i = 0; i < n; ++i) x = u.eval_unchecked(x);
  return x;
}

// Reference iteration in extended precision: rounding in k (1 - x) is amplified by
// the slope product, which reaches 1e6 and more when k is in the thousands.
double iterate_unit_extended(const MapParams& p, double x, int n) {
  const long double k = p.k();
  const long double r = p.r();
  const long double a = 1.0L - 1.0L / k;
  const long double b = 1.0L - r * a;
  long double y = x;
  for (int i = 0; i < n; ++i) y = y <= a ? b + r * y : k * (1.0L - y);
  return static_cast<double>(y);
}

Interval to_f_coords(const UnitMap& u, const Interval& iv) { return {u.h(iv.lo), u.h(iv.hi)}; }

void check_invariant(const IntervalUnion& bands, const MapParams& p, std::string_view label) {
  const double defect = hausdorff_distance(bands.image(PiecewiseLinear::canonical(p)), bands);
  if (!(defect <= kInvarianceTol)) {
    throw Error(ErrorCode::PrecisionLoss, fmt::format("{} not invariant: defect {:.3e}", label, defect));
  }
}

// base, g(base), ..., g^{count-1}(base) in unit coordinates
std::vector<Interval> forward_images(const UnitMap& u, Interval base, int count) {
  const auto g = PiecewiseLinear::unit(u);
  std::vector<Interval> out;
  out.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    out.push_back(base);
    base = g.image(base);
  }
  return out;
}

int require_window(const MapParams& p) {
  const double k = p.k();
  const double r = p.r();
  if (!(r < 1.0)) throw Error(ErrorCode::WrongRegion, fmt::format("no period window at r={} >= 1", r));
  const WindowLocation loc = window_index(k, r, 0.0);
  if (loc.kind != WindowLocation::Kind::Inside) {
    throw Error(ErrorCode::WrongRegion, fmt::format("(k={}, r={}) is not inside a period window", k, r));
  }
  return loc.m;
}

}  // namespace

PeriodicOrbit make_periodic_orbit(const MapParams& p, double x0, int period) {
  PeriodicOrbit orbit;
  orbit.period = period;
  orbit.points.reserve(static_cast<std::size_t>(period));
  orbit.multiplier = 1.0;
  double x = x0;
  for (int i = 0; i < period; ++i) {
    orbit.points.push_back(x);
    orbit.multiplier *= slope_f(p, x);
    x = eval_f(p, x);
  }
  const double residual = std::abs(x - x0);
  if (!(residual <= kOrbitResidual * std::max(1.0, std::abs(x0)))) {
    throw Error(ErrorCode::PrecisionLoss,
                fmt::format("period-{} orbit of {} does not close: residual {:.3e}", period, x0, residual));
  }
  orbit.stable = std::abs(orbit.multiplier) < 1.0;
  return orbit;
}

// --- cascade -------------------------------------------------------------------

CascadeData cascade_attractor(const MapParams& p, int depth) {
  const double k = p.k();
  const double r = p.r();
  if (depth < 1) throw Error(ErrorCode::WrongRegion, "cascade depth must be >= 1");
  if (!(k > 1.0 && r * k > 1.0)) {
    throw Error(ErrorCode::WrongRegion, fmt::format("(k={}, r={}) is not in a cascade region", k, r));
  }
  for (int q = 0; q < depth; ++q) {
    if (t_sign(q, k, r) >= 0) {
      throw Error(ErrorCode::WrongRegion, fmt::format("(k={}, r={}) is not in int(S_{}): t_{} >= 0", k, r, depth, q));
    }
  }
  if (depth > kMaxCascadeBandDepth) {
    throw Error(ErrorCode::DepthOverflow,
                fmt::format("depth {} exceeds the band construction cap {}", depth, kMaxCascadeBandDepth));
  }
  const auto renorm = renorm_sequence(p, depth);
  const UnitMap u = to_unit(p);
  const auto f = PiecewiseLinear::canonical(p);

  const std::size_t n = std::size_t{1} << depth;
  std::vector<double> f_pow2(static_cast<std::size_t>(depth) + 1);  // f^{2^m}(1)
  double x = 1.0;
  double amplification = 1.0;
  for (std::size_t i = 1; i <= n; ++i) {
    amplification *= std::abs(f.slope_at(x));
    x = f(x);
    if ((i & (i - 1)) == 0) f_pow2[static_cast<std::size_t>(std::countr_zero(i))] = x;
  }

  std::vector<Interval> bands;
  bands.reserve(n);
  Interval J{f_pow2[static_cast<std::size_t>(depth)], 1.0};
  for (std::size_t i = 0; i < n; ++i) {
    bands.push_back(J);
    J = f.image(J);
  }

  CascadeData out{};
  out.p = depth;
  out.bands = IntervalUnion::disjoint(std::move(bands));
  out.amplification = amplification;
  check_invariant(out.bands, p, fmt::format("cascade bands at depth {}", depth));

  const double k_p = renorm[static_cast<std::size_t>(depth)].k_p;
  out.B_p = u.h_inv(f_pow2[static_cast<std::size_t>(depth)]);
  out.A_p = 1.0 - (1.0 - out.B_p) / k_p;
  out.C_p = (out.B_p + k_p) / (k_p + 1.0);

  for (int m = 0; m < depth; ++m) {
    const double k_m = renorm[static_cast<std::size_t>(m)].k_p;
    const double c = (f_pow2[static_cast<std::size_t>(m)] + k_m) / (k_m + 1.0);
    const PeriodicOrbit orbit = make_periodic_orbit(p, c, 1 << m);
    precision_check(!orbit.stable, fmt::format("cascade point {} of period {} is not repelling", c, 1 << m));
    precision_check(out.bands.distance(c) > 0.0, fmt::format("cascade point {} lies inside a band", c));
    out.unstable_points.push_back(c);
  }
  return out;
}

// --- period windows ------------------------------------------------------------

double WindowData::return_map(double r, double x) const {
  const double end = return_domain_end(r);
  if (!(x >= 0.0 && x <= end)) {
    throw Error(ErrorCode::OutOfDomain, fmt::format("g^{} closed form used at {} outside [0, {}]", m + 1, x, end));
  }
  if (x <= x_m) return -K * (x - x_m);
  if (x <= x_m + 1.0 / R) return R * (x - x_m);
  return b + r - K * (x - x_m);
}

WindowData window_core(const MapParams& p) {
  const int m = require_window(p);
  const double k = p.k();
  const double r = p.r();
  const UnitMap u = to_unit(p);

  WindowData d{};
  d.m = m;
  d.a = u.a();
  d.b = u.b();
  d.x_m = 1.0 - K_wall(m, r) / k;
  precision_check(0.0 < d.x_m && d.x_m < d.b && d.b < d.a,
                  fmt::format("expected 0 < x_m < b < a, got x_m={} b={} a={}", d.x_m, d.b, d.a));
  const double kink_hit = iterate_unit(u, d.x_m, m - 1);
  precision_check(std::abs(kink_hit - d.a) <= kClosedFormTol,
                  fmt::format("g^{}(x_m) = {} misses the kink {}", m - 1, kink_hit, d.a));

  const double rm = std::pow(r, m);
  d.K = k * rm;
  d.R = k * k * std::pow(r, m - 1);
  d.a1 = d.K * d.x_m / (d.K + 1.0);
  d.b1 = d.R * d.x_m / (d.R - 1.0);
  d.p_val = d.K * d.x_m;
  d.p1 = d.R * (d.K - 1.0) * d.x_m;
  d.p2 = d.p_val - d.K * d.p1;

  double xa = d.a1;
  double xb = d.b1;
  for (int i = 0; i <= m; ++i) {
    d.a_orbit.push_back(xa);
    d.b_orbit.push_back(xb);
    xa = u.eval_unchecked(xa);
    xb = u.eval_unchecked(xb);
  }

  // closed form of g^{m+1} against iteration at the breakpoints and a grid
  const double end = d.return_domain_end(r);
  std::vector<double> probes{0.0, d.x_m, d.x_m + 1.0 / d.R, end};
  constexpr int kGrid = 32;
  for (int i = 1; i < kGrid; ++i) probes.push_back(end * i / kGrid);
  for (double x : probes) {
    if (x > end) continue;
    const double closed = d.return_map(r, x);
    const double iterated = iterate_unit_extended(p, x, m + 1);
    precision_check(std::abs(closed - iterated) <= kClosedFormTol,
                    fmt::format("g^{}({}) closed form {} vs iteration {}", m + 1, x, closed, iterated));
  }
  return d;
}

WindowOrbits window_periodic_orbits(const MapParams& p) {
  WindowData d = window_core(p);
  const double k = p.k();
  const double r = p.r();
  const int m = d.m;
  if (!(std::pow(r, m) * k * k - k - r < 0.0)) {
    throw Error(ErrorCode::WrongRegion, fmt::format("(k={}, r={}) needs r^m k^2 - k - r < 0", k, r));
  }
  const UnitMap u = to_unit(p);

  // g^i(0) and g^i(x_m) for i = 0..m
  std::vector<double> g0(static_cast<std::size_t>(m) + 1);
  std::vector<double> gx(static_cast<std::size_t>(m) + 1);
  g0[0] = 0.0;
  gx[0] = d.x_m;
  for (int i = 1; i <= m; ++i) {
    g0[static_cast<std::size_t>(i)] = u.eval_unchecked(g0[static_cast<std::size_t>(i) - 1]);
    gx[static_cast<std::size_t>(i)] = u.eval_unchecked(gx[static_cast<std::size_t>(i) - 1]);
  }
  const auto A = [&](int i) { return d.a_orbit[static_cast<std::size_t>(i) - 1]; };
  const auto B = [&](int i) { return d.b_orbit[static_cast<std::size_t>(i) - 1]; };
  const auto G0 = [&](int i) { return g0[static_cast<std::size_t>(i)]; };
  const auto GX = [&](int i) { return gx[static_cast<std::size_t>(i)]; };

  precision_check(d.p_val < d.b1 && d.b1 < d.b,
                  fmt::format("expected k r^m x_m < b_1 < b, got {} {} {}", d.p_val, d.b1, d.b));
  for (int i = 1; i <= m - 1; ++i) {
    const bool chain = G0(i - 1) < A(i) && A(i) < GX(i - 1) && GX(i - 1) < B(i) && B(i) < G0(i) &&
                       G0(i) < GX(i) && GX(i) <= d.a + kClosedFormTol;
    precision_check(chain, fmt::format("ordering of a_{0}, b_{0} against g^i(0), g^i(x_m) fails at i={0}", i));
  }
  const bool tail = G0(m - 1) < A(m) && A(m) < d.a && d.a < B(m) && B(m) < B(m + 1) && B(m + 1) < G0(m) &&
                    G0(m) < A(m + 1);
  precision_check(tail, fmt::format("ordering of a_{0}, b_{0}, b_{1} fails", m, m + 1));

  // hat b_{m+1} = b_{m+1}; hat b_i = left-branch preimage of hat b_{i+1}
  d.bhat.assign(static_cast<std::size_t>(m), 0.0);
  d.bhat[static_cast<std::size_t>(m) - 1] = B(m + 1);
  for (int i = m; i >= 2; --i) {
    const double next = d.bhat[static_cast<std::size_t>(i) - 1];
    const double hb = (next - d.b) / r;
    precision_check(B(i - 1) < hb && hb < G0(i - 1),
                    fmt::format("hat b_{} = {} not in (b_{}, g^{}(0))", i, hb, i - 1, i - 1));
    d.bhat[static_cast<std::size_t>(i) - 2] = hb;
  }

  d.U.push_back({0.0, d.b1});
  for (int i = 2; i <= m; ++i) d.U.push_back({d.bhat[static_cast<std::size_t>(i) - 2], B(i)});
  d.U.push_back({B(m + 1), 1.0});
  precision_check(min_gap(d.U) > 0.0, "trap components overlap");

  WindowOrbits out{d, make_periodic_orbit(p, u.h(d.a1), m + 1), make_periodic_orbit(p, u.h(d.b1), m + 1)};
  precision_check(!out.b.stable, "b-orbit is not repelling");
  return out;
}

IntervalUnion window_band_attractor(const MapParams& p) {
  const RegionTag tag = classify(p);
  const auto* w = std::get_if<region::Window>(&tag);
  if (w == nullptr || (w->sub != WindowSub::R2 && w->sub != WindowSub::R3)) {
    throw Error(ErrorCode::WrongRegion,
                fmt::format("band attractor needs a window R2/R3 point, got {}", describe(tag)));
  }
  const WindowOrbits orbits = window_periodic_orbits(p);
  const WindowData& d = orbits.data;
  const UnitMap u = to_unit(p);
  const int m = d.m;
  const auto g = PiecewiseLinear::unit(u);

  const auto lambda = forward_images(u, {0.0, d.p_val}, m + 1);
  const Interval returned = g.image(lambda.back());
  precision_check(std::abs(returned.lo) <= kInvarianceTol && std::abs(returned.hi - d.p_val) <= kInvarianceTol,
                  fmt::format("g^{}([0, p]) = [{}, {}], expected [0, {}]", m + 1, returned.lo, returned.hi, d.p_val));

  std::vector<Interval> unit_bands = lambda;
  if (w->sub == WindowSub::R3) {
    unit_bands = forward_images(u, {0.0, d.p1}, 2 * m + 2);
    // band i of Lambda splits into bands i and m+1+i of Lambda_1 around a_{i+1}
    for (int i = 0; i <= m; ++i) {
      Interval lo = unit_bands[static_cast<std::size_t>(i)];
      Interval hi = unit_bands[static_cast<std::size_t>(m + 1 + i)];
      if (hi.lo < lo.lo) std::swap(lo, hi);
      const Interval& outer = lambda[static_cast<std::size_t>(i)];
      const double ai = d.a_orbit[static_cast<std::size_t>(i)];
      const bool nested = outer.contains(lo, kInvarianceTol) && outer.contains(hi, kInvarianceTol) &&
                          lo.hi < ai && ai < hi.lo;
      precision_check(nested, fmt::format("Lambda_1 bands {} and {} do not split Lambda band {} around a_{}", i,
                                          m + 1 + i, i, i + 1));
    }
  }

  std::vector<Interval> f_bands;
  f_bands.reserve(unit_bands.size());
  for (const auto& iv : unit_bands) f_bands.push_back(to_f_coords(u, iv));
  IntervalUnion out = IntervalUnion::disjoint(std::move(f_bands));
  check_invariant(out, p, fmt::format("window m={} band union", m));
  return out;
}

// --- dispatch --------------------------------------------------------------------

std::string to_string(AttractorKind k) {
  switch (k) {
    case AttractorKind::Point: return "Point";
    case AttractorKind::Cycle: return "Cycle";
    case AttractorKind::Bands: return "Bands";
    case AttractorKind::FullInterval: return "FullInterval";
    case AttractorKind::NoneEscape: return "NoneEscape";
  }
  return "?";
}

IntervalUnion Attractor::support() const {
  struct {
    IntervalUnion operator()(const PointAttractor& a) const {
      const double x = a.orbit.points.front();
      return IntervalUnion::disjoint({{x, x}});
    }
    IntervalUnion operator()(const CycleAttractor& a) const {
      std::vector<Interval> pts;
      for (double x : a.orbit.points) pts.push_back({x, x});
      return IntervalUnion::disjoint(std::move(pts));
    }
    IntervalUnion operator()(const BandAttractor& a) const { return a.bands; }
    IntervalUnion operator()(const FullIntervalAttractor& a) const { return IntervalUnion::disjoint({a.interval}); }
    IntervalUnion operator()(const NoAttractor&) const { return {}; }
  } visitor;
  return std::visit(visitor, payload);
}

Attractor fixed_point_attractor(const MapParams& p) {
  if (!(p.k() < 1.0)) throw Error(ErrorCode::WrongRegion, fmt::format("fixed point attractor needs k < 1, got {}", p.k()));
  return Attractor{region::FixedPoint{}, PointAttractor{make_periodic_orbit(p, 1.0 / (p.k() + 1.0), 1)}, {}};
}

Attractor two_cycle(const MapParams& p) {
  const double k = p.k();
  const double r = p.r();
  if (!(k > 1.0 && r * k < 1.0)) {
    throw Error(ErrorCode::WrongRegion, fmt::format("two-cycle needs k > 1 and r < 1/k, got k={} r={}", k, r));
  }
  PeriodicOrbit cycle = make_periodic_orbit(p, (1.0 - k) / (1.0 + r * k), 2);
  cycle.points[1] = (1.0 + r) / (1.0 + r * k);
  ExceptionalSet ex;
  ex.unstable_orbits.push_back(make_periodic_orbit(p, 1.0 / (k + 1.0), 1));
  return Attractor{region::TwoCycle{}, CycleAttractor{std::move(cycle)}, std::move(ex)};
}

Attractor attractor(const MapParams& p, const ClassifyOptions& opts) {
  const RegionTag tag = classify(p, opts);
  const double k = p.k();

  if (const auto* b = std::get_if<region::Boundary>(&tag)) {
    throw Error(ErrorCode::NotClassified, fmt::format("{} lies on a region boundary", describe(*b)));
  }
  if (std::holds_alternative<region::FixedPoint>(tag)) return fixed_point_attractor(p);
  if (std::holds_alternative<region::TwoCycle>(tag)) return two_cycle(p);
  if (std::holds_alternative<region::FullIntervalChaos>(tag)) {
    return Attractor{tag, FullIntervalAttractor{{1.0 - k, 1.0}}, {}};
  }
  if (std::holds_alternative<region::EscapeCantor>(tag)) {
    ExceptionalSet ex;
    ex.cantor = escape_cantor_system(p);
    return Attractor{tag, NoAttractor{}, std::move(ex)};
  }
  if (const auto* c = std::get_if<region::Cascade>(&tag)) {
    if (!c->terminal) {
      throw Error(ErrorCode::DepthOverflow, fmt::format("cascade depth exceeds the cap {}", c->p));
    }
    CascadeData data = cascade_attractor(p, c->p);
    ExceptionalSet ex;
    for (int m = 0; m < c->p; ++m) {
      ex.unstable_orbits.push_back(make_periodic_orbit(p, data.unstable_points[static_cast<std::size_t>(m)], 1 << m));
    }
    IntervalUnion bands = data.bands;
    return Attractor{tag, BandAttractor{std::move(bands), std::move(data)}, std::move(ex)};
  }

  const auto& w = std::get<region::Window>(tag);
  if (w.sub == WindowSub::R4) return Attractor{tag, FullIntervalAttractor{{1.0 - k, 1.0}}, {}};

  WindowOrbits orbits = window_periodic_orbits(p);
  ExceptionalSet ex;
  ex.cantor = window_cantor_system(p);
  ex.unstable_orbits.push_back(orbits.b);
  if (w.sub == WindowSub::R1) return Attractor{tag, CycleAttractor{std::move(orbits.a)}, std::move(ex)};
  if (w.sub == WindowSub::R3) ex.unstable_orbits.insert(ex.unstable_orbits.begin(), orbits.a);
  return Attractor{tag, BandAttractor{window_band_attractor(p), std::nullopt}, std::move(ex)};
}

}  // namespace skewtent
