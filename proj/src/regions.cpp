#include "skewtent/regions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <fmt/format.h>

namespace skewtent {

namespace {

// -1 / 0 / +1 with 0 meaning |a - b| <= tau * max(|a|, |b|)
int cmp(double a, double b, double tau) {
  const double scale = std::max(std::abs(a), std::abs(b));
  if (std::abs(a - b) <= tau * scale) return 0;
  return a < b ? -1 : 1;
}

struct TExponents {
  double of_r;
  double of_k;
};

TExponents t_exponents(int p) {
  const auto c = static_cast<double>(chi(p));
  if (p % 2 == 1) return {c, 2.0 * c - 1.0};
  return {c + 1.0, 2.0 * c + 2.0};
}

// log(r^a k^b) - log(k + r): same sign as t_p(k, r)
double t_log_margin(int p, double k, double r) {
  const auto e = t_exponents(p);
  return e.of_r * std::log(r) + e.of_k * std::log(k) - std::log(k + r);
}

// magnitude of the log terms; a relative parameter perturbation of tau moves
// the margin by about tau times this
double t_log_scale(int p, double k, double r) {
  const auto e = t_exponents(p);
  return std::max(1.0, std::abs(e.of_r * std::log(r)) + std::abs(e.of_k * std::log(k)));
}

double geometric_sum(int terms, double r) {
  double s = 0.0;
  for (int i = terms - 1; i >= 0; --i) s = 1.0 + r * s;
  return terms > 0 ? s : 0.0;
}

void require_window_index(int m) {
  if (m < 2) throw Error(ErrorCode::OutOfDomain, fmt::format("window index m={} must be >= 2", m));
}

void require_unit_r(double r) {
  if (!(r > 0.0 && r < 1.0)) throw Error(ErrorCode::OutOfDomain, fmt::format("need 0 < r < 1, got r={}", r));
}

}  // namespace

std::string to_string(BoundaryKind b) {
  switch (b) {
    case BoundaryKind::KEqualsOne: return "k=1";
    case BoundaryKind::TwoCycleEdge: return "r=1/k";
    case BoundaryKind::EscapeEdge: return "r=k/(k-1)";
    case BoundaryKind::CascadeEdge: return "r=k/(k^2-1)";
    case BoundaryKind::CascadeLevel: return "r=rho_p(k)";
    case BoundaryKind::ChaosWindowEdge: return "r=1/(k-1)";
    case BoundaryKind::UnitSlope: return "r=1";
    case BoundaryKind::WindowWall: return "k=K_m(r)";
    case BoundaryKind::StableOrbitEdge: return "k*r^m=1";
    case BoundaryKind::FullChaosEdge: return "k=L_m(r)";
    case BoundaryKind::BandSplitEdge: return "k=N_m(r)";
  }
  return "?";
}

std::string to_string(WindowSub s) {
  switch (s) {
    case WindowSub::R1: return "R1";
    case WindowSub::R2: return "R2";
    case WindowSub::R3: return "R3";
    case WindowSub::R4: return "R4";
  }
  return "?";
}

std::string tag_name(const RegionTag& tag) {
  struct {
    std::string operator()(const region::Trivial&) const { return "Trivial"; }
    std::string operator()(const region::FixedPoint&) const { return "FixedPoint"; }
    std::string operator()(const region::TwoCycle&) const { return "TwoCycle"; }
    std::string operator()(const region::FullIntervalChaos&) const { return "FullIntervalChaos"; }
    std::string operator()(const region::EscapeCantor&) const { return "EscapeCantor"; }
    std::string operator()(const region::Cascade&) const { return "Cascade"; }
    std::string operator()(const region::Window&) const { return "Window"; }
    std::string operator()(const region::Boundary&) const { return "Boundary"; }
  } visitor;
  return std::visit(visitor, tag);
}

std::string describe(const RegionTag& tag) {
  struct {
    std::string operator()(const region::Trivial&) const { return "Trivial"; }
    std::string operator()(const region::FixedPoint&) const { return "FixedPoint (attracting fixed point)"; }
    std::string operator()(const region::TwoCycle&) const { return "TwoCycle (attracting period-2 orbit)"; }
    std::string operator()(const region::FullIntervalChaos&) const {
      return "FullIntervalChaos (chaos on [1-k,1])";
    }
    std::string operator()(const region::EscapeCantor&) const {
      return "EscapeCantor (orbits escape except on a Cantor repeller)";
    }
    std::string operator()(const region::Cascade& c) const {
      if (!c.terminal) return fmt::format("Cascade p>={} (depth cap reached)", c.p);
      return fmt::format("Cascade p={} (chaotic {}-band attractor)", c.p, std::uint64_t{1} << c.p);
    }
    std::string operator()(const region::Window& w) const {
      std::string what;
      switch (w.sub) {
        case WindowSub::R1: what = fmt::format("attracting period-{} orbit", w.m + 1); break;
        case WindowSub::R2: what = fmt::format("chaotic {}-band attractor", w.m + 1); break;
        case WindowSub::R3: what = fmt::format("chaotic {}-band attractor", 2 * w.m + 2); break;
        case WindowSub::R4: what = "chaos on [1-k,1]"; break;
      }
      return fmt::format("Window m={} sub={} ({})", w.m, to_string(w.sub), what);
    }
    std::string operator()(const region::Boundary& b) const {
      switch (b.which) {
        case BoundaryKind::CascadeLevel: return fmt::format("Boundary{{{}, p={}}}", to_string(b.which), b.index);
        case BoundaryKind::WindowWall:
        case BoundaryKind::StableOrbitEdge:
        case BoundaryKind::FullChaosEdge:
        case BoundaryKind::BandSplitEdge: return fmt::format("Boundary{{{}, m={}}}", to_string(b.which), b.index);
        default: return fmt::format("Boundary{{{}}}", to_string(b.which));
      }
    }
  } visitor;
  return std::visit(visitor, tag);
}

bool is_boundary(const RegionTag& tag) { return std::holds_alternative<region::Boundary>(tag); }

// --- cascade -----------------------------------------------------------------

std::int64_t chi(int p) {
  if (p < 0 || p > 60) throw Error(ErrorCode::DepthOverflow, fmt::format("chi({}) out of range", p));
  const std::int64_t pow2 = std::int64_t{1} << (p + 1);
  const std::int64_t sign = (p % 2 == 0) ? -2 : 2;  // 2 (-1)^{p+1}
  return (pow2 + sign) / 3;
}

std::vector<RenormState> renorm_sequence(const MapParams& params, int depth) {
  if (depth < 0) throw Error(ErrorCode::OutOfDomain, "negative renormalization depth");
  const double k = params.k();
  const double r = params.r();
  std::vector<RenormState> out;
  out.reserve(static_cast<std::size_t>(depth) + 1);
  out.push_back({0, r, k, chi(0)});
  for (int p = 1; p <= depth; ++p) {
    const auto& prev = out.back();
    const double r_next = prev.k_p * prev.k_p;
    const double k_next = prev.r_p * prev.k_p;
    if (!(r_next <= 1e300 && k_next <= 1e300)) {
      throw Error(ErrorCode::DepthOverflow, fmt::format("renormalized slopes overflow at depth {}", p));
    }
    out.push_back({p, r_next, k_next, chi(p)});
  }

  // closed form: k_p = r^{chi/2} k^{chi + (-1)^p}, r_p = r^{chi/2 + (-1)^p} k^{chi}
  for (const auto& s : out) {
    if (s.p > 12) break;
    const double c = static_cast<double>(s.chi_p);
    const double sgn = (s.p % 2 == 0) ? 1.0 : -1.0;
    const double k_closed = std::pow(r, c / 2) * std::pow(k, c + sgn);
    const double r_closed = std::pow(r, c / 2 + sgn) * std::pow(k, c);
    if (std::abs(k_closed - s.k_p) > 1e-9 * std::abs(k_closed) ||
        std::abs(r_closed - s.r_p) > 1e-9 * std::abs(r_closed)) {
      throw Error(ErrorCode::PrecisionLoss,
                  fmt::format("recurrence and closed form disagree at depth {}: k_p {} vs {}, r_p {} vs {}", s.p,
                              s.k_p, k_closed, s.r_p, r_closed));
    }
  }
  return out;
}

double t_poly(int p, double k, double r) {
  if (p < 0) throw Error(ErrorCode::OutOfDomain, "t_p needs p >= 0");
  if (p < 8) {
    const auto e = t_exponents(p);
    const double v = std::pow(r, e.of_r) * std::pow(k, e.of_k) - k - r;
    if (!std::isfinite(v)) throw Error(ErrorCode::DepthOverflow, fmt::format("t_{} not representable", p));
    return v;
  }
  const double s = k + r;
  const double d = t_log_margin(p, k, r);
  if (d > 700.0) throw Error(ErrorCode::DepthOverflow, fmt::format("t_{} not representable", p));
  return s * std::expm1(d);
}

int t_sign(int p, double k, double r) {
  const double v = p < 8 ? t_poly(p, k, r) : t_log_margin(p, k, r);
  return (v > 0.0) - (v < 0.0);
}

double rho(int p, double k) {
  if (p < 0) throw Error(ErrorCode::OutOfDomain, "rho_p needs p >= 0");
  if (p == 0) {
    if (!(k > 1.0)) throw Error(ErrorCode::OutOfDomain, fmt::format("rho_0 needs k > 1, got {}", k));
    return k / (k * k - 1.0);
  }
  if (!(k >= 1.0) || !std::isfinite(k)) {
    throw Error(ErrorCode::OutOfDomain, fmt::format("rho_{} needs k >= 1, got {}", p, k));
  }
  if (p == 1) {
    return (1.0 + std::sqrt(1.0 + 4.0 * std::pow(k, 4))) / (2.0 * std::pow(k, 3));
  }
  if (p == 2) {
    // Cardano on k^6 r^3 - r - k = 0
    const double disc = std::sqrt(1.0 - 4.0 / (27.0 * std::pow(k, 8)));
    const double k5 = 2.0 * std::pow(k, 5);
    return std::cbrt((1.0 + disc) / k5) + std::cbrt((1.0 - disc) / k5);
  }
  const auto margin = [&](double r) { return p < 8 ? t_poly(p, k, r) : t_log_margin(p, k, r); };
  double hi = rho(p - 1, k);
  while (!(margin(hi) > 0.0)) hi *= 2.0;
  return bisect(margin, 0.0, hi);
}

double K_threshold(int p) {
  if (p < 2) throw Error(ErrorCode::OutOfDomain, fmt::format("K_p is defined for p >= 2, got {}", p));
  return bisect([p](double k) { return t_log_margin(p, k, 1.0 / k); }, 1.0, 2.0);
}

CascadeDepth cascade_depth(const MapParams& params, int p_max) {
  const double k = params.k();
  const double r = params.r();
  if (!(k > 1.0) || !(r * k > 1.0) || r * k * k - k - r > 0.0) {
    throw Error(ErrorCode::OutOfDomain, fmt::format("(k={}, r={}) is not in S_1", k, r));
  }
  for (int p = 1; p <= p_max; ++p) {
    if (t_sign(p, k, r) > 0) return {p, true};
  }
  return {p_max, false};
}

// --- windows -----------------------------------------------------------------

double K_wall(int m, double r) {
  if (m < 1) throw Error(ErrorCode::OutOfDomain, "K_m needs m >= 1");
  double K = 1.0;  // K_1
  for (int i = 1; i < m; ++i) K = 1.0 + K / r;
  return K;
}

double L_curve(int m, double r) {
  return (1.0 + std::sqrt(1.0 + 4.0 * std::pow(r, m + 1))) / (2.0 * std::pow(r, m));
}

double N_curve(int m, double r) {
  require_window_index(m);
  require_unit_r(r);
  const double r2m = std::pow(r, 2 * m);
  return bisect([&](double k) { return r2m * k * k * k - k - r; }, std::pow(r, -m), L_curve(m, r));
}

double alpha_m(int m) {
  require_window_index(m);
  const double r_min = std::pow(2.0 / (m + 1), 1.0 / m);
  return bisect([m](double r) { return 1.0 - 2.0 * r + std::pow(r, m + 1); }, 0.5, r_min);
}

double beta_m(int m) {
  require_window_index(m);
  return bisect(
      [m](double r) {
        const double s = geometric_sum(m, r);
        return r * s * s - geometric_sum(m + 1, r);
      },
      0.0, 1.0);
}

double gamma_m(int m) {
  require_window_index(m);
  return bisect(
      [m](double r) {
        const double s = geometric_sum(m, r);
        return r * r * s * s * s - geometric_sum(m + 1, r);
      },
      0.0, 1.0);
}

WindowLocation window_index(double k, double r, double tau) {
  require_unit_r(r);
  double K_lo = K_wall(2, r);
  switch (cmp(k, K_lo, tau)) {
    case 0: return {WindowLocation::Kind::OnWall, 2};
    case -1: return {WindowLocation::Kind::NotInWindow, 0};
    default: break;
  }
  for (int m = 2;; ++m) {
    const double K_hi = 1.0 + K_lo / r;
    const int c = cmp(k, K_hi, tau);
    if (c == 0) return {WindowLocation::Kind::OnWall, m + 1};
    if (c < 0) return {WindowLocation::Kind::Inside, m};
    K_lo = K_hi;
  }
}

WindowGeometry window_geometry(int m, double r) {
  require_window_index(m);
  require_unit_r(r);
  WindowGeometry g{};
  g.m = m;
  g.r = r;
  g.K_m = K_wall(m, r);
  g.K_m1 = K_wall(m + 1, r);
  g.inv_rm = std::pow(r, -m);
  g.L_m = L_curve(m, r);
  g.N_m = N_curve(m, r);
  g.alpha_m = alpha_m(m);
  g.beta_m = beta_m(m);
  g.gamma_m = gamma_m(m);
  return g;
}

// --- classification ------------------------------------------------------------

RegionTag classify(double k, double r, const ClassifyOptions& opts) { return classify(MapParams(k, r), opts); }

RegionTag classify(const MapParams& params, const ClassifyOptions& opts) {
  using namespace region;
  const double k = params.k();
  const double r = params.r();
  const double tau = opts.tau;

  switch (cmp(k, 1.0, tau)) {
    case 0: return Boundary{BoundaryKind::KEqualsOne};
    case -1: return FixedPoint{};
    default: break;
  }
  switch (cmp(r * k, 1.0, tau)) {
    case 0: return Boundary{BoundaryKind::TwoCycleEdge};
    case -1: return TwoCycle{};
    default: break;
  }
  switch (cmp(r * (k - 1.0), k, tau)) {
    case 0: return Boundary{BoundaryKind::EscapeEdge};
    case 1: return EscapeCantor{};
    default: break;
  }
  switch (cmp(r * k * k, k + r, tau)) {
    case 0: return Boundary{BoundaryKind::CascadeEdge};
    case -1: {
      for (int p = 1; p <= opts.p_max; ++p) {
        const double d = t_log_margin(p, k, r);
        if (std::abs(d) <= tau * t_log_scale(p, k, r)) return Boundary{BoundaryKind::CascadeLevel, p};
        if (d > 0.0) return Cascade{p, true};
      }
      return Cascade{opts.p_max, false};
    }
    default: break;
  }

  // rho_0(k) < r < k/(k-1)
  const int below_window = cmp(r * (k - 1.0), 1.0, tau);  // sign of r - 1/(k-1)
  const int vs_one = cmp(r, 1.0, tau);
  if (below_window < 0 || vs_one > 0) return FullIntervalChaos{};
  if (below_window == 0) return Boundary{BoundaryKind::ChaosWindowEdge};
  if (vs_one == 0) return Boundary{BoundaryKind::UnitSlope};

  const WindowLocation loc = window_index(k, r, tau);
  if (loc.kind == WindowLocation::Kind::OnWall) return Boundary{BoundaryKind::WindowWall, loc.m};
  if (loc.kind == WindowLocation::Kind::NotInWindow) return Boundary{BoundaryKind::ChaosWindowEdge};
  const int m = loc.m;
  const double rm = std::pow(r, m);
  switch (cmp(k * rm, 1.0, tau)) {
    case 0: return Boundary{BoundaryKind::StableOrbitEdge, m};
    case -1: return Window{m, WindowSub::R1};
    default: break;
  }
  switch (cmp(rm * k * k, k + r, tau)) {
    case 0: return Boundary{BoundaryKind::FullChaosEdge, m};
    case 1: return Window{m, WindowSub::R4};
    default: break;
  }
  switch (cmp(rm * rm * k * k * k, k + r, tau)) {
    case 0: return Boundary{BoundaryKind::BandSplitEdge, m};
    case 1: return Window{m, WindowSub::R2};
    default: return Window{m, WindowSub::R3};
  }
}

std::vector<std::pair<std::string, double>> boundary_distances(const MapParams& params, const RegionTag& tag) {
  const double k = params.k();
  const double r = params.r();
  std::vector<std::pair<std::string, double>> out{
      {"k-1", k - 1.0},
      {"rk-1", r * k - 1.0},
      {"r(k-1)-k", r * (k - 1.0) - k},
      {"rk^2-k-r", r * k * k - k - r},
      {"r(k-1)-1", r * (k - 1.0) - 1.0},
      {"r-1", r - 1.0},
  };
  if (const auto* c = std::get_if<region::Cascade>(&tag)) {
    for (int p = 1; p <= c->p && p < 8; ++p) out.emplace_back(fmt::format("t_{}", p), t_poly(p, k, r));
  }
  int m = 0;
  if (const auto* w = std::get_if<region::Window>(&tag)) m = w->m;
  if (const auto* b = std::get_if<region::Boundary>(&tag); b && b->index >= 2 && b->which != BoundaryKind::CascadeLevel) {
    m = b->index;
  }
  if (m >= 2 && r < 1.0) {
    const double rm = std::pow(r, m);
    out.emplace_back("k-K_m", k - K_wall(m, r));
    out.emplace_back("K_{m+1}-k", K_wall(m + 1, r) - k);
    out.emplace_back("kr^m-1", k * rm - 1.0);
    out.emplace_back("r^mk^2-k-r", rm * k * k - k - r);
    out.emplace_back("r^{2m}k^3-k-r", rm * rm * k * k * k - k - r);
  }
  return out;
}

}  // namespace skewtent
