#include "skewtent/symbolic.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "skewtent/attractors.hpp"
#include "skewtent/regions.hpp"

namespace skewtent {

namespace {

constexpr double kCoveringTol = 1e-10;

void certificate(bool ok, std::string_view what) {
  if (!ok) throw Error(ErrorCode::PrecisionLoss, std::string(what));
}

}  // namespace

std::size_t CantorSystem::index_of(int symbol) const {
  const auto it = std::find(symbols.begin(), symbols.end(), symbol);
  if (it == symbols.end()) throw Error(ErrorCode::InvalidWord, fmt::format("symbol {} is not in the alphabet", symbol));
  return static_cast<std::size_t>(it - symbols.begin());
}

CantorSystem escape_cantor_system(const MapParams& p) {
  const double k = p.k();
  const double r = p.r();
  if (!(k > 1.0 && r > k / (k - 1.0))) {
    throw Error(ErrorCode::WrongRegion, fmt::format("escape repeller needs k > 1, r > k/(k-1); got k={} r={}", k, r));
  }
  const double a = k / (r + k);
  certificate(r * a > 1.0, fmt::format("expansion r a = {} is not > 1", r * a));
  CantorSystem sys{
      .kind = ShiftKind::FullShift2,
      .m = 0,
      .frame = Frame::Conjugated,
      .params = p,
      .map = PiecewiseLinear{a, 0.0, r, k, -k},
      .to_f = Affine{-1.0 / (r - 1.0), (r + k) / (k * (r - 1.0))},
      .symbols = {0, 1},
      .partition = {{0.0, 1.0 / r}, {1.0 - 1.0 / k, 1.0}},
      .branch_inverses = {Affine{0.0, 1.0 / r}, Affine{1.0, -1.0 / k}},
      .expansion = std::min(r, k),
  };
  certificate(min_gap(sys.partition) > 0.0, "escape partition intervals overlap");
  return sys;
}

CantorSystem window_cantor_system(const MapParams& p) {
  const WindowOrbits orbits = window_periodic_orbits(p);
  const WindowData& d = orbits.data;
  const int m = d.m;
  const double k = p.k();
  const double r = p.r();
  const UnitMap u = to_unit(p);

  CantorSystem sys{
      .kind = ShiftKind::WindowShift,
      .m = m,
      .frame = Frame::Unit,
      .params = p,
      .map = PiecewiseLinear::unit(u),
      .to_f = Affine{1.0 - k, k},
      .symbols = {},
      .partition = {},
      .branch_inverses = {},
      .expansion = k * k * std::pow(r, 2 * m - 2),
  };
  // I_j = [b_j, hat b_{j+1}] for j < m, I_m = [b_m, b_{m+1}]
  for (int j = 1; j <= m; ++j) {
    sys.symbols.push_back(j);
    const double lo = d.b_orbit[static_cast<std::size_t>(j) - 1];
    const double hi = j < m ? d.bhat[static_cast<std::size_t>(j) - 1] : d.b_orbit[static_cast<std::size_t>(m)];
    sys.partition.push_back({lo, hi});
    sys.branch_inverses.push_back(j < m ? Affine{-d.b / r, 1.0 / r} : Affine{1.0, -1.0 / k});
  }
  certificate(min_gap(sys.partition) > 0.0, "window partition intervals overlap");

  for (int j = 0; j + 1 < m; ++j) {
    const Interval img = sys.map.image(sys.partition[static_cast<std::size_t>(j)]);
    const Interval& next = sys.partition[static_cast<std::size_t>(j) + 1];
    certificate(std::abs(img.lo - next.lo) <= kCoveringTol && std::abs(img.hi - next.hi) <= kCoveringTol,
                fmt::format("g(I_{}) = [{}, {}] differs from I_{} = [{}, {}]", j + 1, img.lo, img.hi, j + 2, next.lo,
                            next.hi));
  }
  const Interval last = sys.map.image(sys.partition.back());
  certificate(last.contains(sys.span(), kCoveringTol),
              fmt::format("g(I_{}) = [{}, {}] does not cover the partition", m, last.lo, last.hi));

  // expansion over every return block: k^2 r^{m-1} > k^2 r^{2m-2} > K_m(r)^2 r^{2m-2} > 1
  const double block_a = k * k * std::pow(r, m - 1);
  const double block_b = sys.expansion;
  const double floor = std::pow(K_wall(m, r) * std::pow(r, m - 1), 2);
  certificate(block_a > block_b && block_b > floor && floor > 1.0,
              fmt::format("expansion chain fails: {} > {} > {} > 1", block_a, block_b, floor));
  return sys;
}

ItineraryResult itinerary(const CantorSystem& sys, double x, std::size_t n) {
  Word w;
  w.reserve(n);
  for (std::size_t step = 0; step < n; ++step) {
    const auto it = std::find_if(sys.partition.begin(), sys.partition.end(),
                                 [x](const Interval& iv) { return iv.contains(x, kPartitionSlack); });
    if (it == sys.partition.end()) return Exited{step};
    w.push_back(sys.symbols[static_cast<std::size_t>(it - sys.partition.begin())]);
    x = sys.map(x);
  }
  return w;
}

bool is_admissible(const Word& w, const CantorSystem& sys) {
  for (int s : w) (void)sys.index_of(s);
  if (sys.kind == ShiftKind::FullShift2) return true;
  for (std::size_t i = 0; i + 1 < w.size(); ++i) {
    if (w[i] < sys.m && w[i + 1] != w[i] + 1) return false;
  }
  return true;
}

Interval point_from_itinerary(const CantorSystem& sys, const Word& w) {
  if (w.empty()) throw Error(ErrorCode::InvalidWord, "empty word");
  if (!is_admissible(w, sys)) throw Error(ErrorCode::Inadmissible, "word violates the shift constraint");
  Interval c = sys.partition[sys.index_of(w.back())];
  for (std::size_t j = w.size() - 1; j-- > 0;) {
    const std::size_t i = sys.index_of(w[j]);
    const Interval pre = sys.branch_inverses[i].image(c);
    const Interval& part = sys.partition[i];
    c = {std::max(pre.lo, part.lo), std::min(pre.hi, part.hi)};
    if (c.lo > c.hi) {
      throw Error(ErrorCode::PrecisionLoss, fmt::format("cylinder collapsed at position {} of the word", j));
    }
  }
  return c;
}

std::vector<Word> admissible_words(const CantorSystem& sys, std::size_t length) {
  std::vector<Word> out;
  if (length == 0) return out;
  Word w;
  w.reserve(length);
  const auto extend = [&](auto&& self) -> void {
    if (w.size() == length) {
      out.push_back(w);
      return;
    }
    for (int s : sys.symbols) {
      if (sys.kind == ShiftKind::WindowShift && !w.empty() && w.back() < sys.m && s != w.back() + 1) continue;
      w.push_back(s);
      self(self);
      w.pop_back();
    }
  };
  extend(extend);
  return out;
}

}  // namespace skewtent
