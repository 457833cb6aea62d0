#include "raster.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <string_view>
#include <thread>

#include <fmt/format.h>

namespace skewtent::raster {

void validate(const RasterSpec& spec) {
  const auto ordered = [](const Interval& iv) { return iv.lo > 0.0 && iv.lo < iv.hi && std::isfinite(iv.hi); };
  if (!ordered(spec.k_range) || !ordered(spec.r_range)) {
    throw Error(ErrorCode::OutOfDomain, "raster ranges must be positive with min < max");
  }
  if (spec.width < 1 || spec.height < 1) throw Error(ErrorCode::OutOfDomain, "raster size must be at least 1x1");
  if (spec.depth_cap < 1) throw Error(ErrorCode::OutOfDomain, "depth cap must be >= 1");
}

double pixel_k(const RasterSpec& spec, int col) {
  return spec.k_range.lo + (col + 0.5) * spec.k_range.width() / spec.width;
}

double pixel_r(const RasterSpec& spec, int row) {
  return spec.r_range.hi - (row + 0.5) * spec.r_range.width() / spec.height;
}

unsigned thread_budget() {
  if (const char* env = std::getenv("SKEWTENT_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<unsigned>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

std::vector<RegionTag> classify_grid(const RasterSpec& spec, unsigned threads) {
  validate(spec);
  const ClassifyOptions opts{kDefaultTau, spec.depth_cap};
  std::vector<RegionTag> tags(static_cast<std::size_t>(spec.width) * static_cast<std::size_t>(spec.height));
  std::atomic<int> next_row{0};
  const auto worker = [&] {
    for (int row = next_row++; row < spec.height; row = next_row++) {
      const double r = pixel_r(spec, row);
      for (int col = 0; col < spec.width; ++col) {
        tags[static_cast<std::size_t>(row) * static_cast<std::size_t>(spec.width) + static_cast<std::size_t>(col)] =
            classify(pixel_k(spec, col), r, opts);
      }
    }
  };
  const unsigned n = std::clamp(threads, 1u, static_cast<unsigned>(spec.height));
  {
    std::vector<std::jthread> pool;
    for (unsigned i = 1; i < n; ++i) pool.emplace_back(worker);
    worker();
  }
  return tags;
}

namespace {

struct PaletteSlots {
  LegendEntry boundary{"Boundary", {255, 255, 255}};
  LegendEntry trivial{"Trivial", {128, 128, 128}};
  LegendEntry fixed_point{"FixedPoint", {160, 160, 160}};
  LegendEntry two_cycle{"TwoCycle", {0, 170, 0}};
  LegendEntry chaos{"FullIntervalChaos", {30, 60, 200}};
  LegendEntry escape{"EscapeCantor", {0, 0, 0}};
  LegendEntry cascade1{"Cascade p=1", {230, 40, 40}};
  LegendEntry cascade2{"Cascade p=2", {250, 120, 30}};
  LegendEntry cascade3{"Cascade p=3", {250, 180, 60}};
  LegendEntry cascade4{"Cascade p>=4", {255, 220, 120}};
  LegendEntry cascade_capped{"Cascade depth cap reached", {140, 0, 0}};
  LegendEntry r1{"Window R1", {240, 220, 0}};
  LegendEntry r2{"Window R2", {0, 200, 220}};
  LegendEntry r3{"Window R3", {200, 0, 200}};
  LegendEntry r4{"Window R4", {80, 120, 255}};
};

const PaletteSlots& slots() {
  static const PaletteSlots s;
  return s;
}

}  // namespace

const std::vector<LegendEntry>& legend() {
  static const std::vector<LegendEntry> entries = [] {
    const auto& s = slots();
    return std::vector<LegendEntry>{s.boundary, s.trivial,  s.fixed_point, s.two_cycle, s.chaos,
                                    s.escape,   s.cascade1, s.cascade2,    s.cascade3,  s.cascade4,
                                    s.cascade_capped, s.r1, s.r2, s.r3, s.r4};
  }();
  return entries;
}

Rgb color_of(const RegionTag& tag) {
  const auto& s = slots();
  struct {
    const PaletteSlots& s;
    Rgb operator()(const region::Trivial&) const { return s.trivial.color; }
    Rgb operator()(const region::FixedPoint&) const { return s.fixed_point.color; }
    Rgb operator()(const region::TwoCycle&) const { return s.two_cycle.color; }
    Rgb operator()(const region::FullIntervalChaos&) const { return s.chaos.color; }
    Rgb operator()(const region::EscapeCantor&) const { return s.escape.color; }
    Rgb operator()(const region::Cascade& c) const {
      if (!c.terminal) return s.cascade_capped.color;
      switch (c.p) {
        case 1: return s.cascade1.color;
        case 2: return s.cascade2.color;
        case 3: return s.cascade3.color;
        default: return s.cascade4.color;
      }
    }
    Rgb operator()(const region::Window& w) const {
      switch (w.sub) {
        case WindowSub::R1: return s.r1.color;
        case WindowSub::R2: return s.r2.color;
        case WindowSub::R3: return s.r3.color;
        case WindowSub::R4: return s.r4.color;
      }
      return s.r4.color;
    }
    Rgb operator()(const region::Boundary&) const { return s.boundary.color; }
  } visitor{s};
  return std::visit(visitor, tag);
}

void write_ppm(std::ostream& os, const RasterSpec& spec, const std::vector<RegionTag>& tags) {
  os << "P6\n" << spec.width << ' ' << spec.height << "\n255\n";
  std::string bytes;
  bytes.reserve(tags.size() * 3);
  for (const auto& t : tags) {
    const Rgb c = color_of(t);
    bytes.push_back(static_cast<char>(c.r));
    bytes.push_back(static_cast<char>(c.g));
    bytes.push_back(static_cast<char>(c.b));
  }
  os.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
}

std::string index_field(const RegionTag& tag) {
  if (const auto* c = std::get_if<region::Cascade>(&tag)) return std::to_string(c->p);
  if (const auto* w = std::get_if<region::Window>(&tag)) return std::to_string(w->m);
  if (const auto* b = std::get_if<region::Boundary>(&tag); b && b->index > 0) return std::to_string(b->index);
  return {};
}

std::string sub_field(const RegionTag& tag) {
  if (const auto* c = std::get_if<region::Cascade>(&tag); c && !c->terminal) return "capped";
  if (const auto* w = std::get_if<region::Window>(&tag)) return to_string(w->sub);
  if (const auto* b = std::get_if<region::Boundary>(&tag)) return to_string(b->which);
  return {};
}

void write_csv(std::ostream& os, const RasterSpec& spec, const std::vector<RegionTag>& tags) {
  os << "k,r,tag,m_or_p,sub\n";
  for (int row = 0; row < spec.height; ++row) {
    const double r = pixel_r(spec, row);
    for (int col = 0; col < spec.width; ++col) {
      const auto& t = tags[static_cast<std::size_t>(row) * static_cast<std::size_t>(spec.width) +
                           static_cast<std::size_t>(col)];
      os << fmt::format("{},{},{},{},{}\n", pixel_k(spec, col), r, tag_name(t), index_field(t), sub_field(t));
    }
  }
}

void write_legend(std::ostream& os) {
  os << fmt::format("# skewtent raster palette v{}\n", kPaletteVersion);
  os << "# pixel centers are classified; row 0 is r_max, column 0 is k_min\n";
  os << "region,r,g,b\n";
  for (const auto& e : legend()) os << fmt::format("{},{},{},{}\n", e.name, e.color.r, e.color.g, e.color.b);
}

}  // namespace skewtent::raster
