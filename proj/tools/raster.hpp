#pragma once

// Parameter-plane rasters: per-pixel classification, the fixed palette, and
// PPM / CSV / legend writers.

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "skewtent/interval.hpp"
#include "skewtent/regions.hpp"

namespace skewtent::raster {

inline constexpr int kPaletteVersion = 1;

struct Rgb {
  std::uint8_t r, g, b;
  friend bool operator==(const Rgb&, const Rgb&) = default;
};

struct RasterSpec {
  Interval k_range;
  Interval r_range;
  int width = 1;
  int height = 1;
  int depth_cap = kDefaultDepthCap;
};

/// Throws OutOfDomain unless the ranges are positive and ordered and both sizes >= 1.
void validate(const RasterSpec& spec);

/// Pixel centers: column 0 is k_min, row 0 is r_max.
double pixel_k(const RasterSpec& spec, int col);
double pixel_r(const RasterSpec& spec, int row);

/// Row-major tags, rows computed in parallel on `threads` workers.
std::vector<RegionTag> classify_grid(const RasterSpec& spec, unsigned threads);

/// SKEWTENT_THREADS if set to a positive integer, else hardware concurrency.
unsigned thread_budget();

struct LegendEntry {
  std::string name;
  Rgb color;
};

Rgb color_of(const RegionTag& tag);
/// Every palette entry, in a fixed order.
const std::vector<LegendEntry>& legend();

void write_ppm(std::ostream& os, const RasterSpec& spec, const std::vector<RegionTag>& tags);
void write_csv(std::ostream& os, const RasterSpec& spec, const std::vector<RegionTag>& tags);
void write_legend(std::ostream& os);

/// "p" for cascades, "m" for windows, the index for indexed boundaries, else empty.
std::string index_field(const RegionTag& tag);
/// Window sub-region, boundary name, or "capped" for a cascade past the depth cap.
std::string sub_field(const RegionTag& tag);

}  // namespace skewtent::raster
