#include "cli.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "raster.hpp"
#include "skewtent/attractors.hpp"
#include "skewtent/verify.hpp"

namespace skewtent::cli {

using nlohmann::ordered_json;

std::string format_number(double x) {
  std::string s = fmt::format("{:.6f}", x);
  if (s.find('.') != std::string::npos) {
    while (s.back() == '0') s.pop_back();
    if (s.back() == '.') s.pop_back();
  }
  if (s == "-0") s = "0";
  return s;
}

ordered_json region_json(const RegionTag& tag) {
  ordered_json j;
  j["tag"] = tag_name(tag);
  if (const auto* c = std::get_if<region::Cascade>(&tag)) {
    j["p"] = c->p;
    j["terminal"] = c->terminal;
  } else if (const auto* w = std::get_if<region::Window>(&tag)) {
    j["m"] = w->m;
    j["sub"] = to_string(w->sub);
  } else if (const auto* b = std::get_if<region::Boundary>(&tag)) {
    j["which"] = to_string(b->which);
    j["index"] = b->index;
  }
  return j;
}

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

struct Options {
  double k = kNaN;
  double r = kNaN;
  bool json = false;
  double tau = kDefaultTau;
  int p_max = kDefaultDepthCap;

  double x0 = 0.0;
  std::size_t n = 0;
  std::string orbit_format;
  std::string raster_format;

  double kmin = 0.0, kmax = 0.0, rmin = 0.0, rmax = 0.0;
  int width = 0, height = 0;
  std::string out_path;

  std::string suite;
  std::optional<std::size_t> samples;
  std::uint64_t seed = kDefaultSeed;
  std::optional<std::size_t> horizon;
  double eps = kDefaultEps;
  std::size_t lyap_n = 100000;
  std::size_t burn_in = 1000;

  std::string curve;
  std::string index_spec;
  std::optional<double> from, to;
};

std::string interval_tight(const Interval& iv) {
  return fmt::format("[{},{}]", format_number(iv.lo), format_number(iv.hi));
}

std::string interval_spaced(const Interval& iv) {
  return fmt::format("[{}, {}]", format_number(iv.lo), format_number(iv.hi));
}

ordered_json interval_json(const Interval& iv) { return ordered_json::array({iv.lo, iv.hi}); }

ordered_json orbit_json(const PeriodicOrbit& o) {
  ordered_json j;
  j["period"] = o.period;
  j["multiplier"] = o.multiplier;
  j["stable"] = o.stable;
  if (o.points.size() <= 64) {
    j["points"] = o.points;
  } else {
    j["first_point"] = o.points.front();
  }
  return j;
}

// ---------------------------------------------------------------------------

int cmd_classify(const Options& o, std::ostream& out) {
  const MapParams p(o.k, o.r);
  const RegionTag tag = classify(p, {o.tau, o.p_max});
  const auto dist = boundary_distances(p, tag);
  if (o.json) {
    ordered_json j;
    j["k"] = o.k;
    j["r"] = o.r;
    j["region"] = region_json(tag);
    j["description"] = describe(tag);
    ordered_json d = ordered_json::object();
    for (const auto& [name, v] : dist) d[name] = v;
    j["boundary_distances"] = d;
    if (std::holds_alternative<region::FixedPoint>(tag)) j["x_star"] = 1.0 / (o.k + 1.0);
    out << j.dump() << '\n';
  } else {
    out << describe(tag) << '\n';
    for (const auto& [name, v] : dist) out << fmt::format("  {} = {}\n", name, format_number(v));
    if (std::holds_alternative<region::FixedPoint>(tag)) {
      out << fmt::format("  x* = {}\n", format_number(1.0 / (o.k + 1.0)));
    }
  }
  return is_boundary(tag) ? kExitBoundary : kExitOk;
}

std::string unstable_summary(const std::vector<PeriodicOrbit>& orbits) {
  if (orbits.size() == 1 && orbits.front().period == 1) {
    return fmt::format("unstable fixed point {}", format_number(orbits.front().points.front()));
  }
  std::string s = "unstable periodic points";
  for (std::size_t i = 0; i < orbits.size(); ++i) {
    s += fmt::format("{} {} (period {})", i ? "," : "", format_number(orbits[i].points.front()), orbits[i].period);
  }
  return s;
}

void attractor_text(const Attractor& a, std::ostream& out) {
  const auto& ex = a.exceptional;
  bool orbits_reported = false;
  std::visit(
      [&](const auto& payload) {
        using T = std::decay_t<decltype(payload)>;
        if constexpr (std::is_same_v<T, PointAttractor>) {
          out << fmt::format("Point {}; multiplier {}\n", format_number(payload.orbit.points.front()),
                             format_number(payload.orbit.multiplier));
        } else if constexpr (std::is_same_v<T, CycleAttractor>) {
          std::string pts;
          for (std::size_t i = 0; i < payload.orbit.points.size(); ++i) {
            pts += (i ? ", " : "") + format_number(payload.orbit.points[i]);
          }
          out << fmt::format("Cycle period {}: {}; multiplier {}\n", payload.orbit.period, pts,
                             format_number(payload.orbit.multiplier));
        } else if constexpr (std::is_same_v<T, BandAttractor>) {
          std::string bands;
          for (std::size_t i = 0; i < payload.bands.size(); ++i) {
            bands += (i ? " " : "") + interval_tight(payload.bands[i]);
          }
          if (payload.cascade) {
            out << fmt::format("Bands p={}: {}; {}\n", payload.cascade->p, bands, unstable_summary(ex.unstable_orbits));
            orbits_reported = true;
          } else {
            const auto& w = std::get<region::Window>(a.region);
            out << fmt::format("Bands m={} sub={} ({} bands): {}\n", w.m, to_string(w.sub), payload.bands.size(), bands);
          }
        } else if constexpr (std::is_same_v<T, FullIntervalAttractor>) {
          out << fmt::format("FullInterval {}\n", interval_spaced(payload.interval));
        } else {
          const Interval span = ex.cantor->to_f.image(ex.cantor->span());
          out << fmt::format("NoneEscape; Cantor repeller on {}\n", interval_spaced(span));
        }
      },
      a.payload);
  if (!orbits_reported) {
    for (const auto& o : ex.unstable_orbits) {
      out << fmt::format("  exceptional: unstable period-{} orbit through {} (multiplier {}) and its preimages\n",
                         o.period, format_number(o.points.front()), format_number(o.multiplier));
    }
  }
  if (ex.cantor && a.kind() != AttractorKind::NoneEscape) {
    const Interval span = ex.cantor->to_f.image(ex.cantor->span());
    out << fmt::format("  exceptional: Cantor repeller on Sigma_{} in {}\n", ex.cantor->m, interval_spaced(span));
  }
}

ordered_json attractor_json(const Options& o, const Attractor& a) {
  ordered_json j;
  j["k"] = o.k;
  j["r"] = o.r;
  j["region"] = region_json(a.region);
  j["kind"] = to_string(a.kind());
  std::visit(
      [&](const auto& payload) {
        using T = std::decay_t<decltype(payload)>;
        if constexpr (std::is_same_v<T, PointAttractor> || std::is_same_v<T, CycleAttractor>) {
          j["orbit"] = orbit_json(payload.orbit);
        } else if constexpr (std::is_same_v<T, BandAttractor>) {
          ordered_json bands = ordered_json::array();
          for (const auto& iv : payload.bands) bands.push_back(interval_json(iv));
          j["bands"] = bands;
          if (payload.cascade) j["depth"] = payload.cascade->p;
        } else if constexpr (std::is_same_v<T, FullIntervalAttractor>) {
          j["interval"] = interval_json(payload.interval);
        }
      },
      a.payload);
  ordered_json ex;
  ex["unstable_orbits"] = ordered_json::array();
  for (const auto& orb : a.exceptional.unstable_orbits) ex["unstable_orbits"].push_back(orbit_json(orb));
  if (const auto& c = a.exceptional.cantor) {
    ordered_json cj;
    cj["shift"] = c->kind == ShiftKind::FullShift2 ? "FullShift2" : "WindowShift";
    cj["m"] = c->m;
    cj["expansion"] = c->expansion;
    ordered_json parts = ordered_json::array();
    for (const auto& iv : c->partition) parts.push_back(interval_json(c->to_f.image(iv)));
    cj["partition"] = parts;
    ex["cantor"] = cj;
  } else {
    ex["cantor"] = nullptr;
  }
  j["exceptional"] = ex;
  return j;
}

int cmd_attractor(const Options& o, std::ostream& out) {
  const MapParams p(o.k, o.r);
  const Attractor a = attractor(p, {o.tau, o.p_max});
  if (o.json) {
    out << attractor_json(o, a).dump() << '\n';
  } else {
    attractor_text(a, out);
  }
  return kExitOk;
}

int cmd_orbit(const Options& o, std::ostream& out, std::ostream& err) {
  if (o.orbit_format != "csv") {
    err << fmt::format("unsupported orbit format '{}'\n", o.orbit_format);
    return kExitUsage;
  }
  const MapParams p(o.k, o.r);
  const Orbit orbit = iterate_f(p, o.x0, o.n);
  out << "step,x,branch\n";
  for (std::size_t i = 0; i < orbit.points.size(); ++i) {
    std::string branch;
    if (i > 0) branch = std::string(1, branch_letter(orbit.branches[i - 1]));
    if (orbit.escaped && i + 1 == orbit.points.size()) branch = "ESC";
    out << fmt::format("{},{},{}\n", i, orbit.points[i], branch);
  }
  return kExitOk;
}

int cmd_raster(const Options& o, std::ostream& out, std::ostream& err) {
  const raster::RasterSpec spec{{o.kmin, o.kmax}, {o.rmin, o.rmax}, o.width, o.height, o.p_max};
  try {
    raster::validate(spec);
  } catch (const Error& e) {
    err << e.what() << '\n';
    return kExitUsage;
  }
  if (o.raster_format != "ppm" && o.raster_format != "csv") {
    err << fmt::format("unsupported raster format '{}'\n", o.raster_format);
    return kExitUsage;
  }
  const auto tags = raster::classify_grid(spec, raster::thread_budget());

  std::ofstream file(o.out_path, std::ios::binary);
  if (!file) {
    err << fmt::format("cannot write {}\n", o.out_path);
    return kExitUsage;
  }
  if (o.raster_format == "ppm") {
    raster::write_ppm(file, spec, tags);
  } else {
    raster::write_csv(file, spec, tags);
  }
  file.close();
  const std::string legend_path = o.out_path + ".legend";
  std::ofstream legend(legend_path);
  if (!file || !legend) {
    err << fmt::format("cannot write {} or {}\n", o.out_path, legend_path);
    return kExitUsage;
  }
  raster::write_legend(legend);
  out << fmt::format("wrote {} ({}x{} {}) and {}\n", o.out_path, spec.width, spec.height, o.raster_format, legend_path);
  return kExitOk;
}

// --- verify ------------------------------------------------------------------

struct SuiteResult {
  bool pass = false;
  ordered_json details;
  std::string summary;
};

SuiteResult suite_basin(const Options& o, const MapParams& p) {
  const bool escape = std::holds_alternative<region::EscapeCantor>(classify(p));
  if (!escape) (void)attractor(p);  // prerequisite
  const std::size_t samples = o.samples.value_or(10000);
  const FateStats s = basin_experiment(p, samples, o.horizon.value_or(kDefaultHorizon), o.eps, o.seed);
  const double frac = escape ? s.escaped_fraction() : s.attracted_fraction();
  SuiteResult res;
  res.pass = frac >= 0.99;
  res.details["n_samples"] = s.n_samples;
  res.details["n_to_attractor"] = s.n_to_attractor;
  res.details["n_escaped"] = s.n_escaped;
  res.details["n_undecided"] = s.n_undecided;
  res.details["median_landing_time"] = s.median_landing_time;
  res.details["criterion"] = escape ? "escaped fraction >= 0.99" : "attracted fraction >= 0.99";
  res.summary = fmt::format("{} {}/{} ({}), undecided {}", escape ? "escaped" : "attracted",
                            escape ? s.n_escaped : s.n_to_attractor, s.n_samples, format_number(frac), s.n_undecided);
  return res;
}

Attractor require_attractor(const MapParams& p) {
  Attractor a = attractor(p);
  if (a.kind() == AttractorKind::NoneEscape) {
    throw Error(ErrorCode::WrongRegion, "no attractor in the escape region");
  }
  return a;
}

SuiteResult suite_invariance(const Options&, const MapParams& p) {
  const Attractor a = require_attractor(p);
  const IntervalUnion s = a.support();
  const double defect = check_invariance(s, p);
  const double gap = check_disjoint(s);
  SuiteResult res;
  res.pass = defect <= 1e-9 && gap > 0.0;
  res.details["defect"] = defect;
  res.details["min_gap"] = std::isfinite(gap) ? ordered_json(gap) : ordered_json(nullptr);
  res.details["criterion"] = "defect <= 1e-9 and min_gap > 0";
  res.summary = fmt::format("defect {:.3e}, {} component(s)", defect, s.size());
  return res;
}

SuiteResult suite_lyapunov(const Options& o, const MapParams& p) {
  const Attractor a = require_attractor(p);
  const std::size_t seeds = o.samples.value_or(8);
  const LyapunovEstimate est = lyapunov(p, o.lyap_n, seeds, o.burn_in, o.seed);
  SuiteResult res;
  res.details["lambda"] = est.lambda;
  res.details["stderr"] = est.stderr_;
  res.details["n"] = est.n;
  res.details["n_seeds"] = est.n_seeds;
  res.details["burn_in"] = est.burn_in;
  const PeriodicOrbit* orbit = nullptr;
  if (const auto* pt = std::get_if<PointAttractor>(&a.payload)) orbit = &pt->orbit;
  if (const auto* cy = std::get_if<CycleAttractor>(&a.payload)) orbit = &cy->orbit;
  if (orbit != nullptr) {
    const double expected = std::log(std::abs(orbit->multiplier)) / orbit->period;
    res.pass = std::abs(est.lambda - expected) <= 1e-3;
    res.details["expected"] = expected;
    res.details["criterion"] = "|lambda - ln|multiplier|/period| <= 1e-3";
    res.summary = fmt::format("lambda {:.6f} (expected {:.6f})", est.lambda, expected);
  } else {
    res.pass = est.lambda > 0.0;
    res.details["criterion"] = "lambda > 0";
    res.summary = fmt::format("lambda {:.6f} +- {:.1e}", est.lambda, est.stderr_);
  }
  return res;
}

SuiteResult suite_covering(const Options& o, const MapParams& p) {
  const Attractor a = require_attractor(p);
  if (a.kind() != AttractorKind::Bands && a.kind() != AttractorKind::FullInterval) {
    throw Error(ErrorCode::WrongRegion, "covering applies to band and full-interval attractors");
  }
  // Bands are permuted cyclically, so each band is covered by its own return map.
  const IntervalUnion support = a.support();
  const std::size_t power = support.size();
  const std::size_t samples = o.samples.value_or(16);
  const std::size_t horizon = o.horizon.value_or(200);
  UniformSampler rng(o.seed);
  std::size_t covered = 0;
  std::size_t worst = 0;
  for (std::size_t i = 0; i < samples; ++i) {
    const auto idx =
        std::min(power - 1, static_cast<std::size_t>(rng.unit() * static_cast<double>(power)));
    const Interval& band = support[idx];
    const double w = std::min(1e-3, 0.5 * band.width());
    const double lo = rng.in(band.lo, band.hi - w);
    const CoveringResult cr = covering_test(p, power, {lo, lo + w}, IntervalUnion::merged({band}), horizon);
    if (const auto* c = std::get_if<CoveredAt>(&cr)) {
      ++covered;
      worst = std::max(worst, c->n);
    }
  }
  SuiteResult res;
  res.pass = covered == samples;
  res.details["samples"] = samples;
  res.details["covered"] = covered;
  res.details["max_steps"] = worst;
  res.details["power"] = power;
  res.details["horizon"] = horizon;
  res.details["criterion"] = "every start interval covers its band under f^power within the horizon";
  res.summary = fmt::format("covered {}/{} within {} steps of f^{} (max {})", covered, samples, horizon, power, worst);
  return res;
}

int cmd_verify(const Options& o, std::ostream& out, std::ostream& err) {
  const MapParams p(o.k, o.r);
  if (const RegionTag tag = classify(p); is_boundary(tag)) {
    err << fmt::format("{} lies on a region boundary\n", describe(tag));
    return kExitBoundary;
  }
  SuiteResult res;
  if (o.suite == "basin") {
    res = suite_basin(o, p);
  } else if (o.suite == "invariance") {
    res = suite_invariance(o, p);
  } else if (o.suite == "lyapunov") {
    res = suite_lyapunov(o, p);
  } else if (o.suite == "covering") {
    res = suite_covering(o, p);
  } else {
    err << fmt::format("unknown suite '{}'\n", o.suite);
    return kExitUsage;
  }
  if (o.json) {
    ordered_json j;
    j["k"] = o.k;
    j["r"] = o.r;
    j["suite"] = o.suite;
    j["pass"] = res.pass;
    j["results"] = res.details;
    j["rng"] = kRngAlgorithm;
    j["seed"] = o.seed;
    out << j.dump() << '\n';
  } else {
    out << fmt::format("{} {}: {}\n", o.suite, res.pass ? "pass" : "FAIL", res.summary);
  }
  return res.pass ? kExitOk : kExitVerifyFailed;
}

// --- boundaries ----------------------------------------------------------------

std::vector<int> parse_index_spec(const std::string& spec) {
  const auto dots = spec.find("..");
  try {
    if (dots == std::string::npos) return {std::stoi(spec)};
    const int lo = std::stoi(spec.substr(0, dots));
    const int hi = std::stoi(spec.substr(dots + 2));
    if (hi < lo) throw std::invalid_argument("empty range");
    std::vector<int> out;
    for (int i = lo; i <= hi; ++i) out.push_back(i);
    return out;
  } catch (const std::exception&) {
    throw CLI::ValidationError("--m/--p", fmt::format("bad index '{}'", spec));
  }
}

int cmd_boundaries(const Options& o, std::ostream& out, std::ostream& err) {
  const std::string& c = o.curve;
  const bool per_index = c == "alpha" || c == "beta" || c == "gamma" || c == "Kp";
  const bool over_k = c == "rho";
  const bool over_r = c == "Km" || c == "Lm" || c == "Nm";
  if (!per_index && !over_k && !over_r) {
    err << fmt::format("unknown curve '{}' (rho, Kp, Km, Lm, Nm, alpha, beta, gamma)\n", c);
    return kExitUsage;
  }
  const std::string default_index = (c == "rho") ? "0" : (c == "Kp" ? "2..8" : "2");
  const std::vector<int> indices = parse_index_spec(o.index_spec.empty() ? default_index : o.index_spec);

  std::ostringstream table;
  table << "param,value\n";
  if (per_index) {
    for (int i : indices) {
      double v = 0.0;
      if (c == "alpha") v = alpha_m(i);
      if (c == "beta") v = beta_m(i);
      if (c == "gamma") v = gamma_m(i);
      if (c == "Kp") v = K_threshold(i);
      table << fmt::format("{},{}\n", i, v);
    }
  } else {
    if (indices.size() != 1) {
      err << fmt::format("curve {} takes a single index\n", c);
      return kExitUsage;
    }
    const int idx = indices.front();
    const double lo = o.from.value_or(over_k ? 1.5 : 0.2);
    const double hi = o.to.value_or(over_k ? 2.5 : 0.8);
    const std::size_t samples = o.samples.value_or(7);
    if (samples == 0 || !(lo <= hi)) {
      err << "need samples >= 1 and from <= to\n";
      return kExitUsage;
    }
    for (std::size_t i = 0; i < samples; ++i) {
      const double x = samples == 1 ? lo : lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(samples - 1);
      double v = 0.0;
      if (c == "rho") v = rho(idx, x);
      if (c == "Km") v = K_wall(idx, x);
      if (c == "Lm") v = L_curve(idx, x);
      if (c == "Nm") v = N_curve(idx, x);
      table << fmt::format("{},{}\n", x, v);
    }
  }

  if (o.out_path.empty()) {
    out << table.str();
    return kExitOk;
  }
  std::ofstream file(o.out_path);
  file << table.str();
  if (!file) {
    err << fmt::format("cannot write {}\n", o.out_path);
    return kExitUsage;
  }
  return kExitOk;
}

std::string palette_help() {
  std::string s = "Raster palette (region: R,G,B):\n";
  for (const auto& e : raster::legend()) {
    s += fmt::format("  {}: {},{},{}\n", e.name, e.color.r, e.color.g, e.color.b);
  }
  return s;
}

void add_map_flags(CLI::App* sub, Options& o) {
  sub->add_option("--k", o.k, "right-branch slope magnitude k > 0")->required();
  sub->add_option("--r", o.r, "left-branch slope r > 0")->required();
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Skew tent map atlas: regions, attractors, orbits and parameter-plane rasters"};
  app.name("skewtent");
  app.require_subcommand(1);
  Options o;

  auto* classify_cmd = app.add_subcommand("classify", "classify a parameter pair (k, r)");
  add_map_flags(classify_cmd, o);
  classify_cmd->add_flag("--json", o.json, "emit a JSON record");
  classify_cmd->add_option("--tau", o.tau, "relative boundary tolerance")->capture_default_str();
  classify_cmd->add_option("--p-max", o.p_max, "cascade depth cap")->capture_default_str();

  auto* attractor_cmd = app.add_subcommand("attractor", "attractor and exceptional set of (k, r)");
  add_map_flags(attractor_cmd, o);
  attractor_cmd->add_flag("--json", o.json, "emit a JSON record");
  attractor_cmd->add_option("--tau", o.tau, "relative boundary tolerance")->capture_default_str();
  attractor_cmd->add_option("--p-max", o.p_max, "cascade depth cap")->capture_default_str();

  auto* orbit_cmd = app.add_subcommand("orbit", "dump an orbit as CSV rows step,x,branch");
  add_map_flags(orbit_cmd, o);
  orbit_cmd->add_option("--x0", o.x0, "seed")->required();
  orbit_cmd->add_option("--n", o.n, "number of steps")->required();
  orbit_cmd->add_option("--format", o.orbit_format, "output format (csv)")->default_val("csv");

  auto* raster_cmd = app.add_subcommand("raster", "classify a pixel grid of the (k, r) plane");
  raster_cmd->add_option("--kmin", o.kmin, "left edge of the k range")->required();
  raster_cmd->add_option("--kmax", o.kmax, "right edge of the k range")->required();
  raster_cmd->add_option("--rmin", o.rmin, "bottom edge of the r range")->required();
  raster_cmd->add_option("--rmax", o.rmax, "top edge of the r range (row 0)")->required();
  raster_cmd->add_option("--width", o.width, "columns")->required();
  raster_cmd->add_option("--height", o.height, "rows")->required();
  raster_cmd->add_option("--out", o.out_path, "output file; the legend goes to FILE.legend")->required();
  raster_cmd->add_option("--format", o.raster_format, "ppm or csv")->default_val("ppm");
  raster_cmd->add_option("--p-max", o.p_max, "cascade depth cap")->capture_default_str();
  raster_cmd->footer(palette_help() + "Pixel centers are classified; row 0 is r_max. SKEWTENT_THREADS caps threads.");

  auto* verify_cmd = app.add_subcommand("verify", "run a numerical check; exit 3 on failure");
  add_map_flags(verify_cmd, o);
  verify_cmd->add_option("--suite", o.suite, "basin, invariance, lyapunov or covering")->required();
  verify_cmd->add_option("--samples", o.samples,
                         "seeds (basin 10000, lyapunov 8) or start intervals (covering 16)");
  verify_cmd->add_option("--seed", o.seed, "64-bit RNG seed")->capture_default_str();
  verify_cmd->add_option("--horizon", o.horizon, "iteration horizon (basin 10000 steps, covering 200 return-map steps)");
  verify_cmd->add_option("--eps", o.eps, "basin distance threshold")->capture_default_str();
  verify_cmd->add_option("--n", o.lyap_n, "Lyapunov steps per seed")->capture_default_str();
  verify_cmd->add_option("--burn-in", o.burn_in, "Lyapunov burn-in")->capture_default_str();
  verify_cmd->add_flag("--json", o.json, "emit a JSON record");

  auto* boundaries_cmd = app.add_subcommand("boundaries", "tabulate boundary curves as CSV param,value");
  boundaries_cmd->add_option("--curve", o.curve, "rho, Kp, Km, Lm, Nm, alpha, beta or gamma")->required();
  auto* m_opt = boundaries_cmd->add_option("--m", o.index_spec, "window index or range a..b");
  boundaries_cmd->add_option("--p", o.index_spec, "cascade index or range a..b")->excludes(m_opt);
  boundaries_cmd->add_option("--samples", o.samples, "samples over the domain (default 7)");
  boundaries_cmd->add_option("--from", o.from, "domain start (rho: k, default 1.5; Km/Lm/Nm: r, default 0.2)");
  boundaries_cmd->add_option("--to", o.to, "domain end (rho: 2.5; Km/Lm/Nm: 0.8)");
  boundaries_cmd->add_option("--out", o.out_path, "output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (classify_cmd->parsed()) return cmd_classify(o, out);
    if (attractor_cmd->parsed()) return cmd_attractor(o, out);
    if (orbit_cmd->parsed()) return cmd_orbit(o, out, err);
    if (raster_cmd->parsed()) return cmd_raster(o, out, err);
    if (verify_cmd->parsed()) return cmd_verify(o, out, err);
    if (boundaries_cmd->parsed()) return cmd_boundaries(o, out, err);
  } catch (const CLI::ValidationError& e) {
    err << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    err << e.what() << '\n';
    return kExitBoundary;
  }
  return kExitUsage;
}

}  // namespace skewtent::cli
