#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "skewtent/regions.hpp"
#include "skewtent/verify.hpp"

using namespace skewtent;

namespace {

template <class T>
bool is(const RegionTag& t) {
  return std::holds_alternative<T>(t);
}

region::Window window_of(double k, double r) {
  const RegionTag t = classify(k, r);
  REQUIRE(is<region::Window>(t));
  return std::get<region::Window>(t);
}

BoundaryKind boundary_of(double k, double r) {
  const RegionTag t = classify(k, r);
  REQUIRE_MESSAGE(is<region::Boundary>(t), describe(t));
  return std::get<region::Boundary>(t).which;
}

// Independent evaluation of t_p by repeated multiplication.
double t_naive(int p, double k, double r) {
  const long chi = (p % 2 == 1) ? ((1L << (p + 1)) + 2) / 3 : ((1L << (p + 1)) - 2) / 3;
  const long er = (p % 2 == 1) ? chi : chi + 1;
  const long ek = (p % 2 == 1) ? 2 * chi - 1 : 2 * chi + 2;
  double v = 1.0;
  for (long i = 0; i < er; ++i) v *= r;
  for (long i = 0; i < ek; ++i) v *= k;
  return v - k - r;
}

}  // namespace

TEST_CASE("classify anchors") {
  CHECK(is<region::FixedPoint>(classify(0.5, 3.0)));
  CHECK(is<region::TwoCycle>(classify(3.0, 0.25)));
  CHECK(is<region::FullIntervalChaos>(classify(2.0, 0.8)));
  CHECK(is<region::EscapeCantor>(classify(3.0, 2.0)));
  const RegionTag c1 = classify(1.5, 1.0);
  REQUIRE(is<region::Cascade>(c1));
  CHECK(std::get<region::Cascade>(c1).p == 1);
  CHECK(std::get<region::Cascade>(c1).terminal);
  const RegionTag c2 = classify(1.2, 0.9);
  REQUIRE(is<region::Cascade>(c2));
  CHECK(std::get<region::Cascade>(c2).p == 2);

  CHECK(window_of(3.5, 0.5).m == 2);
  CHECK(window_of(3.5, 0.5).sub == WindowSub::R1);
  CHECK(window_of(4.3, 0.5).sub == WindowSub::R2);
  CHECK(window_of(4.1, 0.5).sub == WindowSub::R3);
  CHECK(window_of(5.0, 0.5).sub == WindowSub::R4);
  CHECK(window_of(8.5, 0.5).m == 3);
}

TEST_CASE("classify rejects invalid input") {
  CHECK_THROWS_AS(classify(-1.0, 1.0), Error);
  CHECK_THROWS_AS(classify(1.0, 0.0), Error);
  CHECK_THROWS_AS(classify(std::nan(""), 1.0), Error);
}

TEST_CASE("boundaries are reported, never absorbed") {
  CHECK(boundary_of(1.0, 2.0) == BoundaryKind::KEqualsOne);
  CHECK(boundary_of(2.0, 0.5) == BoundaryKind::TwoCycleEdge);
  CHECK(boundary_of(2.0, 2.0) == BoundaryKind::EscapeEdge);
  CHECK(boundary_of(2.0, 2.0 / 3.0) == BoundaryKind::CascadeEdge);
  CHECK(boundary_of(1.5, rho(1, 1.5)) == BoundaryKind::CascadeLevel);
  CHECK(boundary_of(3.0, 0.5) == BoundaryKind::ChaosWindowEdge);
  CHECK(boundary_of(7.0, 0.5) == BoundaryKind::WindowWall);
  CHECK(std::get<region::Boundary>(classify(7.0, 0.5)).index == 3);
  CHECK(boundary_of(4.0, 0.5) == BoundaryKind::StableOrbitEdge);
  CHECK(boundary_of(L_curve(2, 0.5), 0.5) == BoundaryKind::FullChaosEdge);
  CHECK(boundary_of(N_curve(2, 0.5), 0.5) == BoundaryKind::BandSplitEdge);
  // a relative offset of 1e-9 clears the default tolerance
  CHECK_FALSE(is<region::Boundary>(classify(4.0 * (1.0 + 1e-9), 0.5)));
  CHECK(is<region::Boundary>(classify(4.0 * (1.0 + 1e-9), 0.5, {1e-6, kDefaultDepthCap})));
}

TEST_CASE("describe") {
  CHECK(describe(classify(3.5, 0.5)) == "Window m=2 sub=R1 (attracting period-3 orbit)");
  CHECK(tag_name(classify(1.5, 1.0)) == "Cascade");
  CHECK(is_boundary(classify(1.0, 1.0)));
}

TEST_CASE("property: partition of a 200x200 grid") {
  int counts[8] = {};
  for (int i = 1; i <= 200; ++i) {
    for (int j = 1; j <= 200; ++j) {
      const double k = 4.0 * i / 200.0;
      const double r = 3.0 * j / 200.0;
      const RegionTag t = classify(k, r);
      ++counts[t.index()];
      // Independent region predicates; exactly one may hold off the boundaries.
      if (is<region::Boundary>(t)) continue;
      const bool fixed = k < 1.0;
      const bool two = k > 1.0 && r < 1.0 / k;
      const bool escape = k > 1.0 && r > k / (k - 1.0);
      const bool cascade = k > 1.0 && r > 1.0 / k && r < k / (k * k - 1.0);
      const bool window = r < 1.0 && k > 1.0 + 1.0 / r && !two;
      const bool chaos = k > 1.0 && !two && !escape && !cascade && !window;
      CHECK(fixed + two + escape + cascade + window + chaos == 1);
      CHECK(fixed == is<region::FixedPoint>(t));
      CHECK(two == is<region::TwoCycle>(t));
      CHECK(escape == is<region::EscapeCantor>(t));
      CHECK(cascade == is<region::Cascade>(t));
      CHECK(window == is<region::Window>(t));
      CHECK(chaos == is<region::FullIntervalChaos>(t));
    }
  }
  CHECK(counts[RegionTag(region::FixedPoint{}).index()] > 0);
  CHECK(counts[RegionTag(region::Window{}).index()] > 0);
  CHECK(counts[RegionTag(region::Cascade{}).index()] > 0);
}

TEST_CASE("renorm_sequence") {
  const auto s = renorm_sequence(MapParams(2.0, 1.0), 1);
  REQUIRE(s.size() == 2);
  CHECK(s[0].r_p == 1.0);
  CHECK(s[0].k_p == 2.0);
  CHECK(s[1].r_p == 4.0);
  CHECK(s[1].k_p == 2.0);
  const auto t = renorm_sequence(MapParams(1.2, 0.9), 2);
  CHECK(t[2].r_p == doctest::Approx(1.1664).epsilon(1e-14));
  const auto z = renorm_sequence(MapParams(1.7, 0.3), 0);
  REQUIRE(z.size() == 1);
  CHECK(z[0].r_p == 0.3);
  CHECK(chi(0) == 0);
  CHECK(chi(1) == 2);
  CHECK(chi(2) == 2);
  CHECK(chi(3) == 6);
  CHECK(chi(4) == 10);
  try {
    renorm_sequence(MapParams(3.0, 3.0), 40);
    FAIL("no overflow reported");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::DepthOverflow);
  }
}

TEST_CASE("t_poly anchors") {
  CHECK(t_poly(0, 2.0, 0.8) == doctest::Approx(0.4).epsilon(1e-14));
  CHECK(t_poly(1, 1.5, 1.0) == doctest::Approx(0.875).epsilon(1e-14));
  CHECK(t_poly(2, 1.2, 0.9) == doctest::Approx(0.729 * 2.985984 - 2.1).epsilon(1e-12));
  CHECK(t_poly(2, 1.2, 0.9) > 0.0);
}

TEST_CASE("property: t_poly agrees with naive products and renormalized signs") {
  UniformSampler rng(31);
  for (int i = 0; i < 400; ++i) {
    const double k = rng.in(1.0, 1.6);
    const double r = rng.in(0.6, 1.4);
    const auto seq = renorm_sequence(MapParams(k, r), 10);
    for (int p = 0; p <= 10; ++p) {
      const double naive = t_naive(p, k, r);
      if (p < 8) CHECK(t_poly(p, k, r) == doctest::Approx(naive).epsilon(1e-9));
      if (std::abs(naive) < 1e-6 * (k + r)) continue;
      const int expect = naive > 0.0 ? 1 : -1;
      CHECK(t_sign(p, k, r) == expect);
      const double renorm = seq[p].r_p * seq[p].k_p * seq[p].k_p - seq[p].k_p - seq[p].r_p;
      CHECK((renorm > 0.0 ? 1 : -1) == expect);
    }
  }
}

TEST_CASE("rho") {
  CHECK(rho(0, 2.0) == 2.0 / 3.0);
  CHECK(rho(1, 1.0) == doctest::Approx((1.0 + std::sqrt(5.0)) / 2.0).epsilon(1e-15));
  CHECK(std::abs(t_poly(3, 1.1, rho(3, 1.1))) <= 1e-9);
  CHECK_THROWS_AS(rho(0, 1.0), Error);
  CHECK_THROWS_AS(rho(2, 0.9), Error);
  // Cardano against bisection
  for (double k : {1.0, 1.1, 1.5, 2.0, 3.0}) {
    const double b = bisect([k](double r) { return t_naive(2, k, r); }, 0.0, 3.0);
    CHECK(rho(2, k) == doctest::Approx(b).epsilon(1e-12));
  }
}

TEST_CASE("property: rho residuals and ordering") {
  for (int i = 0; i < 50; ++i) {
    const double k = 1.02 + 2.9 * i / 49.0;
    double prev = rho(0, k);
    for (int p = 0; p <= 10; ++p) {
      const double r = rho(p, k);
      CHECK(std::abs(t_poly(p, k, r)) <= 1e-9);
      if (p > 0) CHECK(r < prev);
      prev = r;
    }
  }
}

TEST_CASE("K_threshold") {
  const double k2 = K_threshold(2);
  CHECK(k2 > 1.0);
  CHECK(k2 < 2.0);
  CHECK(std::abs(t_poly(2, k2, 1.0 / k2)) <= 1e-9);
  double prev = 2.0;
  for (int p = 2; p <= 12; ++p) {
    const double kp = K_threshold(p);
    CHECK(kp < prev);
    CHECK(kp > 1.0);
    prev = kp;
  }
  CHECK(K_threshold(12) - 1.0 < K_threshold(4) - 1.0);
  CHECK_THROWS_AS(K_threshold(1), Error);
}

TEST_CASE("cascade_depth") {
  const auto a = cascade_depth(MapParams(1.5, 1.0));
  CHECK(a.p == 1);
  CHECK(a.terminal);
  const auto b = cascade_depth(MapParams(1.2, 0.9));
  CHECK(b.p == 2);
  const auto c = cascade_depth(MapParams(1.01, 0.999));
  CHECK(c.p > 2);
  if (c.terminal) {
    for (int q = 1; q < c.p; ++q) CHECK(t_sign(q, 1.01, 0.999) < 0);
    CHECK(t_sign(c.p, 1.01, 0.999) > 0);
  }
  CHECK_FALSE(cascade_depth(MapParams(1.01, 0.999), 3).terminal);
  CHECK_THROWS_AS(cascade_depth(MapParams(2.0, 0.8)), Error);
  CHECK_THROWS_AS(cascade_depth(MapParams(3.0, 0.25)), Error);
}

TEST_CASE("window_index") {
  CHECK(window_index(3.5, 0.5).kind == WindowLocation::Kind::Inside);
  CHECK(window_index(3.5, 0.5).m == 2);
  CHECK(window_index(8.0, 0.5).m == 3);
  CHECK(window_index(2.0, 0.5).kind == WindowLocation::Kind::NotInWindow);
  CHECK(window_index(7.0, 0.5).kind == WindowLocation::Kind::OnWall);
  CHECK_THROWS_AS(window_index(3.0, 1.0), Error);
}

TEST_CASE("window curves") {
  CHECK(K_wall(2, 0.5) == 3.0);
  CHECK(K_wall(3, 0.5) == 7.0);
  CHECK(L_curve(2, 0.5) == doctest::Approx(2.0 * (1.0 + std::sqrt(1.5))).epsilon(1e-15));
  const double n2 = N_curve(2, 0.5);
  CHECK(n2 > 4.2);
  CHECK(n2 < 4.25);
  CHECK(std::abs(std::pow(0.5, 4) * n2 * n2 * n2 - n2 - 0.5) <= 1e-9);
  for (int m = 2; m <= 6; ++m) {
    const double a = alpha_m(m), b = beta_m(m), g = gamma_m(m);
    CHECK(std::abs(1.0 - 2.0 * a + std::pow(a, m + 1)) <= 1e-12);
    CHECK(0.5 < a);
    CHECK(a < g);
    CHECK(g < b);
    CHECK(b < 1.0);
    if (m > 2) {
      CHECK(a < alpha_m(m - 1));
      CHECK(b < beta_m(m - 1));
      CHECK(g < gamma_m(m - 1));
    }
  }
}

TEST_CASE("property: window geometry ordering and walls") {
  UniformSampler rng(41);
  for (int i = 0; i < 1000; ++i) {
    const int m = 2 + static_cast<int>(rng.unit() * 5.0);
    const double r = rng.in(0.05, 0.99);
    const WindowGeometry g = window_geometry(m, r);
    CHECK(g.K_m < g.K_m1);
    CHECK(g.inv_rm < g.N_m);
    CHECK(g.N_m < g.L_m);
    CHECK(g.L_m < g.K_m1);
    // K_m - 1/r^m has the sign of r - alpha_m
    const double d = g.K_m - g.inv_rm;
    if (std::abs(r - g.alpha_m) > 1e-9) CHECK((d > 0.0) == (r > g.alpha_m));
  }
}

TEST_CASE("boundary_distances") {
  const auto d = boundary_distances(MapParams(3.5, 0.5), classify(3.5, 0.5));
  bool found = false;
  for (const auto& [name, v] : d) {
    if (name == "kr^m-1") {
      found = true;
      CHECK(v == doctest::Approx(-0.125));
    }
  }
  CHECK(found);
}
