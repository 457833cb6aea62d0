#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>

#include "skewtent/core_map.hpp"
#include "skewtent/verify.hpp"

using namespace skewtent;

namespace {

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected skewtent::Error");
  return ErrorCode::InvalidMap;
}

}  // namespace

TEST_CASE("MapParams rejects nonpositive and non-finite slopes") {
  CHECK(code_of([] { MapParams(0.0, 1.0); }) == ErrorCode::InvalidMap);
  CHECK(code_of([] { MapParams(1.0, -2.0); }) == ErrorCode::InvalidMap);
  CHECK(code_of([] { MapParams(std::numeric_limits<double>::infinity(), 1.0); }) == ErrorCode::InvalidMap);
  CHECK(code_of([] { MapParams(1.0, std::nan("")); }) == ErrorCode::InvalidMap);
}

TEST_CASE("normalize") {
  SUBCASE("already canonical") {
    const auto res = normalize(GeneralTent::from_kink(2.0, 3.0, 0.0, 1.0));
    const auto* c = std::get_if<Canonical>(&res);
    REQUIRE(c != nullptr);
    CHECK(c->params == MapParams(3.0, 2.0));
    CHECK_FALSE(c->flipped);
  }
  SUBCASE("kink (1,3) translates and rescales to the same slopes") {
    const auto res = normalize(GeneralTent::from_kink(2.0, 3.0, 1.0, 3.0));
    const auto* c = std::get_if<Canonical>(&res);
    REQUIRE(c != nullptr);
    CHECK(c->params == MapParams(3.0, 2.0));
    CHECK(c->gamma == doctest::Approx(2.0));
  }
  SUBCASE("gamma = 0 is a monotone trap") {
    const auto res = normalize(GeneralTent::from_kink(2.0, 3.0, 1.0, 1.0));
    const auto* t = std::get_if<Trivial>(&res);
    REQUIRE(t != nullptr);
    CHECK(t->reason == TrivialReason::MonotoneTrap);
  }
  SUBCASE("equal-sign slopes are a homeomorphism") {
    // left slope 2, right slope +3 (k = -3)
    const auto res = normalize(GeneralTent::from_kink(2.0, -3.0, 0.0, 1.0));
    const auto* t = std::get_if<Trivial>(&res);
    REQUIRE(t != nullptr);
    CHECK(t->reason == TrivialReason::Homeomorphism);
  }
  SUBCASE("both slopes reversed: flip first") {
    // f(x) = 1 - 2x (x <= 0), 1 + 3x (x >= 0); conjugating by -x gives slopes (3, -2)
    const auto res = normalize(GeneralTent::from_kink(-2.0, -3.0, 0.0, -1.0));
    const auto* c = std::get_if<Canonical>(&res);
    REQUIRE(c != nullptr);
    CHECK(c->flipped);
    CHECK(c->params == MapParams(2.0, 3.0));
  }
  SUBCASE("degenerate input") {
    CHECK(code_of([] { normalize(GeneralTent::from_kink(0.0, 3.0, 0.0, 1.0)); }) == ErrorCode::InvalidMap);
    CHECK(code_of([] { normalize(GeneralTent::from_kink(2.0, 0.0, 0.0, 1.0)); }) == ErrorCode::InvalidMap);
    CHECK(code_of([] { GeneralTent::from_lines(0.0, 2.0, 1.0, -2.0); }) == ErrorCode::InvalidMap);
  }
  SUBCASE("from_lines agrees with from_kink") {
    // y = 1 + 2x and y = 5 - 2x meet at (1, 3)
    const GeneralTent gt = GeneralTent::from_lines(1.0, 2.0, 5.0, 2.0);
    CHECK(gt.x0 == doctest::Approx(1.0));
    CHECK(gt.y0 == doctest::Approx(3.0));
  }
}

TEST_CASE("eval_f anchors") {
  const MapParams p(3.0, 2.0);
  CHECK(eval_f(p, 0.0) == 1.0);
  CHECK(eval_f(p, -0.5) == 0.0);
  CHECK(eval_f(MapParams(1.5, 1.0), 1.0) == -0.5);
  CHECK(branch_of(0.0) == Branch::Left);
}

TEST_CASE("iterate_f anchors") {
  const Orbit o = iterate_f(MapParams(1.5, 1.0), 1.0, 2);
  REQUIRE(o.points.size() == 3);
  CHECK(o.points[1] == -0.5);
  CHECK(o.points[2] == 0.5);
  CHECK(o.branches[0] == Branch::Right);
  CHECK(o.branches[1] == Branch::Left);

  const Orbit c = iterate_f(MapParams(3.0, 0.25), -8.0 / 7.0, 2);
  CHECK(c.points[1] == doctest::Approx(5.0 / 7.0).epsilon(1e-15));
  CHECK(c.points[2] == doctest::Approx(-8.0 / 7.0).epsilon(1e-15));

  const Orbit z = iterate_f(MapParams(3.0, 2.0), 0.3, 0);
  CHECK(z.points.size() == 1);
  CHECK(z.branches.empty());
}

TEST_CASE("iterate_f stops at the escape threshold") {
  const Orbit o = iterate_f(MapParams(3.0, 2.0), 0.7, 1000);
  CHECK(o.escaped);
  CHECK(std::abs(o.points.back()) > kEscapeThreshold);
  CHECK(o.points.size() < 1000);
  CHECK(o.branches.size() == o.points.size() - 1);
}

TEST_CASE("property: branch record matches eval_f bit for bit") {
  UniformSampler rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    const MapParams p(rng.in(0.1, 5.0), rng.in(0.1, 3.0));
    const Orbit o = iterate_f(p, rng.in(-2.0, 1.0), 200);
    for (std::size_t i = 0; i + 1 < o.points.size(); ++i) {
      const double x = o.points[i];
      CHECK(o.points[i + 1] == eval_f(p, x));
      CHECK(o.branches[i] == branch_of(x));
      const double by_branch = o.branches[i] == Branch::Left ? 1.0 + p.r() * x : 1.0 - p.k() * x;
      CHECK(o.points[i + 1] == by_branch);
    }
  }
}

TEST_CASE("trapping_interval") {
  const auto a = trapping_interval(MapParams(3.0, 2.0));
  CHECK(a.alpha == doctest::Approx(-1.0).epsilon(1e-15));
  CHECK(a.beta == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
  const auto b = trapping_interval(MapParams(3.0, 1.0));
  CHECK_FALSE(b.bounded());
  CHECK(std::isinf(b.beta));
  const auto c = trapping_interval(MapParams(2.0, 3.0));
  CHECK(c.alpha == doctest::Approx(-0.5).epsilon(1e-15));
  CHECK(c.beta == doctest::Approx(0.75).epsilon(1e-15));

  UniformSampler rng(3);
  for (int i = 0; i < 200; ++i) {
    const MapParams p(rng.in(0.2, 6.0), rng.in(1.01, 6.0));
    const auto t = trapping_interval(p);
    CHECK(std::abs(eval_f(p, t.alpha) - t.alpha) <= 1e-12 * std::max(1.0, std::abs(t.alpha)));
    CHECK(std::abs(eval_f(p, t.beta) - t.alpha) <= 1e-12 * std::max(1.0, std::abs(t.alpha)));
  }
}

TEST_CASE("landing_time anchors") {
  CHECK(std::holds_alternative<Escaped>(landing_time(MapParams(3.0, 2.0), 0.7)));
  const auto l = landing_time(MapParams(3.0, 0.25), 0.5);
  REQUIRE(std::holds_alternative<Landed>(l));
  CHECK(std::get<Landed>(l).n == 0);
  const auto c = landing_time(MapParams(1.5, 1.0), -10.0);
  REQUIRE(std::holds_alternative<Landed>(c));
  CHECK(std::get<Landed>(c).n <= 11);
}

TEST_CASE("property: trapping for r > 1") {
  UniformSampler rng(5);
  const MapParams p(2.0, 1.5);  // full-interval chaos, I bounded
  const auto t = trapping_interval(p);
  for (int i = 0; i < 1000; ++i) {
    const double x = rng.in(t.alpha, t.beta);
    if (x == t.alpha) continue;
    CHECK(std::holds_alternative<Landed>(landing_time(p, x, 10000)));
  }
  for (int i = 0; i < 100; ++i) {
    CHECK(std::holds_alternative<Escaped>(landing_time(p, t.beta + rng.in(1e-6, 10.0))));
    CHECK(std::holds_alternative<Escaped>(landing_time(p, t.alpha - rng.in(1e-6, 10.0))));
  }
}

TEST_CASE("to_unit") {
  const UnitMap u = to_unit(MapParams(3.5, 0.5));
  CHECK(u.a() == doctest::Approx(5.0 / 7.0).epsilon(1e-15));
  CHECK(u.b() == doctest::Approx(9.0 / 14.0).epsilon(1e-15));
  const UnitMap v = to_unit(MapParams(2.0, 1.0));
  CHECK(v.a() == 0.5);
  CHECK(v.b() == 0.5);
  CHECK(code_of([] { to_unit(MapParams(1.5, 4.0)); }) == ErrorCode::NotReducible);
  CHECK(code_of([] { to_unit(MapParams(0.8, 0.5)); }) == ErrorCode::NotReducible);
}

TEST_CASE("eval_g") {
  const UnitMap u = to_unit(MapParams(3.5, 0.5));
  CHECK(eval_g(u, 1.0 / 15.0) == doctest::Approx(71.0 / 105.0).epsilon(1e-15));
  CHECK(eval_g(u, u.a()) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(eval_g(u, 1.0) == 0.0);
  CHECK(code_of([&] { eval_g(u, 1.5); }) == ErrorCode::OutOfDomain);
  CHECK(code_of([&] { eval_g(u, -0.1); }) == ErrorCode::OutOfDomain);
  const Orbit o = iterate_g(u, 0.3, 100);
  for (double x : o.points) CHECK((x >= 0.0 && x <= 1.0));
}

TEST_CASE("property: conjugacy h g = f h") {
  UniformSampler rng(9);
  for (int trial = 0; trial < 20; ++trial) {
    const double k = rng.in(1.05, 8.0);
    const MapParams p(k, rng.in(0.05, k / (k - 1.0)));
    const UnitMap u = to_unit(p);
    for (int i = 0; i < 1000; ++i) {
      const double x = rng.unit();
      CHECK(std::abs(u.h(eval_g(u, x)) - eval_f(p, u.h(x))) <= 1e-12 * k);
    }
  }
}

TEST_CASE("property: [1-k, 1] is invariant when reducible") {
  UniformSampler rng(13);
  for (int trial = 0; trial < 20; ++trial) {
    const double k = rng.in(1.05, 8.0);
    const MapParams p(k, rng.in(0.05, k / (k - 1.0)));
    for (int i = 0; i < 1000; ++i) {
      const double y = eval_f(p, rng.in(1.0 - k, 1.0));
      CHECK(y >= 1.0 - k - 1e-12 * k);
      CHECK(y <= 1.0);
    }
  }
}
