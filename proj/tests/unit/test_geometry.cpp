#include <catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "dsap/error.hpp"
#include "dsap/geometry.hpp"
#include "support/oracles.hpp"

using namespace dsap;
using Catch::Matchers::WithinAbs;

TEST_CASE("project: halfspace closed form", "[geometry]") {
  const auto h = ConvexSet::halfspace(Vector{1.0, 0.0}, 1.0);
  CHECK(project(h, Vector{3.0, 2.0}) == Vector{1.0, 2.0});
}

TEST_CASE("project: interval clamps 13 to 10", "[geometry]") {
  const auto box = ConvexSet::box(Vector{0.0}, Vector{10.0});
  CHECK(project(box, Vector{13.0}) == Vector{10.0});
}

TEST_CASE("project: points of the set are fixed", "[geometry]") {
  CHECK(project(ConvexSet::box(Vector{0.0}, Vector{10.0}), Vector{4.0}) == Vector{4.0});
  CHECK(project(ConvexSet::ball(Vector{0.0, 0.0}, 2.0), Vector{1.0, -1.0}) == Vector{1.0, -1.0});
  CHECK(project(ConvexSet::halfspace(Vector{1.0, 1.0}, 0.0), Vector{-1.0, 0.5}) == Vector{-1.0, 0.5});
  CHECK(project(ConvexSet::singleton(Vector{2.0}), Vector{2.0}) == Vector{2.0});
}

TEST_CASE("distance: examples", "[geometry]") {
  CHECK(distance(ConvexSet::singleton(Vector{0.0}), Vector{8.0}) == 8.0);
  CHECK(distance(ConvexSet::box(Vector{0.0}, Vector{10.0}), Vector{9.0}) == 0.0);

  const auto ball = ConvexSet::ball(Vector{0.0, 0.0}, 1.0);
  const Vector x{3.0, 4.0};
  const double oracle = std::hypot(3.0, 4.0) - 1.0;
  CHECK_THAT(distance(ball, x), WithinAbs(oracle, 1e-15));
  CHECK_THAT(dsap::distance(project(ball, x), x), WithinAbs(4.0, 1e-15));
}

TEST_CASE("contains: tolerance semantics", "[geometry]") {
  const auto box = ConvexSet::box(Vector{0.0}, Vector{10.0});
  CHECK(contains(box, Vector{9.0}, 0.0));
  CHECK(contains(box, Vector{10.0 + 1e-9}, 1e-8));
  CHECK_FALSE(contains(ConvexSet::halfspace(Vector{1.0}, 0.0), Vector{1.0}, 0.0));
}

TEST_CASE("max_violation: examples", "[geometry]") {
  const SetFamily one({ConvexSet::box(Vector{0.0}, Vector{10.0})});
  CHECK(max_violation(one, Vector{13.0}) == 3.0);
  CHECK(max_violation(one, Vector{5.0}) == 0.0);

  const SetFamily two({ConvexSet::halfspace(Vector{1.0, 0.0}, 1.0), ConvexSet::halfspace(Vector{0.0, 1.0}, 1.0)});
  CHECK(max_violation(two, Vector{3.0, 2.0}) == 2.0);
  CHECK(max_violation(two, Vector{0.0, 0.0}) == 0.0);
}

TEST_CASE("hyperplane and custom sets", "[geometry]") {
  const auto hp = ConvexSet::hyperplane(Vector{0.0, 2.0}, 2.0);
  CHECK(project(hp, Vector{5.0, -3.0}) == Vector{5.0, 1.0});
  CHECK(distance(hp, Vector{5.0, -3.0}) == 4.0);

  const auto nonneg = ConvexSet::custom(2, "orthant", [](const Vector& x) {
    return Vector{std::max(0.0, x[0]), std::max(0.0, x[1])};
  });
  CHECK(project(nonneg, Vector{-1.0, 2.0}) == Vector{0.0, 2.0});
  CHECK(nonneg.kind_name() == "custom");
}

TEST_CASE("errors: construction and dimension checks", "[geometry]") {
  CHECK_THROWS_AS(ConvexSet::halfspace(Vector{0.0, 1e-15}, 1.0), InvalidArgument);
  CHECK_THROWS_AS(ConvexSet::hyperplane(Vector{0.0}, 1.0), InvalidArgument);
  CHECK_THROWS_AS(ConvexSet::box(Vector{1.0}, Vector{0.0}), InvalidArgument);
  CHECK_THROWS_AS(ConvexSet::box(Vector{0.0}, Vector{1.0, 2.0}), DimensionError);
  CHECK_THROWS_AS(ConvexSet::ball(Vector{0.0}, -1.0), InvalidArgument);
  CHECK_THROWS_AS(ConvexSet::singleton(Vector{NAN}), NonFiniteError);

  const auto box = ConvexSet::box(Vector{0.0}, Vector{10.0});
  CHECK_THROWS_AS(project(box, Vector{1.0, 2.0}), DimensionError);
  CHECK_THROWS_AS(project(box, Vector{INFINITY}), NonFiniteError);
  CHECK_THROWS_AS(distance(box, Vector{NAN}), NonFiniteError);

  CHECK_THROWS_AS(SetFamily({box, ConvexSet::singleton(Vector{0.0, 0.0})}), DimensionError);
  CHECK_THROWS_AS(SetFamily({box}, Vector{11.0}), InvalidArgument);
  CHECK_NOTHROW(SetFamily({box}, Vector{10.0}));
  CHECK_THROWS_AS(max_violation(SetFamily({box}), Vector{1.0, 1.0}), DimensionError);
}

TEST_CASE("project agrees with brute-force nearest point in the plane", "[geometry][oracle]") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 30; ++trial) {
    ConvexSet set = testing::random_set(rng, 2);
    auto inside = testing::membership_2d(set);
    if (!inside) continue;  // lower-dimensional kinds have no interior to grid-search
    const Vector x = testing::random_vector(rng, 2, 6.0);
    const double window = dsap::distance(set, x) + 1.0;
    const Vector oracle = testing::brute_force_nearest_2d(inside, x, window);
    INFO("kind " << set.kind_name() << " trial " << trial);
    CHECK(dsap::distance(project(set, x), oracle) < 1e-6);
  }
}

TEST_CASE("properties: idempotence, nonexpansiveness, firm characterization", "[geometry][property]") {
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<std::size_t> dim_dist(1, 6);
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t dim = dim_dist(rng);
    const ConvexSet set = testing::random_set(rng, dim);
    const Vector x = testing::random_vector(rng, dim, 8.0);
    const Vector y = testing::random_vector(rng, dim, 8.0);
    const Vector px = project(set, x);
    const Vector py = project(set, y);

    REQUIRE(dsap::distance(project(set, px), px) <= 1e-12);
    REQUIRE(dsap::distance(px, py) <= dsap::distance(x, y) + 1e-12);

    const Vector z = project(set, testing::random_vector(rng, dim, 8.0));
    REQUIRE(dot(x - px, z - px) <= 1e-10);

    REQUIRE(std::abs(dsap::distance(set, x) - dsap::distance(x, px)) <= 1e-12);
    REQUIRE(contains(set, px, 1e-12));
    REQUIRE(contains(set, x, 1e-12) == (dsap::distance(set, x) <= 1e-12));
    REQUIRE(dsap::distance(set, px) <= 1e-12);
  }
}
