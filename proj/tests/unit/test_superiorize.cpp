#include <catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "dsap/error.hpp"
#include "dsap/objective.hpp"
#include "dsap/schedule.hpp"
#include "dsap/strings.hpp"
#include "dsap/superiorize.hpp"
#include "support/oracles.hpp"

using namespace dsap;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

Objective square_1d() { return Objective::norm2sq(); }

StringPlan single_set_plan() {
  return StringPlan::repeated(PlanStage{{IndexVector{1}}, {1.0}}, PlanConstraints{0.5, 1}, 1);
}

}  // namespace

TEST_CASE("schedule: totals and heads", "[schedule]") {
  const auto ex = PerturbationSchedule::geometric(1.0, 0.5);
  CHECK(schedule_total(ex) == 2.0);
  CHECK(schedule_head(ex, 1) == 1.0);
  CHECK(ex.head(0) == 0.0);
  CHECK(ex.beta(3, 0) == 0.125);
  CHECK(ex.inner_length(1000) == 1);

  const auto one = PerturbationSchedule::explicit_table({{0.7}});
  CHECK(schedule_total(one) == 0.7);
  CHECK(one.inner_length(1) == 0);
  CHECK(one.tail(1) == 0.0);
  CHECK_THROWS_AS(one.beta(1, 0), InvalidArgument);

  CHECK_THROWS_AS(PerturbationSchedule::geometric(1.5, 0.5), InvalidArgument);
  CHECK_THROWS_AS(PerturbationSchedule::geometric(0.0, 0.5), InvalidArgument);
  CHECK_THROWS_AS(PerturbationSchedule::geometric(1.0, 1.0), InvalidArgument);
  CHECK_THROWS_AS(PerturbationSchedule::explicit_table({}), InvalidArgument);
  CHECK_THROWS_AS(PerturbationSchedule::explicit_table({{1.2}}), InvalidArgument);
  CHECK_THROWS_AS(PerturbationSchedule::explicit_table({{0.0}}), InvalidArgument);
  CHECK_THROWS_AS(InnerLengths::constant(0), InvalidArgument);
}

TEST_CASE("schedule: one geometric stream across inner loops", "[schedule]") {
  const auto s = PerturbationSchedule::geometric(0.5, 0.5, InnerLengths::periodic({2, 1}));
  // k=0: n=0,1 -> exponents 0,1; k=1: exponent 2; k=2: exponents 3,4.
  CHECK(s.beta(0, 0) == 0.5);
  CHECK(s.beta(0, 1) == 0.25);
  CHECK(s.beta(1, 0) == 0.125);
  CHECK(s.beta(2, 1) == 0.5 * std::ldexp(1.0, -4));
  CHECK(s.total() == 1.0);
  CHECK(s.max_inner_length() == 2);
}

TEST_CASE("schedule: head and tail against brute-force sums", "[schedule][oracle]") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> a_dist(0.01, 1.0);
  std::uniform_real_distribution<double> r_dist(0.05, 0.95);
  std::uniform_int_distribution<std::size_t> n_dist(1, 4);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<std::size_t> pattern(1 + trial % 3);
    for (auto& n : pattern) n = n_dist(rng);
    const auto s = PerturbationSchedule::geometric(a_dist(rng), r_dist(rng), InnerLengths::periodic(pattern));
    double prev = -1.0;
    for (std::size_t k = 0; k < 30; ++k) {
      const double h = s.head(k);
      REQUIRE_THAT(h, WithinAbs(testing::brute_head(s, k), 1e-12 * std::max(1.0, s.total())));
      REQUIRE(h >= prev);
      prev = h;
      REQUIRE_THAT(s.head(k) + s.tail(k), WithinRel(s.total(), 1e-12));
      for (std::size_t n = 0; n < s.inner_length(k); ++n) {
        REQUIRE(s.beta(k, n) > 0.0);
        REQUIRE(s.beta(k, n) <= 1.0);
      }
    }
  }

  const auto tab = PerturbationSchedule::explicit_table({{0.5, 0.25}, {0.125}, {1.0, 0.5, 0.0625}});
  for (std::size_t k = 0; k <= 4; ++k) CHECK(tab.head(k) == testing::brute_head(tab, k));
  CHECK(tab.total() == 2.4375);
  CHECK(tab.stage_mass(2) == 1.5625);
}

TEST_CASE("objective: values and subgradient rules", "[objective]") {
  CHECK(Objective::norm2sq().value(Vector{3.0, 4.0}) == 25.0);
  CHECK(Objective::norm1().value(Vector{-3.0, 4.0}) == 7.0);
  CHECK(Objective::linear(Vector{1.0, 2.0}).value(Vector{3.0, 4.0}) == 11.0);
  CHECK(Objective::quadratic_diag(Vector{2.0, 0.0}, Vector{1.0, 5.0}).value(Vector{3.0, -1.0}) == 8.0);

  const auto n1 = Objective::norm1().subgradient(Vector{-2.0, 0.0, 3.0});
  CHECK(n1.s == Vector{-1.0, 0.0, 1.0});
  CHECK_FALSE(n1.zero_in_subdifferential);
  CHECK(Objective::norm1().subgradient(Vector{0.0, 0.0}).zero_in_subdifferential);
  CHECK(Objective::norm2sq().subgradient(Vector{0.0}).zero_in_subdifferential);

  CHECK_THROWS_AS(Objective::quadratic_diag(Vector{-1.0}, Vector{0.0}), InvalidArgument);
  CHECK_THROWS_AS(Objective::linear(Vector{1.0}).value(Vector{1.0, 2.0}), DimensionError);
  CHECK(Objective::norm1().dim() == std::nullopt);
  CHECK(Objective::linear(Vector{1.0, 2.0}).dim() == std::optional<std::size_t>(2));
  CHECK_FALSE(Objective::norm1().subgradient_rule().empty());
}

TEST_CASE("objective: subgradient inequality on samples", "[objective][property]") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t dim = 1 + trial % 5;
    Vector q = testing::random_vector(rng, dim, 2.0);
    for (double& c : q) c = std::abs(c);
    const Objective objs[] = {Objective::norm1(), Objective::norm2sq(),
                              Objective::linear(testing::random_vector(rng, dim, 3.0)),
                              Objective::quadratic_diag(q, testing::random_vector(rng, dim, 3.0))};
    const Vector x = testing::random_vector(rng, dim, 4.0);
    const Vector z = testing::random_vector(rng, dim, 4.0);
    for (const Objective& o : objs) {
      const auto g = o.subgradient(x);
      const Vector s = g.zero_in_subdifferential ? Vector(dim, 0.0) : g.s;
      REQUIRE(o.value(z) >= o.value(x) + dot(s, z - x) - 1e-9);
    }
  }
}

TEST_CASE("direction: examples", "[superiorize]") {
  CHECK(direction(square_1d(), Vector{13.0}) == Vector{-1.0});
  CHECK(direction(square_1d(), Vector{0.0}) == Vector{0.0});
  const Vector v = direction(Objective::linear(Vector{3.0, 4.0}), Vector{7.0, -2.0});
  CHECK_THAT(v[0], WithinAbs(-0.6, 1e-15));
  CHECK_THAT(v[1], WithinAbs(-0.8, 1e-15));

  const auto bad = Objective::user(
      "bad", [](const Vector&) { return 0.0; }, [](const Vector&) { return SubgradientSample{Vector{NAN}, false}; });
  CHECK_THROWS_AS(direction(bad, Vector{1.0}), NonFiniteError);

  // User oracle declaring the zero case wins over a nonzero s.
  const auto flat = Objective::user(
      "flat", [](const Vector&) { return 0.0; }, [](const Vector&) { return SubgradientSample{Vector{5.0}, true}; });
  CHECK(direction(flat, Vector{1.0}) == Vector{0.0});
}

TEST_CASE("inner_loop: examples", "[superiorize]") {
  CHECK(inner_loop(square_1d(), PerturbationSchedule::geometric(1.0, 0.5), 0, Vector{13.0}) == Vector{12.0});
  CHECK(inner_loop(Objective::quadratic_diag(Vector{1.0, 1.0}, Vector{2.0, 3.0}),
                   PerturbationSchedule::geometric(1.0, 0.5, InnerLengths::constant(3)), 0,
                   Vector{2.0, 3.0}) == Vector{2.0, 3.0});

  std::vector<InnerRecord> rec;
  const auto two = PerturbationSchedule::explicit_table({{0.5, 0.25}});
  CHECK(inner_loop(Objective::linear(Vector{1.0, 0.0}), two, 0, Vector{0.0, 0.0}, kDefaultZeroTol, &rec) ==
        Vector{-0.75, 0.0});
  REQUIRE(rec.size() == 2);
  CHECK(rec[1].y == Vector{-0.5, 0.0});
  CHECK(rec[1].beta == 0.25);
  CHECK(rec[1].n == 1);

  // Past an explicit table the loop is empty.
  CHECK(inner_loop(Objective::linear(Vector{1.0, 0.0}), two, 1, Vector{4.0, 4.0}) == Vector{4.0, 4.0});
}

TEST_CASE("superiorized_run: closed-form iterates on the interval example", "[superiorize]") {
  const SetFamily fam({ConvexSet::box(Vector{0.0}, Vector{10.0})}, Vector{8.0});
  const auto sched = PerturbationSchedule::geometric(1.0, 0.5);
  const RunTrace tr =
      superiorized_run(fam, square_1d(), single_set_plan(), sched, Vector{13.0}, StopRule{1e-9, 60, 0.0});
  REQUIRE(tr.outer.size() == 61);
  CHECK(tr.perturbed);
  for (std::size_t k = 1; k <= 60; ++k) {
    double expect = 10.0;
    for (std::size_t l = 1; l < k; ++l) expect -= std::ldexp(1.0, -static_cast<int>(l));
    REQUIRE_THAT(tr.outer[k].y[0], WithinAbs(expect, 1e-12));
  }
  CHECK_THAT(tr.y_final()[0], WithinAbs(9.0, 1e-9));
  CHECK(tr.schedule == std::optional<PerturbationSchedule>(sched));
  CHECK(tr.outer[3].phi == std::optional<double>(9.25 * 9.25));
}

TEST_CASE("superiorized_run: null schedule tracks the unperturbed run", "[superiorize]") {
  const SetFamily fam({ConvexSet::halfspace(Vector{1.0, 1.0}, 1.0), ConvexSet::ball(Vector{0.0, 0.0}, 2.0)},
                      Vector{0.0, 0.0});
  const auto plan = StringPlan::repeated(PlanStage{{IndexVector{1, 2}}, {1.0}}, PlanConstraints{0.25, 2}, 2);
  const StopRule stop{1e-12, 200, 0.0};
  const Vector y0{6.0, 5.0};
  const RunTrace pert = superiorized_run(fam, Objective::norm1(), plan, PerturbationSchedule::geometric(1e-300, 0.5),
                                         y0, stop);
  const RunTrace plain = dsap_run(fam, plan, y0, stop);
  // The perturbed leg also waits for the schedule tail, so it may run longer.
  REQUIRE(pert.outer.size() >= plain.outer.size());
  for (std::size_t k = 0; k < plain.outer.size(); ++k) {
    REQUIRE(dsap::distance(pert.outer[k].y, plain.outer[k].y) <= 1e-12);
  }
}

TEST_CASE("superiorized_run: stop rule requires the tail to be exhausted", "[superiorize]") {
  const SetFamily fam({ConvexSet::box(Vector{0.0}, Vector{10.0})});
  const RunTrace tr = superiorized_run(fam, square_1d(), single_set_plan(), PerturbationSchedule::geometric(1.0, 0.5),
                                       Vector{13.0}, StopRule{1e-9, 1000, 1e-12});
  CHECK(tr.stop_reason == StopReason::converged);
  CHECK(PerturbationSchedule::geometric(1.0, 0.5).tail(tr.iterations()) < 1e-12);
  CHECK(PerturbationSchedule::geometric(1.0, 0.5).tail(tr.iterations() - 1) >= 1e-12);

  CHECK_THROWS_AS(superiorized_run(fam, Objective::linear(Vector{1.0, 1.0}), single_set_plan(),
                                   PerturbationSchedule::geometric(1.0, 0.5), Vector{1.0}, StopRule{}),
                  DimensionError);
}

TEST_CASE("properties: directions, displacement, nonascent, replay", "[superiorize][property]") {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> a_dist(0.05, 1.0);
  std::uniform_real_distribution<double> r_dist(0.1, 0.9);
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t dim = 1 + trial % 6;
    Vector q = testing::random_vector(rng, dim, 2.0);
    for (double& c : q) c = std::abs(c) + 0.1;
    const Objective objs[] = {Objective::norm1(), Objective::norm2sq(),
                              Objective::linear(testing::random_vector(rng, dim, 3.0)),
                              Objective::quadratic_diag(q, testing::random_vector(rng, dim, 3.0))};
    const Objective& obj = objs[trial % 4];
    const Vector y = testing::random_vector(rng, dim, 5.0);

    const double vn = norm(direction(obj, y));
    REQUIRE((vn == 0.0 || std::abs(vn - 1.0) <= 1e-15));

    const auto sched =
        PerturbationSchedule::geometric(a_dist(rng), r_dist(rng), InnerLengths::constant(1 + trial % 4));
    const std::size_t k = static_cast<std::size_t>(trial % 5);
    std::vector<InnerRecord> rec;
    const Vector yn = inner_loop(obj, sched, k, y, kDefaultZeroTol, &rec);
    REQUIRE(dsap::distance(yn, y) <= sched.stage_mass(k) + 1e-12);
    for (const auto& r : rec) REQUIRE(norm(r.v) <= 1.0 + 1e-15);

    // Nonascent for small steps on a smooth quadratic.
    const Objective quad = objs[3];
    const auto tiny = PerturbationSchedule::geometric(1e-4, 0.5, InnerLengths::constant(3));
    std::vector<InnerRecord> steps;
    inner_loop(quad, tiny, 0, y, kDefaultZeroTol, &steps);
    for (std::size_t n = 0; n < steps.size(); ++n) {
      const Vector next = n + 1 < steps.size() ? steps[n + 1].y : steps[n].y + steps[n].beta * steps[n].v;
      REQUIRE(quad.value(next) <= quad.value(steps[n].y) + 1e-9);
    }
  }
}

TEST_CASE("replay: outer iterates reproducible from their predecessors", "[superiorize][property]") {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t dim = 1 + trial % 4;
    const std::size_t m = 1 + trial % 5;
    const SetFamily fam = testing::random_family_through_origin(rng, dim, m);
    const auto plan = StringPlan::seeded_random(rng(), m, PlanConstraints{0.5 / static_cast<double>(m), m + 1});
    const auto sched = PerturbationSchedule::geometric(0.8, 0.6, InnerLengths::periodic({1, 3}));
    const Objective obj = Objective::norm1();
    const StopRule stop{1e-9, 30, 1e-12};
    const Vector y0 = testing::random_vector(rng, dim, 6.0);
    const RunTrace tr = superiorized_run(fam, obj, plan, sched, y0, stop, RunOptions{true});
    for (std::size_t i = 0; i + 1 < tr.outer.size(); ++i) {
      REQUIRE(superiorized_step(fam, obj, plan, sched, tr.outer[i].k, tr.outer[i].y) == tr.outer[i + 1].y);
    }
    const RunTrace again = superiorized_run(fam, obj, plan, sched, y0, stop, RunOptions{true});
    REQUIRE(again.outer.size() == tr.outer.size());
    REQUIRE(again.inner.size() == tr.inner.size());
    for (std::size_t i = 0; i < tr.outer.size(); ++i) REQUIRE(again.outer[i].y == tr.outer[i].y);
  }
}
