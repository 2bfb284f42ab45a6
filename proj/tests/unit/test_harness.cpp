#include <catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "dsap/error.hpp"
#include "dsap/harness.hpp"
#include "support/oracles.hpp"

using namespace dsap;
using Catch::Matchers::WithinAbs;

namespace {

// y^k = 9 + 2^{-(k-1)} for k >= 1 (variant A), shifted by U - 10 for B.
double example_iterate(double upper, std::size_t k) {
  return upper - 1.0 + std::ldexp(1.0, -static_cast<int>(k - 1));
}

}  // namespace

TEST_CASE("reproduce_example: variant A", "[harness]") {
  const ExampleReproduction rep = reproduce_example(ExampleVariant::A);
  CHECK(rep.passed);
  CHECK_FALSE(rep.first_mismatch_k.has_value());
  CHECK(rep.assertions.size() == 61);
  REQUIRE(rep.trace.outer.size() == 61);
  CHECK(rep.trace.outer[3].y[0] == 9.25);
  for (std::size_t k = 1; k <= 60; ++k) REQUIRE_THAT(rep.trace.outer[k].y[0], WithinAbs(example_iterate(10.0, k), 1e-12));
  CHECK_THAT(rep.trace.y_final()[0], WithinAbs(9.0, 1e-9));
}

TEST_CASE("reproduce_example: variant B", "[harness]") {
  const ExampleReproduction rep = reproduce_example(ExampleVariant::B);
  CHECK(rep.passed);
  for (std::size_t k = 1; k <= 60; ++k) REQUIRE_THAT(rep.trace.outer[k].y[0], WithinAbs(example_iterate(1.5, k), 1e-12));
  CHECK_THAT(rep.trace.y_final()[0], WithinAbs(0.5, 1e-9));
}

TEST_CASE("compare: example A is superior to the unperturbed limit", "[harness]") {
  ExperimentConfig cfg = example_config(ExampleVariant::A);
  cfg.diagnostics->x_star.reset();
  const ComparisonReport rep = compare(cfg);
  CHECK(rep.x_star_run == Vector{10.0});
  CHECK_THAT(rep.y_star[0], WithinAbs(9.0, 1e-9));
  CHECK_THAT(rep.phi_y_star, WithinAbs(81.0, 1e-7));
  CHECK(rep.phi_x_star_run == 100.0);
  CHECK(rep.verdict == Superiority::superior);
  CHECK(rep.init_distance_hint == std::optional<double>(3.0));
  REQUIRE_FALSE(rep.certificates.empty());
  CHECK(rep.certificates[0].kind == "negative_condition");
  CHECK(rep.certificates[0].verdict == Verdict::inconclusive);
  CHECK_FALSE(rep.perturbed_trace.has_value());
}

TEST_CASE("compare: null schedule gives equal", "[harness]") {
  ExperimentConfig cfg = example_config(ExampleVariant::A);
  cfg.schedule = PerturbationSchedule::geometric(1e-300, 0.5);
  cfg.diagnostics.reset();
  const ComparisonReport rep = compare(cfg);
  CHECK(rep.verdict == Superiority::equal);
  CHECK(rep.certificates.empty());
}

TEST_CASE("compare: planar halfspaces with a linear objective", "[harness]") {
  const SetFamily fam = generate_halfspace_problem(2, 4, 3, 0.5);
  ExperimentConfig cfg{fam,
                       Objective::linear(Vector{1.0, 2.0}),
                       StringPlan::cyclic({PlanStage{{IndexVector{1, 2}, IndexVector{3, 4}}, {0.5, 0.5}},
                                           PlanStage{{IndexVector{4, 3, 2, 1}}, {1.0}}},
                                          PlanConstraints{0.2, 4}, 4),
                       PerturbationSchedule::geometric(1.0, 0.9, InnerLengths::constant(2)),
                       Vector{30.0, 30.0},
                       StopRule{1e-9, 100000, 1e-12},
                       std::nullopt,
                       true};
  const ComparisonReport rep = compare(cfg);
  CHECK(rep.residual_perturbed <= 1e-9);
  CHECK(rep.residual_unperturbed <= 1e-9);
  CHECK(rep.tail_mass < 1e-12);
  CHECK(rep.stop_perturbed == StopReason::converged);
  REQUIRE(rep.perturbed_trace);
  REQUIRE(rep.unperturbed_trace);

  // Paired-run fidelity: the unperturbed leg equals a standalone run.
  const RunTrace solo = dsap_run(cfg.family, cfg.plan, cfg.y0, cfg.stop, cfg.objective);
  REQUIRE(solo.outer.size() == rep.unperturbed_trace->outer.size());
  for (std::size_t i = 0; i < solo.outer.size(); ++i) {
    REQUIRE(solo.outer[i].y == rep.unperturbed_trace->outer[i].y);
    REQUIRE(solo.outer[i].phi == rep.unperturbed_trace->outer[i].phi);
  }
  CHECK(rep.verdict == classify(rep.phi_x_star_run, rep.phi_y_star));

  cfg.trace_gate = 2;
  CHECK_FALSE(compare(cfg).perturbed_trace.has_value());
}

TEST_CASE("compare: errors carry the leg label", "[harness]") {
  ExperimentConfig cfg = example_config(ExampleVariant::A);
  cfg.y0 = Vector{1.0, 2.0};
  CHECK_THROWS_AS(compare(cfg), Error);

  const auto exploding = Objective::user(
      "exploding", [](const Vector&) { return 0.0; },
      [](const Vector&) { return SubgradientSample{Vector{NAN}, false}; });
  ExperimentConfig bad = example_config(ExampleVariant::A);
  bad.objective = exploding;
  bad.diagnostics.reset();
  try {
    compare(bad);
    FAIL("expected an error");
  } catch (const RunError& e) {
    CHECK(std::string(e.what()).find("perturbed run") != std::string::npos);
  }
}

TEST_CASE("classify: tolerance", "[harness]") {
  CHECK(classify(100.0, 81.0) == Superiority::superior);
  CHECK(classify(81.0, 100.0) == Superiority::inferior);
  CHECK(classify(1.0, 1.0 + 5e-11) == Superiority::equal);
  CHECK(classify(1.0, 1.0 - 2e-10) == Superiority::superior);
}

TEST_CASE("generate_halfspace_problem: construction", "[harness]") {
  const SetFamily fam = generate_halfspace_problem(2, 3, 7, 0.25);
  CHECK(fam.size() == 3);
  CHECK(max_violation(fam, Vector{0.0, 0.0}) == 0.0);
  REQUIRE(fam.witness());
  CHECK(*fam.witness() == Vector{0.0, 0.0});

  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const SetFamily f = generate_halfspace_problem(1 + seed % 5, 1 + seed % 7, seed, 1.0);
    for (const ConvexSet& s : f.sets()) {
      const auto& h = std::get<Halfspace>(s.shape());
      REQUIRE(h.b / norm(h.a) >= 1.0);
    }
  }

  const SetFamily again = generate_halfspace_problem(2, 3, 7, 0.25);
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(std::get<Halfspace>(fam[i].shape()).a == std::get<Halfspace>(again[i].shape()).a);
    CHECK(std::get<Halfspace>(fam[i].shape()).b == std::get<Halfspace>(again[i].shape()).b);
  }
  CHECK_THROWS_AS(generate_halfspace_problem(0, 3, 7, 1.0), InvalidArgument);
  CHECK_THROWS_AS(generate_halfspace_problem(2, 3, 7, 0.0), InvalidArgument);
}

TEST_CASE("resolve_target_distance: target kinds", "[harness]") {
  ExperimentConfig cfg = example_config(ExampleVariant::A);
  DiagnosticsConfig diag = *cfg.diagnostics;
  CHECK(resolve_target_distance(cfg, diag, Vector{0.0}) == 8.0);
  diag.target = 3.5;
  CHECK(resolve_target_distance(cfg, diag, std::nullopt) == 3.5);
  diag.target = LevelSetTarget{};
  CHECK(resolve_target_distance(cfg, diag, Vector{0.0}) == 8.0);
  CHECK_THROWS(resolve_target_distance(cfg, diag, std::nullopt));
}

TEST_CASE("level set of the unperturbed limit: certificate never holds with a superior verdict",
          "[harness][property]") {
  // End-to-end soundness: if the level-set certificate held with D the level
  // set of the unperturbed limit, the verdict could not be superior.
  std::mt19937_64 rng(555);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  int holds = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t dim = 1 + trial % 2;
    const SetFamily fam({ConvexSet::box(Vector(dim, 0.0), Vector(dim, 10.0))}, Vector(dim, 5.0));
    Vector c_hat(dim);
    for (double& c : c_hat) c = 10.0 * u(rng);
    Vector y0 = c_hat + testing::random_vector(rng, dim, 3.0);
    ExperimentConfig cfg{fam,
                         Objective::quadratic_diag(Vector(dim, 1.0), testing::random_vector(rng, dim, 12.0)),
                         StringPlan::repeated(PlanStage{{IndexVector{1}}, {1.0}}, PlanConstraints{0.5, 1}, 1),
                         PerturbationSchedule::geometric(0.01 + 0.99 * u(rng), 0.1 + 0.8 * u(rng)),
                         y0,
                         StopRule{1e-9, 100000, 1e-12},
                         DiagnosticsConfig{c_hat, 1.0, std::nullopt, LevelSetTarget{}}};
    const ComparisonReport rep = compare(cfg);
    REQUIRE(rep.certificates.size() == 2);
    const Certificate& level = rep.certificates[1];
    REQUIRE(level.kind == "levelset");
    if (level.verdict == Verdict::negative_condition_holds) {
      ++holds;
      REQUIRE(rep.verdict != Superiority::superior);
    }
  }
  // The unperturbed limit is at least as close to c_hat as y0 is, so the
  // strict initialization inequality cannot hold; the invariant is vacuous.
  CHECK(holds == 0);
}
