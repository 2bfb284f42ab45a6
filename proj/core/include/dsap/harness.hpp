#pragma once

// Paired perturbed/unperturbed experiments, example reproduction and
// random problem generators.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "dsap/diagnostics.hpp"
#include "dsap/geometry.hpp"
#include "dsap/objective.hpp"
#include "dsap/schedule.hpp"
#include "dsap/strings.hpp"
#include "dsap/superiorize.hpp"
#include "dsap/trace.hpp"

namespace dsap {

/// D = {c in C : phi(c) <= phi(x_star)}
struct LevelSetTarget {};

/// How d(c_hat, D) is obtained: a user-certified lower bound, an explicit
/// set D (exact distance), or the level set of x_star.
using TargetSet = std::variant<double, ConvexSet, LevelSetTarget>;

struct DiagnosticsConfig {
  Vector c_hat;
  double r = 1.0;
  /// When absent, the level-set target uses the unperturbed limit.
  std::optional<Vector> x_star;
  TargetSet target = LevelSetTarget{};
};

struct ExperimentConfig {
  SetFamily family;
  Objective objective;
  StringPlan plan;
  PerturbationSchedule schedule;
  Vector y0;
  StopRule stop;
  std::optional<DiagnosticsConfig> diagnostics;
  /// Traces are attached to reports only when requested and no longer than this.
  bool attach_traces = false;
  std::size_t trace_gate = 100000;
};

/// Throws on inconsistent dimensions or family size.
void validate(const ExperimentConfig& config);

/// d(c_hat, D) lower bound for the configured target; `x_star` is required
/// for level-set targets.
double resolve_target_distance(const ExperimentConfig& config, const DiagnosticsConfig& diag,
                               const std::optional<Vector>& x_star);

NegativeConditionInput resolve_condition_input(const ExperimentConfig& config, const DiagnosticsConfig& diag,
                                               const std::optional<Vector>& x_star);

RunTrace run_perturbed(const ExperimentConfig& config, const RunOptions& options = {});
RunTrace run_unperturbed(const ExperimentConfig& config);

enum class Superiority { superior, equal, inferior };

std::string to_string(Superiority s);

inline constexpr double kEqualTol = 1e-10;

/// superior if phi(x_run) - phi(y_star) > tol, equal if |.| <= tol.
Superiority classify(double phi_unperturbed, double phi_perturbed, double tol = kEqualTol);

struct ComparisonReport {
  Vector y_star;
  Vector x_star_run;
  double phi_y_star = 0.0;
  double phi_x_star_run = 0.0;
  double residual_perturbed = 0.0;
  double residual_unperturbed = 0.0;
  /// Remaining schedule mass at the perturbed run's last outer index.
  double tail_mass = 0.0;
  StopReason stop_perturbed = StopReason::max_outer;
  StopReason stop_unperturbed = StopReason::max_outer;
  std::size_t iterations_perturbed = 0;
  std::size_t iterations_unperturbed = 0;
  Superiority verdict = Superiority::equal;
  std::vector<Certificate> certificates;
  /// Minimum ||y0 - c_hat|| that escapes the level-set certificate.
  std::optional<double> init_distance_hint;
  /// phi(y_star) <= phi(x_star) for a user-supplied diagnostics x_star.
  std::optional<bool> superior_to_diagnostic_x_star;
  std::optional<RunTrace> perturbed_trace;
  std::optional<RunTrace> unperturbed_trace;
};

class RunError : public Error {
 public:
  using Error::Error;
};

/// Runs both legs from the same y0 over the identical stage stream.
ComparisonReport compare(const ExperimentConfig& config);

enum class ExampleVariant { A, B };

/// C = [0, 10], c_hat = 8 (A) or C = [0, 3/2], c_hat = 1 (B); phi = x^2,
/// beta_{k,0} = 2^-k, N_k = 1, y0 = 13, D = {0}; 60 outer iterations.
ExperimentConfig example_config(ExampleVariant variant);

struct ExampleAssertion {
  std::string name;
  double expected = 0.0;
  double actual = 0.0;
  double tol = 0.0;
  bool passed = false;
};

struct ExampleReproduction {
  ExampleVariant variant = ExampleVariant::A;
  RunTrace trace;
  std::vector<ExampleAssertion> assertions;
  std::optional<std::size_t> first_mismatch_k;
  bool passed = false;
};

/// Runs the example and checks y^k = U - sum_{l=1}^{k-1} 2^-l (U = 10 or 3/2)
/// for every k >= 1 to 1e-12 and the limit (9 or 1/2) to 1e-9.
ExampleReproduction reproduce_example(ExampleVariant variant);

/// m random halfspaces in R^dim whose bounding hyperplanes are at distance
/// >= margin from the origin, which is the family's witness.
SetFamily generate_halfspace_problem(std::size_t dim, std::size_t m, std::uint64_t seed, double margin);

}  // namespace dsap
