#include "dsap/harness.hpp"

#include <cmath>
#include <future>
#include <random>

#include "dsap/error.hpp"
#include "dsap/format.hpp"

namespace dsap {

void validate(const ExperimentConfig& config) {
  const std::size_t n = config.family.dim();
  if (config.plan.family_size() != config.family.size()) {
    throw DimensionError("plan is built for " + std::to_string(config.plan.family_size()) + " sets, family has " +
                         std::to_string(config.family.size()));
  }
  if (config.y0.dim() != n) throw DimensionError("initial point has dimension " + std::to_string(config.y0.dim()) +
                                                 ", space has dimension " + std::to_string(n));
  if (config.objective.dim() && *config.objective.dim() != n) {
    throw DimensionError("objective dimension differs from the space dimension");
  }
  config.stop.validate();
  if (config.diagnostics) {
    const DiagnosticsConfig& d = *config.diagnostics;
    if (d.c_hat.dim() != n) throw DimensionError("diagnostics: c_hat has wrong dimension");
    if (d.x_star && d.x_star->dim() != n) throw DimensionError("diagnostics: x_star has wrong dimension");
    if (const auto* set = std::get_if<ConvexSet>(&d.target); set && set->dim() != n) {
      throw DimensionError("diagnostics: target set D has wrong dimension");
    }
  }
}

double resolve_target_distance(const ExperimentConfig& config, const DiagnosticsConfig& diag,
                               const std::optional<Vector>& x_star) {
  return std::visit(
      [&](const auto& target) -> double {
        using T = std::decay_t<decltype(target)>;
        if constexpr (std::is_same_v<T, double>) {
          return target;
        } else if constexpr (std::is_same_v<T, ConvexSet>) {
          return distance(target, diag.c_hat);
        } else {
          if (!x_star) throw InvalidArgument("level-set target requires x_star");
          return levelset_distance_lower_bound(config.family, config.objective, *x_star, diag.c_hat);
        }
      },
      diag.target);
}

NegativeConditionInput resolve_condition_input(const ExperimentConfig& config, const DiagnosticsConfig& diag,
                                               const std::optional<Vector>& x_star) {
  NegativeConditionInput in = make_negative_condition_input(diag.c_hat, diag.r,
                                                            resolve_target_distance(config, diag, x_star),
                                                            config.schedule, config.y0);
  in.validate(config.family);
  return in;
}

RunTrace run_perturbed(const ExperimentConfig& config, const RunOptions& options) {
  validate(config);
  return superiorized_run(config.family, config.objective, config.plan, config.schedule, config.y0, config.stop,
                          options);
}

RunTrace run_unperturbed(const ExperimentConfig& config) {
  validate(config);
  return dsap_run(config.family, config.plan, config.y0, config.stop, config.objective);
}

std::string to_string(Superiority s) {
  switch (s) {
    case Superiority::superior:
      return "superior";
    case Superiority::equal:
      return "equal";
    case Superiority::inferior:
      return "inferior";
  }
  return "?";
}

Superiority classify(double phi_unperturbed, double phi_perturbed, double tol) {
  const double diff = phi_unperturbed - phi_perturbed;
  if (std::abs(diff) <= tol) return Superiority::equal;
  return diff > 0.0 ? Superiority::superior : Superiority::inferior;
}

namespace {

template <class F>
RunTrace labelled(const char* label, F&& f) {
  try {
    return f();
  } catch (const std::exception& e) {
    throw RunError(std::string(label) + ": " + e.what());
  }
}

}  // namespace

ComparisonReport compare(const ExperimentConfig& config) {
  validate(config);

  auto perturbed = std::async(std::launch::async, [&] { return labelled("perturbed run", [&] { return run_perturbed(config); }); });
  RunTrace plain = labelled("unperturbed run", [&] { return run_unperturbed(config); });
  RunTrace pert = perturbed.get();

  ComparisonReport rep;
  rep.y_star = pert.y_final();
  rep.x_star_run = plain.y_final();
  rep.phi_y_star = *pert.outer.back().phi;
  rep.phi_x_star_run = *plain.outer.back().phi;
  rep.residual_perturbed = pert.outer.back().max_violation;
  rep.residual_unperturbed = plain.outer.back().max_violation;
  rep.tail_mass = config.schedule.tail(pert.iterations());
  rep.stop_perturbed = pert.stop_reason;
  rep.stop_unperturbed = plain.stop_reason;
  rep.iterations_perturbed = pert.iterations();
  rep.iterations_unperturbed = plain.iterations();
  rep.verdict = classify(rep.phi_x_star_run, rep.phi_y_star);

  if (config.diagnostics) {
    const DiagnosticsConfig& diag = *config.diagnostics;
    const Vector x_star = diag.x_star ? *diag.x_star : rep.x_star_run;
    const NegativeConditionInput input = resolve_condition_input(config, diag, x_star);
    rep.certificates.push_back(negative_certificate(input));
    if (diag.x_star || std::holds_alternative<LevelSetTarget>(diag.target)) {
      rep.certificates.push_back(levelset_verdict(config.family, x_star, &pert, input, config.objective));
    }
    rep.init_distance_hint = init_distance_hint(input);
    if (diag.x_star) rep.superior_to_diagnostic_x_star = rep.phi_y_star <= config.objective.value(*diag.x_star);
  }

  if (config.attach_traces && pert.outer.size() <= config.trace_gate && plain.outer.size() <= config.trace_gate) {
    rep.perturbed_trace = std::move(pert);
    rep.unperturbed_trace = std::move(plain);
  }
  return rep;
}

ExperimentConfig example_config(ExampleVariant variant) {
  const double upper = variant == ExampleVariant::A ? 10.0 : 1.5;
  const double c_hat = variant == ExampleVariant::A ? 8.0 : 1.0;
  SetFamily family({ConvexSet::box(Vector{0.0}, Vector{upper})}, Vector{c_hat});
  PlanStage stage{{IndexVector{1}}, {1.0}};
  StringPlan plan = StringPlan::repeated(stage, PlanConstraints{0.5, 1}, 1);
  StopRule stop{1e-9, 60, 0.0};
  DiagnosticsConfig diag{Vector{c_hat}, 1.0, Vector{0.0}, ConvexSet::singleton(Vector{0.0})};
  return ExperimentConfig{std::move(family),
                          Objective::norm2sq(),
                          std::move(plan),
                          PerturbationSchedule::geometric(1.0, 0.5, InnerLengths::constant(1)),
                          Vector{13.0},
                          stop,
                          std::move(diag)};
}

ExampleReproduction reproduce_example(ExampleVariant variant) {
  const ExperimentConfig config = example_config(variant);
  const double upper = variant == ExampleVariant::A ? 10.0 : 1.5;
  const double limit = variant == ExampleVariant::A ? 9.0 : 0.5;

  ExampleReproduction out;
  out.variant = variant;
  out.trace = run_perturbed(config);

  for (const OuterRecord& rec : out.trace.outer) {
    if (rec.k == 0) continue;
    double partial = 0.0;
    for (std::size_t l = 1; l + 1 <= rec.k; ++l) partial += std::ldexp(1.0, -static_cast<int>(l));
    ExampleAssertion a{"y^" + std::to_string(rec.k), upper - partial, rec.y[0], 1e-12, false};
    a.passed = std::abs(a.actual - a.expected) <= a.tol;
    if (!a.passed && !out.first_mismatch_k) out.first_mismatch_k = rec.k;
    out.assertions.push_back(std::move(a));
  }
  ExampleAssertion lim{"limit", limit, out.trace.y_final()[0], 1e-9, false};
  lim.passed = std::abs(lim.actual - lim.expected) <= lim.tol;
  out.assertions.push_back(lim);

  out.passed = true;
  for (const auto& a : out.assertions) out.passed = out.passed && a.passed;
  return out;
}

SetFamily generate_halfspace_problem(std::size_t dim, std::size_t m, std::uint64_t seed, double margin) {
  if (dim == 0 || m == 0) throw InvalidArgument("generate_halfspace_problem: dim and m must be >= 1");
  if (!(margin > 0.0)) throw InvalidArgument("generate_halfspace_problem: margin must be positive");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<ConvexSet> sets;
  sets.reserve(m);
  for (std::size_t i = 0; i < m; ++i) {
    Vector a(dim);
    do {
      for (double& c : a) c = gauss(rng);
    } while (norm(a) < 1e-3);
    const double offset = margin * (1.0 + unit(rng));
    sets.push_back(ConvexSet::halfspace(a, offset * norm(a)));
  }
  return SetFamily(std::move(sets), Vector(dim, 0.0));
}

}  // namespace dsap
