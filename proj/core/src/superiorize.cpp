#include "dsap/superiorize.hpp"

#include <string>

#include "dsap/error.hpp"

namespace dsap {

Vector direction(const Objective& objective, const Vector& y, double zero_tol) {
  require_finite(y, "direction");
  SubgradientSample sample = objective.subgradient(y);
  if (sample.zero_in_subdifferential) return Vector(y.dim(), 0.0);
  if (sample.s.dim() != y.dim()) throw DimensionError("direction: subgradient has wrong dimension");
  if (!all_finite(sample.s)) throw NonFiniteError("direction: subgradient oracle returned a non-finite vector");
  const double len = norm(sample.s);
  if (len <= zero_tol) return Vector(y.dim(), 0.0);
  return (-1.0 / len) * std::move(sample.s);
}

Vector inner_loop(const Objective& objective, const PerturbationSchedule& schedule, std::size_t k, const Vector& y_k,
                  double zero_tol, std::vector<InnerRecord>* record) {
  Vector y = y_k;
  const std::size_t n_k = schedule.inner_length(k);
  for (std::size_t n = 0; n < n_k; ++n) {
    const double beta = schedule.beta(k, n);
    Vector v = direction(objective, y, zero_tol);
    if (record) record->push_back(InnerRecord{k, n, y, v, beta});
    axpy(beta, v, y);
    if (!all_finite(y)) {
      throw NonFiniteError("inner loop: non-finite iterate at k=" + std::to_string(k) + ", n=" + std::to_string(n + 1));
    }
  }
  return y;
}

Vector superiorized_step(const SetFamily& family, const Objective& objective, const StringPlan& plan,
                         const PerturbationSchedule& schedule, std::size_t k, const Vector& y_k, double zero_tol,
                         std::vector<InnerRecord>* record) {
  const Vector perturbed = inner_loop(objective, schedule, k, y_k, zero_tol, record);
  return apply_stage(plan.stage_at(k), family, perturbed);
}

RunTrace superiorized_run(const SetFamily& family, const Objective& objective, const StringPlan& plan,
                          const PerturbationSchedule& schedule, const Vector& y0, const StopRule& stop,
                          const RunOptions& options) {
  stop.validate();
  if (plan.family_size() != family.size()) {
    throw DimensionError("superiorized_run: plan built for m=" + std::to_string(plan.family_size()) +
                         ", family has m=" + std::to_string(family.size()));
  }
  if (y0.dim() != family.dim()) throw DimensionError("superiorized_run: initial point has wrong dimension");
  if (objective.dim() && *objective.dim() != family.dim()) {
    throw DimensionError("superiorized_run: objective dimension differs from the family");
  }
  require_finite(y0, "superiorized_run initial point");

  RunTrace trace;
  trace.perturbed = true;
  trace.plan = plan.info();
  trace.schedule = schedule;
  trace.objective_kind = std::string(objective.kind_name());
  trace.subgradient_rule = objective.subgradient_rule();

  Vector y = y0;
  for (std::size_t k = 0;; ++k) {
    if (!all_finite(y)) throw NonFiniteError("superiorized_run: non-finite iterate at k=" + std::to_string(k));
    const double viol = max_violation(family, y);
    trace.outer.push_back(OuterRecord{k, y, objective.value(y), viol});
    if (viol <= stop.feas_tol && schedule.tail(k) < stop.min_beta_tail) {
      trace.stop_reason = StopReason::converged;
      break;
    }
    if (k >= stop.max_outer) {
      trace.stop_reason = StopReason::max_outer;
      break;
    }
    y = superiorized_step(family, objective, plan, schedule, k, y, options.zero_tol,
                          options.record_inner ? &trace.inner : nullptr);
  }
  return trace;
}

}  // namespace dsap
