#pragma once

// Superiorized DSAP: every outer step runs an inner loop of normalized
// negative-subgradient perturbations before one string-averaging stage.

#include <cstddef>
#include <vector>

#include "dsap/geometry.hpp"
#include "dsap/objective.hpp"
#include "dsap/schedule.hpp"
#include "dsap/strings.hpp"
#include "dsap/trace.hpp"

namespace dsap {

/// Default threshold on ||s|| below which 0 is taken to be a subgradient.
inline constexpr double kDefaultZeroTol = 1e-12;

/// v = -s/||s||, or the zero vector when 0 is in the subdifferential at y.
Vector direction(const Objective& objective, const Vector& y, double zero_tol = kDefaultZeroTol);

/// y^{k,N_k} from y^{k,0} = y_k via y^{k,n+1} = y^{k,n} + beta_{k,n} v^{k,n}.
/// Appends one InnerRecord per step to `record` when given.
Vector inner_loop(const Objective& objective, const PerturbationSchedule& schedule, std::size_t k, const Vector& y_k,
                  double zero_tol = kDefaultZeroTol, std::vector<InnerRecord>* record = nullptr);

struct RunOptions {
  bool record_inner = false;
  double zero_tol = kDefaultZeroTol;
};

/// One outer step: y^{k+1} = P_{Omega_k,w_k}(y^{k,N_k}).
Vector superiorized_step(const SetFamily& family, const Objective& objective, const StringPlan& plan,
                         const PerturbationSchedule& schedule, std::size_t k, const Vector& y_k,
                         double zero_tol = kDefaultZeroTol, std::vector<InnerRecord>* record = nullptr);

/// Runs the superiorized iteration from y0. Converged means
/// max_violation(y^k) <= stop.feas_tol and schedule.tail(k) < stop.min_beta_tail.
RunTrace superiorized_run(const SetFamily& family, const Objective& objective, const StringPlan& plan,
                          const PerturbationSchedule& schedule, const Vector& y0, const StopRule& stop,
                          const RunOptions& options = {});

}  // namespace dsap
