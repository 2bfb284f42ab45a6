#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dsap/schedule.hpp"
#include "dsap/vector.hpp"

namespace dsap {

/// Termination criteria. The algorithms themselves run indefinitely.
struct StopRule {
  /// Stop once max_violation(y^k) <= feas_tol ...
  double feas_tol = 1e-9;
  /// ... or after this many outer iterations.
  std::size_t max_outer = 100000;
  /// Perturbed runs additionally require the remaining schedule mass to be
  /// strictly below this threshold before declaring convergence.
  double min_beta_tail = 1e-12;

  void validate() const;
};

enum class StopReason { converged, max_outer };

std::string to_string(StopReason reason);

struct OuterRecord {
  std::size_t k = 0;
  Vector y;
  std::optional<double> phi;
  double max_violation = 0.0;
};

/// y is y^{k,n}, the point at which v^{k,n} was computed.
struct InnerRecord {
  std::size_t k = 0;
  std::size_t n = 0;
  Vector y;
  Vector v;
  double beta = 0.0;
};

struct PlanInfo {
  std::string mode;
  std::optional<std::uint64_t> seed;
};

/// Full history of a DSAP or superiorized run.
struct RunTrace {
  bool perturbed = false;
  std::vector<OuterRecord> outer;
  /// Empty unless inner recording was requested.
  std::vector<InnerRecord> inner;
  StopReason stop_reason = StopReason::max_outer;
  PlanInfo plan;
  std::optional<PerturbationSchedule> schedule;
  std::string objective_kind;
  std::string subgradient_rule;

  const Vector& y_final() const { return outer.back().y; }
  std::size_t iterations() const { return outer.empty() ? 0 : outer.back().k; }
};

}  // namespace dsap
