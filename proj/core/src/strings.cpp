#include "dsap/strings.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <set>

#include "dsap/format.hpp"
#include "dsap/objective.hpp"

namespace dsap {
namespace {

std::string join(const std::vector<std::string>& parts) {
  std::string out;
  for (const auto& p : parts) {
    if (!out.empty()) out += "; ";
    out += p;
  }
  return out;
}

std::string to_text(const IndexVector& t) {
  std::string s = "(";
  for (std::size_t i = 0; i < t.length(); ++i) s += (i ? "," : "") + std::to_string(t.indices()[i]);
  return s + ")";
}

// Membership in M (fit, positive weights summing to one); Delta/qbar excluded.
std::vector<std::string> base_violations(const PlanStage& stage, std::size_t m) {
  std::vector<std::string> reasons;
  if (stage.strings.empty()) {
    reasons.push_back("empty Omega: at least one index vector is required");
    return reasons;
  }
  if (stage.weights.size() != stage.strings.size()) {
    reasons.push_back("weights: " + std::to_string(stage.weights.size()) + " weights for " +
                      std::to_string(stage.strings.size()) + " index vectors");
    return reasons;
  }
  std::vector<bool> seen(m + 1, false);
  for (const IndexVector& t : stage.strings) {
    if (t.length() == 0) reasons.push_back("empty index vector");
    for (std::size_t i : t.indices()) {
      if (i < 1 || i > m) {
        reasons.push_back("index " + std::to_string(i) + " in " + to_text(t) + " outside [1, " + std::to_string(m) + "]");
      } else {
        seen[i] = true;
      }
    }
  }
  std::set<IndexVector> distinct(stage.strings.begin(), stage.strings.end());
  if (distinct.size() != stage.strings.size()) reasons.push_back("Omega is a set: duplicate index vector");
  for (std::size_t i = 1; i <= m; ++i) {
    if (!seen[i]) reasons.push_back("not fit: index " + std::to_string(i) + " missing");
  }
  double sum = 0.0;
  for (double w : stage.weights) {
    if (!std::isfinite(w) || !(w > 0.0)) reasons.push_back("weight " + format_shortest(w) + " is not positive");
    sum += w;
  }
  if (!(std::abs(sum - 1.0) <= kWeightSumTol)) {
    reasons.push_back("weights sum to " + format_shortest(sum) + ", M* requires sum w(t) = 1 (tolerance 1e-12)");
  }
  return reasons;
}

}  // namespace

PlanError::PlanError(const std::string& what, std::vector<std::string> reasons)
    : Error(what + (reasons.empty() ? std::string() : ": " + join(reasons))), reasons_(std::move(reasons)) {}

void PlanConstraints::validate(std::size_t m) const {
  std::vector<std::string> reasons;
  if (m == 0) reasons.push_back("family size m must be >= 1");
  if (!(delta > 0.0 && delta * static_cast<double>(m) < 1.0)) {
    reasons.push_back("Delta=" + format_shortest(delta) + " must lie in (0, 1/m) with m=" + std::to_string(m));
  }
  if (qbar < m) reasons.push_back("qbar=" + std::to_string(qbar) + " must be >= m=" + std::to_string(m));
  if (!reasons.empty()) throw PlanError("invalid plan constraints", std::move(reasons));
}

Admissibility is_admissible(const PlanStage& stage, const PlanConstraints& constraints, std::size_t m) {
  Admissibility out;
  out.reasons = base_violations(stage, m);
  if (stage.weights.size() == stage.strings.size()) {
    for (std::size_t i = 0; i < stage.strings.size(); ++i) {
      if (stage.strings[i].length() > constraints.qbar) {
        out.reasons.push_back("l(t)=" + std::to_string(stage.strings[i].length()) + " > qbar=" +
                              std::to_string(constraints.qbar) + " for t=" + to_text(stage.strings[i]));
      }
      if (stage.weights[i] < constraints.delta) {
        out.reasons.push_back("w(t)=" + format_shortest(stage.weights[i]) + " < Delta=" +
                              format_shortest(constraints.delta) + " for t=" + to_text(stage.strings[i]));
      }
    }
  }
  out.admissible = out.reasons.empty();
  return out;
}

Vector apply_string(const IndexVector& t, const SetFamily& family, const Vector& x) {
  if (t.length() == 0) throw PlanError("apply_string", {"empty index vector"});
  Vector y = x;
  for (std::size_t i : t.indices()) {
    if (i < 1 || i > family.size()) {
      throw PlanError("apply_string", {"index " + std::to_string(i) + " outside [1, " + std::to_string(family.size()) + "]"});
    }
    y = project(family[i - 1], y);
  }
  return y;
}

Vector apply_stage(const PlanStage& stage, const SetFamily& family, const Vector& x) {
  if (auto reasons = base_violations(stage, family.size()); !reasons.empty()) {
    throw PlanError("inadmissible stage", std::move(reasons));
  }
  if (stage.strings.size() == 1) return apply_string(stage.strings.front(), family, x);
  Vector out(x.dim(), 0.0);
  for (std::size_t i = 0; i < stage.strings.size(); ++i) {
    axpy(stage.weights[i], apply_string(stage.strings[i], family, x), out);
  }
  return out;
}

std::string to_string(PlanMode mode) {
  switch (mode) {
    case PlanMode::cyclic:
      return "cyclic";
    case PlanMode::repeated:
      return "repeated";
    case PlanMode::seeded_random:
      return "seeded_random";
  }
  return "unknown";
}

StringPlan::StringPlan(PlanMode mode, std::vector<PlanStage> stages, PlanConstraints constraints, std::size_t m,
                       std::optional<std::uint64_t> seed, RandomStageParams params)
    : mode_(mode), stages_(std::move(stages)), constraints_(constraints), m_(m), seed_(seed), params_(params) {
  constraints_.validate(m_);
  for (std::size_t k = 0; k < stages_.size(); ++k) {
    Admissibility adm = is_admissible(stages_[k], constraints_, m_);
    if (!adm) throw PlanError("stage " + std::to_string(k) + " is not in M*", std::move(adm.reasons));
  }
}

StringPlan StringPlan::cyclic(std::vector<PlanStage> stages, PlanConstraints constraints, std::size_t m) {
  if (stages.empty()) throw PlanError("cyclic plan", {"at least one stage is required"});
  return StringPlan(PlanMode::cyclic, std::move(stages), constraints, m, std::nullopt, {});
}

StringPlan StringPlan::repeated(PlanStage stage, PlanConstraints constraints, std::size_t m) {
  return StringPlan(PlanMode::repeated, {std::move(stage)}, constraints, m, std::nullopt, {});
}

StringPlan StringPlan::seeded_random(std::uint64_t seed, std::size_t m, PlanConstraints constraints,
                                     RandomStageParams params) {
  if (params.max_strings == 0) throw PlanError("seeded_random plan", {"max_strings must be >= 1"});
  if (!(params.extension_probability >= 0.0 && params.extension_probability < 1.0)) {
    throw PlanError("seeded_random plan", {"extension_probability must lie in [0, 1)"});
  }
  return StringPlan(PlanMode::seeded_random, {}, constraints, m, seed, params);
}

StringPlan StringPlan::with_seed(std::uint64_t seed) const {
  if (mode_ != PlanMode::seeded_random) throw InvalidArgument("with_seed: plan is not seeded_random");
  StringPlan copy = *this;
  copy.seed_ = seed;
  return copy;
}

PlanInfo StringPlan::info() const { return PlanInfo{to_string(mode_), seed_}; }

PlanStage StringPlan::stage_at(std::size_t k) const {
  switch (mode_) {
    case PlanMode::cyclic:
      return stages_[k % stages_.size()];
    case PlanMode::repeated:
      return stages_.front();
    case PlanMode::seeded_random:
      break;
  }

  // Each stage draws from its own engine keyed by (seed, k), so stage_at is
  // pure in k and replays do not depend on call order.
  const std::uint64_t seed = *seed_;
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(k), static_cast<std::uint32_t>(static_cast<std::uint64_t>(k) >> 32)};
  std::mt19937_64 rng(seq);

  const std::size_t max_s = std::min(params_.max_strings, m_);
  const std::size_t s = std::uniform_int_distribution<std::size_t>(1, max_s)(rng);

  std::vector<std::size_t> order(m_);
  std::iota(order.begin(), order.end(), std::size_t{1});
  std::shuffle(order.begin(), order.end(), rng);

  // s - 1 distinct cut points in [1, m-1] split the permutation into s nonempty strings.
  std::vector<std::size_t> cuts(m_ - 1);
  std::iota(cuts.begin(), cuts.end(), std::size_t{1});
  std::shuffle(cuts.begin(), cuts.end(), rng);
  cuts.resize(s - 1);
  std::sort(cuts.begin(), cuts.end());
  cuts.push_back(m_);

  PlanStage stage;
  std::uniform_int_distribution<std::size_t> any_index(1, m_);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::size_t begin = 0;
  for (std::size_t end : cuts) {
    std::vector<std::size_t> idx(order.begin() + static_cast<std::ptrdiff_t>(begin),
                                 order.begin() + static_cast<std::ptrdiff_t>(end));
    while (idx.size() < constraints_.qbar && unit(rng) < params_.extension_probability) idx.push_back(any_index(rng));
    stage.strings.emplace_back(std::move(idx));
    begin = end;
  }

  // w_i = Delta + (1 - s Delta) u_i / sum u, so every weight is >= Delta.
  std::vector<double> u(s);
  double usum = 0.0;
  for (double& x : u) {
    x = 0.5 + unit(rng);
    usum += x;
  }
  const double free_mass = 1.0 - static_cast<double>(s) * constraints_.delta;
  for (double x : u) stage.weights.push_back(constraints_.delta + free_mass * (x / usum));
  return stage;
}

namespace {

RunTrace dsap_impl(const SetFamily& family, const StringPlan& plan, const Vector& x0, const StopRule& stop,
                   const Objective* objective) {
  stop.validate();
  if (plan.family_size() != family.size()) {
    throw DimensionError("dsap_run: plan built for m=" + std::to_string(plan.family_size()) + ", family has m=" +
                         std::to_string(family.size()));
  }
  if (x0.dim() != family.dim()) throw DimensionError("dsap_run: initial point has wrong dimension");
  require_finite(x0, "dsap_run initial point");

  RunTrace trace;
  trace.perturbed = false;
  trace.plan = plan.info();
  if (objective) trace.objective_kind = std::string(objective->kind_name());

  Vector x = x0;
  for (std::size_t k = 0;; ++k) {
    if (!all_finite(x)) throw NonFiniteError("dsap_run: non-finite iterate at k=" + std::to_string(k));
    const double viol = max_violation(family, x);
    std::optional<double> phi;
    if (objective) phi = objective->value(x);
    trace.outer.push_back(OuterRecord{k, x, phi, viol});
    if (viol <= stop.feas_tol) {
      trace.stop_reason = StopReason::converged;
      break;
    }
    if (k >= stop.max_outer) {
      trace.stop_reason = StopReason::max_outer;
      break;
    }
    x = apply_stage(plan.stage_at(k), family, x);
  }
  return trace;
}

}  // namespace

RunTrace dsap_run(const SetFamily& family, const StringPlan& plan, const Vector& x0, const StopRule& stop) {
  return dsap_impl(family, plan, x0, stop, nullptr);
}

RunTrace dsap_run(const SetFamily& family, const StringPlan& plan, const Vector& x0, const StopRule& stop,
                  const Objective& objective) {
  return dsap_impl(family, plan, x0, stop, &objective);
}

void StopRule::validate() const {
  if (!(feas_tol >= 0.0)) throw InvalidArgument("stop rule: feas_tol must be >= 0");
  if (max_outer < 1) throw InvalidArgument("stop rule: max_outer must be >= 1");
  if (!(min_beta_tail >= 0.0)) throw InvalidArgument("stop rule: min_beta_tail must be >= 0");
}

std::string to_string(StopReason reason) {
  return reason == StopReason::converged ? "converged" : "max_outer";
}

}  // namespace dsap
