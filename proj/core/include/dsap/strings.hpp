#pragma once

// Index vectors, string operators, string-averaging stages and the dynamic
// string-averaging projection (DSAP) iteration.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dsap/error.hpp"
#include "dsap/geometry.hpp"
#include "dsap/trace.hpp"

namespace dsap {

class Objective;

/// t = (t_1, ..., t_q), entries are 1-based set indices.
class IndexVector {
 public:
  IndexVector() = default;
  IndexVector(std::initializer_list<std::size_t> indices) : indices_(indices) {}
  explicit IndexVector(std::vector<std::size_t> indices) : indices_(std::move(indices)) {}

  std::size_t length() const noexcept { return indices_.size(); }
  const std::vector<std::size_t>& indices() const noexcept { return indices_; }

  friend bool operator==(const IndexVector&, const IndexVector&) = default;
  friend auto operator<=>(const IndexVector&, const IndexVector&) = default;

 private:
  std::vector<std::size_t> indices_;
};

/// A pair (Omega, w): strings[i] carries weight weights[i].
struct PlanStage {
  std::vector<IndexVector> strings;
  std::vector<double> weights;

  friend bool operator==(const PlanStage&, const PlanStage&) = default;
};

/// Delta in (0, 1/m) and qbar >= m.
struct PlanConstraints {
  double delta = 0.0;
  std::size_t qbar = 1;

  /// Throws PlanError if the constraints are invalid for family size m.
  void validate(std::size_t m) const;
};

inline constexpr double kWeightSumTol = 1e-12;

class PlanError : public Error {
 public:
  PlanError(const std::string& what, std::vector<std::string> reasons);
  const std::vector<std::string>& reasons() const noexcept { return reasons_; }

 private:
  std::vector<std::string> reasons_;
};

struct Admissibility {
  bool admissible = true;
  std::vector<std::string> reasons;

  explicit operator bool() const noexcept { return admissible; }
};

/// Checks membership of the stage in M*(Delta, qbar); failures are reported
/// clause by clause rather than thrown.
Admissibility is_admissible(const PlanStage& stage, const PlanConstraints& constraints, std::size_t m);

/// P[t](x) = P_{t_q} ... P_{t_1} x, projecting onto C_{t_1} first.
Vector apply_string(const IndexVector& t, const SetFamily& family, const Vector& x);

/// P_{Omega,w}(x) = sum_t w(t) P[t](x). Throws PlanError unless the stage is
/// fit with positive weights summing to one.
Vector apply_stage(const PlanStage& stage, const SetFamily& family, const Vector& x);

/// Parameters for the seeded random stage generator.
struct RandomStageParams {
  /// Upper bound on |Omega|; clamped to m.
  std::size_t max_strings = 3;
  /// Probability of appending one more random index to a string while its
  /// length is below qbar.
  double extension_probability = 0.25;
};

enum class PlanMode { cyclic, repeated, seeded_random };

std::string to_string(PlanMode mode);

/// Deterministic stream of admissible stages (Omega_k, w_k).
class StringPlan {
 public:
  static StringPlan cyclic(std::vector<PlanStage> stages, PlanConstraints constraints, std::size_t m);
  static StringPlan repeated(PlanStage stage, PlanConstraints constraints, std::size_t m);
  static StringPlan seeded_random(std::uint64_t seed, std::size_t m, PlanConstraints constraints,
                                  RandomStageParams params = {});

  /// Stage used at outer iteration k. Pure in k.
  PlanStage stage_at(std::size_t k) const;

  PlanMode mode() const noexcept { return mode_; }
  std::size_t family_size() const noexcept { return m_; }
  const PlanConstraints& constraints() const noexcept { return constraints_; }
  const std::vector<PlanStage>& stages() const noexcept { return stages_; }
  std::optional<std::uint64_t> seed() const noexcept { return seed_; }
  const RandomStageParams& random_params() const noexcept { return params_; }
  PlanInfo info() const;

  /// Returns a copy with a different seed (seeded_random only).
  StringPlan with_seed(std::uint64_t seed) const;

 private:
  StringPlan(PlanMode mode, std::vector<PlanStage> stages, PlanConstraints constraints, std::size_t m,
             std::optional<std::uint64_t> seed, RandomStageParams params);

  PlanMode mode_;
  std::vector<PlanStage> stages_;
  PlanConstraints constraints_;
  std::size_t m_;
  std::optional<std::uint64_t> seed_;
  RandomStageParams params_;
};

/// Unperturbed DSAP: x^{k+1} = P_{Omega_k,w_k}(x^k). Stops when
/// max_violation(x^k) <= stop.feas_tol or k reaches stop.max_outer.
RunTrace dsap_run(const SetFamily& family, const StringPlan& plan, const Vector& x0, const StopRule& stop);

/// Same iteration, additionally recording phi(x^k).
RunTrace dsap_run(const SetFamily& family, const StringPlan& plan, const Vector& x0, const StopRule& stop,
                  const Objective& objective);

}  // namespace dsap
