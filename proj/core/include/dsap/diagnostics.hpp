#pragma once

// Checks and certificates for the "negative condition": inequalities under
// which a superiorized DSAP run provably cannot converge into a target set
// D (for instance a level set of the objective, or the set of constrained
// minimizers), plus Fejer-monotonicity and local Lipschitz trace analysis.
//
// Inequalities are evaluated exactly as stated, strict where strict:
//   precondition      ||y0 - c|| <= (r - 1) * head0
//   separation        d(c, D) > r * total
//   applicability     d(c, D) > total
//   necessary init    ||y0 - c|| >= (d(c, D) / total - 1) * head0
//   level-set init    ||y0 - c|| <  (d(c, D) / total - 1) * head0

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dsap/geometry.hpp"
#include "dsap/objective.hpp"
#include "dsap/schedule.hpp"
#include "dsap/trace.hpp"

namespace dsap {

enum class Relation { le, lt, ge, gt };

std::string to_string(Relation rel);

struct InequalityCheck {
  std::string name;
  std::string formula;
  double lhs = 0.0;
  Relation relation = Relation::le;
  double rhs = 0.0;
  bool satisfied = false;
};

/// Evaluates `lhs relation rhs` with no tolerance.
InequalityCheck evaluate_inequality(std::string name, std::string formula, double lhs, Relation relation, double rhs);

/// Data of the negative condition. `dist_to_D_lb` is a certified
/// lower bound on d(c_hat, D); a lower bound keeps the strict separation
/// inequalities sound.
struct NegativeConditionInput {
  Vector c_hat;
  double r = 1.0;
  double dist_to_D_lb = 0.0;
  double schedule_total = 0.0;
  /// sum_{n < N_0} beta_{0,n}
  double head0 = 0.0;
  Vector y0;

  /// Throws InvalidArgument on r < 1, negative distance bound, nonpositive
  /// total, or mismatched dimensions.
  void validate() const;
  /// validate() plus c_hat in C (max_violation <= 1e-9).
  void validate(const SetFamily& family) const;
};

/// Fills schedule_total and head0 from the schedule.
NegativeConditionInput make_negative_condition_input(Vector c_hat, double r, double dist_to_D_lb,
                                                     const PerturbationSchedule& schedule, Vector y0);

/// Membership tolerance used when a point is required to lie in C.
inline constexpr double kFeasibleTol = 1e-9;

InequalityCheck lemma_precondition(const NegativeConditionInput& input);

struct ClaimRow {
  std::size_t k = 0;
  double lhs = 0.0;  // ||y^k - c_hat||
  double rhs = 0.0;  // r * head(k)
  bool holds = false;
};

struct ClaimReport {
  std::vector<ClaimRow> rows;
  std::optional<std::size_t> first_violation;

  bool all_hold() const noexcept { return !first_violation.has_value(); }
};

/// Relative round-off allowance when checking the claim on computed traces.
inline constexpr double kClaimRoundoff = 1e-12;

/// Checks ||y^k - c_hat|| <= r * sum_{l<k} sum_n beta_{l,n} for every k >= 1
/// of a superiorized trace (up to kClaimRoundoff * max(1, rhs)). Throws
/// InvalidArgument when the trace's schedule disagrees with the input.
ClaimReport verify_claim_i(const RunTrace& trace, const NegativeConditionInput& input);

enum class Verdict { negative_condition_holds, inconclusive };

std::string to_string(Verdict verdict);

struct CrossCheck {
  double phi_y_final = 0.0;
  double phi_x_star = 0.0;
  /// False flags an implementation bug: a certified run reached D.
  bool consistent = true;
};

struct Certificate {
  std::string kind;
  Verdict verdict = Verdict::inconclusive;
  std::vector<InequalityCheck> checks;
  /// FNV-1a 64 of the canonical input text, hex.
  std::string input_hash;
  std::vector<std::string> notes;
  std::optional<CrossCheck> cross_check;
};

/// Verdict holds iff the precondition holds and dist_to_D_lb > r * total.
Certificate negative_certificate(const NegativeConditionInput& input);

enum class InitCheckStatus { satisfied, violated, not_applicable };

std::string to_string(InitCheckStatus status);

struct InitCheckResult {
  InitCheckStatus status = InitCheckStatus::not_applicable;
  InequalityCheck applicability;
  std::optional<InequalityCheck> condition;
};

/// Necessary condition on y0 for convergence into D, applicable when
/// d(c_hat, D) > total. A violation rules convergence into D out.
InitCheckResult necessary_init_check(const NegativeConditionInput& input);

/// Smallest ||y0 - c_hat|| at which the level-set certificate stops applying,
/// i.e. (d / total - 1) * head0, or nullopt when d <= total.
std::optional<double> init_distance_hint(const NegativeConditionInput& input);

/// Level-set certificate for D = {c in C : phi(c) <= phi(x_star)}.
/// When the verdict holds and a trace is supplied, cross-checks
/// phi(y_final) > phi(x_star). Throws InvalidArgument if x_star is not in C.
Certificate levelset_verdict(const SetFamily& family, const Vector& x_star, const RunTrace* trace,
                             const NegativeConditionInput& input, const Objective& objective);

/// Certified lower bound on d(c_hat, {c in C : phi(c) <= phi(x_star)}).
/// Exact (bisection to full precision) in dimension 1; in higher dimension
/// the distance to an enclosing set of the sublevel set (ball, ellipsoid
/// bound or halfspace) for built-in objectives. Throws for user objectives
/// in dimension > 1.
double levelset_distance_lower_bound(const SetFamily& family, const Objective& objective, const Vector& x_star,
                                     const Vector& c_hat);

struct FejerRow {
  std::size_t k = 0;
  double dist_sq = 0.0;
  /// dist_sq(k) - dist_sq(k + 1); absent on the last row.
  std::optional<double> decrement;
  /// c0 * sum_{n=1}^{N_k - 1} beta_{k,n}
  double required = 0.0;
  bool ok = true;
};

struct FejerReport {
  Vector reference;
  double c0 = 0.0;
  std::optional<std::size_t> k0;
  std::vector<FejerRow> rows;
};

inline constexpr double kFejerSlack = 1e-12;

/// Squared-distance table of the trace against x_ref, and the smallest k0
/// from which every decrement meets its requirement (within `slack`).
/// Uses `schedule` for the requirement; none means zero requirement.
FejerReport fejer_analyze(const SetFamily& family, const RunTrace& trace, const Vector& x_ref, double c0,
                          const std::optional<PerturbationSchedule>& schedule, double slack = kFejerSlack);

/// As above with the schedule recorded in the trace.
FejerReport fejer_analyze(const SetFamily& family, const RunTrace& trace, const Vector& x_ref, double c0);

struct LipschitzWitness {
  double r0 = 1.0;
  double l_bar = 1.0;
  /// Points of C_*; random partners y with ||x - y|| < r0 are drawn around each.
  std::vector<Vector> centers;
  /// Pairs checked exactly as supplied.
  std::vector<std::pair<Vector, Vector>> pairs;
};

struct LipschitzResult {
  bool pass = true;
  double worst_ratio = 0.0;
  std::optional<std::pair<Vector, Vector>> worst_pair;
  std::size_t checked = 0;
};

/// Fails if any |phi(x) - phi(y)| / ||x - y|| exceeds l_bar * (1 + 1e-9).
/// n_samples random partners are drawn per center.
LipschitzResult lipschitz_check(const Objective& objective, const LipschitzWitness& witness, std::size_t n_samples,
                                std::uint64_t seed);

}  // namespace dsap
