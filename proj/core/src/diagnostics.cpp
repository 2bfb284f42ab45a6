#include "dsap/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>
#include <type_traits>
#include <variant>

#include "dsap/error.hpp"
#include "dsap/format.hpp"

namespace dsap {
namespace {

std::string canonical_text(const NegativeConditionInput& in) {
  auto vec = [](const Vector& v) {
    std::string s = "[";
    for (std::size_t i = 0; i < v.dim(); ++i) s += (i ? "," : "") + format_shortest(v[i]);
    return s + "]";
  };
  return "c_hat=" + vec(in.c_hat) + ";r=" + format_shortest(in.r) + ";dist_lb=" + format_shortest(in.dist_to_D_lb) +
         ";total=" + format_shortest(in.schedule_total) + ";head0=" + format_shortest(in.head0) + ";y0=" + vec(in.y0);
}

std::string fnv1a_hex(const std::string& text) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

bool same_value(double a, double b) { return std::abs(a - b) <= 1e-15 * std::max({1.0, std::abs(a), std::abs(b)}); }

}  // namespace

std::string to_string(Relation rel) {
  switch (rel) {
    case Relation::le:
      return "<=";
    case Relation::lt:
      return "<";
    case Relation::ge:
      return ">=";
    case Relation::gt:
      return ">";
  }
  return "?";
}

InequalityCheck evaluate_inequality(std::string name, std::string formula, double lhs, Relation relation, double rhs) {
  bool ok = false;
  switch (relation) {
    case Relation::le:
      ok = lhs <= rhs;
      break;
    case Relation::lt:
      ok = lhs < rhs;
      break;
    case Relation::ge:
      ok = lhs >= rhs;
      break;
    case Relation::gt:
      ok = lhs > rhs;
      break;
  }
  return InequalityCheck{std::move(name), std::move(formula), lhs, relation, rhs, ok};
}

void NegativeConditionInput::validate() const {
  if (c_hat.empty()) throw InvalidArgument("negative condition: c_hat is empty");
  require_same_dim(c_hat, y0, "negative condition c_hat vs y0");
  require_finite(c_hat, "c_hat");
  require_finite(y0, "y0");
  if (!(r >= 1.0) || !std::isfinite(r)) throw InvalidArgument("negative condition: r must be a finite real >= 1");
  if (!(dist_to_D_lb >= 0.0)) throw InvalidArgument("negative condition: distance lower bound must be >= 0");
  if (!(schedule_total > 0.0) || !std::isfinite(schedule_total)) {
    throw InvalidArgument("negative condition: schedule total must be positive and finite");
  }
  if (!(head0 > 0.0) || head0 > schedule_total * (1.0 + 1e-15)) {
    throw InvalidArgument("negative condition: head0 must lie in (0, total]");
  }
}

void NegativeConditionInput::validate(const SetFamily& family) const {
  validate();
  if (c_hat.dim() != family.dim()) throw DimensionError("negative condition: c_hat has wrong dimension");
  const double v = max_violation(family, c_hat);
  if (v > kFeasibleTol) {
    throw InvalidArgument("negative condition: c_hat is not in C (max violation " + format_shortest(v) + ")");
  }
}

NegativeConditionInput make_negative_condition_input(Vector c_hat, double r, double dist_to_D_lb,
                                                     const PerturbationSchedule& schedule, Vector y0) {
  NegativeConditionInput in{std::move(c_hat), r, dist_to_D_lb, schedule.total(), schedule.head(1), std::move(y0)};
  in.validate();
  return in;
}

InequalityCheck lemma_precondition(const NegativeConditionInput& input) {
  input.validate();
  return evaluate_inequality("precondition", "||y0 - c_hat|| <= (r - 1) * sum_n beta_{0,n}",
                             distance(input.y0, input.c_hat), Relation::le, (input.r - 1.0) * input.head0);
}

ClaimReport verify_claim_i(const RunTrace& trace, const NegativeConditionInput& input) {
  input.validate();
  if (!trace.schedule) throw InvalidArgument("verify_claim_i: trace carries no perturbation schedule");
  const PerturbationSchedule& sched = *trace.schedule;
  if (!same_value(sched.total(), input.schedule_total) || !same_value(sched.head(1), input.head0)) {
    throw InvalidArgument("verify_claim_i: schedule mismatch between trace (total " + format_shortest(sched.total()) +
                          ") and input (total " + format_shortest(input.schedule_total) + ")");
  }
  if (!trace.outer.empty() && trace.outer.front().y.dim() != input.c_hat.dim()) {
    throw DimensionError("verify_claim_i: trace dimension differs from c_hat");
  }
  ClaimReport report;
  for (const OuterRecord& rec : trace.outer) {
    if (rec.k == 0) continue;
    ClaimRow row{rec.k, distance(rec.y, input.c_hat), input.r * sched.head(rec.k), false};
    row.holds = row.lhs <= row.rhs + kClaimRoundoff * std::max(1.0, row.rhs);
    if (!row.holds && !report.first_violation) report.first_violation = rec.k;
    report.rows.push_back(row);
  }
  return report;
}

std::string to_string(Verdict verdict) {
  return verdict == Verdict::negative_condition_holds ? "negative_condition_holds" : "inconclusive";
}

Certificate negative_certificate(const NegativeConditionInput& input) {
  Certificate cert;
  cert.kind = "negative_condition";
  cert.input_hash = fnv1a_hex(canonical_text(input));
  cert.checks.push_back(lemma_precondition(input));
  cert.checks.push_back(evaluate_inequality("separation", "d(c_hat, D) > r * sum_k sum_n beta_{k,n}",
                                            input.dist_to_D_lb, Relation::gt, input.r * input.schedule_total));
  const bool all = std::all_of(cert.checks.begin(), cert.checks.end(), [](const auto& c) { return c.satisfied; });
  cert.verdict = all ? Verdict::negative_condition_holds : Verdict::inconclusive;
  if (all) cert.notes.push_back("the limit point of every superiorized run with these data lies outside D");
  return cert;
}

std::string to_string(InitCheckStatus status) {
  switch (status) {
    case InitCheckStatus::satisfied:
      return "satisfied";
    case InitCheckStatus::violated:
      return "violated";
    case InitCheckStatus::not_applicable:
      return "not_applicable";
  }
  return "?";
}

InitCheckResult necessary_init_check(const NegativeConditionInput& input) {
  input.validate();
  InitCheckResult out;
  out.applicability = evaluate_inequality("applicability", "d(c_hat, D) > sum_k sum_n beta_{k,n}", input.dist_to_D_lb,
                                          Relation::gt, input.schedule_total);
  if (!out.applicability.satisfied) {
    out.status = InitCheckStatus::not_applicable;
    return out;
  }
  const double threshold = (input.dist_to_D_lb / input.schedule_total - 1.0) * input.head0;
  out.condition = evaluate_inequality("necessary_init",
                                      "||y0 - c_hat|| >= (d(c_hat, D) / sum beta - 1) * sum_n beta_{0,n}",
                                      distance(input.y0, input.c_hat), Relation::ge, threshold);
  out.status = out.condition->satisfied ? InitCheckStatus::satisfied : InitCheckStatus::violated;
  return out;
}

std::optional<double> init_distance_hint(const NegativeConditionInput& input) {
  input.validate();
  if (!(input.dist_to_D_lb > input.schedule_total)) return std::nullopt;
  return (input.dist_to_D_lb / input.schedule_total - 1.0) * input.head0;
}

Certificate levelset_verdict(const SetFamily& family, const Vector& x_star, const RunTrace* trace,
                             const NegativeConditionInput& input, const Objective& objective) {
  input.validate(family);
  if (x_star.dim() != family.dim()) throw DimensionError("levelset_verdict: x_star has wrong dimension");
  const double viol = max_violation(family, x_star);
  if (viol > kFeasibleTol) {
    throw InvalidArgument("levelset_verdict: x_star is not in C (max violation " + format_shortest(viol) + ")");
  }

  Certificate cert;
  cert.kind = "levelset";
  cert.input_hash = fnv1a_hex(canonical_text(input) + ";x_star=" + format_shortest(objective.value(x_star)));
  cert.checks.push_back(evaluate_inequality("applicability", "d(c_hat, D) > sum_k sum_n beta_{k,n}",
                                            input.dist_to_D_lb, Relation::gt, input.schedule_total));
  const double threshold = (input.dist_to_D_lb / input.schedule_total - 1.0) * input.head0;
  cert.checks.push_back(evaluate_inequality("levelset_init",
                                            "||y0 - c_hat|| < (d(c_hat, D) / sum beta - 1) * sum_n beta_{0,n}",
                                            distance(input.y0, input.c_hat), Relation::lt, threshold));
  const bool all = cert.checks[0].satisfied && cert.checks[1].satisfied;
  cert.verdict = all ? Verdict::negative_condition_holds : Verdict::inconclusive;
  if (all) {
    cert.notes.push_back("phi(y*) > phi(x_star) for the limit y* of every superiorized run with these data");
    if (trace && !trace->outer.empty()) {
      CrossCheck cc;
      cc.phi_y_final = objective.value(trace->y_final());
      cc.phi_x_star = objective.value(x_star);
      cc.consistent = cc.phi_y_final > cc.phi_x_star;
      if (!cc.consistent) cert.notes.push_back("BUG: certified run ended inside D");
      cert.cross_check = cc;
    }
  }
  return cert;
}

double levelset_distance_lower_bound(const SetFamily& family, const Objective& objective, const Vector& x_star,
                                     const Vector& c_hat) {
  require_same_dim(x_star, c_hat, "levelset distance");
  if (x_star.dim() != family.dim()) throw DimensionError("levelset distance: wrong dimension");
  if (max_violation(family, x_star) > kFeasibleTol) throw InvalidArgument("levelset distance: x_star is not in C");
  if (max_violation(family, c_hat) > kFeasibleTol) throw InvalidArgument("levelset distance: c_hat is not in C");

  const double level = objective.value(x_star);
  if (objective.value(c_hat) <= level) return 0.0;

  if (x_star.dim() == 1) {
    // The sublevel set within C is an interval containing x_star, so its
    // nearest point to c_hat lies on the segment [x_star, c_hat] (inside C).
    auto at = [&](double s) { return Vector{x_star[0] + s * (c_hat[0] - x_star[0])}; };
    double lo = 0.0;
    double hi = 1.0;
    for (int it = 0; it < 2000; ++it) {
      const double mid = lo + 0.5 * (hi - lo);
      if (mid <= lo || mid >= hi) break;
      if (objective.value(at(mid)) <= level) {
        lo = mid;
      } else {
        hi = mid;
      }
    }
    return std::abs(c_hat[0] - at(hi)[0]);
  }

  return std::visit(
      [&](const auto& kind) -> double {
        using T = std::decay_t<decltype(kind)>;
        if constexpr (std::is_same_v<T, Norm2Sq>) {
          return std::max(0.0, norm(c_hat) - std::sqrt(level));
        } else if constexpr (std::is_same_v<T, QuadraticDiag>) {
          double q_min = 0.0;
          double dsq = 0.0;
          for (std::size_t i = 0; i < c_hat.dim(); ++i) {
            if (kind.q[i] > 0.0) {
              q_min = q_min == 0.0 ? kind.q[i] : std::min(q_min, kind.q[i]);
              const double d = c_hat[i] - kind.center[i];
              dsq += d * d;
            }
          }
          return std::max(0.0, std::sqrt(dsq) - std::sqrt(level / q_min));
        } else if constexpr (std::is_same_v<T, Linear>) {
          return std::max(0.0, dot(kind.g, c_hat) - level) / norm(kind.g);
        } else if constexpr (std::is_same_v<T, Norm1>) {
          Vector sign(c_hat.dim());
          double l1 = 0.0;
          for (std::size_t i = 0; i < c_hat.dim(); ++i) {
            sign[i] = c_hat[i] > 0.0 ? 1.0 : (c_hat[i] < 0.0 ? -1.0 : 0.0);
            l1 += std::abs(c_hat[i]);
          }
          return std::max({0.0, norm(c_hat) - level, (l1 - level) / norm(sign)});
        } else {
          throw InvalidArgument("levelset distance: no built-in bound for user objectives in dimension > 1; "
                                "supply dist_lb");
        }
      },
      objective.kind());
}

FejerReport fejer_analyze(const SetFamily& family, const RunTrace& trace, const Vector& x_ref, double c0,
                          const std::optional<PerturbationSchedule>& schedule, double slack) {
  if (!(c0 > 0.0 && c0 < 1.0)) throw InvalidArgument("fejer_analyze: c0 must lie in (0, 1)");
  if (x_ref.dim() != family.dim()) throw DimensionError("fejer_analyze: reference point has wrong dimension");
  if (max_violation(family, x_ref) > kFeasibleTol) throw InvalidArgument("fejer_analyze: reference point is not in C");
  if (trace.outer.empty()) throw InvalidArgument("fejer_analyze: empty trace");

  FejerReport report;
  report.reference = x_ref;
  report.c0 = c0;
  report.rows.reserve(trace.outer.size());
  for (const OuterRecord& rec : trace.outer) report.rows.push_back(FejerRow{rec.k, squared_distance(rec.y, x_ref), std::nullopt, 0.0, true});

  std::optional<std::size_t> last_failure;
  for (std::size_t i = 0; i + 1 < report.rows.size(); ++i) {
    FejerRow& row = report.rows[i];
    row.decrement = row.dist_sq - report.rows[i + 1].dist_sq;
    double inner = 0.0;
    if (schedule) {
      for (std::size_t n = 1; n < schedule->inner_length(row.k); ++n) inner += schedule->beta(row.k, n);
    }
    row.required = c0 * inner;
    row.ok = *row.decrement >= row.required - slack;
    if (!row.ok) last_failure = i;
  }
  if (!last_failure) {
    report.k0 = report.rows.front().k;
  } else if (*last_failure + 2 < report.rows.size()) {
    report.k0 = report.rows[*last_failure + 1].k;
  }
  return report;
}

FejerReport fejer_analyze(const SetFamily& family, const RunTrace& trace, const Vector& x_ref, double c0) {
  return fejer_analyze(family, trace, x_ref, c0, trace.schedule);
}

LipschitzResult lipschitz_check(const Objective& objective, const LipschitzWitness& witness, std::size_t n_samples,
                                std::uint64_t seed) {
  if (!(witness.r0 > 0.0 && witness.r0 <= 1.0)) throw InvalidArgument("lipschitz_check: r0 must lie in (0, 1]");
  if (!(witness.l_bar >= 1.0)) throw InvalidArgument("lipschitz_check: L_bar must be >= 1");
  if (witness.pairs.empty() && (witness.centers.empty() || n_samples == 0)) {
    throw InvalidArgument("lipschitz_check: empty sample set");
  }

  LipschitzResult out;
  const double limit = witness.l_bar * (1.0 + 1e-9);
  auto check = [&](const Vector& x, const Vector& y) {
    const double d = distance(x, y);
    if (d == 0.0) return;
    const double ratio = std::abs(objective.value(x) - objective.value(y)) / d;
    ++out.checked;
    if (ratio > out.worst_ratio) {
      out.worst_ratio = ratio;
      out.worst_pair = std::make_pair(x, y);
    }
    if (ratio > limit) out.pass = false;
  };

  for (const auto& [x, y] : witness.pairs) check(x, y);

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (const Vector& x : witness.centers) {
    for (std::size_t s = 0; s < n_samples; ++s) {
      Vector dir(x.dim());
      for (double& c : dir) c = gauss(rng);
      const double len = norm(dir);
      if (len == 0.0) continue;
      // radius in [0, r0): strictly inside the open ball
      const double radius = witness.r0 * unit(rng);
      Vector y = x;
      axpy(radius / len, dir, y);
      if (distance(x, y) >= witness.r0) continue;
      check(x, y);
    }
  }
  if (out.checked == 0) throw InvalidArgument("lipschitz_check: no usable sample pairs");
  return out;
}

}  // namespace dsap
