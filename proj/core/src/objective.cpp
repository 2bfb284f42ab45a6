#include "dsap/objective.hpp"

#include <cmath>

#include "dsap/error.hpp"

namespace dsap {
namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

bool is_zero(const Vector& s) {
  for (double c : s) {
    if (c != 0.0) return false;
  }
  return true;
}

void check_dim(const std::optional<std::size_t>& expected, const Vector& x) {
  if (expected && *expected != x.dim()) {
    throw DimensionError("objective: point has dimension " + std::to_string(x.dim()) + ", objective expects " +
                         std::to_string(*expected));
  }
}

}  // namespace

Objective Objective::quadratic_diag(Vector q, Vector center) {
  if (q.empty()) throw InvalidArgument("quadratic_diag: empty Q");
  require_same_dim(q, center, "quadratic_diag Q vs c");
  require_finite(q, "quadratic_diag Q");
  require_finite(center, "quadratic_diag c");
  for (double v : q) {
    if (v < 0.0) throw InvalidArgument("quadratic_diag: Q must be nonnegative (convexity)");
  }
  return Objective(QuadraticDiag{std::move(q), std::move(center)});
}

Objective Objective::linear(Vector g) {
  if (g.empty()) throw InvalidArgument("linear: empty g");
  require_finite(g, "linear g");
  return Objective(Linear{std::move(g)});
}

Objective Objective::norm1() { return Objective(Norm1{}); }
Objective Objective::norm2sq() { return Objective(Norm2Sq{}); }

Objective Objective::user(std::string name, std::function<double(const Vector&)> value,
                          std::function<SubgradientSample(const Vector&)> subgradient) {
  if (!value || !subgradient) throw InvalidArgument("user objective: value and subgradient oracles are required");
  return Objective(UserObjective{std::move(name), std::move(value), std::move(subgradient)});
}

std::optional<std::size_t> Objective::dim() const {
  return std::visit(overloaded{
                        [](const QuadraticDiag& q) -> std::optional<std::size_t> { return q.q.dim(); },
                        [](const Linear& l) -> std::optional<std::size_t> { return l.g.dim(); },
                        [](const auto&) -> std::optional<std::size_t> { return std::nullopt; },
                    },
                    kind_);
}

double Objective::value(const Vector& x) const {
  check_dim(dim(), x);
  return std::visit(overloaded{
                        [&](const QuadraticDiag& q) {
                          double acc = 0.0;
                          for (std::size_t i = 0; i < x.dim(); ++i) {
                            const double d = x[i] - q.center[i];
                            acc += q.q[i] * d * d;
                          }
                          return acc;
                        },
                        [&](const Linear& l) { return dot(l.g, x); },
                        [&](const Norm1&) {
                          double acc = 0.0;
                          for (double c : x) acc += std::abs(c);
                          return acc;
                        },
                        [&](const Norm2Sq&) { return squared_norm(x); },
                        [&](const UserObjective& u) { return u.value(x); },
                    },
                    kind_);
}

SubgradientSample Objective::subgradient(const Vector& x) const {
  check_dim(dim(), x);
  SubgradientSample out = std::visit(overloaded{
                                         [&](const QuadraticDiag& q) {
                                           Vector s(x.dim());
                                           for (std::size_t i = 0; i < x.dim(); ++i) s[i] = 2.0 * q.q[i] * (x[i] - q.center[i]);
                                           return SubgradientSample{std::move(s)};
                                         },
                                         [&](const Linear& l) { return SubgradientSample{l.g}; },
                                         [&](const Norm1&) {
                                           // 0 is in [-1, 1] on zero coordinates, so the zero component is chosen there.
                                           Vector s(x.dim());
                                           for (std::size_t i = 0; i < x.dim(); ++i) s[i] = x[i] > 0.0 ? 1.0 : (x[i] < 0.0 ? -1.0 : 0.0);
                                           return SubgradientSample{std::move(s)};
                                         },
                                         [&](const Norm2Sq&) { return SubgradientSample{2.0 * x}; },
                                         [&](const UserObjective& u) { return u.subgradient(x); },
                                     },
                                     kind_);
  if (!std::holds_alternative<UserObjective>(kind_)) out.zero_in_subdifferential = is_zero(out.s);
  return out;
}

std::string_view Objective::kind_name() const noexcept {
  return std::visit(overloaded{
                        [](const QuadraticDiag&) { return std::string_view("quadratic_diag"); },
                        [](const Linear&) { return std::string_view("linear"); },
                        [](const Norm1&) { return std::string_view("norm1"); },
                        [](const Norm2Sq&) { return std::string_view("norm2sq"); },
                        [](const UserObjective&) { return std::string_view("user"); },
                    },
                    kind_);
}

std::string Objective::subgradient_rule() const {
  if (std::holds_alternative<Norm1>(kind_)) return "componentwise: sign(x_i), zero on zero coordinates";
  if (const auto* u = std::get_if<UserObjective>(&kind_)) return "user oracle '" + u->name + "'";
  return "gradient (differentiable)";
}

}  // namespace dsap
