#pragma once

// Convex, continuous objectives with a deterministic subgradient oracle.

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <variant>

#include "dsap/vector.hpp"

namespace dsap {

/// One element s of the subdifferential at a point. When the oracle knows
/// that 0 is in the subdifferential it sets `zero_in_subdifferential`; `s`
/// is then ignored by the direction rule.
struct SubgradientSample {
  Vector s;
  bool zero_in_subdifferential = false;
};

/// sum_i Q_i (x_i - c_i)^2 with Q_i >= 0
struct QuadraticDiag {
  Vector q;
  Vector center;
};

/// <g, x>
struct Linear {
  Vector g;
};

/// sum_i |x_i|; subgradient picks sign(x_i), and 0 on zero coordinates.
struct Norm1 {};

/// ||x||^2
struct Norm2Sq {};

struct UserObjective {
  std::string name;
  std::function<double(const Vector&)> value;
  std::function<SubgradientSample(const Vector&)> subgradient;
};

using ObjectiveKind = std::variant<QuadraticDiag, Linear, Norm1, Norm2Sq, UserObjective>;

class Objective {
 public:
  static Objective quadratic_diag(Vector q, Vector center);
  static Objective linear(Vector g);
  static Objective norm1();
  static Objective norm2sq();
  /// The oracle must be reentrant and must report the zero case explicitly.
  static Objective user(std::string name, std::function<double(const Vector&)> value,
                        std::function<SubgradientSample(const Vector&)> subgradient);

  double value(const Vector& x) const;
  SubgradientSample subgradient(const Vector& x) const;

  /// Fixed dimension, or nullopt for dimension-free kinds.
  std::optional<std::size_t> dim() const;
  std::string_view kind_name() const noexcept;
  /// Human-readable description of how s is selected at kinks.
  std::string subgradient_rule() const;
  const ObjectiveKind& kind() const noexcept { return kind_; }

 private:
  explicit Objective(ObjectiveKind kind) : kind_(std::move(kind)) {}
  ObjectiveKind kind_;
};

}  // namespace dsap
