#pragma once

// Closed convex sets with exact metric projections.
//
// Every built-in kind has a closed-form projection, so the projection
// operators are exactly nonexpansive up to floating-point round-off.

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "dsap/vector.hpp"

namespace dsap {

/// {x : <a, x> <= b}
struct Halfspace {
  Vector a;
  double b = 0.0;
};

/// {x : <a, x> = b}
struct Hyperplane {
  Vector a;
  double b = 0.0;
};

/// {x : lo <= x <= hi} componentwise
struct Box {
  Vector lo;
  Vector hi;
};

/// {x : ||x - center|| <= radius}
struct Ball {
  Vector center;
  double radius = 0.0;
};

struct Singleton {
  Vector p;
};

/// Library-boundary escape hatch: a set known only through its projector.
/// The caller vouches that `projector` is the exact metric projection onto a
/// nonempty closed convex set. Not expressible in problem files.
struct CustomSet {
  std::size_t dim = 0;
  std::string name;
  std::function<Vector(const Vector&)> projector;
};

using SetShape = std::variant<Halfspace, Hyperplane, Box, Ball, Singleton, CustomSet>;

/// A nonempty closed convex set. Immutable after construction; the
/// factories validate the defining data.
class ConvexSet {
 public:
  static ConvexSet halfspace(Vector a, double b);
  static ConvexSet hyperplane(Vector a, double b);
  static ConvexSet box(Vector lo, Vector hi);
  static ConvexSet ball(Vector center, double radius);
  static ConvexSet singleton(Vector p);
  static ConvexSet custom(std::size_t dim, std::string name,
                          std::function<Vector(const Vector&)> projector);

  std::size_t dim() const noexcept { return dim_; }
  const SetShape& shape() const noexcept { return shape_; }
  std::string_view kind_name() const noexcept;

 private:
  ConvexSet(SetShape shape, std::size_t dim) : shape_(std::move(shape)), dim_(dim) {}

  SetShape shape_;
  std::size_t dim_;
};

/// Halfspace/hyperplane normals shorter than this are rejected.
inline constexpr double kMinNormalNorm = 1e-14;
/// Default membership tolerance for stopping rules.
inline constexpr double kDefaultFeasTol = 1e-9;

Vector project(const ConvexSet& set, const Vector& x);
double distance(const ConvexSet& set, const Vector& x);
bool contains(const ConvexSet& set, const Vector& x, double tol);

/// Ordered family C_1..C_m with an optional point known to lie in every member.
class SetFamily {
 public:
  explicit SetFamily(std::vector<ConvexSet> sets, std::optional<Vector> witness = std::nullopt);

  std::size_t size() const noexcept { return sets_.size(); }
  std::size_t dim() const noexcept { return sets_.front().dim(); }
  const ConvexSet& operator[](std::size_t i) const { return sets_[i]; }
  const std::vector<ConvexSet>& sets() const noexcept { return sets_; }
  const std::optional<Vector>& witness() const noexcept { return witness_; }

 private:
  std::vector<ConvexSet> sets_;
  std::optional<Vector> witness_;
};

/// Witness membership tolerance enforced by SetFamily.
inline constexpr double kWitnessTol = 1e-12;

/// max_i d(x, C_i)
double max_violation(const SetFamily& family, const Vector& x);

}  // namespace dsap
