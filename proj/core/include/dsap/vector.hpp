#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <string_view>
#include <vector>

namespace dsap {

/// Dense real coordinate vector; the element type of the ambient space.
class Vector {
 public:
  Vector() = default;
  explicit Vector(std::size_t dim, double fill = 0.0) : coords_(dim, fill) {}
  Vector(std::initializer_list<double> values) : coords_(values) {}
  explicit Vector(std::vector<double> coords) : coords_(std::move(coords)) {}

  std::size_t dim() const noexcept { return coords_.size(); }
  bool empty() const noexcept { return coords_.empty(); }

  double operator[](std::size_t i) const { return coords_[i]; }
  double& operator[](std::size_t i) { return coords_[i]; }

  std::span<const double> coords() const noexcept { return coords_; }
  const std::vector<double>& values() const noexcept { return coords_; }

  auto begin() const noexcept { return coords_.begin(); }
  auto end() const noexcept { return coords_.end(); }
  auto begin() noexcept { return coords_.begin(); }
  auto end() noexcept { return coords_.end(); }

  Vector& operator+=(const Vector& other);
  Vector& operator-=(const Vector& other);
  Vector& operator*=(double s);

  friend bool operator==(const Vector&, const Vector&) = default;

 private:
  std::vector<double> coords_;
};

Vector operator+(Vector lhs, const Vector& rhs);
Vector operator-(Vector lhs, const Vector& rhs);
Vector operator*(double s, Vector v);
Vector operator-(Vector v);

double dot(const Vector& x, const Vector& y);
double norm(const Vector& x);
double squared_norm(const Vector& x);
double distance(const Vector& x, const Vector& y);
double squared_distance(const Vector& x, const Vector& y);

/// y += alpha * x
void axpy(double alpha, const Vector& x, Vector& y);

bool all_finite(const Vector& x) noexcept;

/// Throws DimensionError naming `what` if the dimensions differ.
void require_same_dim(const Vector& x, const Vector& y, std::string_view what);
/// Throws NonFiniteError naming `what` on any NaN/Inf coordinate.
void require_finite(const Vector& x, std::string_view what);

}  // namespace dsap
