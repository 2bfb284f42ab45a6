#include "dsap/vector.hpp"

#include <cmath>
#include <string>

#include "dsap/error.hpp"

namespace dsap {

Vector& Vector::operator+=(const Vector& other) {
  require_same_dim(*this, other, "vector addition");
  for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] += other.coords_[i];
  return *this;
}

Vector& Vector::operator-=(const Vector& other) {
  require_same_dim(*this, other, "vector subtraction");
  for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] -= other.coords_[i];
  return *this;
}

Vector& Vector::operator*=(double s) {
  for (double& c : coords_) c *= s;
  return *this;
}

Vector operator+(Vector lhs, const Vector& rhs) { return lhs += rhs; }
Vector operator-(Vector lhs, const Vector& rhs) { return lhs -= rhs; }
Vector operator*(double s, Vector v) { return v *= s; }
Vector operator-(Vector v) { return v *= -1.0; }

double dot(const Vector& x, const Vector& y) {
  require_same_dim(x, y, "dot product");
  double acc = 0.0;
  for (std::size_t i = 0; i < x.dim(); ++i) acc += x[i] * y[i];
  return acc;
}

double squared_norm(const Vector& x) {
  double acc = 0.0;
  for (double c : x) acc += c * c;
  return acc;
}

double norm(const Vector& x) { return std::sqrt(squared_norm(x)); }

double squared_distance(const Vector& x, const Vector& y) {
  require_same_dim(x, y, "distance");
  double acc = 0.0;
  for (std::size_t i = 0; i < x.dim(); ++i) {
    const double d = x[i] - y[i];
    acc += d * d;
  }
  return acc;
}

double distance(const Vector& x, const Vector& y) { return std::sqrt(squared_distance(x, y)); }

void axpy(double alpha, const Vector& x, Vector& y) {
  require_same_dim(x, y, "axpy");
  for (std::size_t i = 0; i < x.dim(); ++i) y[i] += alpha * x[i];
}

bool all_finite(const Vector& x) noexcept {
  for (double c : x) {
    if (!std::isfinite(c)) return false;
  }
  return true;
}

void require_same_dim(const Vector& x, const Vector& y, std::string_view what) {
  if (x.dim() != y.dim()) {
    throw DimensionError(std::string(what) + ": dimension mismatch (" + std::to_string(x.dim()) +
                         " vs " + std::to_string(y.dim()) + ")");
  }
}

void require_finite(const Vector& x, std::string_view what) {
  if (!all_finite(x)) throw NonFiniteError(std::string(what) + ": non-finite coordinate");
}

}  // namespace dsap
