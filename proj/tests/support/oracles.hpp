#pragma once

// Test-only oracles and generators. Nothing here calls the library's
// projection code: membership is evaluated from the raw set data and
// nearest points are found by brute-force search.

#include <cmath>
#include <cstdint>
#include <functional>
#include <random>
#include <vector>

#include "dsap/geometry.hpp"
#include "dsap/schedule.hpp"
#include "dsap/strings.hpp"

namespace dsap::testing {

inline std::function<bool(double, double)> membership_2d(const ConvexSet& set) {
  const SetShape& s = set.shape();
  if (const auto* h = std::get_if<Halfspace>(&s)) {
    return [a = h->a, b = h->b](double x, double y) { return a[0] * x + a[1] * y <= b; };
  }
  if (const auto* b = std::get_if<Box>(&s)) {
    return [lo = b->lo, hi = b->hi](double x, double y) {
      return x >= lo[0] && x <= hi[0] && y >= lo[1] && y <= hi[1];
    };
  }
  if (const auto* b = std::get_if<Ball>(&s)) {
    return [c = b->center, r = b->radius](double x, double y) {
      return std::hypot(x - c[0], y - c[1]) <= r;
    };
  }
  return {};
}

/// Nearest member of a full-dimensional 2-D set, found without any
/// projection formula: for each direction u from x, the entry distance
/// t(u) = min{t >= 0 : x + t u in S} is located by a coarse march and
/// bisection on membership, and the direction minimizing t(u) is refined on
/// shrinking angular grids. `window` must exceed the distance from x to S.
inline Vector brute_force_nearest_2d(const std::function<bool(double, double)>& inside, const Vector& x,
                                     double window) {
  const double pi = std::acos(-1.0);
  auto entry = [&](double phi) -> double {
    const double ux = std::cos(phi);
    const double uy = std::sin(phi);
    const int steps = 800;
    double prev = 0.0;
    for (int i = 1; i <= steps; ++i) {
      const double t = window * i / steps;
      if (inside(x[0] + t * ux, x[1] + t * uy)) {
        double lo = prev;
        double hi = t;
        for (int it = 0; it < 80; ++it) {
          const double mid = 0.5 * (lo + hi);
          (inside(x[0] + mid * ux, x[1] + mid * uy) ? hi : lo) = mid;
        }
        return hi;
      }
      prev = t;
    }
    return INFINITY;
  };
  double best_phi = 0.0;
  double best_t = INFINITY;
  const int grid = 720;
  for (int i = 0; i < grid; ++i) {
    const double phi = 2.0 * pi * i / grid;
    const double t = entry(phi);
    if (t < best_t) {
      best_t = t;
      best_phi = phi;
    }
  }
  double half = 2.0 * pi / grid;
  for (int round = 0; round < 40; ++round) {
    const double center = best_phi;
    for (int i = -10; i <= 10; ++i) {
      const double phi = center + half * i / 10.0;
      const double t = entry(phi);
      if (t < best_t) {
        best_t = t;
        best_phi = phi;
      }
    }
    half *= 0.5;
  }
  return Vector{x[0] + best_t * std::cos(best_phi), x[1] + best_t * std::sin(best_phi)};
}

inline Vector random_vector(std::mt19937_64& rng, std::size_t dim, double scale = 5.0) {
  std::uniform_real_distribution<double> u(-scale, scale);
  Vector v(dim);
  for (double& c : v) c = u(rng);
  return v;
}

/// Random set of a random built-in kind.
inline ConvexSet random_set(std::mt19937_64& rng, std::size_t dim) {
  std::uniform_int_distribution<int> kind(0, 4);
  std::uniform_real_distribution<double> u(0.1, 3.0);
  switch (kind(rng)) {
    case 0:
      return ConvexSet::halfspace(random_vector(rng, dim, 2.0) + Vector(dim, 0.01), u(rng));
    case 1:
      return ConvexSet::hyperplane(random_vector(rng, dim, 2.0) + Vector(dim, 0.01), u(rng));
    case 2: {
      Vector lo = random_vector(rng, dim, 3.0);
      Vector hi = lo;
      for (double& c : hi) c += u(rng);
      return ConvexSet::box(lo, hi);
    }
    case 3:
      return ConvexSet::ball(random_vector(rng, dim, 3.0), u(rng));
    default:
      return ConvexSet::singleton(random_vector(rng, dim, 3.0));
  }
}

/// Random family whose members all contain the origin.
inline SetFamily random_family_through_origin(std::mt19937_64& rng, std::size_t dim, std::size_t m) {
  std::uniform_int_distribution<int> kind(0, 3);
  std::uniform_real_distribution<double> u(0.1, 3.0);
  std::vector<ConvexSet> sets;
  for (std::size_t i = 0; i < m; ++i) {
    switch (kind(rng)) {
      case 0:
        sets.push_back(ConvexSet::halfspace(random_vector(rng, dim, 2.0) + Vector(dim, 0.01), u(rng)));
        break;
      case 1: {
        Vector lo(dim);
        Vector hi(dim);
        for (std::size_t j = 0; j < dim; ++j) {
          lo[j] = -u(rng);
          hi[j] = u(rng);
        }
        sets.push_back(ConvexSet::box(lo, hi));
        break;
      }
      case 2: {
        Vector c = random_vector(rng, dim, 1.0);
        sets.push_back(ConvexSet::ball(c, norm(c) + u(rng)));
        break;
      }
      default: {
        Vector a = random_vector(rng, dim, 2.0) + Vector(dim, 0.01);
        sets.push_back(ConvexSet::hyperplane(a, 0.0));
        break;
      }
    }
  }
  return SetFamily(std::move(sets), Vector(dim, 0.0));
}

/// Partial sums by direct accumulation of beta_{l,n}.
inline double brute_head(const PerturbationSchedule& s, std::size_t k) {
  double acc = 0.0;
  for (std::size_t l = 0; l < k; ++l) {
    for (std::size_t n = 0; n < s.inner_length(l); ++n) acc += s.beta(l, n);
  }
  return acc;
}

}  // namespace dsap::testing
