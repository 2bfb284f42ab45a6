#include "dsap/geometry.hpp"

#include <algorithm>
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

void check_normal(const Vector& a, std::string_view kind) {
  if (a.empty()) throw InvalidArgument(std::string(kind) + ": empty normal");
  require_finite(a, kind);
  if (norm(a) < kMinNormalNorm) throw InvalidArgument(std::string(kind) + ": degenerate normal (||a|| < 1e-14)");
}

void check_scalar(double v, std::string_view what) {
  if (!std::isfinite(v)) throw NonFiniteError(std::string(what) + ": non-finite value");
}

void check_input(const ConvexSet& set, const Vector& x) {
  if (x.dim() != set.dim()) {
    throw DimensionError("projection onto " + std::string(set.kind_name()) + ": point has dimension " +
                         std::to_string(x.dim()) + ", set has dimension " + std::to_string(set.dim()));
  }
  require_finite(x, "projection input");
}

}  // namespace

ConvexSet ConvexSet::halfspace(Vector a, double b) {
  check_normal(a, "halfspace");
  check_scalar(b, "halfspace offset");
  const std::size_t n = a.dim();
  return ConvexSet(Halfspace{std::move(a), b}, n);
}

ConvexSet ConvexSet::hyperplane(Vector a, double b) {
  check_normal(a, "hyperplane");
  check_scalar(b, "hyperplane offset");
  const std::size_t n = a.dim();
  return ConvexSet(Hyperplane{std::move(a), b}, n);
}

ConvexSet ConvexSet::box(Vector lo, Vector hi) {
  if (lo.empty()) throw InvalidArgument("box: empty bounds");
  require_same_dim(lo, hi, "box bounds");
  require_finite(lo, "box lower bound");
  require_finite(hi, "box upper bound");
  for (std::size_t i = 0; i < lo.dim(); ++i) {
    if (lo[i] > hi[i]) throw InvalidArgument("box: lo > hi at coordinate " + std::to_string(i));
  }
  const std::size_t n = lo.dim();
  return ConvexSet(Box{std::move(lo), std::move(hi)}, n);
}

ConvexSet ConvexSet::ball(Vector center, double radius) {
  if (center.empty()) throw InvalidArgument("ball: empty center");
  require_finite(center, "ball center");
  check_scalar(radius, "ball radius");
  if (radius < 0.0) throw InvalidArgument("ball: negative radius");
  const std::size_t n = center.dim();
  return ConvexSet(Ball{std::move(center), radius}, n);
}

ConvexSet ConvexSet::singleton(Vector p) {
  if (p.empty()) throw InvalidArgument("singleton: empty point");
  require_finite(p, "singleton point");
  const std::size_t n = p.dim();
  return ConvexSet(Singleton{std::move(p)}, n);
}

ConvexSet ConvexSet::custom(std::size_t dim, std::string name,
                            std::function<Vector(const Vector&)> projector) {
  if (dim == 0) throw InvalidArgument("custom set: zero dimension");
  if (!projector) throw InvalidArgument("custom set: missing projector");
  return ConvexSet(CustomSet{dim, std::move(name), std::move(projector)}, dim);
}

std::string_view ConvexSet::kind_name() const noexcept {
  return std::visit(overloaded{
                        [](const Halfspace&) { return std::string_view("halfspace"); },
                        [](const Hyperplane&) { return std::string_view("hyperplane"); },
                        [](const Box&) { return std::string_view("box"); },
                        [](const Ball&) { return std::string_view("ball"); },
                        [](const Singleton&) { return std::string_view("singleton"); },
                        [](const CustomSet&) { return std::string_view("custom"); },
                    },
                    shape_);
}

Vector project(const ConvexSet& set, const Vector& x) {
  check_input(set, x);
  return std::visit(
      overloaded{
          [&](const Halfspace& h) {
            const double excess = dot(h.a, x) - h.b;
            if (excess <= 0.0) return x;
            Vector y = x;
            axpy(-excess / squared_norm(h.a), h.a, y);
            return y;
          },
          [&](const Hyperplane& h) {
            const double excess = dot(h.a, x) - h.b;
            if (excess == 0.0) return x;
            Vector y = x;
            axpy(-excess / squared_norm(h.a), h.a, y);
            return y;
          },
          [&](const Box& b) {
            Vector y = x;
            for (std::size_t i = 0; i < y.dim(); ++i) y[i] = std::clamp(y[i], b.lo[i], b.hi[i]);
            return y;
          },
          [&](const Ball& b) {
            const double d = distance(x, b.center);
            if (d <= b.radius) return x;
            Vector y = b.center;
            axpy(b.radius / d, x - b.center, y);
            return y;
          },
          [&](const Singleton& s) { return s.p; },
          [&](const CustomSet& c) {
            Vector y = c.projector(x);
            if (y.dim() != c.dim) throw DimensionError("custom set '" + c.name + "': projector changed dimension");
            require_finite(y, "custom projector output");
            return y;
          },
      },
      set.shape());
}

double distance(const ConvexSet& set, const Vector& x) {
  check_input(set, x);
  return std::visit(overloaded{
                        [&](const Halfspace& h) { return std::max(0.0, dot(h.a, x) - h.b) / norm(h.a); },
                        [&](const Hyperplane& h) { return std::abs(dot(h.a, x) - h.b) / norm(h.a); },
                        [&](const Box& b) {
                          double acc = 0.0;
                          for (std::size_t i = 0; i < x.dim(); ++i) {
                            const double e = x[i] < b.lo[i] ? b.lo[i] - x[i] : (x[i] > b.hi[i] ? x[i] - b.hi[i] : 0.0);
                            acc += e * e;
                          }
                          return std::sqrt(acc);
                        },
                        [&](const Ball& b) { return std::max(0.0, distance(x, b.center) - b.radius); },
                        [&](const Singleton& s) { return distance(x, s.p); },
                        [&](const CustomSet&) { return dsap::distance(x, project(set, x)); },
                    },
                    set.shape());
}

bool contains(const ConvexSet& set, const Vector& x, double tol) {
  if (!(tol >= 0.0)) throw InvalidArgument("contains: negative tolerance");
  return distance(set, x) <= tol;
}

SetFamily::SetFamily(std::vector<ConvexSet> sets, std::optional<Vector> witness)
    : sets_(std::move(sets)), witness_(std::move(witness)) {
  if (sets_.empty()) throw InvalidArgument("set family must contain at least one set");
  const std::size_t n = sets_.front().dim();
  for (std::size_t i = 0; i < sets_.size(); ++i) {
    if (sets_[i].dim() != n) {
      throw DimensionError("set family: set " + std::to_string(i + 1) + " has dimension " +
                           std::to_string(sets_[i].dim()) + ", expected " + std::to_string(n));
    }
  }
  if (witness_) {
    for (std::size_t i = 0; i < sets_.size(); ++i) {
      if (!contains(sets_[i], *witness_, kWitnessTol)) {
        throw InvalidArgument("set family: intersection witness is not in set " + std::to_string(i + 1));
      }
    }
  }
}

double max_violation(const SetFamily& family, const Vector& x) {
  double worst = 0.0;
  for (const ConvexSet& s : family.sets()) worst = std::max(worst, distance(s, x));
  return worst;
}

}  // namespace dsap
