#include "dsap/schedule.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "dsap/error.hpp"

namespace dsap {

InnerLengths InnerLengths::constant(std::size_t n) {
  if (n == 0) throw InvalidArgument("inner loop length N must be >= 1");
  return InnerLengths({n});
}

InnerLengths InnerLengths::periodic(std::vector<std::size_t> pattern) {
  if (pattern.empty()) throw InvalidArgument("inner length pattern must be nonempty");
  for (std::size_t n : pattern) {
    if (n == 0) throw InvalidArgument("inner loop lengths must be >= 1");
  }
  return InnerLengths(std::move(pattern));
}

std::size_t InnerLengths::at(std::size_t k) const { return pattern_[k % pattern_.size()]; }

std::size_t InnerLengths::prefix(std::size_t k) const {
  const std::size_t period = pattern_.size();
  const std::size_t per_cycle = std::accumulate(pattern_.begin(), pattern_.end(), std::size_t{0});
  std::size_t sum = (k / period) * per_cycle;
  for (std::size_t i = 0; i < k % period; ++i) sum += pattern_[i];
  return sum;
}

std::size_t InnerLengths::max() const { return *std::max_element(pattern_.begin(), pattern_.end()); }

PerturbationSchedule PerturbationSchedule::geometric(double a, double ratio, InnerLengths lengths) {
  if (!(a > 0.0 && a <= 1.0)) throw InvalidArgument("geometric schedule: a must lie in (0, 1]");
  if (!(ratio > 0.0 && ratio < 1.0)) throw InvalidArgument("geometric schedule: ratio must lie in (0, 1)");
  return PerturbationSchedule(GeometricSchedule{a, ratio, std::move(lengths)});
}

PerturbationSchedule PerturbationSchedule::explicit_table(std::vector<std::vector<double>> table) {
  if (table.empty()) throw InvalidArgument("explicit schedule: table must be nonempty");
  for (std::size_t k = 0; k < table.size(); ++k) {
    if (table[k].empty()) throw InvalidArgument("explicit schedule: row " + std::to_string(k) + " is empty");
    for (double b : table[k]) {
      if (!(b > 0.0 && b <= 1.0)) {
        throw InvalidArgument("explicit schedule: beta in row " + std::to_string(k) + " outside (0, 1]");
      }
    }
  }
  return PerturbationSchedule(ExplicitSchedule{std::move(table)});
}

std::size_t PerturbationSchedule::inner_length(std::size_t k) const {
  if (const auto* g = std::get_if<GeometricSchedule>(&kind_)) return g->lengths.at(k);
  const auto& t = std::get<ExplicitSchedule>(kind_).table;
  return k < t.size() ? t[k].size() : 0;
}

double PerturbationSchedule::beta(std::size_t k, std::size_t n) const {
  if (n >= inner_length(k)) {
    throw InvalidArgument("schedule: beta(" + std::to_string(k) + ", " + std::to_string(n) + ") out of range");
  }
  if (const auto* g = std::get_if<GeometricSchedule>(&kind_)) {
    return g->a * std::pow(g->ratio, static_cast<double>(g->lengths.prefix(k) + n));
  }
  return std::get<ExplicitSchedule>(kind_).table[k][n];
}

double PerturbationSchedule::total() const {
  if (const auto* g = std::get_if<GeometricSchedule>(&kind_)) return g->a / (1.0 - g->ratio);
  double sum = 0.0;
  for (const auto& row : std::get<ExplicitSchedule>(kind_).table) {
    for (double b : row) sum += b;
  }
  return sum;
}

double PerturbationSchedule::head(std::size_t k) const {
  if (const auto* g = std::get_if<GeometricSchedule>(&kind_)) {
    const double p = std::pow(g->ratio, static_cast<double>(g->lengths.prefix(k)));
    return g->a * (1.0 - p) / (1.0 - g->ratio);
  }
  const auto& t = std::get<ExplicitSchedule>(kind_).table;
  double sum = 0.0;
  for (std::size_t l = 0; l < k && l < t.size(); ++l) {
    for (double b : t[l]) sum += b;
  }
  return sum;
}

double PerturbationSchedule::tail(std::size_t k) const {
  if (const auto* g = std::get_if<GeometricSchedule>(&kind_)) {
    return g->a * std::pow(g->ratio, static_cast<double>(g->lengths.prefix(k))) / (1.0 - g->ratio);
  }
  const auto& t = std::get<ExplicitSchedule>(kind_).table;
  double sum = 0.0;
  for (std::size_t l = k; l < t.size(); ++l) {
    for (double b : t[l]) sum += b;
  }
  return sum;
}

double PerturbationSchedule::stage_mass(std::size_t k) const {
  double sum = 0.0;
  for (std::size_t n = 0; n < inner_length(k); ++n) sum += beta(k, n);
  return sum;
}

std::size_t PerturbationSchedule::max_inner_length() const {
  if (const auto* g = std::get_if<GeometricSchedule>(&kind_)) return g->lengths.max();
  std::size_t n = 0;
  for (const auto& row : std::get<ExplicitSchedule>(kind_).table) n = std::max(n, row.size());
  return n;
}

std::string PerturbationSchedule::describe() const {
  std::ostringstream os;
  os.precision(17);
  if (const auto* g = std::get_if<GeometricSchedule>(&kind_)) {
    os << "geometric(a=" << g->a << ", ratio=" << g->ratio << ", N=[";
    for (std::size_t i = 0; i < g->lengths.pattern().size(); ++i) os << (i ? "," : "") << g->lengths.pattern()[i];
    os << "])";
  } else {
    os << "explicit(rows=" << std::get<ExplicitSchedule>(kind_).table.size() << ")";
  }
  return os.str();
}

double schedule_total(const PerturbationSchedule& schedule) { return schedule.total(); }
double schedule_head(const PerturbationSchedule& schedule, std::size_t k) { return schedule.head(k); }

}  // namespace dsap
