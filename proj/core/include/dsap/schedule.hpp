#pragma once

// Summable perturbation step sizes beta_{k,n} with inner loop lengths N_k.

#include <cstddef>
#include <string>
#include <variant>
#include <vector>

namespace dsap {

/// Rule for the inner loop length N_k. Constant N_k = N, or a finite
/// pattern repeated periodically over k.
class InnerLengths {
 public:
  static InnerLengths constant(std::size_t n);
  static InnerLengths periodic(std::vector<std::size_t> pattern);

  std::size_t at(std::size_t k) const;
  /// Sum of N_l for l < k.
  std::size_t prefix(std::size_t k) const;
  /// Upper bound N with N_k in {1..N}.
  std::size_t max() const;
  const std::vector<std::size_t>& pattern() const noexcept { return pattern_; }

  friend bool operator==(const InnerLengths&, const InnerLengths&) = default;

 private:
  explicit InnerLengths(std::vector<std::size_t> pattern) : pattern_(std::move(pattern)) {}
  std::vector<std::size_t> pattern_;
};

/// beta_{k,n} = a * ratio^(prefix(k) + n): a single geometric stream consumed
/// in order across inner loops, so the total is a / (1 - ratio) for any N_k.
struct GeometricSchedule {
  double a = 1.0;
  double ratio = 0.5;
  InnerLengths lengths = InnerLengths::constant(1);

  friend bool operator==(const GeometricSchedule&, const GeometricSchedule&) = default;
};

/// Row k lists beta_{k,0..N_k-1}. Outer iterations past the last row are
/// unperturbed.
struct ExplicitSchedule {
  std::vector<std::vector<double>> table;

  friend bool operator==(const ExplicitSchedule&, const ExplicitSchedule&) = default;
};

class PerturbationSchedule {
 public:
  static PerturbationSchedule geometric(double a, double ratio,
                                        InnerLengths lengths = InnerLengths::constant(1));
  static PerturbationSchedule explicit_table(std::vector<std::vector<double>> table);

  /// N_k; zero only for an explicit table past its last row.
  std::size_t inner_length(std::size_t k) const;
  /// beta_{k,n}, requires n < inner_length(k).
  double beta(std::size_t k, std::size_t n) const;
  /// sum_k sum_n beta_{k,n}
  double total() const;
  /// sum_{l<k} sum_n beta_{l,n}
  double head(std::size_t k) const;
  /// sum_{l>=k} sum_n beta_{l,n}, computed directly rather than as total - head.
  double tail(std::size_t k) const;
  /// sum_{n<N_k} beta_{k,n}
  double stage_mass(std::size_t k) const;
  /// Largest N_k the schedule ever uses.
  std::size_t max_inner_length() const;

  bool is_geometric() const noexcept { return std::holds_alternative<GeometricSchedule>(kind_); }
  const std::variant<GeometricSchedule, ExplicitSchedule>& kind() const noexcept { return kind_; }
  std::string describe() const;

  friend bool operator==(const PerturbationSchedule&, const PerturbationSchedule&) = default;

 private:
  explicit PerturbationSchedule(std::variant<GeometricSchedule, ExplicitSchedule> kind) : kind_(std::move(kind)) {}
  std::variant<GeometricSchedule, ExplicitSchedule> kind_;
};

double schedule_total(const PerturbationSchedule& schedule);
double schedule_head(const PerturbationSchedule& schedule, std::size_t k);

}  // namespace dsap
