#pragma once

// Problem files (JSON), structured-text reports and CSV traces.

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "dsap/diagnostics.hpp"
#include "dsap/error.hpp"
#include "dsap/harness.hpp"

namespace dsap {

/// Problem-file error. Syntax errors carry a 1-based line and column;
/// schema errors carry the JSON pointer of the offending value.
class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::optional<std::size_t> line, std::optional<std::size_t> column,
             std::string pointer);

  std::optional<std::size_t> line() const noexcept { return line_; }
  std::optional<std::size_t> column() const noexcept { return column_; }
  const std::string& pointer() const noexcept { return pointer_; }

 private:
  std::optional<std::size_t> line_;
  std::optional<std::size_t> column_;
  std::string pointer_;
};

ExperimentConfig parse_problem(std::string_view text);
ExperimentConfig load_problem(const std::string& path);

nlohmann::json to_json(const ConvexSet& set);
nlohmann::json to_json(const PerturbationSchedule& schedule);
PerturbationSchedule schedule_from_json(const nlohmann::json& j);

nlohmann::json to_json(const RunTrace& trace);
RunTrace trace_from_json(const nlohmann::json& j);

nlohmann::json to_json(const InequalityCheck& check);
nlohmann::json to_json(const Certificate& cert);
Certificate certificate_from_json(const nlohmann::json& j);
nlohmann::json to_json(const InitCheckResult& result);
nlohmann::json to_json(const ClaimReport& report);
nlohmann::json to_json(const FejerReport& report);

nlohmann::json to_json(const ComparisonReport& report);
ComparisonReport report_from_json(const nlohmann::json& j);

/// Short run summary: stop reason, iterations, final point, residual.
nlohmann::json run_summary(const RunTrace& trace);

inline constexpr const char* kTraceCsvHeader = "k,phi,max_violation,dist_c_hat,head_bound";

/// One row per outer iterate, numbers at 17 significant digits. The last two
/// columns are empty unless c_hat (and, for the bound, a schedule) is known;
/// head_bound is r * sum_{l<k} sum_n beta_{l,n}.
std::string trace_csv(const RunTrace& trace, const std::optional<Vector>& c_hat = std::nullopt, double r = 1.0);

}  // namespace dsap
