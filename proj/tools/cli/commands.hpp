#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

namespace dsap::cli {

// Exit-code contract.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInputError = 1;
inline constexpr int kExitNotConverged = 2;
inline constexpr int kExitAssertionFailed = 3;

struct Flags {
  bool unperturbed = false;
  std::optional<std::string> trace_out;
  std::optional<std::string> report_out;
  std::optional<std::size_t> max_outer;
  std::optional<double> feas_tol;
  std::optional<std::uint64_t> seed;
};

int cmd_run(const std::string& path, const Flags& flags, std::ostream& out, std::ostream& err);
int cmd_compare(const std::string& path, const Flags& flags, std::ostream& out, std::ostream& err);
int cmd_certify(const std::string& path, const Flags& flags, std::ostream& out, std::ostream& err);
int cmd_reproduce(const std::string& variant, const Flags& flags, std::ostream& out, std::ostream& err);

/// Full command line entry point (argv[0] is the program name).
int run_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace dsap::cli
