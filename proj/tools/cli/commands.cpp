#include "cli/commands.hpp"

#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "dsap/diagnostics.hpp"
#include "dsap/format.hpp"
#include "dsap/harness.hpp"
#include "dsap/io.hpp"

namespace dsap::cli {
namespace {

using nlohmann::json;

void write_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error("cannot write '" + path + "'");
  f << content;
}

ExperimentConfig load_with_overrides(const std::string& path, const Flags& flags, std::ostream& err) {
  ExperimentConfig config = load_problem(path);
  if (flags.max_outer) config.stop.max_outer = *flags.max_outer;
  if (flags.feas_tol) config.stop.feas_tol = *flags.feas_tol;
  if (flags.seed) {
    if (config.plan.mode() == PlanMode::seeded_random) {
      config.plan = config.plan.with_seed(*flags.seed);
    } else {
      err << "warning: --seed ignored, plan mode is " << to_string(config.plan.mode()) << "\n";
    }
  }
  config.stop.validate();
  validate(config);
  return config;
}

std::optional<Vector> c_hat_of(const ExperimentConfig& config) {
  if (config.diagnostics) return config.diagnostics->c_hat;
  return std::nullopt;
}

double r_of(const ExperimentConfig& config) { return config.diagnostics ? config.diagnostics->r : 1.0; }

// Runs a command body, mapping library errors onto the input-error exit code.
template <class F>
int guarded(std::ostream& err, F&& body) {
  try {
    return body();
  } catch (const ParseError& e) {
    err << "error: problem file: " << e.what() << "\n";
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
  }
  return kExitInputError;
}

std::string pad(std::string s, std::size_t width) {
  if (s.size() < width) s.append(width - s.size(), ' ');
  return s;
}

void print_check(std::ostream& out, const InequalityCheck& c) {
  out << pad(c.name, 16) << pad(format_g17(c.lhs), 26) << pad(to_string(c.relation), 4) << pad(format_g17(c.rhs), 26)
      << (c.satisfied ? "holds" : "fails") << "   " << c.formula << "\n";
}

void print_header(std::ostream& out) {
  out << pad("check", 16) << pad("lhs", 26) << pad("rel", 4) << pad("rhs", 26) << "result\n";
}

}  // namespace

int cmd_run(const std::string& path, const Flags& flags, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const ExperimentConfig config = load_with_overrides(path, flags, err);
    const RunTrace trace = flags.unperturbed ? run_unperturbed(config) : run_perturbed(config);
    const json summary = run_summary(trace);
    out << summary.dump(2) << "\n";
    if (flags.trace_out) write_file(*flags.trace_out, trace_csv(trace, c_hat_of(config), r_of(config)));
    if (flags.report_out) write_file(*flags.report_out, summary.dump(2) + "\n");
    return trace.stop_reason == StopReason::converged ? kExitOk : kExitNotConverged;
  });
}

int cmd_compare(const std::string& path, const Flags& flags, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    ExperimentConfig config = load_with_overrides(path, flags, err);
    config.attach_traces = flags.report_out.has_value() || flags.trace_out.has_value();
    ComparisonReport report = compare(config);
    if (flags.trace_out && report.perturbed_trace) {
      write_file(*flags.trace_out, trace_csv(*report.perturbed_trace, c_hat_of(config), r_of(config)));
    }
    if (flags.report_out) write_file(*flags.report_out, to_json(report).dump(2) + "\n");
    report.perturbed_trace.reset();
    report.unperturbed_trace.reset();
    out << to_json(report).dump(2) << "\n";
    return kExitOk;
  });
}

int cmd_certify(const std::string& path, const Flags& flags, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const ExperimentConfig config = load_with_overrides(path, flags, err);
    if (!config.diagnostics) {
      err << "error: problem file has no 'diagnostics' section\n";
      return kExitInputError;
    }
    const DiagnosticsConfig& diag = *config.diagnostics;
    const bool levelset = std::holds_alternative<LevelSetTarget>(diag.target);

    std::optional<Vector> x_star = diag.x_star;
    if (!x_star && levelset) x_star = run_unperturbed(config).y_final();

    const NegativeConditionInput input = resolve_condition_input(config, diag, x_star);
    const InequalityCheck pre = lemma_precondition(input);
    const Certificate negative = negative_certificate(input);
    const InitCheckResult init = necessary_init_check(input);

    std::optional<RunTrace> trace;
    auto perturbed = [&]() -> const RunTrace& {
      if (!trace) trace = run_perturbed(config);
      return *trace;
    };
    std::optional<Certificate> level;
    if (x_star) level = levelset_verdict(config.family, *x_star, &perturbed(), input, config.objective);
    std::optional<ClaimReport> claim;
    if (pre.satisfied) claim = verify_claim_i(perturbed(), input);

    json doc;
    doc["input"] = {{"c_hat", input.c_hat.values()}, {"r", input.r},           {"dist_to_D_lb", input.dist_to_D_lb},
                    {"schedule_total", input.schedule_total}, {"head0", input.head0}, {"y0", input.y0.values()}};
    doc["precondition"] = to_json(pre);
    doc["negative_certificate"] = to_json(negative);
    doc["necessary_init"] = to_json(init);
    doc["levelset"] = level ? to_json(*level) : json(nullptr);
    doc["claim_i"] = claim ? to_json(*claim) : json(nullptr);
    const auto hint = init_distance_hint(input);
    doc["init_distance_hint"] = hint ? json(*hint) : json(nullptr);
    if (flags.report_out) write_file(*flags.report_out, doc.dump(2) + "\n");
    if (flags.trace_out && trace) write_file(*flags.trace_out, trace_csv(*trace, input.c_hat, input.r));

    out << "inputs: ||y0 - c_hat|| = " << format_g17(distance(input.y0, input.c_hat))
        << ", r = " << format_g17(input.r) << ", d(c_hat, D) >= " << format_g17(input.dist_to_D_lb)
        << ", total = " << format_g17(input.schedule_total) << ", head0 = " << format_g17(input.head0) << "\n\n";
    out << "negative condition: " << to_string(negative.verdict) << "\n";
    print_header(out);
    for (const auto& c : negative.checks) print_check(out, c);
    out << "\nnecessary initialization: " << to_string(init.status) << "\n";
    print_header(out);
    print_check(out, init.applicability);
    if (init.condition) print_check(out, *init.condition);
    if (level) {
      out << "\nlevel set: " << to_string(level->verdict) << "\n";
      print_header(out);
      for (const auto& c : level->checks) print_check(out, c);
      if (level->cross_check) {
        out << "cross-check: phi(y_final) = " << format_g17(level->cross_check->phi_y_final)
            << ", phi(x_star) = " << format_g17(level->cross_check->phi_x_star)
            << (level->cross_check->consistent ? " (consistent)" : " (CONTRADICTION)") << "\n";
      }
    }
    if (claim) {
      out << "\nbound ||y^k - c_hat|| <= r * head(k): " << (claim->all_hold() ? "holds" : "VIOLATED") << " on "
          << claim->rows.size() << " iterates\n";
    }
    if (hint) out << "\nhint: ||y0 - c_hat|| >= " << format_g17(*hint) << " escapes the level-set condition\n";
    return kExitOk;
  });
}

int cmd_reproduce(const std::string& variant, const Flags& flags, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    ExampleVariant v;
    if (variant == "A" || variant == "a") {
      v = ExampleVariant::A;
    } else if (variant == "B" || variant == "b") {
      v = ExampleVariant::B;
    } else {
      err << "error: unknown variant '" << variant << "' (expected A or B)\n";
      return kExitInputError;
    }
    const ExampleReproduction rep = reproduce_example(v);
    json doc;
    doc["variant"] = variant == "a" || variant == "A" ? "A" : "B";
    doc["passed"] = rep.passed;
    doc["first_mismatch_k"] = rep.first_mismatch_k ? json(*rep.first_mismatch_k) : json(nullptr);
    doc["y_final"] = rep.trace.y_final().values();
    json assertions = json::array();
    for (const auto& a : rep.assertions) {
      assertions.push_back({{"name", a.name}, {"expected", a.expected}, {"actual", a.actual}, {"tol", a.tol},
                            {"passed", a.passed}});
    }
    doc["assertions"] = std::move(assertions);
    out << "example " << doc["variant"].get<std::string>() << ": " << rep.assertions.size() << " assertions, "
        << (rep.passed ? "all pass" : "FAILED") << ", y_final = " << format_g17(rep.trace.y_final()[0]) << "\n";
    if (rep.first_mismatch_k) out << "first mismatch at k = " << *rep.first_mismatch_k << "\n";
    if (flags.report_out) write_file(*flags.report_out, doc.dump(2) + "\n");
    if (flags.trace_out) {
      const ExperimentConfig config = example_config(v);
      write_file(*flags.trace_out, trace_csv(rep.trace, c_hat_of(config), r_of(config)));
    }
    return rep.passed ? kExitOk : kExitAssertionFailed;
  });
}

int run_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Superiorized dynamic string-averaging projection runs and diagnostics", "dsap"};
  app.require_subcommand(1);

  Flags flags;
  std::string path;
  std::string variant;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--trace-out", flags.trace_out, "Write the per-iteration CSV trace to PATH");
    sub->add_option("--report-out", flags.report_out, "Write the structured report to PATH");
    sub->add_option("--max-outer", flags.max_outer, "Override the outer iteration cap")->check(CLI::PositiveNumber);
    sub->add_option("--feas-tol", flags.feas_tol, "Override the feasibility tolerance")->check(CLI::NonNegativeNumber);
    sub->add_option("--seed", flags.seed, "Override the seed of a seeded_random plan");
  };

  auto* run = app.add_subcommand("run", "Run the superiorized (or, with --unperturbed, the plain) iteration");
  run->add_option("problem", path, "Problem file")->required();
  run->add_flag("--unperturbed", flags.unperturbed, "Run plain DSAP without perturbations");
  add_common(run);

  auto* cmp = app.add_subcommand("compare", "Run perturbed and unperturbed legs and compare objective values");
  cmp->add_option("problem", path, "Problem file")->required();
  add_common(cmp);

  auto* cert = app.add_subcommand("certify", "Evaluate the negative-condition certificates");
  cert->add_option("problem", path, "Problem file")->required();
  add_common(cert);

  auto* rep = app.add_subcommand("reproduce", "Reproduce the one-dimensional counterexample");
  rep->add_option("variant", variant, "A or B")->required();
  add_common(rep);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  }

  if (run->parsed()) return cmd_run(path, flags, out, err);
  if (cmp->parsed()) return cmd_compare(path, flags, out, err);
  if (cert->parsed()) return cmd_certify(path, flags, out, err);
  return cmd_reproduce(variant, flags, out, err);
}

}  // namespace dsap::cli
