#include "dsap/io.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <initializer_list>
#include <sstream>

#include "dsap/format.hpp"

namespace dsap {

using nlohmann::json;

ParseError::ParseError(const std::string& message, std::optional<std::size_t> line, std::optional<std::size_t> column,
                       std::string pointer)
    : Error([&] {
        std::string where;
        if (line && column) where = "line " + std::to_string(*line) + ", column " + std::to_string(*column) + ": ";
        if (!pointer.empty()) where += "at " + pointer + ": ";
        return where + message;
      }()),
      line_(line),
      column_(column),
      pointer_(std::move(pointer)) {}

namespace {

// Schema-checked view of a JSON value that remembers its pointer.
class Node {
 public:
  Node(const json& value, std::string pointer) : value_(value), pointer_(std::move(pointer)) {}

  [[noreturn]] void fail(const std::string& message) const {
    throw ParseError(message, std::nullopt, std::nullopt, pointer_.empty() ? "/" : pointer_);
  }

  const json& raw() const { return value_; }

  void require_object() const {
    if (!value_.is_object()) fail("expected an object");
  }

  void only_keys(std::initializer_list<std::string_view> allowed) const {
    require_object();
    for (const auto& [key, _] : value_.items()) {
      if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
        Node(value_, pointer_ + "/" + key).fail("unknown key '" + key + "'");
      }
    }
  }

  bool has(const std::string& key) const { return value_.is_object() && value_.contains(key); }

  Node at(const std::string& key) const {
    require_object();
    if (!value_.contains(key)) fail("missing required key '" + key + "'");
    return Node(value_.at(key), pointer_ + "/" + key);
  }

  std::optional<Node> get(const std::string& key) const {
    if (!has(key)) return std::nullopt;
    return Node(value_.at(key), pointer_ + "/" + key);
  }

  std::vector<Node> items() const {
    if (!value_.is_array()) fail("expected an array");
    std::vector<Node> out;
    for (std::size_t i = 0; i < value_.size(); ++i) out.emplace_back(value_[i], pointer_ + "/" + std::to_string(i));
    return out;
  }

  double number() const {
    if (!value_.is_number()) fail("expected a number");
    const double v = value_.get<double>();
    if (!std::isfinite(v)) fail("number is not finite");
    return v;
  }

  std::uint64_t uint() const {
    if (!value_.is_number_unsigned() && !(value_.is_number_integer() && value_.get<std::int64_t>() >= 0)) {
      fail("expected a nonnegative integer");
    }
    return value_.get<std::uint64_t>();
  }

  std::string string() const {
    if (!value_.is_string()) fail("expected a string");
    return value_.get<std::string>();
  }

  Vector vector() const {
    std::vector<double> coords;
    for (const Node& n : items()) coords.push_back(n.number());
    if (coords.empty()) fail("expected a nonempty vector");
    return Vector(std::move(coords));
  }

  Vector vector(std::size_t dim) const {
    Vector v = vector();
    if (v.dim() != dim) fail("expected " + std::to_string(dim) + " coordinates, got " + std::to_string(v.dim()));
    return v;
  }

 private:
  const json& value_;
  std::string pointer_;
};

template <class F>
auto guarded(const Node& node, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    node.fail(e.what());
  }
}

ConvexSet parse_set(const Node& n, std::size_t dim) {
  const std::string kind = n.at("kind").string();
  return guarded(n, [&] {
    if (kind == "halfspace" || kind == "hyperplane") {
      n.only_keys({"kind", "a", "b"});
      Vector a = n.at("a").vector(dim);
      const double b = n.at("b").number();
      return kind == "halfspace" ? ConvexSet::halfspace(std::move(a), b) : ConvexSet::hyperplane(std::move(a), b);
    }
    if (kind == "box") {
      n.only_keys({"kind", "lo", "hi"});
      return ConvexSet::box(n.at("lo").vector(dim), n.at("hi").vector(dim));
    }
    if (kind == "ball") {
      n.only_keys({"kind", "center", "radius"});
      return ConvexSet::ball(n.at("center").vector(dim), n.at("radius").number());
    }
    if (kind == "singleton") {
      n.only_keys({"kind", "p"});
      return ConvexSet::singleton(n.at("p").vector(dim));
    }
    n.at("kind").fail("unknown set kind '" + kind + "'");
  });
}

Objective parse_objective(const Node& n, std::size_t dim) {
  const std::string kind = n.at("kind").string();
  return guarded(n, [&] {
    if (kind == "quadratic_diag") {
      n.only_keys({"kind", "Q", "c"});
      return Objective::quadratic_diag(n.at("Q").vector(dim), n.has("c") ? n.at("c").vector(dim) : Vector(dim, 0.0));
    }
    if (kind == "linear") {
      n.only_keys({"kind", "g"});
      return Objective::linear(n.at("g").vector(dim));
    }
    if (kind == "norm1") {
      n.only_keys({"kind"});
      return Objective::norm1();
    }
    if (kind == "norm2sq") {
      n.only_keys({"kind"});
      return Objective::norm2sq();
    }
    n.at("kind").fail("unknown objective kind '" + kind + "'");
  });
}

PlanStage parse_stage(const Node& n) {
  n.only_keys({"strings", "weights"});
  PlanStage stage;
  for (const Node& s : n.at("strings").items()) {
    std::vector<std::size_t> idx;
    for (const Node& i : s.items()) idx.push_back(static_cast<std::size_t>(i.uint()));
    stage.strings.emplace_back(std::move(idx));
  }
  for (const Node& w : n.at("weights").items()) stage.weights.push_back(w.number());
  return stage;
}

StringPlan parse_plan(const Node& n, std::size_t m) {
  const std::string mode = n.at("mode").string();
  PlanConstraints constraints{n.at("delta").number(), static_cast<std::size_t>(n.at("qbar").uint())};
  return guarded(n, [&] {
    if (mode == "repeated") {
      n.only_keys({"mode", "delta", "qbar", "stage"});
      return StringPlan::repeated(parse_stage(n.at("stage")), constraints, m);
    }
    if (mode == "cyclic") {
      n.only_keys({"mode", "delta", "qbar", "stages"});
      std::vector<PlanStage> stages;
      for (const Node& s : n.at("stages").items()) stages.push_back(parse_stage(s));
      return StringPlan::cyclic(std::move(stages), constraints, m);
    }
    if (mode == "seeded_random") {
      n.only_keys({"mode", "delta", "qbar", "seed", "max_strings", "extension_probability"});
      RandomStageParams params;
      if (auto v = n.get("max_strings")) params.max_strings = static_cast<std::size_t>(v->uint());
      if (auto v = n.get("extension_probability")) params.extension_probability = v->number();
      return StringPlan::seeded_random(n.at("seed").uint(), m, constraints, params);
    }
    n.at("mode").fail("unknown plan mode '" + mode + "'");
  });
}

PerturbationSchedule parse_schedule(const Node& n) {
  const std::string kind = n.at("kind").string();
  return guarded(n, [&] {
    if (kind == "geometric") {
      n.only_keys({"kind", "a", "ratio", "N", "inner_lengths"});
      InnerLengths lengths = InnerLengths::constant(1);
      if (n.has("N") && n.has("inner_lengths")) n.fail("give either 'N' or 'inner_lengths', not both");
      if (auto v = n.get("N")) lengths = InnerLengths::constant(static_cast<std::size_t>(v->uint()));
      if (auto v = n.get("inner_lengths")) {
        std::vector<std::size_t> pattern;
        for (const Node& i : v->items()) pattern.push_back(static_cast<std::size_t>(i.uint()));
        lengths = InnerLengths::periodic(std::move(pattern));
      }
      return PerturbationSchedule::geometric(n.at("a").number(), n.at("ratio").number(), std::move(lengths));
    }
    if (kind == "explicit") {
      n.only_keys({"kind", "table"});
      std::vector<std::vector<double>> table;
      for (const Node& row : n.at("table").items()) {
        std::vector<double> r;
        for (const Node& b : row.items()) r.push_back(b.number());
        table.push_back(std::move(r));
      }
      return PerturbationSchedule::explicit_table(std::move(table));
    }
    n.at("kind").fail("unknown schedule kind '" + kind + "'");
  });
}

StopRule parse_stop(const std::optional<Node>& n) {
  StopRule stop;
  if (!n) return stop;
  n->only_keys({"feas_tol", "max_outer", "min_beta_tail"});
  if (auto v = n->get("feas_tol")) stop.feas_tol = v->number();
  if (auto v = n->get("max_outer")) stop.max_outer = static_cast<std::size_t>(v->uint());
  if (auto v = n->get("min_beta_tail")) stop.min_beta_tail = v->number();
  guarded(*n, [&] {
    stop.validate();
    return 0;
  });
  return stop;
}

DiagnosticsConfig parse_diagnostics(const Node& n, std::size_t dim) {
  n.only_keys({"c_hat", "r", "x_star", "dist_lb", "D"});
  DiagnosticsConfig d;
  d.c_hat = n.at("c_hat").vector(dim);
  if (auto v = n.get("r")) d.r = v->number();
  if (d.r < 1.0) n.at("r").fail("r must be >= 1");
  if (auto v = n.get("x_star")) d.x_star = v->vector(dim);
  if (n.has("dist_lb") && n.has("D")) n.fail("give either 'dist_lb' or 'D', not both");
  if (auto v = n.get("dist_lb")) {
    const double lb = v->number();
    if (lb < 0.0) v->fail("dist_lb must be >= 0");
    d.target = lb;
  } else if (auto dn = n.get("D")) {
    if (dn->at("kind").string() == "levelset") {
      dn->only_keys({"kind"});
      d.target = LevelSetTarget{};
    } else {
      d.target = parse_set(*dn, dim);
    }
  } else {
    d.target = LevelSetTarget{};
  }
  return d;
}

std::pair<std::size_t, std::size_t> line_column(std::string_view text, std::size_t byte) {
  std::size_t line = 1;
  std::size_t col = 1;
  const std::size_t end = std::min(byte > 0 ? byte - 1 : 0, text.size());
  for (std::size_t i = 0; i < end; ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

json vec_json(const Vector& v) { return json(v.values()); }

Vector vec_from(const json& j) { return Vector(j.get<std::vector<double>>()); }

StopReason stop_reason_from(const std::string& s) {
  if (s == "converged") return StopReason::converged;
  if (s == "max_outer") return StopReason::max_outer;
  throw ParseError("unknown stop reason '" + s + "'", std::nullopt, std::nullopt, "");
}

Relation relation_from(const std::string& s) {
  if (s == "<=") return Relation::le;
  if (s == "<") return Relation::lt;
  if (s == ">=") return Relation::ge;
  if (s == ">") return Relation::gt;
  throw ParseError("unknown relation '" + s + "'", std::nullopt, std::nullopt, "");
}

}  // namespace

ExperimentConfig parse_problem(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    const auto [line, col] = line_column(text, e.byte);
    std::string msg = e.what();
    if (auto pos = msg.find("syntax error"); pos != std::string::npos) msg = msg.substr(pos);
    throw ParseError(msg, line, col, "");
  }

  const Node root(doc, "");
  root.only_keys({"space", "sets", "witness", "objective", "plan", "schedule", "init", "stop", "diagnostics"});
  const Node space = root.at("space");
  space.only_keys({"dim"});
  const auto dim = static_cast<std::size_t>(space.at("dim").uint());
  if (dim == 0) space.at("dim").fail("dim must be >= 1");

  std::vector<ConvexSet> sets;
  for (const Node& s : root.at("sets").items()) sets.push_back(parse_set(s, dim));
  if (sets.empty()) root.at("sets").fail("at least one set is required");
  std::optional<Vector> witness;
  if (auto w = root.get("witness")) witness = w->vector(dim);
  const std::size_t m = sets.size();
  SetFamily family = guarded(root, [&] { return SetFamily(std::move(sets), std::move(witness)); });

  Objective objective = parse_objective(root.at("objective"), dim);
  StringPlan plan = parse_plan(root.at("plan"), m);
  PerturbationSchedule schedule = parse_schedule(root.at("schedule"));
  Vector y0 = root.at("init").vector(dim);
  StopRule stop = parse_stop(root.get("stop"));
  std::optional<DiagnosticsConfig> diag;
  if (auto d = root.get("diagnostics")) diag = parse_diagnostics(*d, dim);

  return ExperimentConfig{std::move(family), std::move(objective), std::move(plan), std::move(schedule),
                          std::move(y0),     stop,                 std::move(diag)};
}

ExperimentConfig load_problem(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open problem file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_problem(buf.str());
}

json to_json(const ConvexSet& set) {
  return std::visit(
      [](const auto& s) -> json {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, Halfspace>) return {{"kind", "halfspace"}, {"a", vec_json(s.a)}, {"b", s.b}};
        if constexpr (std::is_same_v<T, Hyperplane>) return {{"kind", "hyperplane"}, {"a", vec_json(s.a)}, {"b", s.b}};
        if constexpr (std::is_same_v<T, Box>) return {{"kind", "box"}, {"lo", vec_json(s.lo)}, {"hi", vec_json(s.hi)}};
        if constexpr (std::is_same_v<T, Ball>) {
          return {{"kind", "ball"}, {"center", vec_json(s.center)}, {"radius", s.radius}};
        }
        if constexpr (std::is_same_v<T, Singleton>) return {{"kind", "singleton"}, {"p", vec_json(s.p)}};
        if constexpr (std::is_same_v<T, CustomSet>) return {{"kind", "custom"}, {"name", s.name}};
      },
      set.shape());
}

json to_json(const PerturbationSchedule& schedule) {
  if (const auto* g = std::get_if<GeometricSchedule>(&schedule.kind())) {
    json j = {{"kind", "geometric"}, {"a", g->a}, {"ratio", g->ratio}};
    if (g->lengths.pattern().size() == 1) {
      j["N"] = g->lengths.pattern().front();
    } else {
      j["inner_lengths"] = g->lengths.pattern();
    }
    j["total"] = schedule.total();
    return j;
  }
  return {{"kind", "explicit"},
          {"table", std::get<ExplicitSchedule>(schedule.kind()).table},
          {"total", schedule.total()}};
}

PerturbationSchedule schedule_from_json(const json& j) {
  json copy = j;
  copy.erase("total");
  return parse_schedule(Node(copy, "/schedule"));
}

json to_json(const RunTrace& trace) {
  json j;
  j["perturbed"] = trace.perturbed;
  j["stop_reason"] = to_string(trace.stop_reason);
  j["iterations"] = trace.iterations();
  j["plan"] = {{"mode", trace.plan.mode}};
  if (trace.plan.seed) j["plan"]["seed"] = *trace.plan.seed;
  j["schedule"] = trace.schedule ? to_json(*trace.schedule) : json(nullptr);
  j["objective_kind"] = trace.objective_kind;
  j["subgradient_rule"] = trace.subgradient_rule;
  json outer = json::array();
  for (const auto& r : trace.outer) {
    json row = {{"k", r.k}, {"y", vec_json(r.y)}, {"max_violation", r.max_violation}};
    row["phi"] = r.phi ? json(*r.phi) : json(nullptr);
    outer.push_back(std::move(row));
  }
  j["outer"] = std::move(outer);
  json inner = json::array();
  for (const auto& r : trace.inner) {
    inner.push_back({{"k", r.k}, {"n", r.n}, {"y", vec_json(r.y)}, {"v", vec_json(r.v)}, {"beta", r.beta}});
  }
  j["inner"] = std::move(inner);
  return j;
}

RunTrace trace_from_json(const json& j) {
  RunTrace t;
  t.perturbed = j.at("perturbed").get<bool>();
  t.stop_reason = stop_reason_from(j.at("stop_reason").get<std::string>());
  t.plan.mode = j.at("plan").at("mode").get<std::string>();
  if (j.at("plan").contains("seed")) t.plan.seed = j.at("plan").at("seed").get<std::uint64_t>();
  if (!j.at("schedule").is_null()) t.schedule = schedule_from_json(j.at("schedule"));
  t.objective_kind = j.at("objective_kind").get<std::string>();
  t.subgradient_rule = j.at("subgradient_rule").get<std::string>();
  for (const auto& r : j.at("outer")) {
    OuterRecord rec{r.at("k").get<std::size_t>(), vec_from(r.at("y")), std::nullopt, r.at("max_violation").get<double>()};
    if (!r.at("phi").is_null()) rec.phi = r.at("phi").get<double>();
    t.outer.push_back(std::move(rec));
  }
  for (const auto& r : j.at("inner")) {
    t.inner.push_back(InnerRecord{r.at("k").get<std::size_t>(), r.at("n").get<std::size_t>(), vec_from(r.at("y")),
                                  vec_from(r.at("v")), r.at("beta").get<double>()});
  }
  return t;
}

json to_json(const InequalityCheck& c) {
  return {{"name", c.name},         {"formula", c.formula},    {"lhs", c.lhs},
          {"relation", to_string(c.relation)}, {"rhs", c.rhs}, {"satisfied", c.satisfied}};
}

namespace {

InequalityCheck check_from(const json& j) {
  return InequalityCheck{j.at("name").get<std::string>(), j.at("formula").get<std::string>(),
                         j.at("lhs").get<double>(),      relation_from(j.at("relation").get<std::string>()),
                         j.at("rhs").get<double>(),      j.at("satisfied").get<bool>()};
}

}  // namespace

json to_json(const Certificate& cert) {
  json j = {{"kind", cert.kind}, {"verdict", to_string(cert.verdict)}, {"input_hash", cert.input_hash},
            {"notes", cert.notes}};
  json checks = json::array();
  for (const auto& c : cert.checks) checks.push_back(to_json(c));
  j["checks"] = std::move(checks);
  if (cert.cross_check) {
    j["cross_check"] = {{"phi_y_final", cert.cross_check->phi_y_final},
                        {"phi_x_star", cert.cross_check->phi_x_star},
                        {"consistent", cert.cross_check->consistent}};
  }
  return j;
}

Certificate certificate_from_json(const json& j) {
  Certificate c;
  c.kind = j.at("kind").get<std::string>();
  const auto verdict = j.at("verdict").get<std::string>();
  if (verdict != "negative_condition_holds" && verdict != "inconclusive") {
    throw ParseError("unknown verdict '" + verdict + "'", std::nullopt, std::nullopt, "");
  }
  c.verdict = verdict == "negative_condition_holds" ? Verdict::negative_condition_holds : Verdict::inconclusive;
  c.input_hash = j.at("input_hash").get<std::string>();
  c.notes = j.at("notes").get<std::vector<std::string>>();
  for (const auto& cj : j.at("checks")) c.checks.push_back(check_from(cj));
  if (j.contains("cross_check")) {
    const auto& cc = j.at("cross_check");
    c.cross_check = CrossCheck{cc.at("phi_y_final").get<double>(), cc.at("phi_x_star").get<double>(),
                               cc.at("consistent").get<bool>()};
  }
  return c;
}

json to_json(const InitCheckResult& r) {
  json j = {{"status", to_string(r.status)}, {"applicability", to_json(r.applicability)}};
  if (r.condition) j["condition"] = to_json(*r.condition);
  return j;
}

json to_json(const ClaimReport& report) {
  json rows = json::array();
  for (const auto& r : report.rows) rows.push_back({{"k", r.k}, {"lhs", r.lhs}, {"rhs", r.rhs}, {"holds", r.holds}});
  json j = {{"rows", std::move(rows)}, {"all_hold", report.all_hold()}};
  j["first_violation"] = report.first_violation ? json(*report.first_violation) : json(nullptr);
  return j;
}

json to_json(const FejerReport& report) {
  json rows = json::array();
  for (const auto& r : report.rows) {
    json row = {{"k", r.k}, {"dist_sq", r.dist_sq}, {"required", r.required}, {"ok", r.ok}};
    row["decrement"] = r.decrement ? json(*r.decrement) : json(nullptr);
    rows.push_back(std::move(row));
  }
  json j = {{"reference", vec_json(report.reference)}, {"c0", report.c0}, {"rows", std::move(rows)}};
  j["k0"] = report.k0 ? json(*report.k0) : json(nullptr);
  return j;
}

json to_json(const ComparisonReport& r) {
  json j;
  j["y_star"] = vec_json(r.y_star);
  j["x_star_run"] = vec_json(r.x_star_run);
  j["phi_y_star"] = r.phi_y_star;
  j["phi_x_star_run"] = r.phi_x_star_run;
  j["residual_perturbed"] = r.residual_perturbed;
  j["residual_unperturbed"] = r.residual_unperturbed;
  j["tail_mass"] = r.tail_mass;
  j["stop_perturbed"] = to_string(r.stop_perturbed);
  j["stop_unperturbed"] = to_string(r.stop_unperturbed);
  j["iterations_perturbed"] = r.iterations_perturbed;
  j["iterations_unperturbed"] = r.iterations_unperturbed;
  j["verdict"] = to_string(r.verdict);
  json certs = json::array();
  for (const auto& c : r.certificates) certs.push_back(to_json(c));
  j["certificates"] = std::move(certs);
  j["init_distance_hint"] = r.init_distance_hint ? json(*r.init_distance_hint) : json(nullptr);
  j["superior_to_diagnostic_x_star"] =
      r.superior_to_diagnostic_x_star ? json(*r.superior_to_diagnostic_x_star) : json(nullptr);
  if (r.perturbed_trace) j["perturbed_trace"] = to_json(*r.perturbed_trace);
  if (r.unperturbed_trace) j["unperturbed_trace"] = to_json(*r.unperturbed_trace);
  return j;
}

ComparisonReport report_from_json(const json& j) {
  ComparisonReport r;
  r.y_star = vec_from(j.at("y_star"));
  r.x_star_run = vec_from(j.at("x_star_run"));
  r.phi_y_star = j.at("phi_y_star").get<double>();
  r.phi_x_star_run = j.at("phi_x_star_run").get<double>();
  r.residual_perturbed = j.at("residual_perturbed").get<double>();
  r.residual_unperturbed = j.at("residual_unperturbed").get<double>();
  r.tail_mass = j.at("tail_mass").get<double>();
  r.stop_perturbed = stop_reason_from(j.at("stop_perturbed").get<std::string>());
  r.stop_unperturbed = stop_reason_from(j.at("stop_unperturbed").get<std::string>());
  r.iterations_perturbed = j.at("iterations_perturbed").get<std::size_t>();
  r.iterations_unperturbed = j.at("iterations_unperturbed").get<std::size_t>();
  const auto verdict = j.at("verdict").get<std::string>();
  if (verdict == "superior") {
    r.verdict = Superiority::superior;
  } else if (verdict == "equal") {
    r.verdict = Superiority::equal;
  } else if (verdict == "inferior") {
    r.verdict = Superiority::inferior;
  } else {
    throw ParseError("unknown verdict '" + verdict + "'", std::nullopt, std::nullopt, "/verdict");
  }
  for (const auto& c : j.at("certificates")) r.certificates.push_back(certificate_from_json(c));
  if (!j.at("init_distance_hint").is_null()) r.init_distance_hint = j.at("init_distance_hint").get<double>();
  if (!j.at("superior_to_diagnostic_x_star").is_null()) {
    r.superior_to_diagnostic_x_star = j.at("superior_to_diagnostic_x_star").get<bool>();
  }
  if (j.contains("perturbed_trace")) r.perturbed_trace = trace_from_json(j.at("perturbed_trace"));
  if (j.contains("unperturbed_trace")) r.unperturbed_trace = trace_from_json(j.at("unperturbed_trace"));
  return r;
}

json run_summary(const RunTrace& trace) {
  const OuterRecord& last = trace.outer.back();
  json j = {{"perturbed", trace.perturbed},
            {"stop_reason", to_string(trace.stop_reason)},
            {"iterations", trace.iterations()},
            {"y_final", vec_json(last.y)},
            {"max_violation", last.max_violation},
            {"plan", {{"mode", trace.plan.mode}}}};
  if (trace.plan.seed) j["plan"]["seed"] = *trace.plan.seed;
  j["phi_final"] = last.phi ? json(*last.phi) : json(nullptr);
  if (trace.schedule) {
    j["schedule"] = to_json(*trace.schedule);
    j["tail_mass"] = trace.schedule->tail(trace.iterations());
    j["subgradient_rule"] = trace.subgradient_rule;
  }
  return j;
}

std::string trace_csv(const RunTrace& trace, const std::optional<Vector>& c_hat, double r) {
  std::string out = kTraceCsvHeader;
  out += '\n';
  for (const OuterRecord& rec : trace.outer) {
    out += std::to_string(rec.k);
    out += ',';
    if (rec.phi) out += format_g17(*rec.phi);
    out += ',';
    out += format_g17(rec.max_violation);
    out += ',';
    if (c_hat) out += format_g17(distance(rec.y, *c_hat));
    out += ',';
    if (c_hat && trace.schedule) out += format_g17(r * trace.schedule->head(rec.k));
    out += '\n';
  }
  return out;
}

}  // namespace dsap
