// analogy: command-line front end for ologs, wiring diagrams, edit
// distances and trace matching.

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include "analogy/dot.hpp"
#include "analogy/edit_search.hpp"
#include "analogy/errors.hpp"
#include "analogy/io.hpp"
#include "analogy/trace.hpp"
#include "analogy/wd_category.hpp"

namespace fs = std::filesystem;
using namespace analogy;

namespace {

enum Exit { kOk = 0, kDomain = 1, kParse = 2, kBudget = 3 };

// Loading failures of any kind are schema failures.
struct LoadError : Error {
  using Error::Error;
};

template <class F>
auto load(const std::string& what, const fs::path& p, F&& f) -> decltype(f(p)) {
  spdlog::debug("loading {} from {}", what, p.string());
  try {
    return f(p);
  } catch (const Error& e) {
    throw LoadError(p.string() + ": " + e.what());
  }
}

struct Output {
  bool json = false;

  void emit(const Json& j, const std::string& text) const {
    if (json) {
      std::cout << j.dump(2) << "\n";
    } else {
      std::cout << text;
    }
  }
};

std::string fmt_number(double d) { return Value(d).to_string(); }

Json number_or_inf(double d) {
  if (!std::isfinite(d)) return "inf";
  return value_to_json(Value(d));
}

// validate

struct ValidateArgs {
  std::vector<std::string> wds;
  std::vector<std::string> ologs;
  std::vector<std::string> costs;
  std::vector<std::string> paths;
  std::vector<std::string> traces;
  bool basic = false;
};

int cmd_validate(const ValidateArgs& a, const Output& out) {
  if (a.wds.empty() && a.ologs.empty() && a.costs.empty() && a.paths.empty() &&
      a.traces.empty()) {
    throw LoadError("validate needs at least one artifact");
  }
  Json reports = Json::array();
  std::ostringstream text;
  bool all = true;
  for (const std::string& f : a.wds) {
    const WiringDiagram w = load("wiring diagram", f, load_wd);
    const ValidationReport r = validate_wd(w, !a.basic, !a.basic);
    Json checks = Json::array();
    text << f << ": " << (r.passed() ? "PASS" : "FAIL") << "\n";
    for (const AxiomCheck& c : r.checks) {
      checks.push_back({{"axiom", c.axiom},
                        {"passed", c.passed},
                        {"detail", c.detail},
                        {"witness", c.witness}});
      text << "  " << c.axiom << ": " << (c.passed ? "ok" : "FAILED");
      if (!c.detail.empty()) text << " (" << c.detail << ")";
      if (!c.witness.empty()) {
        text << " witness:";
        for (const std::string& s : c.witness) text << " " << s;
      }
      text << "\n";
    }
    all = all && r.passed();
    reports.push_back(
        {{"file", f}, {"kind", "wiring-diagram"}, {"passed", r.passed()}, {"checks", checks}});
  }
  for (const std::string& f : a.ologs) {
    const Olog o = load("olog", f, load_olog);
    text << f << ": PASS (" << o.types().size() << " types, " << o.aspects().size()
         << " aspects, " << o.pullbacks().size() << " pullbacks)\n";
    reports.push_back({{"file", f},
                       {"kind", "olog"},
                       {"passed", true},
                       {"types", o.types().size()},
                       {"aspects", o.aspects().size()},
                       {"pullbacks", o.pullbacks().size()}});
  }
  for (const std::string& f : a.costs) {
    load("cost config", f, load_cost);
    text << f << ": PASS\n";
    reports.push_back({{"file", f}, {"kind", "cost-config"}, {"passed", true}});
  }
  for (const std::string& f : a.paths) {
    const EditPathFile p = load("edit path", f, load_edit_path);
    load("edit path", f, [&](const fs::path&) { return p.path(); });
    text << f << ": PASS (" << p.records.size() << " ops)\n";
    reports.push_back(
        {{"file", f}, {"kind", "edit-path"}, {"passed", true}, {"ops", p.records.size()}});
  }
  for (const std::string& f : a.traces) {
    const Trace t = load("trace", f, load_trace);
    text << f << ": PASS (" << t.samples().size() << " samples)\n";
    reports.push_back(
        {{"file", f}, {"kind", "trace"}, {"passed", true}, {"samples", t.samples().size()}});
  }
  out.emit(Json{{"passed", all}, {"reports", reports}}, text.str());
  return all ? kOk : kDomain;
}

// olog-dist

EdgeCost edge_cost_from(const std::optional<std::string>& cost_file) {
  if (!cost_file) return EdgeCost::unit();
  const CostFunction c = load("cost config", *cost_file, load_cost);
  return c.olog ? c.olog->edge_cost : EdgeCost::unit();
}

int cmd_olog_dist(const std::string& olog_file, const std::string& from, const std::string& to,
                  const std::optional<std::string>& cost_file, const Output& out) {
  const Olog o = load("olog", olog_file, load_olog);
  const EdgeCost ec = edge_cost_from(cost_file);
  const OlogPath p = olog_shortest_path(o, ec, from, to);
  std::ostringstream text;
  text << "d(" << from << ", " << to << ") = " << p.distance.to_string() << "\n";
  for (std::size_t i = 0; i < p.aspects.size(); ++i) {
    text << "  " << p.types[i] << " -[" << p.aspects[i] << "]- " << p.types[i + 1] << "\n";
  }
  Json j{{"from", from},
         {"to", to},
         {"distance", number_or_inf(p.distance.value())},
         {"path", {{"types", p.types}, {"aspects", p.aspects}}}};
  out.emit(j, text.str());
  return kOk;
}

// wd-dist

struct DistArgs {
  std::string from;
  std::string to;
  std::optional<std::string> cost;
  std::optional<std::string> path;
  bool exact = false;
  double budget = 20.0;
  double radius = 0.0;
};

Json op_report(const std::string& name, const EditOp& e, double cost) {
  Json j{{"kind", to_string(e.kind)}, {"type", roman(e.kind)}, {"op", e.describe()}, {"cost", cost}};
  if (!name.empty()) j["name"] = name;
  return j;
}

int cmd_wd_dist(const DistArgs& a, const Output& out) {
  const WiringDiagram from = load("wiring diagram", a.from, load_wd);
  const WiringDiagram to = load("wiring diagram", a.to, load_wd);
  const CostFunction cost =
      a.cost ? load("cost config", *a.cost, load_cost) : CostFunction::unit();
  std::ostringstream text;
  Json ops = Json::array();

  if (!a.exact) {
    if (!a.path) throw LoadError("wd-dist --upper needs --path");
    const EditPathFile file = load("edit path", *a.path, load_edit_path);
    const EditPath path = load("edit path", *a.path, [&](const fs::path&) { return file.path(); });
    const double bound = wd_distance_upper(from, to, path, cost);
    const ReplayResult r = replay_path(from, path, cost);
    const auto names = file.names();
    text << "upper bound: " << fmt_number(bound) << "\n";
    for (std::size_t i = 0; i < path.size(); ++i) {
      ops.push_back(op_report(names[i], path.ops()[i], r.op_costs[i]));
      text << "  " << (names[i].empty() ? std::to_string(i + 1) : names[i]) << " "
           << path.ops()[i].describe() << "  cost " << fmt_number(r.op_costs[i]) << "\n";
    }
    out.emit(Json{{"mode", "upper"}, {"distance", value_to_json(Value(bound))}, {"ops", ops}},
             text.str());
    return kOk;
  }

  const LabelUniverse universe = default_universe(from, to, cost, a.radius);
  spdlog::info("exact search over {} labels, budget {}", universe.size(), a.budget);
  const ExactDistance d = wd_distance_exact(from, to, cost, universe, a.budget);
  spdlog::info("expanded {} states, generated {}", d.stats.expanded, d.stats.generated);
  text << "distance: " << fmt_number(d.distance) << "\n";
  if (d.path) {
    for (std::size_t i = 0; i < d.path->size(); ++i) {
      ops.push_back(op_report("", d.path->ops()[i], d.op_costs[i]));
      text << "  " << i + 1 << " " << d.path->ops()[i].describe() << "  cost "
           << fmt_number(d.op_costs[i]) << "\n";
    }
  }
  out.emit(Json{{"mode", "exact"},
                {"distance", value_to_json(Value(d.distance))},
                {"universe", universe.size()},
                {"expanded", d.stats.expanded},
                {"ops", ops}},
           text.str());
  return kOk;
}

// match

int cmd_match(const std::string& trace_file, const std::string& wd_file,
              std::optional<std::size_t> limit, const Output& out) {
  const Trace tr = load("trace", trace_file, load_trace);
  const WiringDiagram w = load("wiring diagram", wd_file, load_wd);
  const std::vector<Assignment> found = match_wd(tr, w, limit);
  std::ostringstream text;
  Json list = Json::array();
  if (found.empty()) text << "no match\n";
  for (std::size_t i = 0; i < found.size(); ++i) {
    Json j = Json::object();
    text << "assignment " << i + 1 << ":\n";
    for (const VertexId& v : w.graph().vertices()) {
      j[v] = value_to_json(Value(found[i].at(v)));
      text << "  " << v << " @ " << fmt_number(found[i].at(v)) << "\n";
    }
    list.push_back(std::move(j));
  }
  out.emit(Json{{"count", found.size()}, {"assignments", list}}, text.str());
  return kOk;
}

// export-dot

int cmd_export_dot(const std::optional<std::string>& wd_file,
                   const std::optional<std::string>& olog_file) {
  if (wd_file) std::cout << wd_to_dot(load("wiring diagram", *wd_file, load_wd));
  if (olog_file) std::cout << olog_to_dot(load("olog", *olog_file, load_olog));
  if (!wd_file && !olog_file) throw LoadError("export-dot needs --wd or --olog");
  return kOk;
}

// covers

int cmd_covers(const std::string& wd_file, const std::string& direction, const Output& out) {
  const WiringDiagram w = load("wiring diagram", wd_file, load_wd);
  const SkeletonWdGraph g = SkeletonWdGraph::from_graph(w.graph());
  Json j = Json::object();
  std::ostringstream text;
  auto list = [&](CoverDirection d, const char* name) {
    Json arr = Json::array();
    const auto covers = enumerate_covers(g, d);
    text << name << " (" << covers.size() << "):\n";
    for (const SkeletonWdGraph& c : covers) {
      Json pairs = Json::array();
      text << " ";
      for (const auto& [s, t] : c.graph().arrow_pairs()) {
        pairs.push_back(Json::array({s, t}));
        text << " " << s << "->" << t;
      }
      if (pairs.empty()) text << " (no arrows)";
      text << "\n";
      arr.push_back(std::move(pairs));
    }
    j[name] = std::move(arr);
  };
  if (direction == "down" || direction == "both") list(CoverDirection::kDown, "generalizations");
  if (direction == "up" || direction == "both") list(CoverDirection::kUp, "specializations");
  out.emit(j, text.str());
  return kOk;
}

void setup_logging() {
  auto logger = spdlog::stderr_color_mt("analogy");
  spdlog::set_default_logger(logger);
  spdlog::set_level(spdlog::level::warn);
  if (const char* level = std::getenv("ANALOGY_LOG_LEVEL")) {
    spdlog::set_level(spdlog::level::from_str(level));
  }
}

}  // namespace

int main(int argc, char** argv) {
  setup_logging();
  CLI::App app{"Ologs, wiring diagrams and the edit distance between them"};
  app.require_subcommand(1);
  std::string format = "text";
  app.add_option("--format", format, "Output format")
      ->check(CLI::IsMember({"text", "json"}))
      ->capture_default_str();

  ValidateArgs va;
  auto* validate = app.add_subcommand("validate", "Check artifacts against their schemas and axioms");
  validate->add_option("--wd", va.wds, "Wiring diagram file");
  validate->add_option("--olog", va.ologs, "Olog file");
  validate->add_option("--cost", va.costs, "Cost config file");
  validate->add_option("--path", va.paths, "Edit path file");
  validate->add_option("--trace", va.traces, "Trace file");
  validate->add_flag("--basic", va.basic, "Check WD0-WD2 only");

  std::string olog_file, from_type, to_type;
  std::optional<std::string> olog_cost;
  auto* olog_dist = app.add_subcommand("olog-dist", "Shortest-path distance between olog types");
  olog_dist->add_option("--olog", olog_file, "Olog file")->required();
  olog_dist->add_option("--from", from_type, "Type id")->required();
  olog_dist->add_option("--to", to_type, "Type id")->required();
  olog_dist->add_option("--cost", olog_cost, "Cost config with edge costs");

  DistArgs da;
  auto* wd_dist = app.add_subcommand("wd-dist", "Edit distance between wiring diagrams");
  wd_dist->add_option("--from", da.from, "Source diagram")->required();
  wd_dist->add_option("--to", da.to, "Target diagram")->required();
  wd_dist->add_option("--cost", da.cost, "Cost config (default: unit costs)");
  wd_dist->add_option("--path", da.path, "Edit path file (upper mode)");
  auto* exact_flag = wd_dist->add_flag("--exact", da.exact, "Exact search");
  wd_dist->add_flag("--upper", "Replay an edit path (default)")->excludes(exact_flag);
  wd_dist->add_option("--budget", da.budget, "Exact search cost cap")->capture_default_str();
  wd_dist->add_option("--radius", da.radius,
                      "Also search labels within this olog distance of the endpoint labels");

  std::string trace_file, match_wd_file;
  std::optional<std::size_t> limit;
  auto* match = app.add_subcommand("match", "Find occurrences of a diagram in a trace");
  match->add_option("--trace", trace_file, "Trace file (JSON lines)")->required();
  match->add_option("--wd", match_wd_file, "Wiring diagram file")->required();
  match->add_option("--limit", limit, "Stop after this many assignments");

  std::optional<std::string> dot_wd, dot_olog;
  auto* export_dot = app.add_subcommand("export-dot", "Graphviz rendering");
  export_dot->add_option("--wd", dot_wd, "Wiring diagram file");
  export_dot->add_option("--olog", dot_olog, "Olog file");

  std::string covers_wd, direction = "both";
  auto* covers = app.add_subcommand("covers", "Irreducible neighbours of a diagram's graph");
  covers->add_option("--wd", covers_wd, "Wiring diagram file")->required();
  covers->add_option("--direction", direction, "down, up or both")
      ->check(CLI::IsMember({"down", "up", "both"}))
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kParse;
  }

  const Output out{format == "json"};
  try {
    if (*validate) return cmd_validate(va, out);
    if (*olog_dist) return cmd_olog_dist(olog_file, from_type, to_type, olog_cost, out);
    if (*wd_dist) return cmd_wd_dist(da, out);
    if (*match) return cmd_match(trace_file, match_wd_file, limit, out);
    if (*export_dot) return cmd_export_dot(dot_wd, dot_olog);
    if (*covers) return cmd_covers(covers_wd, direction, out);
  } catch (const LoadError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kParse;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kParse;
  } catch (const BudgetExceededError& e) {
    std::cerr << "error: " << e.what() << "\n";
    if (out.json) {
      std::cout << Json{{"budget_exceeded", true},
                        {"budget", e.budget()},
                        {"best_upper_bound", number_or_inf(e.best_upper_bound())}}
                       .dump(2)
                << "\n";
    } else {
      std::cout << "budget exceeded; best upper bound " << fmt_number(e.best_upper_bound())
                << "\n";
    }
    return kBudget;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kDomain;
  }
  return kOk;
}
