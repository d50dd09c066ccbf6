#pragma once

// Command-line front end. Exit codes:
//   0  success / positive verdict
//   1  negative verdict
//   2  usage, parse or input error
//   3  search budget exceeded / inconclusive verdict

#include <algorithm>
#include <fstream>
#include <iterator>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "achem/causal.hpp"
#include "achem/dot.hpp"
#include "achem/dsl.hpp"
#include "achem/engine.hpp"
#include "achem/entity.hpp"
#include "achem/error.hpp"
#include "achem/hierarchy.hpp"
#include "achem/report.hpp"
#include "achem/selfrep.hpp"
#include "achem/trace_io.hpp"

namespace achem {

enum ExitCode : int { exit_ok = 0, exit_negative = 1, exit_usage = 2, exit_inconclusive = 3 };

namespace cli {

class InputError : public Error {
public:
  using Error::Error;
};

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path);
  return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

inline void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write " + path);
  out << text;
  if (!out) throw InputError("failed writing " + path);
}

// "-" or empty means the standard output stream.
inline void emit(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty() || path == "-")
    out << text;
  else
    write_file(path, text);
}

inline Trace load_trace(const std::string& path) {
  std::istringstream in(read_file(path));
  return read_trace(in);
}

// "a:b" -> inclusive window.
inline IndexWindow parse_window(const std::string& text) {
  auto colon = text.find(':');
  if (colon == std::string::npos) throw InputError("window must be FIRST:LAST, got " + text);
  try {
    return {std::stoul(text.substr(0, colon)), std::stoul(text.substr(colon + 1))};
  } catch (const std::exception&) {
    throw InputError("window must be FIRST:LAST, got " + text);
  }
}

inline std::string format_path(const CausalPath& p) {
  std::string out = p.waypoints.front();
  for (std::size_t i = 0; i < p.steps.size(); ++i)
    out += " =" + p.steps.steps[i].reaction + "@" + std::to_string(p.steps.steps[i].state) + "=> " + p.waypoints[i + 1];
  return out;
}

inline const std::map<std::string, Feasibility> feasibility_names{{"standard", Feasibility::standard},
                                                                  {"strict", Feasibility::strict}};
inline const std::map<std::string, SchedulerPolicy> policy_names{{"first-declared", SchedulerPolicy::first_declared},
                                                                 {"round-robin", SchedulerPolicy::round_robin}};
inline const std::map<std::string, MaterialQuantifier> quantifier_names{{"some", MaterialQuantifier::some},
                                                                        {"every", MaterialQuantifier::every}};
inline const std::map<std::string, StepSource> source_names{{"executed", StepSource::executed},
                                                            {"feasible", StepSource::feasible}};

inline int verdict_code(Status s) {
  if (is_positive(s)) return exit_ok;
  return s == Status::inconclusive ? exit_inconclusive : exit_negative;
}

}  // namespace cli

/**
 * Run one CLI invocation. `args` excludes the program name. Normal output
 * goes to `out`, diagnostics to `err`.
 */
inline int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  using namespace cli;

  CLI::App app{"Artificial chemistry simulator and self-reproduction analyser", "achem"};
  app.require_subcommand(1);

  std::string spec_path, trace_path, out_path, policy_name = "first-declared", mode_name = "standard";
  std::size_t steps = 0;

  auto add_mode = [&](CLI::App* sub) {
    sub->add_option("--feasibility", mode_name, "Feasibility inequality")
        ->check(CLI::IsMember({"standard", "strict"}));
  };

  auto* sim = app.add_subcommand("simulate", "Run the chemistry and record a trace");
  sim->add_option("spec", spec_path, "Chemistry file")->required();
  sim->add_option("--steps", steps, "Maximum number of transitions")->required()->check(CLI::PositiveNumber);
  sim->add_option("--policy", policy_name, "Scheduler policy")->check(CLI::IsMember({"first-declared", "round-robin"}));
  sim->add_option("--out", out_path, "Trace output file (default stdout)");
  add_mode(sim);

  auto* cyc = app.add_subcommand("cycle", "Detect a cycle in a recorded trace");
  cyc->add_option("trace", trace_path, "Trace file")->required();

  std::string state_ref;
  auto* graph = app.add_subcommand("graph", "Export the potential reaction graph of one state");
  graph->add_option("spec", spec_path, "Chemistry file")->required();
  graph->add_option("--state", state_ref, "TRACE:INDEX")->required();
  graph->add_option("--dot", out_path, "DOT output file (default stdout)");
  add_mode(graph);

  std::string from, to, entity_text, window_text, quantifier_name = "some", source_name = "executed";
  std::size_t max_len = 4, budget = default_path_budget;
  auto* paths = app.add_subcommand("paths", "List causal paths between two molecules");
  paths->add_option("trace", trace_path, "Trace file")->required();
  paths->add_option("--spec", spec_path, "Chemistry file the trace was produced from")->required();
  paths->add_option("--from", from, "Source molecule")->required();
  paths->add_option("--to", to, "Target molecule")->required();
  paths->add_option("--max-len", max_len, "Maximum path length")->check(CLI::PositiveNumber);
  paths->add_option("--budget", budget, "Maximum number of paths")->check(CLI::PositiveNumber);
  paths->add_option("--window", window_text, "Anchor window FIRST:LAST");
  add_mode(paths);

  bool all = false;
  auto* sr = app.add_subcommand("selfrep", "Check molecules for self-reproduction");
  sr->add_option("trace", trace_path, "Trace file")->required();
  sr->add_option("--spec", spec_path, "Chemistry file the trace was produced from")->required();
  auto* ent = sr->add_option("--entity", entity_text, "Molecule to analyse");
  sr->add_flag("--all", all, "Analyse every declared molecule")->excludes(ent);
  sr->add_option("--max-len", max_len, "Maximum causal path length")->check(CLI::PositiveNumber);
  sr->add_option("--budget", budget, "Maximum number of paths examined")->check(CLI::PositiveNumber);
  sr->add_option("--quantifier", quantifier_name, "Material basis over some or every path")
      ->check(CLI::IsMember({"some", "every"}));
  sr->add_option("--out", out_path, "Report file (default stdout)");
  add_mode(sr);

  Level1Options l1;
  auto* sr1 = app.add_subcommand("selfrep1", "Check a level-1 entity for self-reproduction");
  sr1->add_option("trace", trace_path, "Trace file")->required();
  sr1->add_option("--spec", spec_path, "Chemistry file the trace was produced from")->required();
  sr1->add_option("--entity", entity_text, "Entity literal, e.g. \"{x, y}\"")->required();
  sr1->add_option("--max-len", l1.max_len, "Level-0 path length in the non-triviality count")
      ->check(CLI::PositiveNumber);
  sr1->add_option("--meta-len", l1.meta_len, "Steps per meta reaction")->check(CLI::PositiveNumber);
  sr1->add_option("--chain-len", l1.chain_len, "Meta reactions per level-1 path")->check(CLI::PositiveNumber);
  sr1->add_option("--span", l1.span, "States covered by a level-1 path")->check(CLI::PositiveNumber);
  sr1->add_option("--candidates", l1.candidates, "Maximum partner candidates")->check(CLI::PositiveNumber);
  sr1->add_option("--budget", l1.budget, "Maximum level-1 paths examined")->check(CLI::PositiveNumber);
  sr1->add_option("--source", source_name, "Meta reaction steps: executed or feasible")
      ->check(CLI::IsMember({"executed", "feasible"}));
  sr1->add_option("--window", window_text, "Analysis window FIRST:LAST");
  sr1->add_option("--quantifier", quantifier_name, "Material basis over some or every path")
      ->check(CLI::IsMember({"some", "every"}));
  sr1->add_option("--out", out_path, "Report file (default stdout)");
  add_mode(sr1);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(std::move(reversed));
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return exit_ok;
  } catch (const CLI::ParseError& e) {
    err << "achem: " << e.what() << "\n";
    return exit_usage;
  }

  const Feasibility mode = feasibility_names.at(mode_name);

  try {
    if (sim->parsed()) {
      auto spec = parse_chemistry(read_file(spec_path));
      Trace t = simulate(spec, steps, policy_names.at(policy_name), mode);
      emit(out_path, trace_to_string(t), out);
      return exit_ok;
    }

    if (cyc->parsed()) {
      Trace t = load_trace(trace_path);
      if (auto w = detect_cycle(t)) {
        out << "cycle: prefix_len=" << w->prefix_len << " cycle_len=" << w->cycle_len << "\n";
        return exit_ok;
      }
      out << "no cycle within recorded horizon\n";
      return exit_negative;
    }

    if (graph->parsed()) {
      auto colon = state_ref.rfind(':');
      if (colon == std::string::npos) throw InputError("--state must be TRACE:INDEX");
      std::size_t index = 0;
      try {
        index = std::stoul(state_ref.substr(colon + 1));
      } catch (const std::exception&) {
        throw InputError("--state must be TRACE:INDEX");
      }
      auto spec = parse_chemistry(read_file(spec_path));
      Trace t = load_trace(state_ref.substr(0, colon));
      emit(out_path, export_dot(reaction_graph(t.at(index), spec, index, mode)), out);
      return exit_ok;
    }

    // The remaining commands analyse a trace against its chemistry.
    const std::string spec_text = read_file(spec_path);
    const auto spec = parse_chemistry(spec_text);
    const Trace t = load_trace(trace_path);
    validate_trace(t, spec, mode);
    const Equivalence eq = Equivalence::of(spec);

    if (paths->parsed()) {
      for (const auto& sym : {from, to})
        if (!spec.declares(sym)) throw UnknownSymbol(sym);
      PathOptions po;
      po.max_len = max_len;
      po.mode = mode;
      po.budget = budget;
      if (!window_text.empty()) po.window = parse_window(window_text);
      auto found = causal_paths(t, spec, from, to, po);
      for (const auto& p : found) out << format_path(p) << "\n";
      return found.empty() ? exit_negative : exit_ok;
    }

    ReportDocument report;
    report.fingerprint = spec_fingerprint(spec_text);
    report.parameters["feasibility"] = mode_name;
    report.parameters["quantifier"] = quantifier_name;
    report.parameters["trace_states"] = t.states.size();

    if (sr->parsed()) {
      if (!all && entity_text.empty()) throw InputError("selfrep needs --entity or --all");
      SelfrepOptions so;
      so.max_len = max_len;
      so.mode = mode;
      so.budget = budget;
      so.quantifier = quantifier_names.at(quantifier_name);
      report.parameters["command"] = "selfrep";
      report.parameters["max_len"] = max_len;
      report.parameters["budget"] = budget;

      std::vector<Level0Verdict> verdicts;
      if (all)
        verdicts = sweep_selfrep(t, spec, eq, so);
      else
        verdicts.push_back(analyse_molecule(t, spec, entity_text, eq, so));
      for (const auto& v : verdicts) report.add(v);
      emit(out_path, report.dump(), out);

      bool positive = false, inconclusive = false;
      for (const auto& v : verdicts) {
        positive = positive || is_positive(v.status);
        inconclusive = inconclusive || v.status == Status::inconclusive;
      }
      return positive ? exit_ok : inconclusive ? exit_inconclusive : exit_negative;
    }

    if (sr1->parsed()) {
      l1.mode = mode;
      l1.quantifier = quantifier_names.at(quantifier_name);
      l1.source = source_names.at(source_name);
      if (!window_text.empty()) l1.window = parse_window(window_text);
      report.parameters["command"] = "selfrep1";
      Entity z = parse_entity(entity_text);
      Level1Verdict v = detect_selfrep1(t, spec, z, eq, l1);
      report.add(v);
      emit(out_path, report.dump(), out);
      return verdict_code(v.status);
    }
  } catch (const BudgetExceeded& e) {
    err << "achem: " << e.what() << "\n";
    return exit_inconclusive;
  } catch (const Error& e) {
    err << "achem: " << e.what() << "\n";
    return exit_usage;
  } catch (const std::exception& e) {
    err << "achem: " << e.what() << "\n";
    return exit_usage;
  }
  return exit_usage;
}

}  // namespace achem
