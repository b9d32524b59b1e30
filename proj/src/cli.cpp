#include "modex/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>

#include "modex/oracle.hpp"
#include "modex/structure_io.hpp"

namespace modex {

const char* engine_name(EngineKind k) {
  switch (k) {
    case EngineKind::GenCheck: return "gc";
    case EngineKind::PropagateSearch: return "prop";
    case EngineKind::Learning: return "learn";
    case EngineKind::Cdl: return "cdl";
  }
  return "?";
}

std::optional<EngineKind> engine_from_name(const std::string& name) {
  if (name == "gc") return EngineKind::GenCheck;
  if (name == "prop") return EngineKind::PropagateSearch;
  if (name == "learn") return EngineKind::Learning;
  if (name == "cdl") return EngineKind::Cdl;
  return std::nullopt;
}

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return std::string((std::istreambuf_iterator<char>(in)),
                     std::istreambuf_iterator<char>());
}

struct LoadedProblem {
  ProblemSpec spec;
  PartialStructure input;
};

LoadedProblem load(const std::string& problem_path, const std::string& input_path,
                   std::ostream& err) {
  LoadedProblem out;
  out.spec = parse_problem(read_file(problem_path));
  for (const auto& w : out.spec.warnings) err << "warning: " << w << "\n";
  out.input = input_path.empty()
                  ? PartialStructure::bottom(out.spec.sig)
                  : read_structure_file(input_path, out.spec.sig);
  return out;
}

std::string model_repr(const PartialStructure& m) {
  // True atoms of the (possibly restricted) model; everything decided-false
  // is implicit, undecided atoms are projected out.
  std::string out = "{";
  bool first = true;
  for (int a = 0; a < m.atom_count(); ++a) {
    if (m.value(a) != TruthValue::True) continue;
    if (!first) out += ", ";
    out += m.sig()->atom_name(a);
    first = false;
  }
  return out + "}";
}

std::vector<PartialStructure> project_models(const std::vector<PartialStructure>& models,
                                             const SymbolSet& voc) {
  std::vector<PartialStructure> out;
  out.reserve(models.size());
  for (const auto& m : models) out.push_back(m.restricted(voc));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace

int run_solve(const SolveOptions& opts, std::ostream& out, std::ostream& err) {
  try {
    LoadedProblem lp = load(opts.problem_path, opts.input_path, err);

    EngineConfig cfg;
    cfg.engine = opts.engine;
    cfg.strategy = opts.strategy;
    cfg.first_k = opts.first_k;
    cfg.restart = opts.restart;
    cfg.seed = opts.seed;

    std::ofstream trace_file;
    TraceSink sink;
    if (opts.trace_path == "-") {
      sink = TraceSink(out);
    } else if (!opts.trace_path.empty()) {
      trace_file.open(opts.trace_path);
      if (!trace_file) throw std::runtime_error("cannot open " + opts.trace_path);
      sink = TraceSink(trace_file);
    }
    if (sink.enabled()) cfg.trace = &sink;

    ExprPtr goal = lp.spec.goal();
    const ModuleInterpretation& interp = lp.spec.interp;

    EngineResult result;
    switch (opts.engine) {
      case EngineKind::GenCheck:
        result = gen_check(build_propagator(goal, interp, opts.strategy), lp.input, cfg);
        break;
      case EngineKind::PropagateSearch:
        result = propagate_search(build_propagator(goal, interp, opts.strategy),
                                  lp.input, cfg);
        break;
      case EngineKind::Learning:
        result = learning_solve(build_explaining(goal, interp, opts.strategy),
                                lp.input, cfg);
        break;
      case EngineKind::Cdl:
        result = cdl_solve(build_explaining(goal, interp, opts.strategy), lp.input, cfg);
        break;
    }

    std::vector<PartialStructure> models = std::move(result.models);
    if (opts.project_output)
      models = project_models(models, vocabulary_of(goal, interp));

    out << models.size() << " models\n";
    for (const auto& m : models) out << model_repr(m) << "\n";
    if (opts.stats) out << result.stats.to_json() << "\n";
    return models.empty() ? 1 : 0;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
}

int run_check(const CheckOptions& opts, std::ostream& out, std::ostream& err,
              const std::map<std::string, SolverPtr>& injected) {
  try {
    LoadedProblem lp = load(opts.problem_path, opts.input_path, err);
    ExprPtr goal = lp.spec.goal();
    const ModuleInterpretation& interp = lp.spec.interp;

    if (opts.oracle && lp.spec.sig->atom_count() > opts.atom_budget) {
      err << "error: " << lp.spec.sig->atom_count()
          << " atoms exceed the oracle budget of " << opts.atom_budget << "\n";
      return 2;
    }

    std::vector<std::pair<std::string, std::vector<PartialStructure>>> results;
    if (opts.oracle)
      results.emplace_back("oracle", enumerate_models(goal, interp, lp.input));
    for (EngineKind ek : opts.engines) {
      std::string name = engine_name(ek);
      SolverPtr solver;
      if (auto it = injected.find(name); it != injected.end()) {
        solver = it->second;
      } else {
        EngineConfig cfg;
        cfg.engine = ek;
        solver = solver_from(goal, interp, cfg);
      }
      auto models = solver->solve(lp.input);
      std::sort(models.begin(), models.end());
      results.emplace_back(std::move(name), std::move(models));
    }

    bool all_equal = true;
    for (size_t i = 1; i < results.size(); ++i) {
      if (results[i].second == results[0].second) continue;
      all_equal = false;
      out << "mismatch: " << results[i].first << " vs " << results[0].first << "\n";
      for (const auto& m : results[0].second)
        if (std::find(results[i].second.begin(), results[i].second.end(), m) ==
            results[i].second.end())
          out << "  missing from " << results[i].first << ": " << model_repr(m) << "\n";
      for (const auto& m : results[i].second)
        if (std::find(results[0].second.begin(), results[0].second.end(), m) ==
            results[0].second.end())
          out << "  extra in " << results[i].first << ": " << model_repr(m) << "\n";
    }
    if (all_equal) {
      out << "all " << results.size() << " model sets agree ("
          << results[0].second.size() << " models)\n";
      return 0;
    }
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"model expansion for modular systems"};
  app.require_subcommand(1);

  SolveOptions sopts;
  std::string engine = "cdl", strategy = "best", restart = "off";
  int first_k = -1;
  bool all_models = false;

  auto* solve_cmd = app.add_subcommand("solve", "enumerate models of a problem");
  solve_cmd->add_option("--problem", sopts.problem_path, "problem file")->required();
  solve_cmd->add_option("--input", sopts.input_path, "initial structure (JSON)");
  solve_cmd->add_option("--engine", engine, "gc|prop|learn|cdl");
  solve_cmd->add_option("--strategy", strategy, "checker|best");
  solve_cmd->add_flag("--all", all_models, "enumerate all models (default)");
  solve_cmd->add_option("--first", first_k, "stop after this many models");
  solve_cmd->add_flag("--project-output", sopts.project_output,
                      "restrict models to the goal's vocabulary");
  solve_cmd->add_option("--restart", restart, "off|conflict|luby:<n>");
  solve_cmd->add_option("--trace", sopts.trace_path, "trace file ('-' for stdout)");
  solve_cmd->add_flag("--stats", sopts.stats, "print run statistics");
  solve_cmd->add_option("--seed", sopts.seed, "reserved");

  CheckOptions copts;
  std::string engines_list = "gc,prop,learn,cdl";
  bool oracle_flag = false;

  auto* check_cmd = app.add_subcommand("check", "cross-check engines and oracle");
  check_cmd->add_option("--problem", copts.problem_path, "problem file")->required();
  check_cmd->add_option("--input", copts.input_path, "initial structure (JSON)");
  check_cmd->add_option("--engines", engines_list, "comma-separated engine list");
  check_cmd->add_flag("--oracle", oracle_flag, "compare against the enumeration oracle");
  check_cmd->add_option("--max-atoms", copts.atom_budget, "oracle atom budget");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }

  if (solve_cmd->parsed()) {
    auto ek = engine_from_name(engine);
    if (!ek) {
      err << "error: unknown engine '" << engine << "'\n";
      return 2;
    }
    sopts.engine = *ek;
    if (strategy == "best") {
      sopts.strategy = Strategy::Best;
    } else if (strategy == "checker") {
      sopts.strategy = Strategy::Checker;
    } else {
      err << "error: unknown strategy '" << strategy << "'\n";
      return 2;
    }
    if (first_k >= 0) sopts.first_k = first_k;
    if (restart == "off") {
      sopts.restart.kind = RestartPolicy::Kind::Off;
    } else if (restart == "conflict") {
      sopts.restart.kind = RestartPolicy::Kind::EveryConflict;
    } else if (restart.rfind("luby:", 0) == 0) {
      sopts.restart.kind = RestartPolicy::Kind::Luby;
      try {
        sopts.restart.luby_base = std::stoi(restart.substr(5));
      } catch (...) {
        err << "error: bad luby base in '" << restart << "'\n";
        return 2;
      }
    } else {
      err << "error: unknown restart policy '" << restart << "'\n";
      return 2;
    }
    return run_solve(sopts, out, err);
  }

  // check subcommand
  copts.oracle = oracle_flag || engines_list.empty();
  copts.engines.clear();
  std::stringstream ss(engines_list);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    auto ek = engine_from_name(item);
    if (!ek) {
      err << "error: unknown engine '" << item << "'\n";
      return 2;
    }
    copts.engines.push_back(*ek);
  }
  if (copts.engines.empty() && !copts.oracle) {
    err << "error: nothing to compare\n";
    return 2;
  }
  return run_check(copts, out, err);
}

}  // namespace modex
