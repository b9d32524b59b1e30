#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "modex/engines.hpp"
#include "modex/problem.hpp"

namespace modex {

struct SolveOptions {
  std::string problem_path;
  std::string input_path;   // optional initial structure
  EngineKind engine = EngineKind::Cdl;
  Strategy strategy = Strategy::Best;
  std::optional<int> first_k;
  bool project_output = false;
  RestartPolicy restart;
  std::string trace_path;   // "-" for stdout
  bool stats = false;
  unsigned seed = 0;
};

struct CheckOptions {
  std::string problem_path;
  std::string input_path;
  std::vector<EngineKind> engines{EngineKind::GenCheck, EngineKind::PropagateSearch,
                                  EngineKind::Learning, EngineKind::Cdl};
  bool oracle = true;
  int atom_budget = 16;
};

/// Solves a problem file. Exit 0 with at least one model, 1 with none,
/// 2 on usage, parse or schema errors.
int run_solve(const SolveOptions& opts, std::ostream& out, std::ostream& err);

/// Cross-checks the configured engines (and optionally the enumeration
/// oracle) on one problem. Exit 0 when every model set agrees, 1 with a
/// printed diff otherwise, 2 on errors or when the oracle budget is
/// exceeded. `injected` lets tests swap in broken solvers by engine name.
int run_check(const CheckOptions& opts, std::ostream& out, std::ostream& err,
              const std::map<std::string, SolverPtr>& injected = {});

/// Full argv interface with `solve` and `check` subcommands.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

const char* engine_name(EngineKind k);
std::optional<EngineKind> engine_from_name(const std::string& name);

}  // namespace modex
