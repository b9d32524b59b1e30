#pragma once

#include <atomic>
#include <cstdint>
#include <functional>
#include <memory>
#include <mutex>
#include <string>
#include <unordered_map>
#include <vector>

#include "modex/clause.hpp"
#include "modex/module_expr.hpp"
#include "modex/structure.hpp"

namespace modex {

/// Per-propagator instrumentation. `inner_solver_calls` stays zero for every
/// combinator except projection and nested negation; the acceptance suite
/// asserts this.
struct PropagatorStats {
  mutable std::atomic<std::uint64_t> propagate_calls{0};
  mutable std::atomic<std::uint64_t> inner_solver_calls{0};
  mutable std::atomic<std::uint64_t> inner_calls_at_delta_two_valued{0};
};

/// Deterministic, monotone, information-preserving operator on partial
/// structures. Implementations are pure up to instrumentation counters and
/// freely shareable between threads.
class Propagator {
 public:
  /// One recorded firing of a clause-form propagator: either a unit
  /// derivation through clause `clause_idx`, or a conflict on that clause
  /// (the structure then jumps to top).
  struct UnitStep {
    int clause_idx;
    int atom;       // -1 on conflict steps
    TruthValue value;
    bool conflict;
  };

  virtual ~Propagator() = default;

  PartialStructure operator()(const PartialStructure& b) const {
    stats_.propagate_calls.fetch_add(1, std::memory_order_relaxed);
    return run(b);
  }

  /// Simplicity rank for the learning order: 0 means clause-form.
  int rank() const { return rank_; }
  const std::string& name() const { return name_; }
  /// Construction-order id; engines use pool insertion ids for traces.
  int uid() const { return uid_; }

  /// Non-null exactly for clause-form (rank 0) propagators.
  virtual const std::vector<Clause>* clause_form() const { return nullptr; }
  /// Like operator() but reports per-literal steps; only clause-form
  /// propagators produce steps.
  virtual PartialStructure run_trace(const PartialStructure& b,
                                     std::vector<UnitStep>* steps) const {
    (void)steps;
    return (*this)(b);
  }

  /// Structural identity for pool deduplication. Clause-form propagators
  /// share a key when their clause sets are equal; everything else is unique.
  virtual std::string dedup_key() const { return "inst:" + std::to_string(uid_); }

  const PropagatorStats& stats() const { return stats_; }

  /// Test-only metadata: the module expression this propagator was built
  /// for. Engines never read it.
  ExprPtr module_tag;

 protected:
  Propagator(int rank, std::string name);
  virtual PartialStructure run(const PartialStructure& b) const = 0;

  PropagatorStats stats_;

 private:
  int rank_;
  std::string name_;
  int uid_;
};

using PropagatorPtr = std::shared_ptr<const Propagator>;

/// Model-expansion procedure: all two-valued structures above the input that
/// belong to the solver's module.
class Solver {
 public:
  virtual ~Solver() = default;
  virtual std::vector<PartialStructure> solve(const PartialStructure& b) const = 0;
};

using SolverPtr = std::shared_ptr<const Solver>;

class FunctionSolver : public Solver {
 public:
  using Fn = std::function<std::vector<PartialStructure>(const PartialStructure&)>;
  explicit FunctionSolver(Fn fn) : fn_(std::move(fn)) {}
  std::vector<PartialStructure> solve(const PartialStructure& b) const override {
    return fn_(b);
  }

 private:
  Fn fn_;
};

/// Caches solve results by input; sound because solvers are pure.
class MemoSolver : public Solver {
 public:
  explicit MemoSolver(SolverPtr inner) : inner_(std::move(inner)) {}
  std::vector<PartialStructure> solve(const PartialStructure& b) const override;

 private:
  SolverPtr inner_;
  mutable std::mutex mu_;
  mutable std::unordered_map<std::string, std::vector<PartialStructure>> memo_;
};

}  // namespace modex
