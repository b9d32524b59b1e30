#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "modex/explain.hpp"
#include "modex/trace.hpp"

namespace modex {

enum class EngineKind { GenCheck, PropagateSearch, Learning, Cdl };

struct RestartPolicy {
  enum class Kind { Off, EveryConflict, Luby };
  Kind kind = Kind::Off;
  int luby_base = 32;
};

struct EngineStats {
  std::uint64_t decisions = 0;
  std::uint64_t propagations = 0;
  std::uint64_t conflicts = 0;
  std::uint64_t learned = 0;
  std::uint64_t restarts = 0;
  std::uint64_t models = 0;

  std::string to_json() const;
  bool operator==(const EngineStats&) const = default;
};

/// Explanation emitted during a run, kept for offline contract checks.
struct ExplanationRecord {
  EPropPtr source;
  EPropPtr explanation;
  PartialStructure pre_state;
};

struct EngineConfig {
  EngineKind engine = EngineKind::Cdl;
  Strategy strategy = Strategy::Best;
  /// Stop after this many models; nullopt enumerates all.
  std::optional<int> first_k;
  RestartPolicy restart;
  /// Reserved; branching is deterministic.
  unsigned seed = 0;
  TraceSink* trace = nullptr;

  /// Online contract checking (tests): explanation dominance, learned-clause
  /// consequence and progress, trail replay soundness.
  bool check_invariants = false;
  /// Oracle for the consequence check; required when check_invariants is set
  /// on a learning engine.
  const ModuleInterpretation* oracle_interp = nullptr;
  ExprPtr oracle_expr;
  std::vector<ExplanationRecord>* explanation_log = nullptr;
};

struct EngineResult {
  std::vector<PartialStructure> models;
  EngineStats stats;
};

// ---------------------------------------------------------------------------
// Solver state (exposed for conflict-analysis tests)
// ---------------------------------------------------------------------------

struct TrailEntry {
  enum class Reason { Decision, Propagation };
  int atom;
  TruthValue value;  // True or False
  int level;
  Reason reason;
  int pool_id = -1;    // propagations: pool member that fired
  int step = -1;       // propagations: index into SolverState::steps
  int clause_idx = -1; // clause-form propagations: implying clause
};

/// One pool-member application; its pre-state is the input joined with the
/// trail entries before `trail_begin`.
struct PoolStep {
  int pool_id;
  int trail_begin;
};

/// Insertion-ordered pool of explaining propagators, deduplicated by the
/// propagator's structural key. Ids are insertion indices and double as the
/// trace ids.
class PropagatorPool {
 public:
  /// Returns (id, inserted).
  std::pair<int, bool> add(EPropPtr ep);
  int size() const { return static_cast<int>(entries_.size()); }
  const EPropPtr& at(int id) const { return entries_[id]; }
  /// Ids sorted by (rank, id): the iteration order of the propagation loop.
  const std::vector<int>& sorted_ids() const { return sorted_; }

 private:
  std::vector<EPropPtr> entries_;
  std::vector<int> sorted_;
  std::map<std::string, int> by_key_;
};

struct SolverState {
  PartialStructure input;
  PartialStructure current;
  std::vector<TrailEntry> trail;
  std::vector<PoolStep> steps;
  PropagatorPool pool;
  int level = 0;

  bool in_conflict = false;
  int conflict_pool_id = -1;
  std::optional<Clause> conflict_clause;

  std::vector<PartialStructure> models;
  EngineStats stats;

  /// input joined with all trail entries of level <= max_level.
  PartialStructure replay(int max_level) const;
  /// Pre-state of a recorded pool step.
  PartialStructure pre_state_of_step(int step) const;
};

/// First-UIP conflict analysis over rank-0 reasons. Non-clause reasons are
/// reduced through their explanation chains; a chain that dead-ends is
/// treated as a decision-like literal that stays in the learned clause.
/// Requires an active conflict at level >= 1.
std::pair<PartialStructure, EPropPtr> handle_conflict(const SolverState& state);

// ---------------------------------------------------------------------------
// Engines
// ---------------------------------------------------------------------------

/// Depth-first generate and check: branch over unknown atoms (true first,
/// lowest atom index), keep two-valued leaves fixed by p.
EngineResult gen_check(const PropagatorPtr& p, const PartialStructure& b,
                       const EngineConfig& cfg = {});

/// gen_check with one application of p before every choice and immediate
/// backtracking on inconsistency.
EngineResult propagate_search(const PropagatorPtr& p, const PartialStructure& b,
                              const EngineConfig& cfg = {});

/// Learning solver: propagate with the rank-minimal firing pool member,
/// pool explanations as they appear, forbid found models, backtrack
/// chronologically.
EngineResult learning_solve(const EPropPtr& ep, const PartialStructure& b,
                            const EngineConfig& cfg = {});

/// Conflict-driven learning solver: learning_solve with first-UIP conflict
/// analysis, backjumping and optional restarts.
EngineResult cdl_solve(const EPropPtr& ep, const PartialStructure& b,
                       const EngineConfig& cfg = {});

/// Binds expression building to the configured engine.
SolverPtr solver_from(const ExprPtr& e, const ModuleInterpretation& interp,
                      const EngineConfig& cfg = {});

}  // namespace modex
