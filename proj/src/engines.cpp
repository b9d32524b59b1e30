#include "modex/engines.hpp"

#include <algorithm>
#include <cassert>
#include <functional>
#include <limits>
#include <set>
#include <sstream>
#include <stdexcept>

#include "modex/oracle.hpp"

namespace modex {

std::string EngineStats::to_json() const {
  std::ostringstream os;
  os << "{\"decisions\":" << decisions << ",\"propagations\":" << propagations
     << ",\"conflicts\":" << conflicts << ",\"learned\":" << learned
     << ",\"restarts\":" << restarts << ",\"models\":" << models << "}";
  return os.str();
}

std::pair<int, bool> PropagatorPool::add(EPropPtr ep) {
  std::string key = ep->prop()->dedup_key();
  if (auto it = by_key_.find(key); it != by_key_.end()) return {it->second, false};
  int id = static_cast<int>(entries_.size());
  entries_.push_back(std::move(ep));
  by_key_.emplace(std::move(key), id);
  sorted_.push_back(id);
  std::stable_sort(sorted_.begin(), sorted_.end(), [this](int a, int b) {
    int ra = entries_[a]->rank(), rb = entries_[b]->rank();
    return ra != rb ? ra < rb : a < b;
  });
  return {id, true};
}

PartialStructure SolverState::replay(int max_level) const {
  PartialStructure out = input;
  for (const auto& e : trail) {
    if (e.level > max_level) break;
    out.set(e.atom, e.value);
  }
  return out;
}

PartialStructure SolverState::pre_state_of_step(int step) const {
  PartialStructure out = input;
  int end = steps[step].trail_begin;
  for (int i = 0; i < end; ++i) out.set(trail[i].atom, trail[i].value);
  return out;
}

namespace {

std::string atom_val(const Signature& sig, int atom, TruthValue v) {
  return sig.atom_name(atom) + "=" + to_char(v);
}

std::string model_line(const PartialStructure& m) {
  std::string out = "MODEL {";
  for (int a = 0; a < m.atom_count(); ++a) {
    if (!is_decided(m.value(a))) continue;
    if (out.size() > 7) out += ',';
    out += atom_val(*m.sig(), a, m.value(a));
  }
  return out + "}";
}

std::string clause_set_string(const Signature& sig, const std::vector<Clause>& cs) {
  std::string out = "[";
  for (size_t i = 0; i < cs.size(); ++i) {
    if (i) out += "; ";
    std::string one = cs[i].to_string(sig);
    out += one.substr(1, one.size() - 2);
  }
  return out + "]";
}

int luby(int i) {
  // Classic Luby sequence, 0-based: 1 1 2 1 1 2 4 ...
  int size = 1, seq = 0;
  while (size < i + 1) {
    ++seq;
    size = 2 * size + 1;
  }
  while (size - 1 != i) {
    size = (size - 1) / 2;
    --seq;
    i = i % size;
  }
  return 1 << seq;
}

struct Decision {
  int atom;
  int trail_idx;       // index of the decision's trail entry
  bool tried_false;
  PartialStructure snapshot;  // gc/prop: structure before the decision
};

struct Analysis {
  Clause learned;
  int backjump_level;
  bool fallback = false;
};

/// Shared implementation behind the four engines.
class Engine {
 public:
  Engine(const EngineConfig& cfg) : cfg_(cfg) {}

  EngineConfig cfg_;
  SolverState st;
  std::vector<Decision> decisions;
  std::vector<int> trail_index_of_atom;
  // Clause-form pool members whose clauses are all satisfied stay quiet while
  // the satisfying trail entries persist; skip_below_[id] is the trail length
  // above which the member can be skipped (-2 = no skip).
  std::vector<int> skip_below_;

  void trace(const std::string& s) {
    if (cfg_.trace) cfg_.trace->line(s);
  }

  bool model_limit_reached() const {
    return cfg_.first_k && static_cast<int>(st.models.size()) >= *cfg_.first_k;
  }

  void init(const PartialStructure& input) {
    st.input = input;
    st.current = input;
    trail_index_of_atom.assign(input.atom_count(), -1);
  }

  bool atom_assigned(int atom) const {
    return trail_index_of_atom[atom] >= 0 || is_decided(st.input.value(atom));
  }

  int level_of_atom(int atom) const {
    int idx = trail_index_of_atom[atom];
    return idx >= 0 ? st.trail[idx].level : 0;
  }

  void push_entry(TrailEntry e) {
    trail_index_of_atom[e.atom] = static_cast<int>(st.trail.size());
    st.trail.push_back(e);
  }

  void truncate_trail(int new_len) {
    for (size_t i = new_len; i < st.trail.size(); ++i)
      trail_index_of_atom[st.trail[i].atom] = -1;
    st.trail.resize(new_len);
    while (!st.steps.empty() && st.steps.back().trail_begin >= new_len)
      st.steps.pop_back();
    // Skip marks that relied on removed trail entries are stale.
    for (auto& s : skip_below_)
      if (s >= new_len) s = -2;
  }

  void clear_conflict() {
    st.in_conflict = false;
    st.conflict_pool_id = -1;
    st.conflict_clause.reset();
  }

  // -- propagation ----------------------------------------------------------

  enum class PropOutcome { Quiet, Progress, Conflict };

  void set_skip(int id) {
    const auto& p = st.pool.at(id)->prop();
    const auto* cs = p->clause_form();
    if (!cs) return;
    int skip = -1;
    for (const auto& c : *cs) {
      int best = std::numeric_limits<int>::max();
      for (const auto& l : c.lits()) {
        if (!leq_p(TruthValue::True, literal_value(st.current, l))) continue;
        int idx = trail_index_of_atom[l.atom];
        best = std::min(best, idx);  // -1 when satisfied by the input
      }
      if (best == std::numeric_limits<int>::max()) return;  // clause not satisfied
      skip = std::max(skip, best);
    }
    skip_below_[id] = skip;
  }

  PropOutcome propagate_once() {
    skip_below_.resize(st.pool.size(), -2);
    for (int id : st.pool.sorted_ids()) {
      if (skip_below_[id] != -2 &&
          static_cast<int>(st.trail.size()) > skip_below_[id])
        continue;
      skip_below_[id] = -2;
      const EPropPtr& ep = st.pool.at(id);
      const Propagator& p = *ep->prop();
      std::vector<Propagator::UnitStep> usteps;
      PartialStructure post =
          p.clause_form() ? p.run_trace(st.current, &usteps) : p(st.current);
      if (post == st.current) {
        set_skip(id);
        continue;
      }

      PartialStructure pre = st.current;
      int step_idx = static_cast<int>(st.steps.size());
      st.steps.push_back({id, static_cast<int>(st.trail.size())});
      st.stats.propagations++;

      if (p.clause_form()) {
        for (const auto& us : usteps) {
          if (us.conflict) {
            st.current = PartialStructure::top(pre.sig());
            set_conflict(id, (*p.clause_form())[us.clause_idx]);
          } else {
            push_entry({us.atom, us.value, st.level, TrailEntry::Reason::Propagation,
                        id, step_idx, us.clause_idx});
            st.current.set(us.atom, us.value);
            trace("PROP " + std::to_string(id) + " " +
                  atom_val(*pre.sig(), us.atom, us.value));
          }
        }
      } else {
        for (int a = 0; a < post.atom_count(); ++a) {
          TruthValue nv = post.value(a);
          if (nv == pre.value(a) || !is_decided(nv)) continue;
          push_entry({a, nv, st.level, TrailEntry::Reason::Propagation, id, step_idx, -1});
          trace("PROP " + std::to_string(id) + " " + atom_val(*pre.sig(), a, nv));
        }
        st.current = post;
        if (!post.is_consistent()) set_conflict_reduced(id, pre);
      }

      EPropPtr expl = ep->explain(pre);
      if (expl) {
        if (cfg_.check_invariants) {
          PartialStructure expl_post = (*expl->prop())(pre);
          if (!leq_p(st.current, expl_post) || expl->rank() >= ep->rank())
            throw std::logic_error("explanation contract violated");
        }
        if (cfg_.explanation_log)
          cfg_.explanation_log->push_back({ep, expl, pre});
        auto [nid, inserted] = st.pool.add(expl);
        if (inserted) {
          st.stats.learned++;
          skip_below_.resize(st.pool.size(), -2);
        }
        std::string line = "EXPLAIN " + std::to_string(id) + " -> " +
                           std::to_string(nid) + " " + expl->prop()->name();
        if (const auto* cs = expl->prop()->clause_form())
          line += " " + clause_set_string(*pre.sig(), *cs);
        trace(line);
      }
      return st.in_conflict ? PropOutcome::Conflict : PropOutcome::Progress;
    }
    return PropOutcome::Quiet;
  }

  void set_conflict(int pool_id, Clause conflicting) {
    st.in_conflict = true;
    st.conflict_pool_id = pool_id;
    trace("CONFLICT " + st.current.sig()->atom_name(conflicting.max_atom()));
    st.conflict_clause = std::move(conflicting);
    st.stats.conflicts++;
  }

  /// Conflict from a non-clause propagator: reduce its explanation chain at
  /// the pre-state; without a clause-form chain the conflict stays
  /// unexplained and analysis falls back to decision learning.
  void set_conflict_reduced(int pool_id, const PartialStructure& pre) {
    st.in_conflict = true;
    st.conflict_pool_id = pool_id;
    st.stats.conflicts++;
    const EPropPtr& ep = st.pool.at(pool_id);
    EPropPtr chain = ep->explain(pre);
    while (chain && chain->rank() > 0) chain = chain->explain(pre);
    if (chain && chain->prop()->clause_form()) {
      std::vector<Propagator::UnitStep> us;
      chain->prop()->run_trace(pre, &us);
      for (const auto& s : us) {
        if (!s.conflict) continue;
        Clause c = (*chain->prop()->clause_form())[s.clause_idx];
        st.conflict_clause =
            fold_to_assigned(c, us, *chain->prop()->clause_form());
        trace("CONFLICT " + pre.sig()->atom_name(st.conflict_clause->max_atom()));
        return;
      }
    }
    int rep = 0;
    for (int a = 0; a < st.current.atom_count(); ++a)
      if (st.current.value(a) == TruthValue::Inconsistent) {
        rep = a;
        break;
      }
    trace("CONFLICT " + st.current.sig()->atom_name(rep));
  }

  /// Resolves away literals that were derived only inside a reduced
  /// explanation trace, leaving a clause over trail- or input-assigned atoms.
  Clause fold_to_assigned(Clause c, const std::vector<Propagator::UnitStep>& us,
                          const std::vector<Clause>& clauses) {
    for (bool changed = true; changed;) {
      changed = false;
      for (const auto& l : c.lits()) {
        if (atom_assigned(l.atom)) continue;
        for (auto it = us.rbegin(); it != us.rend(); ++it) {
          if (it->conflict || it->atom != l.atom) continue;
          c = resolve_minimal(c, clauses[it->clause_idx], l.atom);
          changed = true;
          break;
        }
        if (changed) break;
      }
    }
    return c;
  }

  // -- conflict analysis ----------------------------------------------------

  std::optional<Clause> reason_clause(const TrailEntry& e) {
    const EPropPtr& ep = st.pool.at(e.pool_id);
    if (e.clause_idx >= 0) return (*ep->prop()->clause_form())[e.clause_idx];
    PartialStructure pre = st.pre_state_of_step(e.step);
    EPropPtr chain = ep->explain(pre);
    while (chain && chain->rank() > 0) chain = chain->explain(pre);
    if (!chain || !chain->prop()->clause_form()) return std::nullopt;
    std::vector<Propagator::UnitStep> us;
    chain->prop()->run_trace(pre, &us);
    for (const auto& s : us) {
      if (s.conflict || s.atom != e.atom || s.value != e.value) continue;
      Clause c = (*chain->prop()->clause_form())[s.clause_idx];
      return fold_to_assigned(c, us, *chain->prop()->clause_form());
    }
    return std::nullopt;
  }

  Analysis fallback_analysis() {
    // Negate every decision and every input-assigned literal; always a
    // consequence of the pool since those are the only unexplained sources.
    std::vector<Literal> lits;
    for (const auto& d : decisions) {
      const TrailEntry& e = st.trail[d.trail_idx];
      lits.push_back({e.atom, e.value == TruthValue::False});
    }
    for (int a = 0; a < st.input.atom_count(); ++a)
      if (is_decided(st.input.value(a)))
        lits.push_back({a, st.input.value(a) == TruthValue::False});
    Analysis out;
    out.learned = *Clause::make(std::move(lits));
    out.backjump_level = 0;
    for (const auto& l : out.learned.lits()) {
      int lv = level_of_atom(l.atom);
      if (lv < st.level) out.backjump_level = std::max(out.backjump_level, lv);
    }
    out.fallback = true;
    return out;
  }

  Analysis analyze() {
    if (!st.conflict_clause) return fallback_analysis();
    Clause cur = *st.conflict_clause;
    std::vector<int> sticky;
    while (true) {
      int at_level = 0;
      for (const auto& l : cur.lits())
        if (level_of_atom(l.atom) == st.level) ++at_level;
      if (at_level <= 1) break;

      // Latest-assigned resolvable literal at the conflict level.
      int best_idx = -1, best_atom = -1;
      for (const auto& l : cur.lits()) {
        if (level_of_atom(l.atom) != st.level) continue;
        int idx = trail_index_of_atom[l.atom];
        if (idx < 0 || st.trail[idx].reason != TrailEntry::Reason::Propagation)
          continue;
        if (std::find(sticky.begin(), sticky.end(), l.atom) != sticky.end())
          continue;
        if (idx > best_idx) {
          best_idx = idx;
          best_atom = l.atom;
        }
      }
      if (best_idx < 0) {
        // Only decisions or unexplained propagations left at this level.
        if (at_level > 1) return fallback_analysis();
        break;
      }
      auto rc = reason_clause(st.trail[best_idx]);
      if (!rc) {
        sticky.push_back(best_atom);  // decision-like: keep its literal
        continue;
      }
      cur = resolve_minimal(cur, *rc, best_atom);
    }

    Analysis out;
    out.learned = cur;
    out.backjump_level = 0;
    for (const auto& l : cur.lits()) {
      int lv = level_of_atom(l.atom);
      if (lv < st.level) out.backjump_level = std::max(out.backjump_level, lv);
    }
    return out;
  }

  // -- invariants (test mode) ----------------------------------------------

  std::vector<PartialStructure> oracle_models_;
  bool oracle_ready_ = false;
  std::set<std::string> recorded_keys_;

  void check_learned(const Clause& learned, int learned_id, bool inserted,
                     const PartialStructure& bj_state) {
    if (!cfg_.check_invariants) return;
    (void)learned_id;
    // A deduplicated clause was already checked against a superset of the
    // unenumerated models when it first entered the pool.
    if (inserted && cfg_.oracle_interp && cfg_.oracle_expr) {
      if (!oracle_ready_) {
        oracle_models_ = enumerate_models(cfg_.oracle_expr, *cfg_.oracle_interp, st.input);
        oracle_ready_ = true;
      }
      for (const auto& m : oracle_models_) {
        if (recorded_keys_.count(m.key())) continue;  // enumerated and forbidden
        if (!learned.satisfied_by(m))
          throw std::logic_error("learned clause is not a consequence");
      }
    }
    // Progress: the learned clause is asserting (or conflicting) at the
    // backjump state, so adding it strictly strengthens propagation there.
    // Pooled explanations and earlier learned clauses may meanwhile re-derive
    // the same assertion through longer chains, so the comparison is against
    // the state, not the whole pool's closure.
    PartialStructure fired = (*unit_propagator(st.input.sig(), {learned}))(bj_state);
    if (!(leq_p(bj_state, fired) && !(fired == bj_state)))
      throw std::logic_error("learned clause does not fire at the backjump state");
  }

  void check_trail_replay() {
    if (!cfg_.check_invariants || st.in_conflict) return;
    if (!(st.replay(st.level) == st.current))
      throw std::logic_error("trail replay does not reproduce the state");
  }

  // -- shared engine steps --------------------------------------------------

  void decide() {
    int atom = -1;
    for (int a = 0; a < st.current.atom_count(); ++a)
      if (st.current.value(a) == TruthValue::Unknown) {
        atom = a;
        break;
      }
    assert(atom >= 0);
    st.level++;
    decisions.push_back({atom, static_cast<int>(st.trail.size()), false, {}});
    push_entry({atom, TruthValue::True, st.level, TrailEntry::Reason::Decision, -1, -1, -1});
    st.current.set(atom, TruthValue::True);
    st.stats.decisions++;
    trace("DECIDE " + atom_val(*st.current.sig(), atom, TruthValue::True) + "@" +
          std::to_string(st.level));
  }

  /// Chronological backtracking over the trail: flip the deepest
  /// true-decision to false, undoing everything after it.
  bool backtrack_chrono() {
    while (!decisions.empty()) {
      Decision& d = decisions.back();
      if (d.tried_false) {
        truncate_trail(d.trail_idx);
        decisions.pop_back();
        continue;
      }
      d.tried_false = true;
      truncate_trail(d.trail_idx);
      st.level = static_cast<int>(decisions.size());
      push_entry({d.atom, TruthValue::False, st.level, TrailEntry::Reason::Decision,
                  -1, -1, -1});
      st.current = st.replay(st.level);
      clear_conflict();
      st.stats.decisions++;
      trace("DECIDE " + atom_val(*st.current.sig(), d.atom, TruthValue::False) + "@" +
            std::to_string(st.level));
      return true;
    }
    return false;
  }

  void backjump_to(int bj_level) {
    int new_len = static_cast<int>(st.trail.size());
    for (size_t i = 0; i < st.trail.size(); ++i)
      if (st.trail[i].level > bj_level) {
        new_len = static_cast<int>(i);
        break;
      }
    truncate_trail(new_len);
    decisions.resize(bj_level);
    st.level = bj_level;
    st.current = st.replay(bj_level);
    clear_conflict();
  }

  void record_model() {
    st.models.push_back(st.current);
    st.stats.models++;
    if (cfg_.check_invariants) recorded_keys_.insert(st.current.key());
    trace(model_line(st.current));
  }

  EngineResult finish() {
    trace("STATS " + st.stats.to_json());
    std::sort(st.models.begin(), st.models.end());
    return {std::move(st.models), st.stats};
  }

  // -- learning engines -----------------------------------------------------

  EngineResult run_learning(const EPropPtr& root, const PartialStructure& input,
                            bool conflict_driven) {
    init(input);
    st.pool.add(root);
    int conflicts_since_restart = 0;
    int restart_run = 1;

    if (!input.is_consistent()) {
      // No two-valued structure extends an inconsistent input.
      return finish();
    }

    while (true) {
      PropOutcome oc = propagate_once();
      if (oc == PropOutcome::Progress) {
        check_trail_replay();
        continue;
      }

      if (oc == PropOutcome::Conflict) {
        if (!conflict_driven) {
          if (!backtrack_chrono()) return finish();
          continue;
        }
        if (st.level == 0) return finish();
        Analysis a = analyze();
        PartialStructure bj_state = st.replay(a.backjump_level);
        EPropPtr learned_ep =
            lift(unit_propagator(input.sig(), {a.learned}, "learned"));
        auto [lid, inserted] = st.pool.add(learned_ep);
        if (inserted) {
          st.stats.learned++;
          skip_below_.resize(st.pool.size(), -2);
        }
        trace("LEARN " + a.learned.to_string(*input.sig()) +
              " backjump=" + std::to_string(a.backjump_level));
        check_learned(a.learned, lid, inserted, bj_state);
        backjump_to(a.backjump_level);

        bool restart = false;
        ++conflicts_since_restart;
        if (cfg_.restart.kind == RestartPolicy::Kind::EveryConflict) restart = true;
        if (cfg_.restart.kind == RestartPolicy::Kind::Luby &&
            conflicts_since_restart >= cfg_.restart.luby_base * luby(restart_run - 1))
          restart = true;
        if (restart && st.level > 0) {
          ++restart_run;
          conflicts_since_restart = 0;
          truncate_trail(0);
          decisions.clear();
          st.level = 0;
          st.current = st.input;
          clear_conflict();
          st.stats.restarts++;
          trace("RESTART");
        }
        continue;
      }

      // Quiet: the pool is at a fixed point.
      check_trail_replay();
      if (st.current.is_two_valued()) {
        record_model();
        if (model_limit_reached()) return finish();
        auto [fid, inserted] = st.pool.add(lift(forbid_model_checker(st.current)));
        (void)fid;
        if (inserted) {
          st.stats.learned++;
          skip_below_.resize(st.pool.size(), -2);
        }
        if (!conflict_driven) {
          if (!backtrack_chrono()) return finish();
        }
        // cdl: the forbid clause conflicts on the next propagation round.
        continue;
      }
      decide();
    }
  }

  // -- generate-and-check and propagate-and-search ---------------------------

  EngineResult run_basic(const PropagatorPtr& p, const PartialStructure& input,
                         bool propagate) {
    init(input);
    if (!input.is_consistent()) return finish();

    while (true) {
      if (propagate) {
        PartialStructure post = (*p)(st.current);
        st.stats.propagations++;
        st.current = std::move(post);
      }
      if (!st.current.is_consistent()) {
        st.stats.conflicts++;
        int rep = 0;
        for (int a = 0; a < st.current.atom_count(); ++a)
          if (st.current.value(a) == TruthValue::Inconsistent) {
            rep = a;
            break;
          }
        trace("CONFLICT " + st.current.sig()->atom_name(rep));
        if (!backtrack_basic()) return finish();
        continue;
      }
      if (st.current.is_two_valued()) {
        if ((*p)(st.current) == st.current) {
          record_model();
          if (model_limit_reached()) return finish();
        }
        if (!backtrack_basic()) return finish();
        continue;
      }
      int atom = -1;
      for (int a = 0; a < st.current.atom_count(); ++a)
        if (st.current.value(a) == TruthValue::Unknown) {
          atom = a;
          break;
        }
      st.level++;
      decisions.push_back({atom, -1, false, st.current});
      st.current.set(atom, TruthValue::True);
      st.stats.decisions++;
      trace("DECIDE " + atom_val(*st.current.sig(), atom, TruthValue::True) + "@" +
            std::to_string(st.level));
    }
  }

  bool backtrack_basic() {
    while (!decisions.empty()) {
      Decision& d = decisions.back();
      if (d.tried_false) {
        decisions.pop_back();
        continue;
      }
      d.tried_false = true;
      st.level = static_cast<int>(decisions.size());
      st.current = d.snapshot.updated(d.atom, TruthValue::False);
      st.stats.decisions++;
      trace("DECIDE " + atom_val(*st.current.sig(), d.atom, TruthValue::False) + "@" +
            std::to_string(st.level));
      return true;
    }
    return false;
  }
};

}  // namespace

std::pair<PartialStructure, EPropPtr> handle_conflict(const SolverState& state) {
  if (!state.in_conflict)
    throw std::logic_error("handle_conflict requires an inconsistent state");
  if (state.level < 1)
    throw std::logic_error("level-0 conflicts are handled by the caller");
  // Run the analysis on a scratch engine that borrows the state.
  EngineConfig cfg;
  Engine eng(cfg);
  eng.st = state;
  eng.trail_index_of_atom.assign(state.input.atom_count(), -1);
  for (size_t i = 0; i < state.trail.size(); ++i)
    eng.trail_index_of_atom[state.trail[i].atom] = static_cast<int>(i);
  for (const auto& e : state.trail)
    if (e.reason == TrailEntry::Reason::Decision)
      eng.decisions.push_back({e.atom, eng.trail_index_of_atom[e.atom], false, {}});
  Analysis a = eng.analyze();
  PartialStructure bj = state.replay(a.backjump_level);
  return {bj, lift(unit_propagator(state.input.sig(), {a.learned}, "learned"))};
}

EngineResult gen_check(const PropagatorPtr& p, const PartialStructure& b,
                       const EngineConfig& cfg) {
  Engine eng(cfg);
  return eng.run_basic(p, b, /*propagate=*/false);
}

EngineResult propagate_search(const PropagatorPtr& p, const PartialStructure& b,
                              const EngineConfig& cfg) {
  Engine eng(cfg);
  return eng.run_basic(p, b, /*propagate=*/true);
}

EngineResult learning_solve(const EPropPtr& ep, const PartialStructure& b,
                            const EngineConfig& cfg) {
  Engine eng(cfg);
  return eng.run_learning(ep, b, /*conflict_driven=*/false);
}

EngineResult cdl_solve(const EPropPtr& ep, const PartialStructure& b,
                       const EngineConfig& cfg) {
  Engine eng(cfg);
  return eng.run_learning(ep, b, /*conflict_driven=*/true);
}

SolverPtr solver_from(const ExprPtr& e, const ModuleInterpretation& interp,
                      const EngineConfig& cfg) {
  switch (cfg.engine) {
    case EngineKind::GenCheck:
    case EngineKind::PropagateSearch: {
      PropagatorPtr p = build_propagator(e, interp, cfg.strategy);
      bool prop = cfg.engine == EngineKind::PropagateSearch;
      return std::make_shared<FunctionSolver>(
          [p, cfg, prop](const PartialStructure& b) {
            return prop ? propagate_search(p, b, cfg).models
                        : gen_check(p, b, cfg).models;
          });
    }
    case EngineKind::Learning:
    case EngineKind::Cdl: {
      EPropPtr ep = build_explaining(e, interp, cfg.strategy);
      bool cd = cfg.engine == EngineKind::Cdl;
      return std::make_shared<FunctionSolver>(
          [ep, cfg, cd](const PartialStructure& b) {
            return cd ? cdl_solve(ep, b, cfg).models
                      : learning_solve(ep, b, cfg).models;
          });
    }
  }
  throw std::logic_error("unreachable");
}

}  // namespace modex
