#include <doctest.h>

#include <sstream>

#include "modex/cli.hpp"
#include "modex/engines.hpp"
#include "modex/oracle.hpp"
#include "support.hpp"

using namespace modex;
using TV = TruthValue;

namespace {

SignaturePtr props(int n) {
  std::vector<Predicate> preds;
  for (int i = 0; i < n; ++i) preds.push_back({std::string(1, char('p' + i)), 0});
  return Signature::make(Domain({"a"}), preds);
}

Clause cl(std::vector<Literal> lits) { return *Clause::make(std::move(lits)); }

ModuleInterpretation clause_world(const SignaturePtr& sig, std::vector<Clause> cs) {
  ModuleInterpretation interp{sig, {}};
  interp.defs.emplace("C", make_clause_module(sig, SymbolSet::all(sig), std::move(cs)));
  return interp;
}

EngineConfig checked_cfg(const ModuleInterpretation& interp, const ExprPtr& e) {
  EngineConfig cfg;
  cfg.check_invariants = true;
  cfg.oracle_interp = &interp;
  cfg.oracle_expr = e;
  return cfg;
}

}  // namespace

TEST_CASE("resolve_minimal: spec examples") {
  // atoms p=0, q=1, r=2
  auto r1 = resolve_minimal(cl({{0, false}, {1, true}}), cl({{0, false}, {1, false}}), 1);
  CHECK(r1 == cl({{0, false}}));
  auto r2 = resolve_minimal(cl({{0, true}}), cl({{0, false}}), 0);
  CHECK(r2.empty());
  auto r3 = resolve_minimal(cl({{0, true}, {1, true}}), cl({{1, false}, {2, true}}), 1);
  CHECK(r3 == cl({{0, true}, {2, true}}));

  CHECK_THROWS_AS(resolve_minimal(cl({{0, true}}), cl({{1, true}}), 0),
                  std::invalid_argument);
  CHECK_THROWS_AS(resolve_minimal(cl({{0, true}}), cl({{0, true}}), 0),
                  std::invalid_argument);
  // a tautological resolvent is an analysis-ordering bug
  CHECK_THROWS_AS(resolve_minimal(cl({{0, true}, {1, true}}),
                                  cl({{0, false}, {1, false}}), 0),
                  std::logic_error);
}

TEST_CASE("gen_check: spec examples") {
  auto sig = props(2);
  auto interp = clause_world(sig, {cl({{0, true}, {1, true}})});
  auto p = build_propagator(atomic("C"), interp);

  auto result = gen_check(p, PartialStructure::bottom(sig));
  CHECK(result.models.size() == 3);
  CHECK(result.models ==
        enumerate_models(atomic("C"), interp, PartialStructure::bottom(sig)));

  // a two-valued model input returns itself
  auto model = PartialStructure::bottom(sig);
  model.set(0, TV::True);
  model.set(1, TV::False);
  auto single = gen_check(p, model);
  REQUIRE(single.models.size() == 1);
  CHECK(single.models[0] == model);

  // inconsistent input has no two-valued extensions
  CHECK(gen_check(p, model.updated(0, TV::Inconsistent)).models.empty());
}

TEST_CASE("propagate_search: spec examples") {
  auto sig = props(2);
  // contradictory units fail with zero decisions
  auto unsat = clause_world(sig, {cl({{0, true}}), cl({{0, false}})});
  auto pu = build_propagator(atomic("C"), unsat);
  auto r = propagate_search(pu, PartialStructure::bottom(sig));
  CHECK(r.models.empty());
  CHECK(r.stats.decisions == 0);

  // a unit chain solves without wrong branches
  auto sig3 = props(3);
  auto chain = clause_world(sig3, {cl({{0, true}}), cl({{0, false}, {1, true}}),
                                   cl({{1, false}, {2, true}})});
  auto pc = build_propagator(atomic("C"), chain);
  auto rc = propagate_search(pc, PartialStructure::bottom(sig3));
  REQUIRE(rc.models.size() == 1);
  CHECK(rc.stats.decisions == 0);
  CHECK(rc.models[0].value(2) == TV::True);
}

TEST_CASE("all four engines agree with the oracle on random problems") {
  for (unsigned seed = 0; seed < 30; ++seed) {
    auto rp = test::random_problem(seed);
    auto input = PartialStructure::bottom(rp.interp.sig);
    auto oracle = enumerate_models(rp.expr, rp.interp, input);
    for (EngineKind ek : {EngineKind::GenCheck, EngineKind::PropagateSearch,
                          EngineKind::Learning, EngineKind::Cdl}) {
      for (Strategy s : {Strategy::Best, Strategy::Checker}) {
        EngineConfig cfg;
        cfg.engine = ek;
        cfg.strategy = s;
        auto models = solver_from(rp.expr, rp.interp, cfg)->solve(input);
        std::sort(models.begin(), models.end());
        REQUIRE_MESSAGE(models == oracle,
                        "engine ", engine_name(ek), " strategy ",
                        (s == Strategy::Best ? "best" : "checker"), " seed ", seed);
      }
    }
  }
}

TEST_CASE("engines honor partial inputs") {
  test::Rng rng(61);
  for (unsigned seed = 0; seed < 10; ++seed) {
    auto rp = test::random_problem(seed);
    auto input = test::random_structure(rp.interp.sig, rng, true, 0.3);
    auto oracle = enumerate_models(rp.expr, rp.interp, input);
    for (EngineKind ek : {EngineKind::PropagateSearch, EngineKind::Cdl}) {
      EngineConfig cfg;
      cfg.engine = ek;
      auto models = solver_from(rp.expr, rp.interp, cfg)->solve(input);
      std::sort(models.begin(), models.end());
      CHECK(models == oracle);
    }
  }
}

TEST_CASE("cdl golden trace for {-p|q, -p|-q}") {
  auto sig = props(2);
  auto interp = clause_world(sig, {cl({{0, false}, {1, true}}),
                                   cl({{0, false}, {1, false}})});
  auto ep = build_explaining(atomic("C"), interp);

  std::ostringstream trace;
  TraceSink sink(trace);
  EngineConfig cfg = checked_cfg(interp, atomic("C"));
  cfg.trace = &sink;
  auto result = cdl_solve(ep, PartialStructure::bottom(sig), cfg);

  REQUIRE(result.models.size() == 2);  // p:F with q free
  CHECK(result.models[0].value(0) == TV::False);
  CHECK(result.models[1].value(0) == TV::False);

  const std::string expected =
      "DECIDE p=t@1\n"
      "PROP 0 q=t\n"
      "CONFLICT q\n"
      "LEARN [-p] backjump=0\n"
      "PROP 1 p=f\n"
      "DECIDE q=t@1\n"
      "MODEL {p=f,q=t}\n"
      "CONFLICT q\n"
      "LEARN [p -q] backjump=0\n"
      "PROP 2 q=f\n"
      "MODEL {p=f,q=f}\n"
      "CONFLICT q\n"
      "STATS " + result.stats.to_json() + "\n";
  CHECK(trace.str() == expected);
}

TEST_CASE("cdl on contradictory units stops at level zero") {
  auto sig = props(2);
  auto interp = clause_world(sig, {cl({{0, true}}), cl({{0, false}})});
  auto ep = build_explaining(atomic("C"), interp);
  auto r = cdl_solve(ep, PartialStructure::bottom(sig));
  CHECK(r.models.empty());
  CHECK(r.stats.decisions == 0);
  CHECK(r.stats.conflicts == 1);
}

TEST_CASE("handle_conflict on a hand-built state") {
  auto sig = props(2);
  auto interp = clause_world(sig, {cl({{0, false}, {1, true}}),
                                   cl({{0, false}, {1, false}})});

  SolverState st;
  st.input = PartialStructure::bottom(sig);
  st.pool.add(build_explaining(atomic("C"), interp));
  // decide p:T at level 1, propagate q:T by clause 0, then clause 1 conflicts
  st.trail.push_back({0, TV::True, 1, TrailEntry::Reason::Decision, -1, -1, -1});
  st.steps.push_back({0, 1});
  st.trail.push_back({1, TV::True, 1, TrailEntry::Reason::Propagation, 0, 0, 0});
  st.level = 1;
  st.current = PartialStructure::top(sig);
  st.in_conflict = true;
  st.conflict_pool_id = 0;
  st.conflict_clause = cl({{0, false}, {1, false}});

  auto [bj_state, learned] = handle_conflict(st);
  CHECK(bj_state == PartialStructure::bottom(sig));  // backjump to level 0
  REQUIRE(learned->prop()->clause_form());
  CHECK((*learned->prop()->clause_form())[0] == cl({{0, false}}));

  SolverState no_conflict = st;
  no_conflict.in_conflict = false;
  CHECK_THROWS_AS(handle_conflict(no_conflict), std::logic_error);
}

TEST_CASE("learning solver grows the pool and reuses clause explanations") {
  // bounds module: the first propagation pools the transfer clauses
  auto sig = Signature::make(Domain({"1", "2", "3"}), {{"Qc", 1}, {"Qd", 1}});
  ModuleInterpretation interp{sig, {}};
  interp.defs.emplace("B", make_bounds_leq(sig, SymbolSet::all(sig), "Qc", "Qd"));
  auto ep = build_explaining(atomic("B"), interp);

  auto input = PartialStructure::bottom(sig).updated(3, TV::True);  // Qd(1):T
  std::ostringstream trace;
  TraceSink sink(trace);
  EngineConfig cfg;
  cfg.trace = &sink;
  auto result = learning_solve(ep, input, cfg);

  auto oracle = enumerate_models(atomic("B"), interp, input);
  CHECK(result.models == oracle);
  CHECK(result.stats.learned > 0);
  CHECK(trace.str().find("EXPLAIN 0 ->") != std::string::npos);

  // once pooled, the clause explanations (rank 0) take over propagation
  bool clause_member_fired = false;
  std::istringstream lines(trace.str());
  std::string line;
  while (std::getline(lines, line))
    if (line.rfind("PROP ", 0) == 0 && line.rfind("PROP 0 ", 0) != 0)
      clause_member_fired = true;
  CHECK(clause_member_fired);
}

TEST_CASE("learning solver never revisits a recorded model") {
  auto sig = props(2);
  auto interp = clause_world(sig, {cl({{0, true}, {1, true}})});
  auto ep = build_explaining(atomic("C"), interp);
  auto result = learning_solve(ep, PartialStructure::bottom(sig));
  auto oracle = enumerate_models(atomic("C"), interp, PartialStructure::bottom(sig));
  CHECK(result.models == oracle);
  CHECK(result.stats.models == oracle.size());  // each model recorded exactly once
}

TEST_CASE("learning solver on an unsatisfiable module") {
  auto sig = props(2);
  auto interp = clause_world(sig, {cl({{0, true}}), cl({{0, false}})});
  auto ep = build_explaining(atomic("C"), interp);
  CHECK(learning_solve(ep, PartialStructure::bottom(sig)).models.empty());
}

TEST_CASE("cdl with invariant checking over random problems") {
  for (unsigned seed = 0; seed < 15; ++seed) {
    auto rp = test::random_problem(seed);
    if (rp.interp.sig->atom_count() > 10) continue;
    auto ep = build_explaining(rp.expr, rp.interp);
    std::vector<ExplanationRecord> log;
    EngineConfig cfg = checked_cfg(rp.interp, rp.expr);
    cfg.explanation_log = &log;
    auto input = PartialStructure::bottom(rp.interp.sig);
    auto result = cdl_solve(ep, input, cfg);  // throws on any violated contract
    auto oracle = enumerate_models(rp.expr, rp.interp, input);
    CHECK(result.models == oracle);

    // offline: module(p) within module(p') for a sample of explanations
    int checked = 0;
    for (const auto& rec : log) {
      if (++checked > 3) break;
      auto mod_p = test::sorted_models(module_of(rec.source->prop(), rp.interp.sig));
      auto mod_e = test::sorted_models(module_of(rec.explanation->prop(), rp.interp.sig));
      for (const auto& m : mod_p)
        CHECK(std::find(mod_e.begin(), mod_e.end(), m) != mod_e.end());
    }
  }
}

TEST_CASE("restart policies keep the result intact") {
  auto sig = props(3);
  auto interp = clause_world(sig, {cl({{0, true}, {1, true}}),
                                   cl({{1, false}, {2, true}}),
                                   cl({{0, false}, {2, false}})});
  auto ep = build_explaining(atomic("C"), interp);
  auto input = PartialStructure::bottom(sig);
  auto oracle = enumerate_models(atomic("C"), interp, input);

  for (auto kind : {RestartPolicy::Kind::Off, RestartPolicy::Kind::EveryConflict,
                    RestartPolicy::Kind::Luby}) {
    EngineConfig cfg;
    cfg.restart.kind = kind;
    cfg.restart.luby_base = 1;
    auto result = cdl_solve(ep, input, cfg);
    CHECK(result.models == oracle);
    if (kind == RestartPolicy::Kind::Off) CHECK(result.stats.restarts == 0);
  }
}

TEST_CASE("first-k limit returns a subset") {
  auto sig = props(3);
  auto interp = clause_world(sig, {cl({{0, true}, {1, true}})});
  auto input = PartialStructure::bottom(sig);
  auto all = enumerate_models(atomic("C"), interp, input);
  for (EngineKind ek : {EngineKind::GenCheck, EngineKind::PropagateSearch,
                        EngineKind::Learning, EngineKind::Cdl}) {
    EngineConfig cfg;
    cfg.engine = ek;
    cfg.first_k = 2;
    auto models = solver_from(atomic("C"), interp, cfg)->solve(input);
    CHECK(models.size() == 2);
    for (const auto& m : models)
      CHECK(std::find(all.begin(), all.end(), m) != all.end());
  }
}

TEST_CASE("determinism: identical runs, identical traces and stats") {
  for (unsigned seed : {2u, 5u, 9u}) {
    auto rp = test::random_problem(seed);
    auto input = PartialStructure::bottom(rp.interp.sig);
    std::string first, second;
    EngineStats s1, s2;
    for (int round = 0; round < 2; ++round) {
      auto ep = build_explaining(rp.expr, rp.interp);
      std::ostringstream trace;
      TraceSink sink(trace);
      EngineConfig cfg;
      cfg.trace = &sink;
      auto result = cdl_solve(ep, input, cfg);
      (round == 0 ? first : second) = trace.str();
      (round == 0 ? s1 : s2) = result.stats;
    }
    CHECK(first == second);
    CHECK(s1 == s2);
  }
}

TEST_CASE("nested negation learns witness clauses inside cdl") {
  // -project{p,q}(C) with C = {p | q} over three atoms: models are exactly
  // the structures whose {p,q}-part is (F,F), with r free.
  auto sig = props(3);
  ModuleInterpretation interp{sig, {}};
  interp.defs.emplace("C", make_clause_module(sig, SymbolSet::of(sig, {"p", "q"}),
                                              {cl({{0, true}, {1, true}})}));
  auto e = complement(project({"p", "q"}, atomic("C")));
  auto ep = build_explaining(e, interp);

  std::ostringstream trace;
  TraceSink sink(trace);
  EngineConfig cfg = checked_cfg(interp, e);
  cfg.trace = &sink;
  auto result = cdl_solve(ep, PartialStructure::bottom(sig), cfg);

  auto oracle = enumerate_models(e, interp, PartialStructure::bottom(sig));
  CHECK(result.models == oracle);
  REQUIRE(result.models.size() == 2);
  CHECK(trace.str().find("negwitness") != std::string::npos);
}
