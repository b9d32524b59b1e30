#include <doctest.h>

#include "modex/oracle.hpp"
#include "support.hpp"

using namespace modex;
using TV = TruthValue;

namespace {

/// Two nullary atoms p, q with a single clause module over them.
struct PqWorld {
  SignaturePtr sig = Signature::make(Domain({"a"}), {{"p", 0}, {"q", 0}});
  ModuleInterpretation interp;

  PqWorld(std::vector<Clause> clauses = {}) {
    interp.sig = sig;
    if (clauses.empty())
      clauses.push_back(*Clause::make({{0, true}, {1, true}}));  // p | q
    interp.defs.emplace("C", make_clause_module(sig, SymbolSet::all(sig), clauses));
  }
};

/// The disconnected-graph world: Edge, Trans over |A| elements, Mt the
/// transitive-closure module, Mf the full-relation module on Trans.
struct GraphWorld {
  SignaturePtr sig;
  ModuleInterpretation interp;
  ExprPtr expr;  // project {Edge} (Mt * -Mf)

  explicit GraphWorld(int n) {
    std::vector<std::string> elems;
    for (int i = 0; i < n; ++i) elems.push_back(std::string(1, char('a' + i)));
    sig = Signature::make(Domain(elems), {{"Edge", 2}, {"Trans", 2}});
    interp.sig = sig;
    interp.defs.emplace("Mt", make_transitive_closure(sig, SymbolSet::all(sig),
                                                      "Edge", "Trans"));
    interp.defs.emplace("Mf", make_full_relation(sig, SymbolSet::of(sig, {"Trans"}),
                                                 "Trans"));
    expr = project({"Edge"}, product(atomic("Mt"), complement(atomic("Mf"))));
  }
};

}  // namespace

TEST_CASE("vocabulary rules") {
  GraphWorld w(2);
  CHECK(vocabulary_of(bot(), w.interp) == SymbolSet::all(w.sig));
  CHECK(vocabulary_of(w.expr, w.interp) == SymbolSet::of(w.sig, {"Edge"}));
  CHECK(vocabulary_of(product(atomic("Mt"), atomic("Mf")), w.interp) ==
        SymbolSet::all(w.sig));
  CHECK(vocabulary_of(atomic("Mf"), w.interp) == SymbolSet::of(w.sig, {"Trans"}));
  CHECK_THROWS_AS(vocabulary_of(atomic("Nope"), w.interp), std::invalid_argument);
}

TEST_CASE("atomic membership: tables, clauses, builtins") {
  GraphWorld w(2);
  auto two_valued = [&](std::vector<std::string> true_atoms) {
    PartialStructure b = PartialStructure::bottom(w.sig);
    for (int a = 0; a < b.atom_count(); ++a) b.set(a, TV::False);
    for (const auto& name : true_atoms) b.set(*w.sig->parse_atom(name), TV::True);
    return b;
  };

  // full_relation: all four pairs
  auto full = two_valued({"Trans(a,a)", "Trans(a,b)", "Trans(b,a)", "Trans(b,b)"});
  CHECK(atomic_member(w.interp.at("Mf"), full));
  CHECK(!atomic_member(w.interp.at("Mf"), two_valued({"Trans(a,a)"})));

  // transitive closure of a 2-cycle includes both loops
  auto cyc = two_valued({"Edge(a,b)", "Edge(b,a)", "Trans(a,b)", "Trans(b,a)",
                         "Trans(a,a)", "Trans(b,b)"});
  CHECK(atomic_member(w.interp.at("Mt"), cyc));
  // a single loop edge closes to just itself
  CHECK(atomic_member(w.interp.at("Mt"), two_valued({"Edge(a,a)", "Trans(a,a)"})));
  CHECK(!atomic_member(w.interp.at("Mt"), two_valued({"Edge(a,b)"})));

  // clause module {p | q} rejects all-false
  PqWorld pq;
  PartialStructure ff = PartialStructure::bottom(pq.sig);
  ff.set(0, TV::False);
  ff.set(1, TV::False);
  CHECK(!atomic_member(pq.interp.at("C"), ff));
  CHECK(atomic_member(pq.interp.at("C"), ff.updated(0, TV::True)));
  CHECK_THROWS_AS(atomic_member(pq.interp.at("C"), PartialStructure::bottom(pq.sig)),
                  std::invalid_argument);
}

TEST_CASE("bounds_leq membership is threshold-shaped") {
  auto sig = Signature::make(Domain({"1", "2", "3"}), {{"Qc", 1}, {"Qd", 1}});
  ModuleInterpretation interp{sig, {}};
  interp.defs.emplace("B", make_bounds_leq(sig, SymbolSet::all(sig), "Qc", "Qd"));
  auto mk = [&](std::vector<bool> qc, std::vector<bool> qd) {
    PartialStructure b = PartialStructure::bottom(sig);
    for (int i = 0; i < 3; ++i) {
      b.set(i, qc[i] ? TV::True : TV::False);
      b.set(3 + i, qd[i] ? TV::True : TV::False);
    }
    return b;
  };
  CHECK(atomic_member(interp.at("B"), mk({0, 1, 1}, {0, 0, 1})));   // c=2 <= d=3
  CHECK(atomic_member(interp.at("B"), mk({1, 1, 1}, {1, 1, 1})));   // c=d=1
  CHECK(atomic_member(interp.at("B"), mk({0, 0, 0}, {0, 0, 0})));   // both unbounded
  CHECK(!atomic_member(interp.at("B"), mk({0, 0, 1}, {0, 1, 1})));  // c=3 > d=2
  CHECK(!atomic_member(interp.at("B"), mk({1, 0, 1}, {0, 0, 1})));  // not monotone
}

TEST_CASE("eval_module: spec examples") {
  GraphWorld w(2);
  PartialStructure i = PartialStructure::bottom(w.sig);
  for (int a = 0; a < i.atom_count(); ++a) i.set(a, TV::False);
  CHECK(!eval_module(bot(), w.interp, i));

  // Edge = {(a,a)}: closure {(a,a)} != full, so some Trans witness exists.
  auto with_loop = i.updated(*w.sig->parse_atom("Edge(a,a)"), TV::True);
  CHECK(eval_module(w.expr, w.interp, with_loop));

  // selection needs equal interpretations
  auto sel = select("Edge", "Trans", atomic("Mt"));
  auto uneq = i.updated(*w.sig->parse_atom("Edge(a,b)"), TV::True);
  CHECK(!eval_module(sel, w.interp, uneq));
}

TEST_CASE("enumerate_models: clause module and inconsistency") {
  PqWorld pq;
  auto models = enumerate_models(atomic("C"), pq.interp, PartialStructure::bottom(pq.sig));
  REQUIRE(models.size() == 3);  // TT, TF, FT
  for (const auto& m : models)
    CHECK((m.value(0) == TV::True || m.value(1) == TV::True));
  // deterministic order: lexicographic, true first
  CHECK(models[0].value(0) == TV::True);
  CHECK(models[0].value(1) == TV::True);
  CHECK(models[1].value(0) == TV::True);
  CHECK(models[1].value(1) == TV::False);

  auto incons = PartialStructure::bottom(pq.sig).updated(0, TV::Inconsistent);
  CHECK(enumerate_models(atomic("C"), pq.interp, incons).empty());
}

TEST_CASE("enumerate_models: disconnected graph counts") {
  GraphWorld w(2);
  auto models = enumerate_models(w.expr, w.interp, PartialStructure::bottom(w.sig));
  // 12 qualifying Edge graphs, each with all 16 Trans completions
  CHECK(models.size() == 12 * 16);
  std::vector<PartialStructure> projected;
  for (const auto& m : models)
    projected.push_back(m.restricted(SymbolSet::of(w.sig, {"Edge"})));
  std::sort(projected.begin(), projected.end());
  projected.erase(std::unique(projected.begin(), projected.end()), projected.end());
  CHECK(projected.size() == 12);
}

TEST_CASE("desugar rewrites") {
  PqWorld pq;
  auto m1 = atomic("C"), m2 = atomic("C");
  auto plus_expr = plus(m1, m2);
  auto expected = complement(product(complement(m1), complement(m2)));
  CHECK(expr_equal(desugar(plus_expr), expected));

  auto neq = select_theta(ThetaFormula::neq("p", "q"), m1);
  CHECK(expr_equal(desugar(neq), product(m1, complement(select("p", "q", m1)))));

  auto minimal = project({"p"}, product(m1, complement(m2)));
  CHECK(desugar(minimal) == minimal);  // minimal syntax returned untouched
  CHECK(minimal->is_minimal_syntax());
  CHECK(!plus_expr->is_minimal_syntax());
}

TEST_CASE("desugar preserves the model set") {
  for (unsigned seed : {1u, 2u, 3u, 4u, 5u, 6u, 7u, 8u}) {
    auto rp = test::random_problem(seed);
    auto b = PartialStructure::bottom(rp.interp.sig);
    auto direct = enumerate_models(rp.expr, rp.interp, b);
    auto sugar_free = enumerate_models(desugar(rp.expr), rp.interp, b);
    CHECK(direct == sugar_free);
  }
}

TEST_CASE("entailed equalities") {
  // (Q != R | R == U) & (Q == R)  entails Q==R, R==U and transitively Q==U
  auto theta = ThetaFormula::conj(
      ThetaFormula::disj(ThetaFormula::neq("Q", "R"), ThetaFormula::eq("R", "U")),
      ThetaFormula::eq("Q", "R"));
  auto pairs = entailed_equalities(theta);
  REQUIRE(pairs.size() == 3);
  CHECK(pairs[0] == std::pair<std::string, std::string>{"Q", "R"});
  CHECK(pairs[1] == std::pair<std::string, std::string>{"Q", "U"});
  CHECK(pairs[2] == std::pair<std::string, std::string>{"R", "U"});

  CHECK(entailed_equalities(ThetaFormula::eq("Q", "R")) ==
        std::vector<std::pair<std::string, std::string>>{{"Q", "R"}});
  CHECK(entailed_equalities(
            ThetaFormula::disj(ThetaFormula::eq("Q", "R"), ThetaFormula::eq("R", "U")))
            .empty());
}

TEST_CASE("locality: membership depends only on voc atoms") {
  test::Rng rng(23);
  for (unsigned seed = 0; seed < 20; ++seed) {
    auto rp = test::random_problem(seed);
    const auto& sig = rp.interp.sig;
    for (const auto& [name, def] : rp.interp.defs) {
      for (int trial = 0; trial < 20; ++trial) {
        auto i1 = test::random_structure(sig, rng, true, 1.0);
        auto i2 = i1;
        // flip some atoms outside the vocabulary
        for (int a = 0; a < i2.atom_count(); ++a)
          if (!def.voc.contains(sig->pred_of_atom(a)) && rng.coin())
            i2.set(a, negated(i2.value(a)));
        CHECK(atomic_member(def, i1) == atomic_member(def, i2));
      }
    }
  }
}

TEST_CASE("semantic laws by enumeration on small worlds") {
  PqWorld pq;
  auto b = PartialStructure::bottom(pq.sig);
  auto c = atomic("C");

  // product is intersection
  auto lhs = enumerate_models(product(c, complement(bot())), pq.interp, b);
  auto rhs = enumerate_models(c, pq.interp, b);
  CHECK(lhs == rhs);

  // complement is the set difference from the universe
  auto all = enumerate_models(complement(bot()), pq.interp, b);
  CHECK(all.size() == 4);
  auto comp = enumerate_models(complement(c), pq.interp, b);
  CHECK(comp.size() == all.size() - rhs.size());
}

TEST_CASE("enumerate_models is antitone in the input") {
  test::Rng rng(31);
  for (unsigned seed = 0; seed < 10; ++seed) {
    auto rp = test::random_problem(seed);
    auto [lo, hi] = test::random_leq_pair(rp.interp.sig, rng);
    auto big = enumerate_models(rp.expr, rp.interp, lo);
    auto small = enumerate_models(rp.expr, rp.interp, hi);
    for (const auto& m : small)
      CHECK(std::find(big.begin(), big.end(), m) != big.end());
  }
}
