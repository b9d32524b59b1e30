#pragma once

#include <algorithm>
#include <random>
#include <vector>

#include "modex/engines.hpp"
#include "modex/oracle.hpp"

namespace modex::test {

struct Rng {
  std::mt19937 gen;
  explicit Rng(unsigned seed) : gen(seed) {}

  int uniform(int lo, int hi) {  // inclusive
    return std::uniform_int_distribution<int>(lo, hi)(gen);
  }
  bool coin(double p = 0.5) {
    return std::uniform_real_distribution<double>(0.0, 1.0)(gen) < p;
  }
};

inline PartialStructure random_structure(const SignaturePtr& sig, Rng& rng,
                                         bool consistent_only = false,
                                         double assign_p = 0.5) {
  PartialStructure b = PartialStructure::bottom(sig);
  for (int a = 0; a < b.atom_count(); ++a) {
    if (!rng.coin(assign_p)) continue;
    int top = consistent_only ? 1 : 2;
    switch (rng.uniform(0, top)) {
      case 0: b.set(a, TruthValue::True); break;
      case 1: b.set(a, TruthValue::False); break;
      default: b.set(a, TruthValue::Inconsistent); break;
    }
  }
  return b;
}

/// (b, b') with b <=p b'.
inline std::pair<PartialStructure, PartialStructure> random_leq_pair(
    const SignaturePtr& sig, Rng& rng, bool lower_consistent = false) {
  PartialStructure lo = random_structure(sig, rng, lower_consistent);
  PartialStructure hi = lo;
  for (int a = 0; a < hi.atom_count(); ++a) {
    if (!rng.coin(0.3)) continue;
    switch (hi.value(a)) {
      case TruthValue::Unknown:
        hi.set(a, rng.coin() ? (rng.coin() ? TruthValue::True : TruthValue::False)
                             : TruthValue::Inconsistent);
        break;
      case TruthValue::True:
      case TruthValue::False:
        hi.set(a, TruthValue::Inconsistent);
        break;
      default: break;
    }
  }
  return {lo, hi};
}

inline std::vector<PartialStructure> sorted_models(std::vector<PartialStructure> ms) {
  std::sort(ms.begin(), ms.end());
  return ms;
}

// ---------------------------------------------------------------------------
// Random problem generation for the oracle-equivalence suites
// ---------------------------------------------------------------------------

struct RandomProblem {
  ModuleInterpretation interp;
  ExprPtr expr;
};

inline Clause random_clause(const SignaturePtr& sig, const SymbolSet& voc, Rng& rng) {
  std::vector<int> atoms;
  for (int p : voc.members())
    for (int a = sig->pred_begin(p); a < sig->pred_end(p); ++a) atoms.push_back(a);
  while (true) {
    std::vector<Literal> lits;
    int len = rng.uniform(1, std::min<int>(3, static_cast<int>(atoms.size())));
    for (int i = 0; i < len; ++i)
      lits.push_back({atoms[rng.uniform(0, static_cast<int>(atoms.size()) - 1)],
                      rng.coin()});
    if (auto c = Clause::make(std::move(lits))) return *c;
  }
}

inline AtomicModuleDef random_atomic(const SignaturePtr& sig, const SymbolSet& voc,
                                     Rng& rng) {
  int pick = rng.uniform(0, 6);
  if (pick <= 2) {  // clause module (most common)
    std::vector<Clause> clauses;
    int n = rng.uniform(1, 3);
    for (int i = 0; i < n; ++i) clauses.push_back(random_clause(sig, voc, rng));
    return make_clause_module(sig, voc, std::move(clauses));
  }
  if (pick == 3) {  // table module over the voc atoms
    std::vector<int> atoms;
    for (int p : voc.members())
      for (int a = sig->pred_begin(p); a < sig->pred_end(p); ++a) atoms.push_back(a);
    std::vector<PartialStructure> rows;
    int n = rng.uniform(1, 4);
    for (int i = 0; i < n; ++i) {
      PartialStructure row = PartialStructure::bottom(sig);
      for (int a : atoms)
        row.set(a, rng.coin() ? TruthValue::True : TruthValue::False);
      rows.push_back(std::move(row));
    }
    return make_table_module(sig, voc, std::move(rows));
  }
  if (pick == 4) {  // full relation on one voc predicate
    auto ps = voc.members();
    return make_full_relation(sig, voc, sig->pred(ps[rng.uniform(0, (int)ps.size() - 1)]).name);
  }
  if (pick == 5) {  // transitive closure over two binary voc predicates
    std::vector<int> binary;
    for (int p : voc.members())
      if (sig->pred(p).arity == 2) binary.push_back(p);
    if (binary.size() >= 2)
      return make_transitive_closure(sig, voc, sig->pred(binary[0]).name,
                                     sig->pred(binary[1]).name);
  }
  // bounds over two unary predicates when available, else clauses
  std::vector<int> unary;
  for (int p : voc.members())
    if (sig->pred(p).arity == 1) unary.push_back(p);
  if (unary.size() >= 2)
    return make_bounds_leq(sig, voc, sig->pred(unary[0]).name, sig->pred(unary[1]).name);
  std::vector<Clause> clauses{random_clause(sig, voc, rng)};
  return make_clause_module(sig, voc, std::move(clauses));
}

/// Random problem: 2-3 domain elements, a handful of low-arity predicates
/// within the atom budget, 1-3 atomic modules, expression of depth <= 3.
inline RandomProblem random_problem(unsigned seed, int max_depth = 3,
                                    int atom_budget = 12) {
  Rng rng(seed);
  int dom = rng.uniform(2, 3);
  std::vector<std::string> elems;
  for (int i = 0; i < dom; ++i) elems.push_back(std::string(1, char('a' + i)));

  std::vector<Predicate> preds;
  int atoms = 0;
  if (dom == 2 && rng.coin(0.25)) {
    // a pair of binary predicates so the closure builtin can appear
    preds.push_back({"P", 2});
    preds.push_back({"Q", 2});
    atoms = 2 * dom * dom;
  }
  int npreds = rng.uniform(2, 4);
  for (int i = 0; i < npreds; ++i) {
    int arity = rng.uniform(0, 1);
    int block = arity == 0 ? 1 : dom;
    if (atoms + block > atom_budget) break;
    atoms += block;
    preds.push_back({std::string(1, char('R' + i)), arity});
  }
  if (preds.empty()) preds.push_back({"P", 0});
  SignaturePtr sig = Signature::make(Domain(elems), preds);

  RandomProblem out;
  out.interp.sig = sig;
  int nmods = rng.uniform(1, 3);
  std::vector<std::string> mod_names;
  for (int i = 0; i < nmods; ++i) {
    SymbolSet voc(sig);
    for (int p = 0; p < sig->pred_count(); ++p)
      if (rng.coin(0.7)) voc.add(p);
    if (voc.empty()) voc.add(rng.uniform(0, sig->pred_count() - 1));
    std::string name = "M" + std::to_string(i);
    out.interp.defs.emplace(name, random_atomic(sig, voc, rng));
    mod_names.push_back(name);
  }

  std::function<ExprPtr(int)> gen = [&](int depth) -> ExprPtr {
    if (depth <= 0 || rng.coin(0.35))
      return rng.uniform(0, 12) == 0
                 ? bot()
                 : atomic(mod_names[rng.uniform(0, (int)mod_names.size() - 1)]);
    switch (rng.uniform(0, 5)) {
      case 0: return product(gen(depth - 1), gen(depth - 1));
      case 1: return complement(gen(depth - 1));
      case 2: {
        ExprPtr sub = gen(depth - 1);
        std::vector<std::string> delta;
        for (int p = 0; p < sig->pred_count(); ++p)
          if (rng.coin()) delta.push_back(sig->pred(p).name);
        if (delta.empty()) delta.push_back(sig->pred(0).name);
        return project(std::move(delta), sub);
      }
      case 3: {
        ExprPtr sub = gen(depth - 1);
        // pick two equal-arity predicates in voc(sub)
        SymbolSet voc = vocabulary_of(sub, out.interp);
        auto ms = voc.members();
        for (int tries = 0; tries < 8; ++tries) {
          int q = ms[rng.uniform(0, (int)ms.size() - 1)];
          int r = ms[rng.uniform(0, (int)ms.size() - 1)];
          if (sig->pred(q).arity == sig->pred(r).arity)
            return select(sig->pred(q).name, sig->pred(r).name, sub);
        }
        return sub;
      }
      case 4: return plus(gen(depth - 1), gen(depth - 1));
      default: {
        ExprPtr sub = gen(depth - 1);
        SymbolSet voc = vocabulary_of(sub, out.interp);
        auto ms = voc.members();
        std::vector<std::pair<int, int>> pairs;
        for (int q : ms)
          for (int r : ms)
            if (q < r && sig->pred(q).arity == sig->pred(r).arity)
              pairs.emplace_back(q, r);
        if (pairs.empty()) return sub;
        auto [q1, r1] = pairs[rng.uniform(0, (int)pairs.size() - 1)];
        ThetaFormula theta = ThetaFormula::eq(sig->pred(q1).name, sig->pred(r1).name);
        if (pairs.size() > 1 && rng.coin()) {
          auto [q2, r2] = pairs[rng.uniform(0, (int)pairs.size() - 1)];
          ThetaFormula second = rng.coin()
                                    ? ThetaFormula::eq(sig->pred(q2).name, sig->pred(r2).name)
                                    : ThetaFormula::neq(sig->pred(q2).name, sig->pred(r2).name);
          theta = rng.coin() ? ThetaFormula::conj(theta, second)
                             : ThetaFormula::disj(theta, second);
        }
        return select_theta(std::move(theta), sub);
      }
    }
  };
  out.expr = gen(max_depth);
  return out;
}

}  // namespace modex::test
