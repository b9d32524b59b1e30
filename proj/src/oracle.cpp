#include "modex/oracle.hpp"

#include <stdexcept>
#include <unordered_map>

namespace modex {

namespace {

struct EvalContext {
  const ModuleInterpretation& interp;
  // Projection verdicts keyed by (node, restriction bytes).
  std::unordered_map<const ModuleExpr*, std::unordered_map<std::string, bool>> project_memo;
};

bool eval_rec(const ExprPtr& e, EvalContext& ctx, const PartialStructure& i);

// Is there a two-valued completion of `partial` that satisfies e? Branches
// over the unknown atoms, true branch first.
bool exists_model(const ExprPtr& e, EvalContext& ctx, PartialStructure& partial,
                  int from_atom) {
  int atom = -1;
  for (int a = from_atom; a < partial.atom_count(); ++a)
    if (partial.value(a) == TruthValue::Unknown) {
      atom = a;
      break;
    }
  if (atom < 0) return eval_rec(e, ctx, partial);
  for (TruthValue v : {TruthValue::True, TruthValue::False}) {
    partial.set(atom, v);
    if (exists_model(e, ctx, partial, atom + 1)) {
      partial.set(atom, TruthValue::Unknown);
      return true;
    }
  }
  partial.set(atom, TruthValue::Unknown);
  return false;
}

bool eval_rec(const ExprPtr& e, EvalContext& ctx, const PartialStructure& i) {
  switch (e->kind) {
    case ModuleExpr::Kind::Bot: return false;
    case ModuleExpr::Kind::Atomic: return atomic_member(ctx.interp.at(e->name), i);
    case ModuleExpr::Kind::Product:
      return eval_rec(e->lhs, ctx, i) && eval_rec(e->rhs, ctx, i);
    case ModuleExpr::Kind::Complement: return !eval_rec(e->lhs, ctx, i);
    case ModuleExpr::Kind::Select: {
      const auto& sig = *i.sig();
      int pq = sig.pred_index(e->sel_q), pr = sig.pred_index(e->sel_r);
      for (int k = 0; k < sig.pred_size(pq); ++k)
        if (i.value(sig.pred_begin(pq) + k) != i.value(sig.pred_begin(pr) + k))
          return false;
      return eval_rec(e->lhs, ctx, i);
    }
    case ModuleExpr::Kind::Project: {
      SymbolSet delta = SymbolSet::of_names(ctx.interp.sig, e->delta);
      PartialStructure restricted = i.restricted(delta);
      auto& memo = ctx.project_memo[e.get()];
      std::string k = restricted.key();
      if (auto it = memo.find(k); it != memo.end()) return it->second;
      bool verdict = exists_model(e->lhs, ctx, restricted, 0);
      memo.emplace(std::move(k), verdict);
      return verdict;
    }
    case ModuleExpr::Kind::Plus:
    case ModuleExpr::Kind::SelectTheta:
      throw std::logic_error("sugar must be desugared before evaluation");
  }
  throw std::logic_error("unreachable");
}

void enumerate_rec(const ExprPtr& e, EvalContext& ctx, PartialStructure& cur,
                   int from_atom, std::vector<PartialStructure>& out) {
  int atom = -1;
  for (int a = from_atom; a < cur.atom_count(); ++a)
    if (!is_decided(cur.value(a))) {
      atom = a;
      break;
    }
  if (atom < 0) {
    if (eval_rec(e, ctx, cur)) out.push_back(cur);
    return;
  }
  if (cur.value(atom) == TruthValue::Inconsistent) return;
  for (TruthValue v : {TruthValue::True, TruthValue::False}) {
    cur.set(atom, v);
    enumerate_rec(e, ctx, cur, atom + 1, out);
  }
  cur.set(atom, TruthValue::Unknown);
}

}  // namespace

bool eval_module(const ExprPtr& e, const ModuleInterpretation& interp,
                 const PartialStructure& i) {
  if (!i.is_two_valued())
    throw std::invalid_argument("eval_module needs a two-valued structure");
  EvalContext ctx{interp, {}};
  return eval_rec(desugar(e), ctx, i);
}

std::vector<PartialStructure> enumerate_models(const ExprPtr& e,
                                               const ModuleInterpretation& interp,
                                               const PartialStructure& b,
                                               int atom_budget) {
  int unknowns = 0;
  for (int a = 0; a < b.atom_count(); ++a)
    if (!is_decided(b.value(a))) ++unknowns;
  if (unknowns > atom_budget)
    throw std::invalid_argument("signature too large for enumeration oracle");
  std::vector<PartialStructure> out;
  if (!b.is_consistent()) return out;
  EvalContext ctx{interp, {}};
  ExprPtr core = desugar(e);
  PartialStructure cur = b;
  enumerate_rec(core, ctx, cur, 0, out);
  return out;
}

}  // namespace modex
