#include "modex/module_defs.hpp"

#include <algorithm>
#include <stdexcept>

namespace modex {

namespace {

std::vector<int> atoms_of(const SignaturePtr& sig, const SymbolSet& voc) {
  std::vector<int> out;
  for (int p : voc.members())
    for (int a = sig->pred_begin(p); a < sig->pred_end(p); ++a) out.push_back(a);
  return out;
}

}  // namespace

AtomicModuleDef make_table_module(const SignaturePtr& sig, SymbolSet voc,
                                  std::vector<PartialStructure> rows) {
  TableBody body;
  body.voc_atoms = atoms_of(sig, voc);
  for (const auto& row : rows) {
    std::vector<bool> bits;
    bits.reserve(body.voc_atoms.size());
    for (int a : body.voc_atoms) {
      TruthValue v = row.value(a);
      if (!is_decided(v))
        throw std::invalid_argument("table row must be two-valued on the vocabulary");
      bits.push_back(v == TruthValue::True);
    }
    body.rows.push_back(std::move(bits));
  }
  std::sort(body.rows.begin(), body.rows.end());
  body.rows.erase(std::unique(body.rows.begin(), body.rows.end()), body.rows.end());
  return {std::move(voc), std::move(body)};
}

AtomicModuleDef make_clause_module(const SignaturePtr& sig, SymbolSet voc,
                                   std::vector<Clause> clauses) {
  for (const auto& c : clauses)
    for (const auto& l : c.lits())
      if (!voc.contains(sig->pred_of_atom(l.atom)))
        throw std::invalid_argument("clause literal outside module vocabulary");
  return {std::move(voc), ClauseBody{std::move(clauses)}};
}

static int require_pred(const SignaturePtr& sig, const SymbolSet& voc,
                        const std::string& name, int arity) {
  int p = sig->pred_index(name);
  if (p < 0) throw std::invalid_argument("unknown predicate: " + name);
  if (arity >= 0 && sig->pred(p).arity != arity)
    throw std::invalid_argument("predicate " + name + " has unexpected arity");
  if (!voc.contains(p))
    throw std::invalid_argument("builtin symbol " + name + " not in declared vocabulary");
  return p;
}

AtomicModuleDef make_transitive_closure(const SignaturePtr& sig, SymbolSet voc,
                                        const std::string& edge, const std::string& trans) {
  int pe = require_pred(sig, voc, edge, 2);
  int pt = require_pred(sig, voc, trans, 2);
  return {std::move(voc), BuiltinBody{BuiltinBody::Kind::TransitiveClosure, {pe, pt}}};
}

AtomicModuleDef make_full_relation(const SignaturePtr& sig, SymbolSet voc,
                                   const std::string& sym) {
  int ps = require_pred(sig, voc, sym, -1);
  return {std::move(voc), BuiltinBody{BuiltinBody::Kind::FullRelation, {ps}}};
}

AtomicModuleDef make_bounds_leq(const SignaturePtr& sig, SymbolSet voc,
                                const std::string& q_c, const std::string& q_d) {
  int pc = require_pred(sig, voc, q_c, 1);
  int pd = require_pred(sig, voc, q_d, 1);
  return {std::move(voc), BuiltinBody{BuiltinBody::Kind::BoundsLeq, {pc, pd}}};
}

namespace {

bool member_table(const TableBody& t, const PartialStructure& i) {
  std::vector<bool> bits;
  bits.reserve(t.voc_atoms.size());
  for (int a : t.voc_atoms) bits.push_back(i.value(a) == TruthValue::True);
  return std::find(t.rows.begin(), t.rows.end(), bits) != t.rows.end();
}

bool member_clauses(const ClauseBody& c, const PartialStructure& i) {
  for (const auto& cl : c.clauses)
    if (!cl.satisfied_by(i)) return false;
  return true;
}

// Irreflexive-path closure: (x,y) in closure iff a path of length >= 1 from
// x to y exists in the edge relation.
std::vector<bool> path_closure(const PartialStructure& i, int edge_pred) {
  const auto& sig = *i.sig();
  int n = sig.domain().size();
  std::vector<bool> reach(n * n, false);
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      int tuple[2] = {x, y};
      reach[x * n + y] = i.value(sig.atom_id(edge_pred, tuple)) == TruthValue::True;
    }
  for (int k = 0; k < n; ++k)
    for (int x = 0; x < n; ++x)
      for (int y = 0; y < n; ++y)
        if (reach[x * n + k] && reach[k * n + y]) reach[x * n + y] = true;
  return reach;
}

bool member_builtin(const BuiltinBody& b, const PartialStructure& i) {
  const auto& sig = *i.sig();
  switch (b.kind) {
    case BuiltinBody::Kind::TransitiveClosure: {
      int n = sig.domain().size();
      auto reach = path_closure(i, b.preds[0]);
      for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) {
          int tuple[2] = {x, y};
          bool t = i.value(sig.atom_id(b.preds[1], tuple)) == TruthValue::True;
          if (t != reach[x * n + y]) return false;
        }
      return true;
    }
    case BuiltinBody::Kind::FullRelation: {
      for (int a = sig.pred_begin(b.preds[0]); a < sig.pred_end(b.preds[0]); ++a)
        if (i.value(a) != TruthValue::True) return false;
      return true;
    }
    case BuiltinBody::Kind::BoundsLeq: {
      // Both threshold sets must be upward closed in the domain order, and
      // every q_d(n) must imply q_c(n) (that is c <= d).
      auto upward = [&](int p) {
        bool seen = false;
        for (int a = sig.pred_begin(p); a < sig.pred_end(p); ++a) {
          bool t = i.value(a) == TruthValue::True;
          if (seen && !t) return false;
          seen = seen || t;
        }
        return true;
      };
      if (!upward(b.preds[0]) || !upward(b.preds[1])) return false;
      int nc = sig.pred_size(b.preds[0]);
      for (int k = 0; k < nc; ++k) {
        bool d = i.value(sig.pred_begin(b.preds[1]) + k) == TruthValue::True;
        bool c = i.value(sig.pred_begin(b.preds[0]) + k) == TruthValue::True;
        if (d && !c) return false;
      }
      return true;
    }
  }
  return false;
}

}  // namespace

bool atomic_member(const AtomicModuleDef& def, const PartialStructure& i) {
  // Membership reads voc atoms only, so two-valuedness on voc is all that is
  // actually required; we still insist on a fully two-valued input to match
  // the operation contract.
  if (!i.is_two_valued())
    throw std::invalid_argument("atomic membership needs a two-valued structure");
  if (std::holds_alternative<TableBody>(def.body))
    return member_table(std::get<TableBody>(def.body), i);
  if (std::holds_alternative<ClauseBody>(def.body))
    return member_clauses(std::get<ClauseBody>(def.body), i);
  return member_builtin(std::get<BuiltinBody>(def.body), i);
}

const AtomicModuleDef& ModuleInterpretation::at(const std::string& name) const {
  auto it = defs.find(name);
  if (it == defs.end()) throw std::invalid_argument("unknown atomic module: " + name);
  return it->second;
}

SymbolSet vocabulary_of(const ExprPtr& e, const ModuleInterpretation& interp) {
  switch (e->kind) {
    case ModuleExpr::Kind::Bot: return SymbolSet::all(interp.sig);
    case ModuleExpr::Kind::Atomic: return interp.at(e->name).voc;
    case ModuleExpr::Kind::Product:
    case ModuleExpr::Kind::Plus:
      return vocabulary_of(e->lhs, interp).united(vocabulary_of(e->rhs, interp));
    case ModuleExpr::Kind::Complement:
    case ModuleExpr::Kind::Select:
    case ModuleExpr::Kind::SelectTheta:
      return vocabulary_of(e->lhs, interp);
    case ModuleExpr::Kind::Project:
      return SymbolSet::of_names(interp.sig, e->delta);
  }
  throw std::logic_error("unreachable");
}

namespace {

void validate_select_pair(const std::string& q, const std::string& r,
                          const SymbolSet& voc, const ModuleInterpretation& interp) {
  int pq = interp.sig->pred_index(q);
  int pr = interp.sig->pred_index(r);
  if (pq < 0 || pr < 0)
    throw std::invalid_argument("selection predicate not in the vocabulary: " +
                                (pq < 0 ? q : r));
  if (interp.sig->pred(pq).arity != interp.sig->pred(pr).arity)
    throw std::invalid_argument("selection predicates must have equal arity: " + q +
                                ", " + r);
  if (!voc.contains(pq) || !voc.contains(pr))
    throw std::invalid_argument("selection predicate outside voc of subject: " +
                                (!voc.contains(pq) ? q : r));
}

void validate_theta(const ThetaFormula& t, const SymbolSet& voc,
                    const ModuleInterpretation& interp) {
  switch (t.kind()) {
    case ThetaFormula::Kind::Eq:
    case ThetaFormula::Kind::Neq:
      validate_select_pair(t.q(), t.r(), voc, interp);
      break;
    default:
      for (const auto& k : t.children()) validate_theta(k, voc, interp);
  }
}

}  // namespace

void validate_expr(const ExprPtr& e, const ModuleInterpretation& interp) {
  switch (e->kind) {
    case ModuleExpr::Kind::Bot: return;
    case ModuleExpr::Kind::Atomic:
      interp.at(e->name);
      return;
    case ModuleExpr::Kind::Product:
    case ModuleExpr::Kind::Plus:
      validate_expr(e->lhs, interp);
      validate_expr(e->rhs, interp);
      return;
    case ModuleExpr::Kind::Complement:
      validate_expr(e->lhs, interp);
      return;
    case ModuleExpr::Kind::Project:
      validate_expr(e->lhs, interp);
      SymbolSet::of_names(interp.sig, e->delta);  // throws on unknown names
      return;
    case ModuleExpr::Kind::Select: {
      validate_expr(e->lhs, interp);
      validate_select_pair(e->sel_q, e->sel_r, vocabulary_of(e->lhs, interp), interp);
      return;
    }
    case ModuleExpr::Kind::SelectTheta: {
      validate_expr(e->lhs, interp);
      validate_theta(e->theta, vocabulary_of(e->lhs, interp), interp);
      return;
    }
  }
}

}  // namespace modex
