#include "modex/explain.hpp"

#include <algorithm>
#include <map>

namespace modex {

EPropPtr lift(PropagatorPtr p) {
  return std::make_shared<ExplainingPropagator>(std::move(p), nullptr);
}

EPropPtr make_explaining(PropagatorPtr p, ExplainingPropagator::ExplainFn fn) {
  return std::make_shared<ExplainingPropagator>(std::move(p), std::move(fn));
}

namespace {

/// Merge two clause-form explanations into one clause-form propagator.
EPropPtr merge_clause_forms(const SignaturePtr& sig, const EPropPtr& a, const EPropPtr& b) {
  std::vector<Clause> merged = *a->prop()->clause_form();
  for (const auto& c : *b->prop()->clause_form()) merged.push_back(c);
  std::sort(merged.begin(), merged.end());
  merged.erase(std::unique(merged.begin(), merged.end()), merged.end());
  return lift(unit_propagator(sig, std::move(merged), "explained"));
}

EPropPtr e_product_with(PropagatorPtr prop_part, EPropPtr a, EPropPtr b) {
  auto fn = [a, b](const PartialStructure& pre) -> EPropPtr {
    PartialStructure ra = (*a->prop())(pre);
    PartialStructure rb = (*b->prop())(pre);
    if (ra == pre && rb == pre) return nullptr;  // fixpoint, nothing to explain
    EPropPtr ea = ra == pre ? lift(identity_propagator(pre.sig())) : a->explain(pre);
    EPropPtr eb = rb == pre ? lift(identity_propagator(pre.sig())) : b->explain(pre);
    if (!ea || !eb) return nullptr;
    if (ea->prop()->clause_form() && eb->prop()->clause_form())
      return merge_clause_forms(pre.sig(), ea, eb);
    return e_product(ea, eb);
  };
  return make_explaining(std::move(prop_part), std::move(fn));
}

}  // namespace

EPropPtr e_product(EPropPtr a, EPropPtr b) {
  PropagatorPtr prop = product_prop(a->prop(), b->prop());
  return e_product_with(std::move(prop), std::move(a), std::move(b));
}

EPropPtr e_project(SymbolSet delta, EPropPtr child, SolverPtr inner, Strategy strategy) {
  PropagatorPtr prop = strategy == Strategy::Best
                           ? project_prop(delta, child->prop(), inner)
                           : project_checker(delta, inner);
  auto fn = [delta, child, inner, prop, strategy](const PartialStructure& pre) -> EPropPtr {
    if (!pre.is_consistent()) return nullptr;
    PartialStructure post = (*prop)(pre);
    if (post == pre) return nullptr;
    // In the two-valued-on-delta case a top result means the inner solver
    // found no extension; that propagation has no projected explanation.
    if (pre.two_valued_on(delta) && post.is_top()) return nullptr;
    EPropPtr inner_exp = child->explain(pre.restricted(delta));
    if (!inner_exp) return nullptr;
    return e_project(delta, inner_exp, inner, strategy);
  };
  return make_explaining(std::move(prop), std::move(fn));
}

EPropPtr equality_explaining(const SignaturePtr& sig, int q_pred, int r_pred) {
  PropagatorPtr prop = equality_propagator(sig, q_pred, r_pred);
  int n = sig->pred_size(q_pred);
  int q0 = sig->pred_begin(q_pred), r0 = sig->pred_begin(r_pred);
  auto fn = [sig, prop, q_pred, r_pred, n, q0, r0](const PartialStructure& pre) -> EPropPtr {
    if ((*prop)(pre) == pre) return nullptr;
    std::vector<Clause> clauses;
    for (int k = 0; k < n; ++k) {
      if (pre.value(q0 + k) == pre.value(r0 + k)) continue;
      auto [p, tuple] = sig->atom_decode(q0 + k);
      (void)p;
      auto tup = equality_tuple_propagator(sig, q_pred, r_pred, tuple);
      for (const auto& c : *tup->clause_form()) clauses.push_back(c);
    }
    return lift(unit_propagator(sig, std::move(clauses), "explained"));
  };
  return make_explaining(std::move(prop), std::move(fn));
}

EPropPtr e_select(const SignaturePtr& sig, int q_pred, int r_pred, EPropPtr child,
                  Strategy strategy) {
  EPropPtr eq = equality_explaining(sig, q_pred, r_pred);
  if (strategy == Strategy::Checker) {
    // The sigma checker rejects two-valued structures with unequal Q,R; the
    // per-tuple clauses reproduce that rejection, so they remain a valid
    // explanation for it.
    PropagatorPtr prop = sigma_checker(sig, q_pred, r_pred, child->prop());
    return e_product_with(std::move(prop), child, eq);
  }
  return e_product(child, eq);
}

EPropPtr bounds_explainer(const SignaturePtr& sig, int qc_pred, int qd_pred) {
  PropagatorPtr prop = bounds_leq_propagator(sig, qc_pred, qd_pred);
  int n = sig->pred_size(qc_pred);
  int c0 = sig->pred_begin(qc_pred), d0 = sig->pred_begin(qd_pred);
  auto fn = [sig, prop, n, c0, d0](const PartialStructure& pre) -> EPropPtr {
    PartialStructure post = (*prop)(pre);
    if (post == pre) return nullptr;
    std::vector<Clause> clauses;
    for (int k = 0; k < n; ++k) {
      bool c_false = leq_p(TruthValue::False, pre.value(c0 + k));
      bool d_true = leq_p(TruthValue::True, pre.value(d0 + k));
      if (c_false || d_true)
        clauses.push_back(*Clause::make({{c0 + k, true}, {d0 + k, false}}));
    }
    PropagatorPtr cand = unit_propagator(sig, std::move(clauses), "explained");
    if (!leq_p(post, (*cand)(pre))) return nullptr;  // raw joins on inconsistent input
    return lift(cand);
  };
  return make_explaining(std::move(prop), std::move(fn));
}

EPropPtr negation_nested_ep(SymbolSet tau_inner, SolverPtr inner, WitnessFn witness_fn,
                            int rank) {
  PropagatorPtr prop = negation_nested(tau_inner, inner, witness_fn, rank);
  auto fn = [tau_inner, witness_fn, prop](const PartialStructure& pre) -> EPropPtr {
    if (!pre.is_consistent()) return nullptr;
    if (!(*prop)(pre).is_top()) return nullptr;
    PartialStructure w = pre.restricted(tau_inner);
    if (witness_fn) w = witness_fn(w);
    Clause c = negation_clause_of_assigned(w);
    return lift(unit_propagator(pre.sig(), {std::move(c)}, "negwitness"));
  };
  return make_explaining(std::move(prop), std::move(fn));
}

namespace {

struct ExBuilder {
  const ModuleInterpretation& interp;
  Strategy strategy;
  std::vector<BuiltNode>* nodes;

  EPropPtr record(const ExprPtr& e, EPropPtr ep) {
    if (nodes) nodes->push_back({e->kind, ep->prop()});
    return ep;
  }

  EPropPtr build_atomic(const AtomicModuleDef& def) {
    const SignaturePtr& sig = interp.sig;
    if (std::holds_alternative<ClauseBody>(def.body))
      return lift(unit_propagator(sig, std::get<ClauseBody>(def.body).clauses));
    if (std::holds_alternative<BuiltinBody>(def.body)) {
      const auto& b = std::get<BuiltinBody>(def.body);
      if (b.kind == BuiltinBody::Kind::BoundsLeq)
        return e_product(bounds_explainer(sig, b.preds[0], b.preds[1]),
                         lift(atomic_checker(sig, def, "boundscheck")));
      if (b.kind == BuiltinBody::Kind::TransitiveClosure)
        return lift(product_prop(
            fixpoint(tc_forward_propagator(sig, b.preds[0], b.preds[1])),
            atomic_checker(sig, def, "tc")));
      return lift(atomic_checker(sig, def, "fullrel"));
    }
    return lift(atomic_checker(sig, def, "table"));
  }

  EPropPtr build(const ExprPtr& e) {
    const SignaturePtr& sig = interp.sig;
    switch (e->kind) {
      case ModuleExpr::Kind::Bot:
        return record(e, lift(strategy == Strategy::Best ? constant_top(sig)
                                                         : bot_checker(sig)));
      case ModuleExpr::Kind::Atomic:
        return record(e, build_atomic(interp.at(e->name)));
      case ModuleExpr::Kind::Product: {
        EPropPtr l = build(e->lhs), r = build(e->rhs);
        if (strategy == Strategy::Checker)
          return record(e, e_product_with(product_checker(l->prop(), r->prop()), l, r));
        return record(e, e_product(l, r));
      }
      case ModuleExpr::Kind::Complement: {
        if (e->lhs->kind == ModuleExpr::Kind::Project) {
          // -project{tau}(E): run a solver for E on the tau part and learn
          // the negated witness on success.
          ExprPtr inner_expr = e->lhs->lhs;
          SymbolSet tau = SymbolSet::of_names(sig, e->lhs->delta);
          PropagatorPtr inner_p = build_propagator(inner_expr, interp, Strategy::Best);
          SolverPtr solver = default_inner_solver(inner_p, sig);
          return record(e, negation_nested_ep(tau, solver, {}, 2 + inner_p->rank()));
        }
        return record(
            e, lift(complement_checker(build_propagator(e->lhs, interp, strategy))));
      }
      case ModuleExpr::Kind::Project: {
        EPropPtr child = build(e->lhs);
        SymbolSet delta = SymbolSet::of_names(sig, e->delta);
        SolverPtr inner = default_inner_solver(child->prop(), sig);
        return record(e, e_project(delta, child, inner, strategy));
      }
      case ModuleExpr::Kind::Select: {
        EPropPtr child = build(e->lhs);
        return record(e, e_select(sig, sig->pred_index(e->sel_q),
                                  sig->pred_index(e->sel_r), child, strategy));
      }
      case ModuleExpr::Kind::Plus:
        return record(
            e, lift(disjoin_prop(build_propagator(e->lhs, interp, Strategy::Best),
                                 build_propagator(e->rhs, interp, Strategy::Best))));
      case ModuleExpr::Kind::SelectTheta: {
        EPropPtr ep = build(desugar(e));
        for (const auto& [q, r] : entailed_equalities(e->theta))
          ep = e_select(sig, sig->pred_index(q), sig->pred_index(r), ep, strategy);
        return record(e, ep);
      }
    }
    throw std::logic_error("unreachable");
  }
};

}  // namespace

EPropPtr build_explaining(const ExprPtr& e, const ModuleInterpretation& interp,
                          Strategy strategy, std::vector<BuiltNode>* nodes) {
  validate_expr(e, interp);
  ExBuilder builder{interp, strategy, nodes};
  EPropPtr out = builder.build(e);
  std::const_pointer_cast<Propagator>(out->prop())->module_tag = e;
  return out;
}

PartialStructure shrink_witness(const PartialStructure& witness, const SymbolSet& tau,
                                const SolverPtr& inner, int max_free_atoms) {
  // Every two-valued tau-completion of `w` must stay extendable. Checked by
  // enumerating completions, so only small vocabularies are sensible.
  auto all_completions_extendable = [&](const PartialStructure& w) {
    std::vector<int> open;
    for (int p : tau.members())
      for (int a = w.sig()->pred_begin(p); a < w.sig()->pred_end(p); ++a)
        if (!is_decided(w.value(a))) open.push_back(a);
    if (static_cast<int>(open.size()) > max_free_atoms) return false;
    PartialStructure cur = w;
    std::function<bool(size_t)> rec = [&](size_t i) {
      if (i == open.size()) return !inner->solve(cur.restricted(tau)).empty();
      for (TruthValue v : {TruthValue::True, TruthValue::False}) {
        cur.set(open[i], v);
        if (!rec(i + 1)) {
          cur.set(open[i], TruthValue::Unknown);
          return false;
        }
      }
      cur.set(open[i], TruthValue::Unknown);
      return true;
    };
    return rec(0);
  };

  PartialStructure out = witness;
  for (int a = 0; a < out.atom_count(); ++a) {
    if (!is_decided(out.value(a))) continue;
    PartialStructure candidate = out.updated(a, TruthValue::Unknown);
    if (all_completions_extendable(candidate)) out = candidate;
  }
  return out;
}

}  // namespace modex
