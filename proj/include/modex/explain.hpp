#pragma once

#include "modex/propagators.hpp"

namespace modex {

class ExplainingPropagator;
using EPropPtr = std::shared_ptr<const ExplainingPropagator>;

/// A propagator paired with an explanation map. `explain(b)` returns either
/// nothing (unexplained) or a simpler explaining propagator whose propagation
/// at b covers this one's. Explanations are extracted at the state a
/// propagation fired from, and only consistent states are ever queried by
/// the engines.
class ExplainingPropagator {
 public:
  using ExplainFn = std::function<EPropPtr(const PartialStructure&)>;

  ExplainingPropagator(PropagatorPtr prop, ExplainFn fn)
      : prop_(std::move(prop)), fn_(std::move(fn)) {}

  const PropagatorPtr& prop() const { return prop_; }
  int rank() const { return prop_->rank(); }
  /// nullptr means unexplained.
  EPropPtr explain(const PartialStructure& b) const { return fn_ ? fn_(b) : nullptr; }

 private:
  PropagatorPtr prop_;
  ExplainFn fn_;
};

/// Wraps a plain propagator with the always-unexplained map. Fully valid for
/// rank-0 propagators; for higher ranks the engines treat an unexplained
/// propagation as a decision-like step during conflict analysis.
EPropPtr lift(PropagatorPtr p);

EPropPtr make_explaining(PropagatorPtr p, ExplainingPropagator::ExplainFn fn);

/// Product: explains when both sides explain their share (a side that fixed
/// the input contributes the identity). Two clause-form sides merge into one
/// clause-form explanation.
EPropPtr e_product(EPropPtr a, EPropPtr b);

/// Projection: wraps the child's explanation at the delta-restriction;
/// unexplained on inconsistent input, on an unexplained child, and in the
/// solver-refuted two-valued case.
EPropPtr e_project(SymbolSet delta, EPropPtr child, SolverPtr inner,
                   Strategy strategy = Strategy::Best);

/// Selection: product with the equality-transfer explaining propagator.
EPropPtr e_select(const SignaturePtr& sig, int q_pred, int r_pred, EPropPtr child,
                  Strategy strategy = Strategy::Best);

/// (P_{Q==R}, C_{Q==R}): tuple-wise equality joins explained by the per-tuple
/// clause pairs of the tuples that differ.
EPropPtr equality_explaining(const SignaturePtr& sig, int q_pred, int r_pred);

/// The bounds-transfer propagator explained by unit propagation over the
/// clauses q_c(n) | -q_d(n) that already have a false literal. At
/// inconsistent states, where the clause propagation cannot cover the raw
/// joins, the explanation is withheld.
EPropPtr bounds_explainer(const SignaturePtr& sig, int qc_pred, int qd_pred);

/// Nested-solver negation explained by the negated witness clause.
EPropPtr negation_nested_ep(SymbolSet tau_inner, SolverPtr inner,
                            WitnessFn witness_fn = {}, int rank = 2);

/// Mirrors build_propagator with the explaining combinators. The complement
/// of a projection becomes the nested-solver negation with witness-clause
/// learning; other complements and the table/builtin checkers stay
/// unexplained lifts.
EPropPtr build_explaining(const ExprPtr& e, const ModuleInterpretation& interp,
                          Strategy strategy = Strategy::Best,
                          std::vector<BuiltNode>* nodes = nullptr);

/// Shrinks a satisfiable witness greedily: tries to drop one assigned atom at
/// a time while every two-valued completion of the remainder stays
/// extendable. Enumerative; meant for small inner vocabularies.
PartialStructure shrink_witness(const PartialStructure& witness, const SymbolSet& tau,
                                const SolverPtr& inner, int max_free_atoms = 12);

}  // namespace modex
