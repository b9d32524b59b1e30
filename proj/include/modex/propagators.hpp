#pragma once

#include "modex/module_defs.hpp"
#include "modex/propagator.hpp"

namespace modex {

enum class Strategy { Checker, Best };

// ---------------------------------------------------------------------------
// Primitive propagators
// ---------------------------------------------------------------------------

/// Unit propagation over a clause set, iterated to a fixed point. A clause
/// whose literals are all falsified is a conflict and sends the whole
/// structure to top; this (rather than marking single atoms) is what keeps
/// the operator monotone in the precision order.
PropagatorPtr unit_propagator(const SignaturePtr& sig, std::vector<Clause> clauses,
                              std::string name = "unit");

/// unit_propagator of the empty set.
PropagatorPtr identity_propagator(const SignaturePtr& sig);

/// Rank-0 checker of -{model}: unit propagation on the model's negation.
PropagatorPtr forbid_model_checker(const PartialStructure& model);

/// Bounds-consistency transfer for c <= d over unary threshold predicates:
/// true values of q_d copy into q_c, false values of q_c copy into q_d
/// (joins, single simultaneous pass).
PropagatorPtr bounds_leq_propagator(const SignaturePtr& sig, int qc_pred, int qd_pred);

/// Per-tuple equality join of Q and R over all tuples (single pass).
PropagatorPtr equality_propagator(const SignaturePtr& sig, int q_pred, int r_pred);

/// Clause-form equivalent of the single-tuple equality propagator:
/// the two clauses Q(t) | -R(t) and -Q(t) | R(t).
PropagatorPtr equality_tuple_propagator(const SignaturePtr& sig, int q_pred,
                                        int r_pred, std::span<const int> tuple);

/// One forward-closure round: true edges seed the closure predicate and true
/// closure pairs compose transitively.
PropagatorPtr tc_forward_propagator(const SignaturePtr& sig, int edge_pred,
                                    int trans_pred);

/// Membership checker of an atomic module definition.
PropagatorPtr atomic_checker(const SignaturePtr& sig, AtomicModuleDef def,
                             std::string name = "check");

/// Semantic checker of an arbitrary expression: identity on consistent
/// partial structures, identity on two-valued models, top otherwise.
PropagatorPtr checker_of(const ExprPtr& e, const ModuleInterpretation& interp);

/// Maps every two-valued structure to top (the best bot-propagator).
PropagatorPtr constant_top(const SignaturePtr& sig);

// ---------------------------------------------------------------------------
// Combinators
// ---------------------------------------------------------------------------

PropagatorPtr compose(PropagatorPtr first_applied_last, PropagatorPtr first_applied);

/// Iterates until a fixed point; a run past 2*atoms+1 productive steps means
/// the argument is not information-preserving and throws.
PropagatorPtr fixpoint(PropagatorPtr p);

/// glb of the solver's answers; top when there are none. The most precise
/// propagator for the solver's module.
PropagatorPtr optimal_from_solver(SolverPtr s, const SignaturePtr& sig);

/// Pointwise join of both results.
PropagatorPtr product_prop(PropagatorPtr p, PropagatorPtr q);

/// Pointwise meet of both results: propagates what holds under either
/// disjunct.
PropagatorPtr disjoin_prop(PropagatorPtr p1, PropagatorPtr p2);

/// Runs p, then joins Q and R tuple-wise in p's output.
PropagatorPtr select_prop(const SignaturePtr& sig, int q_pred, int r_pred,
                          PropagatorPtr p);

/// The projection propagator: top on inconsistent input; top when the input
/// is two-valued on delta and the inner solver finds nothing; otherwise the
/// join of p's delta-restricted propagation with the untouched remainder.
PropagatorPtr project_prop(SymbolSet delta, PropagatorPtr p, SolverPtr inner);

/// Complement checker: flips p's two-valued verdict. A two-valued structure
/// that p does not fix is not in p's module, hence accepted here.
PropagatorPtr complement_checker(PropagatorPtr p);

/// Nested-solver negation of a projected module: once the input is two-valued
/// on tau_inner and the inner solver can extend it, the whole structure is a
/// conflict. `witness_fn` may shrink the two-valued tau-part used for the
/// learned explanation; identity is always valid.
using WitnessFn = std::function<PartialStructure(const PartialStructure&)>;
PropagatorPtr negation_nested(SymbolSet tau_inner, SolverPtr inner,
                              WitnessFn witness_fn = {}, int rank = 2);

// ---------------------------------------------------------------------------
// Checker-strategy combinators (trivial except on two-valued input)
// ---------------------------------------------------------------------------

PropagatorPtr product_checker(PropagatorPtr p, PropagatorPtr q);
PropagatorPtr project_checker(SymbolSet delta, SolverPtr inner);
PropagatorPtr sigma_checker(const SignaturePtr& sig, int q_pred, int r_pred,
                            PropagatorPtr p);
PropagatorPtr bot_checker(const SignaturePtr& sig);

// ---------------------------------------------------------------------------
// Assembly and test utilities
// ---------------------------------------------------------------------------

/// Two-valued fixpoints of p by enumeration; the unique module p propagates
/// for. Refuses signatures above the atom budget.
std::vector<PartialStructure> module_of(const PropagatorPtr& p, const SignaturePtr& sig,
                                        int atom_budget = 16);

/// One assembled node of a built propagator, exposed so tests can inspect
/// per-combinator instrumentation.
struct BuiltNode {
  ModuleExpr::Kind kind;
  PropagatorPtr prop;
};

/// Recursive assembly of a propagator for an expression. Atomic modules get
/// their natural propagators; compound nodes use the checker combinators or
/// the stronger product/project/select forms depending on the strategy.
/// Plus always maps to disjoin_prop, and extended selection wraps the
/// desugared propagator with a select transfer per entailed equality.
PropagatorPtr build_propagator(const ExprPtr& e, const ModuleInterpretation& interp,
                               Strategy strategy = Strategy::Best,
                               std::vector<BuiltNode>* nodes = nullptr);

/// Propagate-and-search solver over p (the default inner solver for
/// projection), memoized.
SolverPtr default_inner_solver(PropagatorPtr p, const SignaturePtr& sig);

/// Oracle-backed solver, for tests and optimal_from_solver.
SolverPtr oracle_solver(const ExprPtr& e, const ModuleInterpretation& interp);

}  // namespace modex
