#pragma once

#include <map>
#include <string>
#include <variant>
#include <vector>

#include "modex/clause.hpp"
#include "modex/module_expr.hpp"
#include "modex/structure.hpp"

namespace modex {

/// Explicit list of accepted assignments over the module's vocabulary atoms.
struct TableBody {
  /// Atom ids covered by the vocabulary, ascending.
  std::vector<int> voc_atoms;
  /// One entry per row, parallel to voc_atoms (true = atom holds).
  std::vector<std::vector<bool>> rows;
};

struct ClauseBody {
  std::vector<Clause> clauses;
};

struct BuiltinBody {
  enum class Kind { TransitiveClosure, FullRelation, BoundsLeq };
  Kind kind;
  /// TransitiveClosure: {edge, trans}; FullRelation: {sym};
  /// BoundsLeq: {q_c, q_d} (both unary).
  std::vector<int> preds;
};

/// Black-box atomic module: a declared vocabulary and a membership test that
/// reads only that vocabulary's atoms.
struct AtomicModuleDef {
  SymbolSet voc;
  std::variant<TableBody, ClauseBody, BuiltinBody> body;
};

AtomicModuleDef make_table_module(const SignaturePtr& sig, SymbolSet voc,
                                  std::vector<PartialStructure> rows);
AtomicModuleDef make_clause_module(const SignaturePtr& sig, SymbolSet voc,
                                   std::vector<Clause> clauses);
AtomicModuleDef make_transitive_closure(const SignaturePtr& sig, SymbolSet voc,
                                        const std::string& edge, const std::string& trans);
AtomicModuleDef make_full_relation(const SignaturePtr& sig, SymbolSet voc,
                                   const std::string& sym);
AtomicModuleDef make_bounds_leq(const SignaturePtr& sig, SymbolSet voc,
                                const std::string& q_c, const std::string& q_d);

/// Membership of a two-valued structure. Throws on non-two-valued input.
bool atomic_member(const AtomicModuleDef& def, const PartialStructure& i);

/// Maps atomic module names to definitions; fixed for a run.
struct ModuleInterpretation {
  SignaturePtr sig;
  std::map<std::string, AtomicModuleDef> defs;

  const AtomicModuleDef& at(const std::string& name) const;
};

/// Vocabulary of an expression: voc(bot)=tau, voc(M)=declared,
/// voc(E1xE2)=union, voc(-E)=voc(E), voc(project_delta E)=delta,
/// voc(select E)=voc(E). Sugar nodes follow their desugared form.
SymbolSet vocabulary_of(const ExprPtr& e, const ModuleInterpretation& interp);

/// Checks arity/vocabulary side conditions (Select arities and occurrence,
/// Project delta within tau, atomic names resolve). Throws on violation.
void validate_expr(const ExprPtr& e, const ModuleInterpretation& interp);

}  // namespace modex
