#pragma once

#include <vector>

#include "modex/module_defs.hpp"

namespace modex {

/// Reference semantics by brute-force enumeration. Projection is decided by
/// searching for a witness assignment to the atoms outside delta; an internal
/// per-call cache keyed on the delta restriction keeps repeated leaf
/// evaluations cheap.
///
/// Both functions accept sugared input and desugar internally, so they remain
/// total on every expressible module.
bool eval_module(const ExprPtr& e, const ModuleInterpretation& interp,
                 const PartialStructure& i);

/// All two-valued structures above `b` that satisfy `e`, in lexicographic
/// order by atom index with True before False. An inconsistent `b` has no
/// two-valued extensions, so the result is empty.
std::vector<PartialStructure> enumerate_models(const ExprPtr& e,
                                               const ModuleInterpretation& interp,
                                               const PartialStructure& b,
                                               int atom_budget = 24);

}  // namespace modex
