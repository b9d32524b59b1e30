#pragma once

#include <map>
#include <string>
#include <vector>

#include "modex/module_defs.hpp"

namespace modex {

/// Parse error with a 1-based line:column position.
class ParseError : public std::runtime_error {
 public:
  ParseError(int line, int col, const std::string& msg)
      : std::runtime_error(std::to_string(line) + ":" + std::to_string(col) + ": " + msg),
        line_(line),
        col_(col) {}
  int line() const { return line_; }
  int col() const { return col_; }

 private:
  int line_, col_;
};

/// A parsed problem: signature, atomic module definitions, named expressions
/// and the designated goal.
struct ProblemSpec {
  SignaturePtr sig;
  ModuleInterpretation interp;
  std::vector<std::pair<std::string, ExprPtr>> exprs;
  std::string goal_name;
  std::vector<std::string> warnings;  // e.g. dropped tautological clauses

  ExprPtr goal() const;
};

/// Problem DSL:
///   domain a b c ;
///   vocab Edge/2, Trans/2 ;
///   module Mt := builtin transitive_closure(Edge, Trans) with voc {Edge, Trans} ;
///   module C  := clause { p | -q ; q } with voc {p, q} ;
///   module T  := table { p=t q=f ; p=f q=t } with voc {p, q} ;
///   expr E := project {Edge} (Mt * -Mf) ;
///   solve E ;
/// Expressions use * (product), prefix - (complement), + (disjunction),
/// project {preds} (E), select P==Q (E), select [theta] (E) and bot.
/// '#' starts a comment.
ProblemSpec parse_problem(const std::string& text);

/// Canonical text form; parse(print(parse(t))) == parse(t).
std::string print_problem(const ProblemSpec& spec);

}  // namespace modex
