#pragma once

#include <memory>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace modex {

/// Boolean formula over predicate-equality atoms, used by the extended
/// selection sugar. Leaves are Q==R / Q!=R between predicate names.
class ThetaFormula {
 public:
  enum class Kind { Eq, Neq, And, Or, Not };

  static ThetaFormula eq(std::string q, std::string r);
  static ThetaFormula neq(std::string q, std::string r);
  static ThetaFormula conj(ThetaFormula a, ThetaFormula b);
  static ThetaFormula disj(ThetaFormula a, ThetaFormula b);
  static ThetaFormula neg(ThetaFormula a);

  Kind kind() const { return kind_; }
  const std::string& q() const { return q_; }
  const std::string& r() const { return r_; }
  const std::vector<ThetaFormula>& children() const { return kids_; }

  std::string to_string() const;
  bool operator==(const ThetaFormula&) const = default;

 private:
  Kind kind_ = Kind::Eq;
  std::string q_, r_;
  std::vector<ThetaFormula> kids_;
};

/// All unordered pairs (Q,R) entailed by theta, decided by truth-table
/// enumeration over its equality atoms and then closed under symmetry and
/// transitivity. Output pairs are canonical (lexicographically ordered names)
/// and sorted. Throws when theta has more than 16 distinct atoms.
std::vector<std::pair<std::string, std::string>> entailed_equalities(
    const ThetaFormula& theta);

class ModuleExpr;
using ExprPtr = std::shared_ptr<const ModuleExpr>;

/// AST of the module algebra. Product, Complement, Project and Select form
/// the minimal syntax; Plus and SelectTheta are sugar eliminated by
/// `desugar`.
class ModuleExpr {
 public:
  enum class Kind { Bot, Atomic, Product, Complement, Project, Select, Plus, SelectTheta };

  Kind kind;
  std::string name;                  // Atomic: module name
  ExprPtr lhs, rhs;                  // children (unary nodes use lhs)
  std::vector<std::string> delta;    // Project: predicate names, sorted
  std::string sel_q, sel_r;          // Select
  ThetaFormula theta;                // SelectTheta

  bool is_minimal_syntax() const;
  std::string to_string() const;
};

ExprPtr bot();
ExprPtr atomic(std::string name);
ExprPtr product(ExprPtr a, ExprPtr b);
ExprPtr complement(ExprPtr e);
ExprPtr project(std::vector<std::string> delta, ExprPtr e);
ExprPtr select(std::string q, std::string r, ExprPtr e);
ExprPtr plus(ExprPtr a, ExprPtr b);
ExprPtr select_theta(ThetaFormula theta, ExprPtr e);

bool expr_equal(const ExprPtr& a, const ExprPtr& b);

/// Eliminates Plus and SelectTheta:
///   E1 + E2            ->  -(-E1 x -E2)
///   sigma_{Q==R}  E    ->  select
///   sigma_{Q!=R}  E    ->  E x -select(Q,R,E)
///   sigma_{t1 & t2} E  ->  sigma_{t1} (sigma_{t2} E)
///   sigma_{t1 | t2} E  ->  -(-sigma_{t1} E x -sigma_{t2} E)
/// Negations are pushed to literals first. Minimal-syntax input is returned
/// unchanged (same nodes).
ExprPtr desugar(const ExprPtr& e);

}  // namespace modex
