#include "modex/module_expr.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace modex {

ThetaFormula ThetaFormula::eq(std::string q, std::string r) {
  ThetaFormula t;
  t.kind_ = Kind::Eq;
  t.q_ = std::move(q);
  t.r_ = std::move(r);
  return t;
}

ThetaFormula ThetaFormula::neq(std::string q, std::string r) {
  ThetaFormula t = eq(std::move(q), std::move(r));
  t.kind_ = Kind::Neq;
  return t;
}

ThetaFormula ThetaFormula::conj(ThetaFormula a, ThetaFormula b) {
  ThetaFormula t;
  t.kind_ = Kind::And;
  t.kids_ = {std::move(a), std::move(b)};
  return t;
}

ThetaFormula ThetaFormula::disj(ThetaFormula a, ThetaFormula b) {
  ThetaFormula t;
  t.kind_ = Kind::Or;
  t.kids_ = {std::move(a), std::move(b)};
  return t;
}

ThetaFormula ThetaFormula::neg(ThetaFormula a) {
  ThetaFormula t;
  t.kind_ = Kind::Not;
  t.kids_ = {std::move(a)};
  return t;
}

std::string ThetaFormula::to_string() const {
  switch (kind_) {
    case Kind::Eq: return q_ + "==" + r_;
    case Kind::Neq: return q_ + "!=" + r_;
    case Kind::Not: return "!(" + kids_[0].to_string() + ")";
    case Kind::And:
      return "(" + kids_[0].to_string() + " & " + kids_[1].to_string() + ")";
    case Kind::Or:
      return "(" + kids_[0].to_string() + " | " + kids_[1].to_string() + ")";
  }
  return "?";
}

namespace {

using NamePair = std::pair<std::string, std::string>;

NamePair canonical(const std::string& a, const std::string& b) {
  return a <= b ? NamePair{a, b} : NamePair{b, a};
}

void collect_atoms(const ThetaFormula& t, std::vector<NamePair>& atoms) {
  switch (t.kind()) {
    case ThetaFormula::Kind::Eq:
    case ThetaFormula::Kind::Neq: {
      NamePair p = canonical(t.q(), t.r());
      if (std::find(atoms.begin(), atoms.end(), p) == atoms.end())
        atoms.push_back(p);
      break;
    }
    default:
      for (const auto& k : t.children()) collect_atoms(k, atoms);
  }
}

bool eval_theta(const ThetaFormula& t, const std::vector<NamePair>& atoms,
                unsigned row) {
  switch (t.kind()) {
    case ThetaFormula::Kind::Eq:
    case ThetaFormula::Kind::Neq: {
      NamePair p = canonical(t.q(), t.r());
      auto it = std::find(atoms.begin(), atoms.end(), p);
      bool v = (row >> (it - atoms.begin())) & 1u;
      return t.kind() == ThetaFormula::Kind::Eq ? v : !v;
    }
    case ThetaFormula::Kind::Not:
      return !eval_theta(t.children()[0], atoms, row);
    case ThetaFormula::Kind::And:
      return eval_theta(t.children()[0], atoms, row) &&
             eval_theta(t.children()[1], atoms, row);
    case ThetaFormula::Kind::Or:
      return eval_theta(t.children()[0], atoms, row) ||
             eval_theta(t.children()[1], atoms, row);
  }
  return false;
}

}  // namespace

std::vector<NamePair> entailed_equalities(const ThetaFormula& theta) {
  std::vector<NamePair> atoms;
  collect_atoms(theta, atoms);
  if (atoms.size() > 16) throw std::invalid_argument("theta has too many equality atoms");

  // Truth-table entailment: an atom is entailed when true in every
  // satisfying row. An unsatisfiable theta entails every atom.
  std::vector<bool> entailed(atoms.size(), true);
  for (unsigned row = 0; row < (1u << atoms.size()); ++row) {
    if (!eval_theta(theta, atoms, row)) continue;
    for (size_t i = 0; i < atoms.size(); ++i)
      if (!((row >> i) & 1u)) entailed[i] = false;
  }

  // Close under symmetry (canonical pairs already) and transitivity.
  std::map<std::string, std::string> parent;
  auto find = [&](std::string x) {
    parent.try_emplace(x, x);
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  std::vector<std::string> names;
  for (size_t i = 0; i < atoms.size(); ++i) {
    if (!entailed[i]) continue;
    for (const auto& n : {atoms[i].first, atoms[i].second})
      if (std::find(names.begin(), names.end(), n) == names.end())
        names.push_back(n);
    parent[find(atoms[i].first)] = find(atoms[i].second);
  }
  std::sort(names.begin(), names.end());
  std::vector<NamePair> out;
  for (size_t i = 0; i < names.size(); ++i)
    for (size_t j = i + 1; j < names.size(); ++j)
      if (find(names[i]) == find(names[j])) out.push_back({names[i], names[j]});
  std::sort(out.begin(), out.end());
  return out;
}

bool ModuleExpr::is_minimal_syntax() const {
  switch (kind) {
    case Kind::Plus:
    case Kind::SelectTheta: return false;
    case Kind::Bot:
    case Kind::Atomic: return true;
    case Kind::Product: return lhs->is_minimal_syntax() && rhs->is_minimal_syntax();
    case Kind::Complement:
    case Kind::Project:
    case Kind::Select: return lhs->is_minimal_syntax();
  }
  return false;
}

std::string ModuleExpr::to_string() const {
  switch (kind) {
    case Kind::Bot: return "bot";
    case Kind::Atomic: return name;
    case Kind::Product: return "(" + lhs->to_string() + " * " + rhs->to_string() + ")";
    case Kind::Plus: return "(" + lhs->to_string() + " + " + rhs->to_string() + ")";
    case Kind::Complement: return "-" + lhs->to_string();
    case Kind::Project: {
      std::string out = "project {";
      for (size_t i = 0; i < delta.size(); ++i) {
        if (i) out += ", ";
        out += delta[i];
      }
      return out + "} (" + lhs->to_string() + ")";
    }
    case Kind::Select:
      return "select " + sel_q + "==" + sel_r + " (" + lhs->to_string() + ")";
    case Kind::SelectTheta:
      return "select [" + theta.to_string() + "] (" + lhs->to_string() + ")";
  }
  return "?";
}

ExprPtr bot() {
  auto e = std::make_shared<ModuleExpr>();
  e->kind = ModuleExpr::Kind::Bot;
  return e;
}

ExprPtr atomic(std::string name) {
  auto e = std::make_shared<ModuleExpr>();
  e->kind = ModuleExpr::Kind::Atomic;
  e->name = std::move(name);
  return e;
}

ExprPtr product(ExprPtr a, ExprPtr b) {
  auto e = std::make_shared<ModuleExpr>();
  e->kind = ModuleExpr::Kind::Product;
  e->lhs = std::move(a);
  e->rhs = std::move(b);
  return e;
}

ExprPtr complement(ExprPtr sub) {
  auto e = std::make_shared<ModuleExpr>();
  e->kind = ModuleExpr::Kind::Complement;
  e->lhs = std::move(sub);
  return e;
}

ExprPtr project(std::vector<std::string> delta, ExprPtr sub) {
  auto e = std::make_shared<ModuleExpr>();
  e->kind = ModuleExpr::Kind::Project;
  std::sort(delta.begin(), delta.end());
  delta.erase(std::unique(delta.begin(), delta.end()), delta.end());
  e->delta = std::move(delta);
  e->lhs = std::move(sub);
  return e;
}

ExprPtr select(std::string q, std::string r, ExprPtr sub) {
  auto e = std::make_shared<ModuleExpr>();
  e->kind = ModuleExpr::Kind::Select;
  e->sel_q = std::move(q);
  e->sel_r = std::move(r);
  e->lhs = std::move(sub);
  return e;
}

ExprPtr plus(ExprPtr a, ExprPtr b) {
  auto e = std::make_shared<ModuleExpr>();
  e->kind = ModuleExpr::Kind::Plus;
  e->lhs = std::move(a);
  e->rhs = std::move(b);
  return e;
}

ExprPtr select_theta(ThetaFormula theta, ExprPtr sub) {
  auto e = std::make_shared<ModuleExpr>();
  e->kind = ModuleExpr::Kind::SelectTheta;
  e->theta = std::move(theta);
  e->lhs = std::move(sub);
  return e;
}

bool expr_equal(const ExprPtr& a, const ExprPtr& b) {
  if (a == b) return true;
  if (!a || !b || a->kind != b->kind) return false;
  switch (a->kind) {
    case ModuleExpr::Kind::Bot: return true;
    case ModuleExpr::Kind::Atomic: return a->name == b->name;
    case ModuleExpr::Kind::Product:
    case ModuleExpr::Kind::Plus:
      return expr_equal(a->lhs, b->lhs) && expr_equal(a->rhs, b->rhs);
    case ModuleExpr::Kind::Complement: return expr_equal(a->lhs, b->lhs);
    case ModuleExpr::Kind::Project:
      return a->delta == b->delta && expr_equal(a->lhs, b->lhs);
    case ModuleExpr::Kind::Select:
      return a->sel_q == b->sel_q && a->sel_r == b->sel_r && expr_equal(a->lhs, b->lhs);
    case ModuleExpr::Kind::SelectTheta:
      return a->theta == b->theta && expr_equal(a->lhs, b->lhs);
  }
  return false;
}

namespace {

// sigma_theta over a desugared subject, with theta already in NNF.
ExprPtr desugar_selection(const ThetaFormula& t, const ExprPtr& subject) {
  using K = ThetaFormula::Kind;
  switch (t.kind()) {
    case K::Eq: return select(t.q(), t.r(), subject);
    case K::Neq:
      return product(subject, complement(select(t.q(), t.r(), subject)));
    case K::And:
      return desugar_selection(t.children()[0],
                               desugar_selection(t.children()[1], subject));
    case K::Or:
      return complement(product(complement(desugar_selection(t.children()[0], subject)),
                                complement(desugar_selection(t.children()[1], subject))));
    case K::Not: throw std::logic_error("theta not in negation normal form");
  }
  throw std::logic_error("unreachable");
}

ThetaFormula to_nnf(const ThetaFormula& t, bool negate) {
  using K = ThetaFormula::Kind;
  switch (t.kind()) {
    case K::Eq:
      return negate ? ThetaFormula::neq(t.q(), t.r()) : t;
    case K::Neq:
      return negate ? ThetaFormula::eq(t.q(), t.r()) : t;
    case K::Not:
      return to_nnf(t.children()[0], !negate);
    case K::And: {
      auto a = to_nnf(t.children()[0], negate);
      auto b = to_nnf(t.children()[1], negate);
      return negate ? ThetaFormula::disj(a, b) : ThetaFormula::conj(a, b);
    }
    case K::Or: {
      auto a = to_nnf(t.children()[0], negate);
      auto b = to_nnf(t.children()[1], negate);
      return negate ? ThetaFormula::conj(a, b) : ThetaFormula::disj(a, b);
    }
  }
  throw std::logic_error("unreachable");
}

}  // namespace

ExprPtr desugar(const ExprPtr& e) {
  switch (e->kind) {
    case ModuleExpr::Kind::Bot:
    case ModuleExpr::Kind::Atomic: return e;
    case ModuleExpr::Kind::Product: {
      ExprPtr l = desugar(e->lhs), r = desugar(e->rhs);
      return (l == e->lhs && r == e->rhs) ? e : product(l, r);
    }
    case ModuleExpr::Kind::Complement: {
      ExprPtr l = desugar(e->lhs);
      return l == e->lhs ? e : complement(l);
    }
    case ModuleExpr::Kind::Project: {
      ExprPtr l = desugar(e->lhs);
      return l == e->lhs ? e : project(e->delta, l);
    }
    case ModuleExpr::Kind::Select: {
      ExprPtr l = desugar(e->lhs);
      return l == e->lhs ? e : select(e->sel_q, e->sel_r, l);
    }
    case ModuleExpr::Kind::Plus:
      return complement(product(complement(desugar(e->lhs)),
                                complement(desugar(e->rhs))));
    case ModuleExpr::Kind::SelectTheta:
      return desugar_selection(to_nnf(e->theta, false), desugar(e->lhs));
  }
  throw std::logic_error("unreachable");
}

}  // namespace modex
