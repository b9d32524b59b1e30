#include "modex/clause.hpp"

#include <algorithm>
#include <stdexcept>

namespace modex {

std::optional<Clause> Clause::make(std::vector<Literal> lits) {
  std::sort(lits.begin(), lits.end());
  lits.erase(std::unique(lits.begin(), lits.end()), lits.end());
  for (size_t i = 1; i < lits.size(); ++i)
    if (lits[i].atom == lits[i - 1].atom) return std::nullopt;  // tautology
  Clause c;
  c.lits_ = std::move(lits);
  return c;
}

int Clause::max_atom() const {
  int m = -1;
  for (const auto& l : lits_) m = std::max(m, l.atom);
  return m;
}

bool Clause::satisfied_by(const PartialStructure& b) const {
  for (const auto& l : lits_)
    if (leq_p(TruthValue::True, literal_value(b, l))) return true;
  return false;
}

std::string Clause::to_string(const Signature& sig) const {
  std::string out = "[";
  for (size_t i = 0; i < lits_.size(); ++i) {
    if (i) out += ' ';
    if (!lits_[i].positive) out += '-';
    out += sig.atom_name(lits_[i].atom);
  }
  out += ']';
  return out;
}

std::string Clause::key() const {
  std::string k;
  for (const auto& l : lits_) {
    k += l.positive ? '+' : '-';
    k += std::to_string(l.atom);
    k += ';';
  }
  return k;
}

Clause negation_clause(const PartialStructure& model) {
  std::vector<Literal> lits;
  for (int a = 0; a < model.atom_count(); ++a) {
    TruthValue v = model.value(a);
    if (!is_decided(v)) throw std::invalid_argument("model must be two-valued");
    lits.push_back({a, v == TruthValue::False});
  }
  return *Clause::make(std::move(lits));
}

Clause negation_clause_of_assigned(const PartialStructure& witness) {
  std::vector<Literal> lits;
  for (int a = 0; a < witness.atom_count(); ++a) {
    TruthValue v = witness.value(a);
    if (is_decided(v)) lits.push_back({a, v == TruthValue::False});
  }
  return *Clause::make(std::move(lits));
}

Clause resolve_minimal(const Clause& c1, const Clause& c2, int pivot) {
  bool pos1 = false, neg1 = false, pos2 = false, neg2 = false;
  for (const auto& l : c1.lits())
    if (l.atom == pivot) (l.positive ? pos1 : neg1) = true;
  for (const auto& l : c2.lits())
    if (l.atom == pivot) (l.positive ? pos2 : neg2) = true;
  if (!((pos1 && neg2) || (neg1 && pos2)))
    throw std::invalid_argument("pivot must occur with opposite polarities");
  std::vector<Literal> lits;
  for (const auto& l : c1.lits())
    if (l.atom != pivot) lits.push_back(l);
  for (const auto& l : c2.lits())
    if (l.atom != pivot) lits.push_back(l);
  auto c = Clause::make(std::move(lits));
  if (!c) throw std::logic_error("tautological resolvent: bad analysis ordering");
  return *c;
}

}  // namespace modex
