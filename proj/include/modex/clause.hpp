#pragma once

#include <optional>
#include <string>
#include <vector>

#include "modex/structure.hpp"

namespace modex {

struct Literal {
  int atom = -1;
  bool positive = true;

  bool operator==(const Literal&) const = default;
  auto operator<=>(const Literal&) const = default;
};

/// Truth of a literal under a structure (negation swaps True/False).
inline TruthValue literal_value(const PartialStructure& b, Literal l) {
  TruthValue v = b.value(l.atom);
  return l.positive ? v : negated(v);
}

/// A literal counts as falsified once its value is at least False; an
/// Inconsistent atom falsifies both polarities.
inline bool literal_falsified(const PartialStructure& b, Literal l) {
  return leq_p(TruthValue::False, literal_value(b, l));
}

/// Ground disjunction of literals, kept sorted and deduplicated.
class Clause {
 public:
  Clause() = default;
  /// Normalizes: sorts, drops duplicate literals. Returns nullopt for a
  /// tautology (both polarities of one atom); callers drop those and warn.
  static std::optional<Clause> make(std::vector<Literal> lits);

  const std::vector<Literal>& lits() const { return lits_; }
  bool empty() const { return lits_.empty(); }
  int size() const { return static_cast<int>(lits_.size()); }
  /// Highest atom index; the trace's representative atom on conflicts.
  int max_atom() const;

  bool satisfied_by(const PartialStructure& b) const;

  std::string to_string(const Signature& sig) const;
  /// Canonical key for pool deduplication.
  std::string key() const;

  bool operator==(const Clause&) const = default;
  auto operator<=>(const Clause&) const = default;

 private:
  std::vector<Literal> lits_;
};

/// Clause forbidding exactly the two-valued structure `model`.
Clause negation_clause(const PartialStructure& model);
/// Clause forbidding every extension of the assigned part of `witness`.
Clause negation_clause_of_assigned(const PartialStructure& witness);

/// Standard resolution on `pivot`, which must occur with opposite polarity in
/// the two clauses. A tautological resolvent signals an analysis bug and
/// throws.
Clause resolve_minimal(const Clause& c1, const Clause& c2, int pivot);

}  // namespace modex
