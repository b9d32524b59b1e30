#pragma once

#include <span>
#include <string>
#include <vector>

#include "modex/signature.hpp"
#include "modex/truth_value.hpp"

namespace modex {

enum class Classification { Consistent2V, ConsistentPartial, Inconsistent };

/// Total map from the signature's domain atoms to four truth values.
/// Values behave as immutable from a caller's perspective: `updated` returns
/// a fresh structure. Engines mutate private copies through `set`.
class PartialStructure {
 public:
  PartialStructure() = default;
  /// All atoms Unknown (the least precise structure).
  static PartialStructure bottom(const SignaturePtr& sig);
  /// All atoms Inconsistent (the most precise structure).
  static PartialStructure top(const SignaturePtr& sig);

  const SignaturePtr& sig() const { return sig_; }
  int atom_count() const { return static_cast<int>(vals_.size()); }

  TruthValue value(int atom) const { return vals_[atom]; }
  void set(int atom, TruthValue v);
  void join(int atom, TruthValue v) { set(atom, lub(vals_[atom], v)); }
  /// Copy with one atom re-assigned; this structure is untouched.
  PartialStructure updated(int atom, TruthValue v) const;

  bool is_consistent() const;
  bool is_two_valued() const;
  bool is_top() const;
  Classification classify() const;

  /// Equal on atoms of `delta`'s predicates, Unknown elsewhere.
  PartialStructure restricted(const SymbolSet& delta) const;
  /// All atoms of `delta`'s predicates are True or False.
  bool two_valued_on(const SymbolSet& delta) const;

  bool operator==(const PartialStructure& o) const { return vals_ == o.vals_; }
  /// Lexicographic by atom index with Unknown < True < False < Inconsistent;
  /// on two-valued structures this is the spec's model ordering.
  bool operator<(const PartialStructure& o) const { return vals_ < o.vals_; }

  std::span<const TruthValue> values() const { return vals_; }
  std::string key() const;  // compact byte string, usable as a map key

 private:
  PartialStructure(SignaturePtr sig, TruthValue fill);

  SignaturePtr sig_;
  std::vector<TruthValue> vals_;
};

/// Pointwise precision order; throws if the signatures differ.
bool leq_p(const PartialStructure& a, const PartialStructure& b);

PartialStructure lub(const PartialStructure& a, const PartialStructure& b);
PartialStructure glb(const PartialStructure& a, const PartialStructure& b);

/// Pointwise join of a nonempty set.
PartialStructure lub_all(std::span<const PartialStructure> xs);
/// Pointwise meet; the empty set yields top(sig).
PartialStructure glb_all(const SignaturePtr& sig, std::span<const PartialStructure> xs);

}  // namespace modex
