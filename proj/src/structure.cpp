#include "modex/structure.hpp"

#include <stdexcept>

namespace modex {

PartialStructure::PartialStructure(SignaturePtr sig, TruthValue fill)
    : sig_(std::move(sig)), vals_(sig_->atom_count(), fill) {}

PartialStructure PartialStructure::bottom(const SignaturePtr& sig) {
  return PartialStructure(sig, TruthValue::Unknown);
}

PartialStructure PartialStructure::top(const SignaturePtr& sig) {
  return PartialStructure(sig, TruthValue::Inconsistent);
}

void PartialStructure::set(int atom, TruthValue v) {
  if (atom < 0 || atom >= atom_count())
    throw std::invalid_argument("atom id out of range");
  vals_[atom] = v;
}

PartialStructure PartialStructure::updated(int atom, TruthValue v) const {
  PartialStructure out = *this;
  out.set(atom, v);
  return out;
}

bool PartialStructure::is_consistent() const {
  for (TruthValue v : vals_)
    if (v == TruthValue::Inconsistent) return false;
  return true;
}

bool PartialStructure::is_two_valued() const {
  for (TruthValue v : vals_)
    if (!is_decided(v)) return false;
  return true;
}

bool PartialStructure::is_top() const {
  for (TruthValue v : vals_)
    if (v != TruthValue::Inconsistent) return false;
  return true;
}

Classification PartialStructure::classify() const {
  if (!is_consistent()) return Classification::Inconsistent;
  return is_two_valued() ? Classification::Consistent2V
                         : Classification::ConsistentPartial;
}

PartialStructure PartialStructure::restricted(const SymbolSet& delta) const {
  PartialStructure out = bottom(sig_);
  for (int p : delta.members())
    for (int a = sig_->pred_begin(p); a < sig_->pred_end(p); ++a)
      out.vals_[a] = vals_[a];
  return out;
}

bool PartialStructure::two_valued_on(const SymbolSet& delta) const {
  for (int p : delta.members())
    for (int a = sig_->pred_begin(p); a < sig_->pred_end(p); ++a)
      if (!is_decided(vals_[a])) return false;
  return true;
}

std::string PartialStructure::key() const {
  std::string k(vals_.size(), '\0');
  for (size_t i = 0; i < vals_.size(); ++i)
    k[i] = static_cast<char>(static_cast<std::uint8_t>(vals_[i]));
  return k;
}

static void require_same_sig(const PartialStructure& a, const PartialStructure& b) {
  if (a.sig() == b.sig()) return;
  if (a.sig() && b.sig() && a.sig()->same_as(*b.sig())) return;
  throw std::invalid_argument("structures over different signatures");
}

bool leq_p(const PartialStructure& a, const PartialStructure& b) {
  require_same_sig(a, b);
  for (int i = 0; i < a.atom_count(); ++i)
    if (!leq_p(a.value(i), b.value(i))) return false;
  return true;
}

PartialStructure lub(const PartialStructure& a, const PartialStructure& b) {
  require_same_sig(a, b);
  PartialStructure out = a;
  for (int i = 0; i < a.atom_count(); ++i) out.set(i, lub(a.value(i), b.value(i)));
  return out;
}

PartialStructure glb(const PartialStructure& a, const PartialStructure& b) {
  require_same_sig(a, b);
  PartialStructure out = a;
  for (int i = 0; i < a.atom_count(); ++i) out.set(i, glb(a.value(i), b.value(i)));
  return out;
}

PartialStructure lub_all(std::span<const PartialStructure> xs) {
  if (xs.empty()) throw std::invalid_argument("lub of empty set is not defined");
  PartialStructure out = xs[0];
  for (size_t i = 1; i < xs.size(); ++i) out = lub(out, xs[i]);
  return out;
}

PartialStructure glb_all(const SignaturePtr& sig,
                         std::span<const PartialStructure> xs) {
  if (xs.empty()) return PartialStructure::top(sig);
  PartialStructure out = xs[0];
  for (size_t i = 1; i < xs.size(); ++i) out = glb(out, xs[i]);
  return out;
}

}  // namespace modex
