#include "modex/signature.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_set>

namespace modex {

Domain::Domain(std::vector<std::string> elems) : elems_(std::move(elems)) {
  if (elems_.empty()) throw std::invalid_argument("domain must be nonempty");
  std::unordered_set<std::string_view> seen;
  for (const auto& e : elems_) {
    if (!seen.insert(e).second)
      throw std::invalid_argument("duplicate domain element: " + e);
  }
}

int Domain::index_of(std::string_view name) const {
  for (int i = 0; i < size(); ++i)
    if (elems_[i] == name) return i;
  return -1;
}

Signature::Signature(Domain domain, std::vector<Predicate> preds)
    : domain_(std::move(domain)), preds_(std::move(preds)) {
  std::unordered_set<std::string_view> seen;
  for (const auto& p : preds_) {
    if (p.arity < 0) throw std::invalid_argument("negative arity");
    if (!seen.insert(p.name).second)
      throw std::invalid_argument("duplicate predicate: " + p.name);
  }
  offsets_.resize(preds_.size() + 1, 0);
  for (size_t i = 0; i < preds_.size(); ++i) {
    long long block = 1;
    for (int k = 0; k < preds_[i].arity; ++k) {
      block *= domain_.size();
      if (block > 1'000'000) throw std::invalid_argument("predicate block too large");
    }
    offsets_[i + 1] = offsets_[i] + static_cast<int>(block);
  }
  atom_count_ = offsets_.back();
  pred_of_atom_.resize(atom_count_);
  for (size_t p = 0; p < preds_.size(); ++p)
    for (int a = offsets_[p]; a < offsets_[p + 1]; ++a) pred_of_atom_[a] = static_cast<int>(p);
}

std::shared_ptr<const Signature> Signature::make(Domain domain,
                                                 std::vector<Predicate> preds) {
  return std::shared_ptr<const Signature>(
      new Signature(std::move(domain), std::move(preds)));
}

int Signature::pred_index(std::string_view name) const {
  for (int i = 0; i < pred_count(); ++i)
    if (preds_[i].name == name) return i;
  return -1;
}

int Signature::atom_id(int p, std::span<const int> tuple) const {
  if (static_cast<int>(tuple.size()) != preds_[p].arity)
    throw std::invalid_argument("tuple length does not match arity");
  int id = 0;
  for (int e : tuple) {
    if (e < 0 || e >= domain_.size()) throw std::invalid_argument("element out of range");
    id = id * domain_.size() + e;
  }
  return offsets_[p] + id;
}

std::pair<int, std::vector<int>> Signature::atom_decode(int atom) const {
  int p = pred_of_atom_[atom];
  int rest = atom - offsets_[p];
  std::vector<int> tuple(preds_[p].arity);
  for (int k = preds_[p].arity - 1; k >= 0; --k) {
    tuple[k] = rest % domain_.size();
    rest /= domain_.size();
  }
  return {p, std::move(tuple)};
}

std::string Signature::atom_name(int atom) const {
  auto [p, tuple] = atom_decode(atom);
  std::string out = preds_[p].name;
  if (!tuple.empty()) {
    out += '(';
    for (size_t i = 0; i < tuple.size(); ++i) {
      if (i) out += ',';
      out += domain_.element(tuple[i]);
    }
    out += ')';
  }
  return out;
}

std::optional<int> Signature::parse_atom(std::string_view text) const {
  auto paren = text.find('(');
  std::string_view pname = paren == std::string_view::npos ? text : text.substr(0, paren);
  int p = pred_index(pname);
  if (p < 0) return std::nullopt;
  std::vector<int> tuple;
  if (paren != std::string_view::npos) {
    if (text.back() != ')') return std::nullopt;
    std::string_view args = text.substr(paren + 1, text.size() - paren - 2);
    size_t pos = 0;
    while (pos <= args.size() && !args.empty()) {
      size_t comma = args.find(',', pos);
      std::string_view elem = args.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos);
      int e = domain_.index_of(elem);
      if (e < 0) return std::nullopt;
      tuple.push_back(e);
      if (comma == std::string_view::npos) break;
      pos = comma + 1;
    }
  }
  if (static_cast<int>(tuple.size()) != preds_[p].arity) return std::nullopt;
  return atom_id(p, tuple);
}

SymbolSet SymbolSet::all(const SignaturePtr& sig) {
  SymbolSet s(sig);
  for (int p = 0; p < sig->pred_count(); ++p) s.bits_[p] = true;
  return s;
}

SymbolSet SymbolSet::of(const SignaturePtr& sig,
                        std::initializer_list<std::string_view> names) {
  SymbolSet s(sig);
  for (auto n : names) {
    int p = sig->pred_index(n);
    if (p < 0) throw std::invalid_argument("unknown predicate: " + std::string(n));
    s.bits_[p] = true;
  }
  return s;
}

SymbolSet SymbolSet::of_names(const SignaturePtr& sig,
                              const std::vector<std::string>& names) {
  SymbolSet s(sig);
  for (const auto& n : names) {
    int p = sig->pred_index(n);
    if (p < 0) throw std::invalid_argument("unknown predicate: " + n);
    s.bits_[p] = true;
  }
  return s;
}

int SymbolSet::count() const {
  return static_cast<int>(std::count(bits_.begin(), bits_.end(), true));
}

SymbolSet SymbolSet::united(const SymbolSet& o) const {
  SymbolSet s(sig_);
  for (size_t i = 0; i < bits_.size(); ++i) s.bits_[i] = bits_[i] || o.bits_[i];
  return s;
}

SymbolSet SymbolSet::minus(const SymbolSet& o) const {
  SymbolSet s(sig_);
  for (size_t i = 0; i < bits_.size(); ++i) s.bits_[i] = bits_[i] && !o.bits_[i];
  return s;
}

SymbolSet SymbolSet::complemented() const {
  SymbolSet s(sig_);
  for (size_t i = 0; i < bits_.size(); ++i) s.bits_[i] = !bits_[i];
  return s;
}

bool SymbolSet::subset_of(const SymbolSet& o) const {
  for (size_t i = 0; i < bits_.size(); ++i)
    if (bits_[i] && !o.bits_[i]) return false;
  return true;
}

std::vector<int> SymbolSet::members() const {
  std::vector<int> out;
  for (size_t i = 0; i < bits_.size(); ++i)
    if (bits_[i]) out.push_back(static_cast<int>(i));
  return out;
}

std::vector<std::string> SymbolSet::names() const {
  std::vector<std::string> out;
  for (int p : members()) out.push_back(sig_->pred(p).name);
  return out;
}

}  // namespace modex
