#pragma once

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace modex {

/// Ordered, finite set of distinct element names. The order is fixed for the
/// lifetime of a problem and doubles as the total order used by builtins that
/// treat elements as integers 1..|A|.
class Domain {
 public:
  Domain() = default;
  explicit Domain(std::vector<std::string> elems);

  int size() const { return static_cast<int>(elems_.size()); }
  const std::string& element(int i) const { return elems_[i]; }
  const std::vector<std::string>& elements() const { return elems_; }
  /// Index of an element name, -1 if absent.
  int index_of(std::string_view name) const;

  bool operator==(const Domain&) const = default;

 private:
  std::vector<std::string> elems_;
};

struct Predicate {
  std::string name;
  int arity = 0;
  bool operator==(const Predicate&) const = default;
};

/// A shared (domain, vocabulary) pair. Domain atoms are indexed densely:
/// predicates in declaration order, tuples per predicate in lexicographic
/// order over the domain's element order. A structure is then a flat array
/// indexed by atom id.
class Signature {
 public:
  static std::shared_ptr<const Signature> make(Domain domain,
                                               std::vector<Predicate> preds);

  const Domain& domain() const { return domain_; }
  int pred_count() const { return static_cast<int>(preds_.size()); }
  const Predicate& pred(int p) const { return preds_[p]; }
  const std::vector<Predicate>& preds() const { return preds_; }
  /// Predicate index by name, -1 if absent.
  int pred_index(std::string_view name) const;

  int atom_count() const { return atom_count_; }
  int pred_of_atom(int atom) const { return pred_of_atom_[atom]; }
  /// First atom id of predicate p; the block has size |A|^arity.
  int pred_begin(int p) const { return offsets_[p]; }
  int pred_end(int p) const { return offsets_[p + 1]; }
  int pred_size(int p) const { return offsets_[p + 1] - offsets_[p]; }

  /// Atom id for a predicate and tuple of element indices.
  int atom_id(int p, std::span<const int> tuple) const;
  /// Inverse of atom_id.
  std::pair<int, std::vector<int>> atom_decode(int atom) const;
  /// Display form "Q(a,b)"; nullary atoms print as a bare name.
  std::string atom_name(int atom) const;
  /// Parses a display form back to an atom id.
  std::optional<int> parse_atom(std::string_view text) const;

  bool same_as(const Signature& other) const {
    return domain_ == other.domain_ && preds_ == other.preds_;
  }

 private:
  Signature(Domain domain, std::vector<Predicate> preds);

  Domain domain_;
  std::vector<Predicate> preds_;
  std::vector<int> offsets_;  // pred_count()+1 entries
  std::vector<int> pred_of_atom_;
  int atom_count_ = 0;
};

using SignaturePtr = std::shared_ptr<const Signature>;

/// Subset of a signature's predicates (a sub-vocabulary).
class SymbolSet {
 public:
  SymbolSet() = default;
  explicit SymbolSet(const SignaturePtr& sig) : sig_(sig), bits_(sig->pred_count(), false) {}
  static SymbolSet all(const SignaturePtr& sig);
  static SymbolSet of(const SignaturePtr& sig, std::initializer_list<std::string_view> names);
  static SymbolSet of_names(const SignaturePtr& sig, const std::vector<std::string>& names);

  const SignaturePtr& sig() const { return sig_; }
  bool contains(int p) const { return bits_[p]; }
  void add(int p) { bits_[p] = true; }
  int count() const;
  bool empty() const { return count() == 0; }

  SymbolSet united(const SymbolSet& o) const;
  SymbolSet minus(const SymbolSet& o) const;
  SymbolSet complemented() const;
  bool subset_of(const SymbolSet& o) const;

  /// Predicate ids in ascending order.
  std::vector<int> members() const;
  /// Predicate names in ascending id order.
  std::vector<std::string> names() const;

  bool operator==(const SymbolSet&) const = default;

 private:
  SignaturePtr sig_;
  std::vector<bool> bits_;
};

}  // namespace modex
