#include "modex/structure_io.hpp"

#include <fstream>
#include <json.hpp>

namespace modex {

namespace {

using ordered_json = nlohmann::ordered_json;

ordered_json atoms_object(const PartialStructure& b) {
  ordered_json atoms = ordered_json::object();
  for (int a = 0; a < b.atom_count(); ++a) {
    TruthValue v = b.value(a);
    if (v == TruthValue::Unknown) continue;
    atoms[b.sig()->atom_name(a)] = std::string(1, to_char(v));
  }
  return atoms;
}

ordered_json header(const SignaturePtr& sig) {
  ordered_json j;
  j["format"] = "modex/1";
  j["domain"] = sig->domain().elements();
  ordered_json vocab = ordered_json::object();
  for (const auto& p : sig->preds()) vocab[p.name] = p.arity;
  j["vocab"] = vocab;
  return j;
}

SignaturePtr signature_from_json(const ordered_json& j) {
  if (!j.contains("domain") || !j["domain"].is_array())
    throw SchemaError("/domain", "expected an array of element names");
  std::vector<std::string> elems;
  for (size_t i = 0; i < j["domain"].size(); ++i) {
    if (!j["domain"][i].is_string())
      throw SchemaError("/domain/" + std::to_string(i), "expected a string");
    elems.push_back(j["domain"][i].get<std::string>());
  }
  if (!j.contains("vocab") || !j["vocab"].is_object())
    throw SchemaError("/vocab", "expected an object of name: arity");
  std::vector<Predicate> preds;
  for (const auto& [name, arity] : j["vocab"].items()) {
    if (!arity.is_number_integer() || arity.get<int>() < 0)
      throw SchemaError("/vocab/" + name, "arity must be a nonnegative integer");
    preds.push_back({name, arity.get<int>()});
  }
  try {
    return Signature::make(Domain(std::move(elems)), std::move(preds));
  } catch (const std::invalid_argument& e) {
    throw SchemaError("/domain", e.what());
  }
}

}  // namespace

PartialStructure read_structure_text(const std::string& text, SignaturePtr target) {
  ordered_json j;
  try {
    j = ordered_json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw SchemaError("/", std::string("invalid JSON: ") + e.what());
  }
  if (j.contains("format") && j["format"] != "modex/1")
    throw SchemaError("/format", "unsupported format version");

  SignaturePtr sig = signature_from_json(j);
  if (target) {
    if (!(target->domain() == sig->domain()))
      throw SchemaError("/domain", "domain does not match the problem's domain");
    if (target->pred_count() != sig->pred_count())
      throw SchemaError("/vocab", "vocabulary does not match the problem's vocabulary");
    for (const auto& p : sig->preds()) {
      int tp = target->pred_index(p.name);
      if (tp < 0 || target->pred(tp).arity != p.arity)
        throw SchemaError("/vocab/" + p.name, "predicate does not match the problem");
    }
    sig = target;
  }

  PartialStructure b = PartialStructure::bottom(sig);
  if (!j.contains("atoms")) return b;
  if (!j["atoms"].is_object())
    throw SchemaError("/atoms", "expected an object of atom: value");
  for (const auto& [name, val] : j["atoms"].items()) {
    auto atom = sig->parse_atom(name);
    if (!atom) throw SchemaError("/atoms/" + name, "unknown atom");
    if (!val.is_string() || val.get<std::string>().size() != 1)
      throw SchemaError("/atoms/" + name, "value must be one of t, f, u, i");
    char c = val.get<std::string>()[0];
    if (c != 't' && c != 'f' && c != 'u' && c != 'i')
      throw SchemaError("/atoms/" + name, "value must be one of t, f, u, i");
    b.set(*atom, truth_value_from_char(c));
  }
  return b;
}

PartialStructure read_structure_file(const std::string& path, SignaturePtr target) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::string text((std::istreambuf_iterator<char>(in)),
                   std::istreambuf_iterator<char>());
  return read_structure_text(text, std::move(target));
}

std::string write_structure(const PartialStructure& b) {
  ordered_json j = header(b.sig());
  j["atoms"] = atoms_object(b);
  return j.dump(2) + "\n";
}

void write_structure_file(const std::string& path, const PartialStructure& b) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path);
  out << write_structure(b);
}

std::string write_models(const std::vector<PartialStructure>& models) {
  ordered_json j;
  if (models.empty()) {
    j["format"] = "modex/1";
    j["count"] = 0;
    j["models"] = ordered_json::array();
    return j.dump(2) + "\n";
  }
  j = header(models.front().sig());
  j["count"] = models.size();
  ordered_json arr = ordered_json::array();
  for (const auto& m : models) arr.push_back(atoms_object(m));
  j["models"] = arr;
  return j.dump(2) + "\n";
}

void write_models_file(const std::string& path,
                       const std::vector<PartialStructure>& models) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path);
  out << write_models(models);
}

}  // namespace modex
