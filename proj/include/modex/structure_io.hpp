#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "modex/structure.hpp"

namespace modex {

/// Schema violation with a JSON-pointer location.
class SchemaError : public std::runtime_error {
 public:
  SchemaError(const std::string& pointer, const std::string& message)
      : std::runtime_error(pointer + ": " + message), pointer_(pointer) {}
  const std::string& pointer() const { return pointer_; }

 private:
  std::string pointer_;
};

/// Reads the versioned structure format
///   {"format":"modex/1","domain":[...],"vocab":{"Q":2},"atoms":{"Q(a,b)":"t"}}
/// Unlisted atoms default to unknown. With a target signature, the file's
/// domain and vocabulary must match it and atoms are mapped by name.
PartialStructure read_structure_text(const std::string& text,
                                     SignaturePtr target = nullptr);
PartialStructure read_structure_file(const std::string& path,
                                     SignaturePtr target = nullptr);

/// Canonical serialization: fixed key order, atoms ascending by id, unknown
/// values omitted. Read-write round trips are byte identical.
std::string write_structure(const PartialStructure& b);
void write_structure_file(const std::string& path, const PartialStructure& b);

/// Models file: {"format":"modex/1","count":N,"models":[{atoms...},...]}.
std::string write_models(const std::vector<PartialStructure>& models);
void write_models_file(const std::string& path,
                       const std::vector<PartialStructure>& models);

}  // namespace modex
