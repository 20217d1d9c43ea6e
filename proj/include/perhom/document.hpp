#pragma once

#include <string>
#include <string_view>
#include <variant>

#include <json.hpp>

#include "perhom/complex.hpp"
#include "perhom/errors.hpp"
#include "perhom/gralg.hpp"
#include "perhom/periodic.hpp"

namespace perhom {

using json = nlohmann::json;

/// Schema or content error in an input document. `pointer` is the JSON pointer
/// of the offending value ("" for the whole document).
class ParseError : public InvalidInput {
 public:
  ParseError(std::string pointer, const std::string& message)
      : InvalidInput((pointer.empty() ? std::string("/") : pointer) + ": " + message), pointer_(std::move(pointer)) {}
  const std::string& pointer() const { return pointer_; }

 private:
  std::string pointer_;
};

using Document = std::variant<BoundedComplex, PeriodicComplex, GradedModule, ChainMap, FlagData, GradedComplex>;

/// "complex", "periodic", "graded-module", "chain-map", "flag" or "graded-complex".
std::string document_kind(const Document& d);

/// Parses and validates. Complexes must square to zero, chain maps must commute
/// with the differentials, modules must satisfy the algebra relations.
Document parse_document(std::string_view text);
Document from_json(const json& j);

/// Canonical form: sorted keys, no whitespace, rationals as "a/b" or "a"
/// strings, F_p entries as integers in [0, p), followed by one newline.
std::string serialize(const Document& d);
json to_json(const Document& d);

json field_to_json(const Field& f);
json matrix_to_json(const Matrix& m);

/// Compact dump of j with a trailing newline; keys come out sorted.
std::string canonical(const json& j);

}  // namespace perhom
