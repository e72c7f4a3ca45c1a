#pragma once

#include "sea/model.hpp"

#include <json.hpp>

#include <string>
#include <string_view>

namespace sea::cli {

using Json = nlohmann::json;

inline constexpr int kSchemaVersion = 1;

/// {"schema": 1, "model": <expr>}.
struct ModelDocument {
  ModelExpr model;
};

/// Throws ParseError with a JSON-path location for malformed input, and
/// StructuralError/InputError for tables or models that violate their
/// construction invariants.
ModelDocument parse_document(std::string_view text);
ModelDocument load_document(const std::string& path);
std::string emit_document(const ModelDocument& doc);

ModelExpr parse_model(const Json& j, const std::string& where);
Json emit_model(const ModelExpr& m);

/// Elements: {"idx": i}, {"bits": [...]}, {"rat": "p/q"},
/// {"mat": [["p/q", ...], [...]]}, {"branch": k, "inner": e},
/// {"tuple": [...]}, "zero", "one".
Elem parse_elem(const Json& j, const std::string& where);
Json emit_elem(const Elem& e);

/// An element given on the command line: the bare words zero/one or JSON.
Elem parse_element_text(std::string_view text);

}  // namespace sea::cli
