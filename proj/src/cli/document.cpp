#include "sea/cli/document.hpp"

#include "sea/error.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

namespace sea::cli {

namespace {

[[noreturn]] void fail(const std::string& where, const std::string& what) { throw ParseError(where, what); }

const Json& field(const Json& j, const char* key, const std::string& where) {
  if (!j.is_object()) fail(where, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) fail(where, std::string("missing field \"") + key + "\"");
  return *it;
}

std::size_t as_index(const Json& j, const std::string& where) {
  if (!j.is_number_integer() && !j.is_number_unsigned()) fail(where, "expected a non-negative integer");
  if (j.is_number_integer() && j.get<long long>() < 0) fail(where, "expected a non-negative integer");
  return j.get<std::size_t>();
}

Rational as_rational(const Json& j, const std::string& where) {
  if (!j.is_string()) fail(where, "rationals are written as strings \"p/q\"");
  try {
    return parse_rational(j.get<std::string>());
  } catch (const ParseError& e) {
    fail(where, e.what());
  }
}

void only_fields(const Json& j, std::initializer_list<std::string_view> allowed, const std::string& where) {
  for (const auto& [key, value] : j.items()) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) fail(where + "." + key, "unexpected field");
  }
}

const Json& as_array(const Json& j, const std::string& where) {
  if (!j.is_array()) fail(where, "expected an array");
  return j;
}

std::vector<std::array<std::size_t, 3>> triples(const Json& j, const std::string& where) {
  std::vector<std::array<std::size_t, 3>> out;
  const Json& arr = as_array(j, where);
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const std::string w = where + "[" + std::to_string(i) + "]";
    if (!arr[i].is_array() || arr[i].size() != 3) fail(w, "expected a triple [i, j, k]");
    out.push_back({as_index(arr[i][0], w), as_index(arr[i][1], w), as_index(arr[i][2], w)});
  }
  return out;
}

ModelExpr parse_finite(const Json& j, const std::string& where) {
  const std::size_t size = as_index(field(j, "size", where), where + ".size");
  if (size == 0) fail(where + ".size", "size must be positive");
  const Index one = as_index(field(j, "one", where), where + ".one");
  std::vector<SumEntry> sums;
  std::set<std::pair<std::size_t, std::size_t>> seen;
  for (const auto& [a, b, c] : triples(field(j, "sum", where), where + ".sum")) {
    if (!seen.insert({std::min(a, b), std::max(a, b)}).second) {
      fail(where + ".sum", "pair (" + std::to_string(a) + ", " + std::to_string(b) + ") listed twice");
    }
    sums.push_back({a, b, c});
  }
  std::vector<Index> perp;
  const Json& pj = as_array(field(j, "perp", where), where + ".perp");
  for (std::size_t i = 0; i < pj.size(); ++i) perp.push_back(as_index(pj[i], where + ".perp[" + std::to_string(i) + "]"));
  FiniteEATable table(size, one, sums, std::move(perp));

  std::optional<ProductTable> product;
  if (auto it = j.find("product"); it != j.end()) {
    const std::string w = where + ".product";
    std::vector<Index> cells(size * size, 0);
    std::vector<bool> filled(size * size, false);
    for (const auto& [a, b, c] : triples(*it, w)) {
      if (a >= size || b >= size || c >= size) fail(w, "product entry out of range");
      if (filled[a * size + b]) fail(w, "product of (" + std::to_string(a) + ", " + std::to_string(b) + ") listed twice");
      filled[a * size + b] = true;
      cells[a * size + b] = c;
    }
    for (std::size_t k = 0; k < filled.size(); ++k) {
      if (!filled[k]) {
        fail(w, "product of (" + std::to_string(k / size) + ", " + std::to_string(k % size) + ") is missing");
      }
    }
    product = ProductTable(size, std::move(cells));
  }
  return ModelExpr::finite(std::move(table), std::move(product));
}

std::vector<ModelExpr> parse_parts(const Json& j, const std::string& where) {
  const std::string w = where + ".parts";
  const Json& arr = as_array(field(j, "parts", where), w);
  std::vector<ModelExpr> out;
  for (std::size_t i = 0; i < arr.size(); ++i) out.push_back(parse_model(arr[i], w + "[" + std::to_string(i) + "]"));
  return out;
}

}  // namespace

ModelExpr parse_model(const Json& j, const std::string& where) {
  const Json& kind_j = field(j, "kind", where);
  if (!kind_j.is_string()) fail(where + ".kind", "expected a string");
  const std::string kind = kind_j.get<std::string>();
  if (kind == "finite") only_fields(j, {"kind", "size", "one", "sum", "perp", "product"}, where);
  if (kind == "boolean") only_fields(j, {"kind", "atoms"}, where);
  if (kind == "interval" || kind == "matrix_interval") only_fields(j, {"kind"}, where);
  if (kind == "horizontal_sum" || kind == "direct_sum") only_fields(j, {"kind", "parts"}, where);
  if (kind == "corner") only_fields(j, {"kind", "base", "idempotent"}, where);
  if (kind == "finite") return parse_finite(j, where);
  if (kind == "boolean") return ModelExpr::boolean(as_index(field(j, "atoms", where), where + ".atoms"));
  if (kind == "interval") return ModelExpr::interval();
  if (kind == "matrix_interval") return ModelExpr::matrix_interval();
  if (kind == "horizontal_sum") return ModelExpr::horizontal_sum(parse_parts(j, where));
  if (kind == "direct_sum") return ModelExpr::direct_sum(parse_parts(j, where));
  if (kind == "corner") {
    ModelExpr base = parse_model(field(j, "base", where), where + ".base");
    Elem p = parse_elem(field(j, "idempotent", where), where + ".idempotent");
    return ModelExpr::corner(std::move(base), std::move(p));
  }
  fail(where + ".kind", "unknown model kind \"" + kind + "\"");
}

Json emit_model(const ModelExpr& m) {
  Json j;
  j["kind"] = kind_name(m.kind());
  switch (m.kind()) {
    case ModelExpr::Kind::Finite: {
      const auto& t = m.table();
      j["size"] = t.size();
      j["one"] = t.one();
      Json sums = Json::array();
      for (const auto& e : t.entries()) sums.push_back({e.i, e.j, e.k});
      j["sum"] = sums;
      Json perp = Json::array();
      for (Index i = 0; i < t.size(); ++i) perp.push_back(t.perp(i));
      j["perp"] = perp;
      if (const auto& p = m.product_table()) {
        Json prod = Json::array();
        for (Index a = 0; a < p->size; ++a) {
          for (Index b = 0; b < p->size; ++b) prod.push_back({a, b, (*p)(a, b)});
        }
        j["product"] = prod;
      }
      break;
    }
    case ModelExpr::Kind::Boolean: j["atoms"] = m.atoms(); break;
    case ModelExpr::Kind::Interval:
    case ModelExpr::Kind::MatrixInterval: break;
    case ModelExpr::Kind::HorizontalSum:
    case ModelExpr::Kind::DirectSum: {
      Json parts = Json::array();
      for (const auto& p : m.parts()) parts.push_back(emit_model(p));
      j["parts"] = parts;
      break;
    }
    case ModelExpr::Kind::Corner:
      j["base"] = emit_model(m.base());
      j["idempotent"] = emit_elem(m.idempotent());
      break;
  }
  return j;
}

Elem parse_elem(const Json& j, const std::string& where) {
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "zero") return Elem::zero();
    if (s == "one") return Elem::one();
    fail(where, "unknown element \"" + s + "\"");
  }
  if (!j.is_object() || j.empty()) fail(where, "expected an element");
  if (j.contains("branch")) {
    if (j.size() != 2) fail(where, "a branch element has exactly the fields \"branch\" and \"inner\"");
    return Elem::branch(as_index(j["branch"], where + ".branch"), parse_elem(field(j, "inner", where), where + ".inner"));
  }
  if (j.size() != 1) fail(where, "an element has exactly one tag");
  const auto& [key, value] = *j.items().begin();
  const std::string w = where + "." + key;
  if (key == "idx") return Elem::idx(as_index(value, w));
  if (key == "bits") {
    std::uint64_t mask = 0;
    const Json& arr = as_array(value, w);
    for (std::size_t i = 0; i < arr.size(); ++i) {
      const std::size_t atom = as_index(arr[i], w + "[" + std::to_string(i) + "]");
      if (atom >= 64) fail(w, "atom index out of range");
      if (mask >> atom & 1u) fail(w, "atom " + std::to_string(atom) + " listed twice");
      mask |= std::uint64_t{1} << atom;
    }
    return Elem::bits(mask);
  }
  if (key == "rat") return Elem::rat(as_rational(value, w));
  if (key == "mat") {
    const Json& rows = as_array(value, w);
    if (rows.size() != 2 || !rows[0].is_array() || !rows[1].is_array() || rows[0].size() != 2 || rows[1].size() != 2) {
      fail(w, "expected a 2x2 array of rationals");
    }
    return Elem::mat(Mat2{as_rational(rows[0][0], w + "[0][0]"), as_rational(rows[0][1], w + "[0][1]"),
                          as_rational(rows[1][0], w + "[1][0]"), as_rational(rows[1][1], w + "[1][1]")});
  }
  if (key == "tuple") {
    const Json& arr = as_array(value, w);
    std::vector<Elem> parts;
    for (std::size_t i = 0; i < arr.size(); ++i) parts.push_back(parse_elem(arr[i], w + "[" + std::to_string(i) + "]"));
    return Elem::tuple(std::move(parts));
  }
  fail(where, "unknown element tag \"" + key + "\"");
}

Json emit_elem(const Elem& e) {
  return std::visit(
      [](const auto& v) -> Json {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, ZeroTag>) {
          return "zero";
        } else if constexpr (std::is_same_v<T, OneTag>) {
          return "one";
        } else if constexpr (std::is_same_v<T, FiniteIdx>) {
          return Json{{"idx", v.value}};
        } else if constexpr (std::is_same_v<T, Bits>) {
          Json atoms = Json::array();
          for (unsigned k = 0; k < 64; ++k) {
            if (v.mask >> k & 1u) atoms.push_back(k);
          }
          return Json{{"bits", atoms}};
        } else if constexpr (std::is_same_v<T, Rat>) {
          return Json{{"rat", to_string(v.value)}};
        } else if constexpr (std::is_same_v<T, Mat2>) {
          return Json{{"mat", Json::array({Json::array({to_string(v.a), to_string(v.b)}),
                                            Json::array({to_string(v.c), to_string(v.d)})})}};
        } else if constexpr (std::is_same_v<T, Branch>) {
          return Json{{"branch", v.part}, {"inner", emit_elem(*v.inner)}};
        } else {
          Json parts = Json::array();
          for (const auto& p : v.parts) parts.push_back(emit_elem(p));
          return Json{{"tuple", parts}};
        }
      },
      e.value());
}

ModelDocument parse_document(std::string_view text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    fail("byte " + std::to_string(e.byte), "invalid JSON");
  }
  const Json& schema = field(j, "schema", "document");
  only_fields(j, {"schema", "model"}, "document");
  if (!schema.is_number_integer() || schema.get<long long>() != kSchemaVersion) {
    fail("document.schema", "unsupported schema version (expected " + std::to_string(kSchemaVersion) + ")");
  }
  return ModelDocument{parse_model(field(j, "model", "document"), "model")};
}

ModelDocument load_document(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  try {
    return parse_document(ss.str());
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.location(), std::string(e.what()).substr(e.location().empty() ? 0 : e.location().size() + 2));
  }
}

std::string emit_document(const ModelDocument& doc) {
  Json j;
  j["schema"] = kSchemaVersion;
  j["model"] = emit_model(doc.model);
  return j.dump(2) + "\n";
}

Elem parse_element_text(std::string_view text) {
  if (text == "zero" || text == "0") return Elem::zero();
  if (text == "one" || text == "1") return Elem::one();
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    fail("element, byte " + std::to_string(e.byte), "invalid JSON");
  }
  return parse_elem(j, "element");
}

}  // namespace sea::cli
