#include "convval/document.hpp"

#include <algorithm>

#include "json.hpp"

#include "convval/errors.hpp"

namespace convval {

namespace {

using json = nlohmann::json;

std::size_t line_of(const std::string& text, std::size_t byte) {
  const std::size_t end = std::min(byte, text.size());
  return 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(end), '\n'));
}

json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError("line " + std::to_string(line_of(text, e.byte)) + ": " + e.what());
  }
}

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw ParseError("field " + path + ": " + what);
}

const json& field(const json& obj, const std::string& key, const std::string& path) {
  if (!obj.is_object()) fail(path, "expected an object");
  const auto it = obj.find(key);
  if (it == obj.end()) fail(path + "." + key, "missing");
  return *it;
}

Rational rational_at(const json& j, const std::string& path) {
  if (!j.is_string()) fail(path, "expected a rational string");
  try {
    return parse_rational(j.get<std::string>());
  } catch (const ParseError& e) {
    fail(path, e.what());
  }
}

Vec vector_at(const json& j, const std::string& path, std::optional<std::size_t> size) {
  if (!j.is_array()) fail(path, "expected an array");
  if (size && j.size() != *size) fail(path, "expected " + std::to_string(*size) + " entries");
  Vec out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(rational_at(j[i], path + "[" + std::to_string(i) + "]"));
  return out;
}

const json& array_field(const json& obj, const std::string& key, const std::string& path) {
  const json& a = field(obj, key, path);
  if (!a.is_array()) fail(path + "." + key, "expected an array");
  return a;
}

void check_header(const json& doc, const char* kind) {
  if (!doc.is_object()) fail("$", "expected an object");
  const json& schema = field(doc, "schema", "$");
  if (!schema.is_string() || schema.get<std::string>() != kSchema) {
    fail("$.schema", std::string("expected \"") + kSchema + "\"");
  }
  const json& k = field(doc, "kind", "$");
  if (!k.is_string() || k.get<std::string>() != kind) fail("$.kind", std::string("expected \"") + kind + "\"");
}

json vector_json(const Vec& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(to_string(x));
  return a;
}

json poly_json(const Polynomial& p) { return vector_json(p.coeffs()); }

std::string dump(const json& j) { return j.dump(2) + "\n"; }

}  // namespace

FunctionDocument parse_function_document(const std::string& text) {
  const json doc = parse_json(text);
  check_header(doc, "function");
  const json& nj = field(doc, "n", "$");
  if (!nj.is_number_unsigned() || nj.get<std::size_t>() == 0) fail("$.n", "expected a positive integer");
  const std::size_t n = nj.get<std::size_t>();

  std::vector<AffinePiece> pieces;
  const json& pj = array_field(doc, "pieces", "$");
  for (std::size_t i = 0; i < pj.size(); ++i) {
    const std::string path = "$.pieces[" + std::to_string(i) + "]";
    pieces.push_back(AffinePiece{vector_at(field(pj[i], "a", path), path + ".a", n),
                                 rational_at(field(pj[i], "b", path), path + ".b")});
  }
  HRep dom{n, {}, false};
  const json& dj = array_field(doc, "domain", "$");
  for (std::size_t i = 0; i < dj.size(); ++i) {
    const std::string path = "$.domain[" + std::to_string(i) + "]";
    dom.rows.push_back(Halfspace{vector_at(field(dj[i], "c", path), path + ".c", n),
                                 rational_at(field(dj[i], "d", path), path + ".d")});
  }
  FunctionDocument out{ClosedPwa::make(pieces, dom), std::nullopt};
  if (const auto it = doc.find("provenance"); it != doc.end()) {
    if (!it->is_string()) fail("$.provenance", "expected a string");
    out.provenance = it->get<std::string>();
  }
  return out;
}

std::string serialize_function_document(const FunctionDocument& doc) {
  const ClosedPwa& f = doc.function;
  json j;
  j["schema"] = kSchema;
  j["kind"] = "function";
  j["n"] = f.dimension();
  j["pieces"] = json::array();
  for (const auto& p : f.pieces()) j["pieces"].push_back({{"a", vector_json(p.slope)}, {"b", to_string(p.intercept)}});
  j["domain"] = json::array();
  for (const auto& r : f.domain().hrep().rows) {
    j["domain"].push_back({{"c", vector_json(r.normal)}, {"d", to_string(r.offset)}});
  }
  if (doc.provenance) j["provenance"] = *doc.provenance;
  return dump(j);
}

std::string serialize_function_document(const ClosedPwa& f, std::optional<std::string> provenance) {
  return serialize_function_document(FunctionDocument{f, std::move(provenance)});
}

namespace {

struct GrowthFields {
  std::vector<Rational> breaks;
  Rational head;
  std::vector<Polynomial> pieces;
  std::optional<ExpTail> tail;
  bool nonnegative = false;
};

GrowthFields growth_fields(const std::string& text) {
  const json doc = parse_json(text);
  check_header(doc, "growth");
  GrowthFields g;
  g.breaks = vector_at(field(doc, "breakpoints", "$"), "$.breakpoints", std::nullopt);
  g.head = rational_at(field(doc, "head", "$"), "$.head");
  const json& pj = array_field(doc, "pieces", "$");
  for (std::size_t i = 0; i < pj.size(); ++i) {
    g.pieces.emplace_back(vector_at(pj[i], "$.pieces[" + std::to_string(i) + "]", std::nullopt));
  }
  if (const auto it = doc.find("tail"); it != doc.end() && !it->is_null()) {
    g.tail = ExpTail{rational_at(field(*it, "lambda", "$.tail"), "$.tail.lambda"),
                     Polynomial(vector_at(field(*it, "poly", "$.tail"), "$.tail.poly", std::nullopt))};
  }
  if (const auto it = doc.find("nonnegative"); it != doc.end()) {
    if (!it->is_boolean()) fail("$.nonnegative", "expected a boolean");
    g.nonnegative = it->get<bool>();
  }
  return g;
}

}  // namespace

GrowthFunction parse_growth_document(const std::string& text) {
  GrowthFields g = growth_fields(text);
  try {
    return GrowthFunction::make(std::move(g.breaks), g.head, std::move(g.pieces), std::move(g.tail), g.nonnegative);
  } catch (const InvalidGrowthFunction&) {
    throw;
  } catch (const InvalidArgument& e) {
    fail("$", e.what());
  }
}

PiecewisePoly parse_piecewise_document(const std::string& text) {
  GrowthFields g = growth_fields(text);
  try {
    return PiecewisePoly(std::move(g.breaks), Polynomial::constant(g.head), std::move(g.pieces), std::move(g.tail));
  } catch (const InvalidArgument& e) {
    fail("$", e.what());
  }
}

std::string serialize_growth_document(const GrowthFunction& g) {
  json j;
  j["schema"] = kSchema;
  j["kind"] = "growth";
  j["breakpoints"] = vector_json(g.breakpoints());
  j["head"] = to_string(g.head().is_zero() ? Rational(0) : g.head().coeffs().front());
  j["pieces"] = json::array();
  for (const auto& p : g.pieces()) j["pieces"].push_back(poly_json(p));
  if (g.tail()) j["tail"] = {{"lambda", to_string(g.tail()->lambda)}, {"poly", poly_json(g.tail()->poly)}};
  else j["tail"] = nullptr;
  j["nonnegative"] = g.nonnegative();
  return dump(j);
}

std::string number_text(const Number& x) { return to_string(x); }

std::string serialize_law_reports(const std::vector<LawReport>& reports) {
  json a = json::array();
  for (const auto& r : reports) {
    a.push_back({{"law", r.law},
                 {"digest", r.digest},
                 {"pass", r.pass},
                 {"left", number_text(r.left)},
                 {"right", number_text(r.right)},
                 {"witness", r.witness},
                 {"tolerance", format_double(r.tolerance)},
                 {"seed", r.seed}});
  }
  return a.dump(2);
}

}  // namespace convval
