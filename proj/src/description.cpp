#include "mcn/description.hpp"

#include <json.hpp>

#include "mcn/error.hpp"

namespace mcn {

using nlohmann::json;

namespace {

Integer as_integer(const json& v, const char* what) {
  if (v.is_number_unsigned()) {
    if (v.get<std::uint64_t>() > static_cast<std::uint64_t>(std::numeric_limits<Integer>::max()))
      throw InputError(std::string(what) + " is out of range");
    return static_cast<Integer>(v.get<std::uint64_t>());
  }
  if (!v.is_number_integer()) throw InputError(std::string(what) + " must be an integer");
  return v.get<Integer>();
}

void only_keys(const json& obj, std::initializer_list<const char*> allowed, const char* where) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    bool ok = false;
    for (const char* k : allowed) ok = ok || it.key() == k;
    if (!ok) throw InputError("unknown key '" + it.key() + "' in " + where);
  }
}

PwlExpr parse_node(const json& node, std::size_t n) {
  if (!node.is_object() || node.size() != 1)
    throw InputError("expression node must be an object with exactly one of affine/min/max");
  only_keys(node, {"affine", "min", "max"}, "expression node");
  if (auto it = node.find("affine"); it != node.end()) {
    const json& a = *it;
    if (!a.is_object()) throw InputError("affine must be an object");
    only_keys(a, {"constant", "coeffs"}, "affine");
    if (!a.contains("constant") || !a.contains("coeffs")) throw InputError("affine needs constant and coeffs");
    const json& cs = a["coeffs"];
    if (!cs.is_array() || cs.size() != n)
      throw InputError("coeffs must be an array of " + std::to_string(n) + " integers");
    std::vector<Integer> coeffs;
    for (const auto& c : cs) coeffs.push_back(as_integer(c, "coefficient"));
    return PwlExpr::leaf(AffineForm(as_integer(a["constant"], "constant"), std::move(coeffs)));
  }
  const bool is_min = node.contains("min");
  const json& list = is_min ? node["min"] : node["max"];
  if (!list.is_array() || list.empty()) throw InputError("min/max needs a nonempty array");
  std::vector<PwlExpr> children;
  for (const auto& c : list) children.push_back(parse_node(c, n));
  return is_min ? PwlExpr::min(std::move(children)) : PwlExpr::max(std::move(children));
}

json node_to_json(const PwlExpr& e) {
  if (e.kind() == PwlKind::Leaf)
    return json{{"affine", {{"constant", e.form().constant()}, {"coeffs", e.form().coeffs()}}}};
  json list = json::array();
  for (const auto& c : e.children()) list.push_back(node_to_json(c));
  return json{{e.kind() == PwlKind::Min ? "min" : "max", list}};
}

}  // namespace

Description parse_description(std::string_view json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what(), e.byte);
  }
  if (!doc.is_object()) throw InputError("description must be a JSON object");
  only_keys(doc, {"vars", "expr"}, "description");
  if (!doc.contains("vars") || !doc.contains("expr")) throw InputError("description needs vars and expr");
  Integer vars = as_integer(doc["vars"], "vars");
  if (vars < 1) throw InputError("vars must be >= 1");
  Description d;
  d.vars = static_cast<std::size_t>(vars);
  d.expr = parse_node(doc["expr"], d.vars);
  return d;
}

std::string write_description(const PwlExpr& expr) {
  json doc{{"vars", expr.arity()}, {"expr", node_to_json(expr)}};
  return doc.dump() + "\n";
}

}  // namespace mcn
