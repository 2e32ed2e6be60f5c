#include <json.hpp>

#include "imlkit/proofsys.hpp"

namespace imlkit {

using nlohmann::json;

Derivation derivation_from_json(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw FormatError(std::string("proof script is not valid JSON: ") + e.what());
  }
  Derivation d;
  const json* lines = &doc;
  if (doc.is_object()) {
    if (doc.contains("logic")) {
      if (!doc["logic"].is_string()) throw FormatError("\"logic\" must be a string");
      d.logic = Logic::parse(doc["logic"].get<std::string>());
    }
    if (!doc.contains("lines")) throw FormatError("proof script object needs \"lines\"");
    lines = &doc["lines"];
  }
  if (!lines->is_array()) throw FormatError("proof script must be an array of lines");
  int number = 0;
  for (const auto& item : *lines) {
    ++number;
    const std::string where = "line " + std::to_string(number) + ": ";
    if (!item.is_object() || !item.contains("formula") || !item.contains("by") ||
        !item["formula"].is_string() || !item["by"].is_string())
      throw FormatError(where + "each line needs string fields \"formula\" and \"by\"");
    try {
      ProofLine line{parse(item["formula"].get<std::string>()),
                     parse_justification(item["by"].get<std::string>()), ""};
      if (item.contains("label")) {
        if (!item["label"].is_string() && !item["label"].is_number())
          throw FormatError("\"label\" must be a string or number");
        line.label = item["label"].is_string() ? item["label"].get<std::string>() : item["label"].dump();
      }
      d.lines.push_back(std::move(line));
    } catch (const ParseError& e) {
      throw FormatError(where + e.what());
    } catch (const FormatError& e) {
      throw FormatError(where + e.what());
    }
  }
  return d;
}

std::string derivation_to_json(const Derivation& d) {
  json lines = json::array();
  for (const auto& l : d.lines) {
    json item = {{"formula", l.formula.str()}, {"by", print_justification(l.by)}};
    if (!l.label.empty()) item["label"] = l.label;
    lines.push_back(std::move(item));
  }
  if (!d.logic) return lines.dump(2);
  return json{{"logic", d.logic->name}, {"lines", lines}}.dump(2);
}

const std::vector<std::pair<std::string, std::string>>& bundled_scripts() {
  static const std::vector<std::pair<std::string, std::string>> scripts = {
      {"a5_from_a1_r1", R"js([
  {"formula": "p -> (q -> p & q)", "by": "IPL"},
  {"formula": "[](p -> (q -> p & q))", "by": "R1 1"},
  {"formula": "[](p -> (q -> p & q)) -> ([]p -> [](q -> p & q))", "by": "axiom:A1 {p: p, q: q -> p & q}"},
  {"formula": "[]p -> [](q -> p & q)", "by": "MP 2 3"},
  {"formula": "[](q -> p & q) -> ([]q -> [](p & q))", "by": "axiom:A1 {p: q, q: p & q}"},
  {"formula": "[]p & []q -> [](p & q)", "by": "IPL 4,5"}
])js"},
      {"a6_from_r1", R"js([
  {"formula": "T", "by": "IPL"},
  {"formula": "[]T", "by": "R1 1"}
])js"},
      {"a1_from_a5_r4", R"js([
  {"formula": "(p -> q) & p -> q", "by": "IPL"},
  {"formula": "[]((p -> q) & p) -> []q", "by": "R4 1"},
  {"formula": "[](p -> q) & []p -> []((p -> q) & p)", "by": "axiom:A5 {p: p -> q, q: p}"},
  {"formula": "[](p -> q) -> ([]p -> []q)", "by": "IPL 2,3"}
])js"},
      {"r1_from_a6_r4", R"js([
  {"formula": "p", "by": "hyp"},
  {"formula": "T -> p", "by": "IPL 1"},
  {"formula": "[]T -> []p", "by": "R4 2"},
  {"formula": "[]T", "by": "axiom:A6"},
  {"formula": "[]p", "by": "MP 4 3"}
])js"},
  };
  return scripts;
}

namespace {

CheckReport check_bundled(const std::string& name, const std::string& logic) {
  for (const auto& [n, text] : bundled_scripts()) {
    if (n != name) continue;
    Derivation d = derivation_from_json(text);
    d.logic = Logic::parse(logic);
    return check_derivation(d);
  }
  throw Error("no bundled script named " + name);
}

}  // namespace

std::vector<EquivalenceEntry> derived_equivalence_check() {
  std::vector<EquivalenceEntry> out;
  out.push_back({"A5, A6 from A1, R1, IPL",
                 {{"a5_from_a1_r1", check_bundled("a5_from_a1_r1", "A1,R1,IPL")},
                  {"a6_from_r1", check_bundled("a6_from_r1", "A1,R1,IPL")}}});
  out.push_back({"A1 and R1 from A5, A6, R4, IPL",
                 {{"a1_from_a5_r4", check_bundled("a1_from_a5_r4", "A5,A6,R4,IPL")},
                  {"r1_from_a6_r4", check_bundled("r1_from_a6_r4", "A5,A6,R4,IPL")}}});
  return out;
}

}  // namespace imlkit
