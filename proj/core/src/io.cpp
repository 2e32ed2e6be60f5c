#include "imlkit/io.hpp"

#include <fstream>
#include <json.hpp>
#include <sstream>

namespace imlkit {

using nlohmann::json;

namespace {

std::vector<std::pair<int, int>> read_pairs(const json& doc, const char* key,
                                            const std::map<std::string, int>& ids) {
  std::vector<std::pair<int, int>> out;
  if (!doc.contains(key)) return out;
  const json& arr = doc[key];
  if (!arr.is_array()) throw FormatError(std::string("\"") + key + "\" must be an array of pairs");
  for (const auto& p : arr) {
    if (!p.is_array() || p.size() != 2 || !p[0].is_string() || !p[1].is_string())
      throw FormatError(std::string("\"") + key + "\" entries must be [state, state]");
    auto a = ids.find(p[0].get<std::string>());
    auto b = ids.find(p[1].get<std::string>());
    if (a == ids.end() || b == ids.end())
      throw FormatError(std::string("\"") + key + "\" names an unknown state");
    out.emplace_back(a->second, b->second);
  }
  return out;
}

bool read_flag(const json& doc, const char* key, bool dflt) {
  if (!doc.contains(key)) return dflt;
  if (!doc[key].is_boolean()) throw FormatError(std::string("\"") + key + "\" must be a boolean");
  return doc[key].get<bool>();
}

json pairs_json(const Relation& r, const std::vector<std::string>& names, bool skip_diagonal) {
  json out = json::array();
  for (auto [s, t] : r.pairs())
    if (!skip_diagonal || s != t) out.push_back({names[s], names[t]});
  return out;
}

json frame_doc(const Frame& f, const std::vector<std::string>& names) {
  json doc;
  doc["states"] = names;
  doc["le"] = pairs_json(f.le(), names, true);
  doc["le_closed"] = true;
  doc["r"] = pairs_json(f.r(), names, false);
  return doc;
}

}  // namespace

Model model_from_json(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw FormatError(std::string("model is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw FormatError("model must be a JSON object");
  if (!doc.contains("states") || !doc["states"].is_array())
    throw FormatError("model needs a \"states\" array");
  std::vector<std::string> names;
  std::map<std::string, int> ids;
  for (const auto& s : doc["states"]) {
    if (!s.is_string()) throw FormatError("state names must be strings");
    std::string n = s.get<std::string>();
    if (!ids.emplace(n, static_cast<int>(names.size())).second) throw FormatError("duplicate state " + n);
    names.push_back(n);
  }
  const int n = static_cast<int>(names.size());
  if (n == 0) throw FormatError("a model needs at least one state");
  if (n > kMaxStates) throw FormatError("at most " + std::to_string(kMaxStates) + " states are supported");

  const bool le_closed = read_flag(doc, "le_closed", true);
  const bool upclose = read_flag(doc, "val_upclose", false);
  auto le_pairs = read_pairs(doc, "le", ids);
  auto r_pairs = read_pairs(doc, "r", ids);
  Frame frame;
  if (le_closed) {
    frame = build_frame(n, le_pairs, r_pairs, true);
  } else {
    Relation le = Relation::from_pairs(n, le_pairs);
    frame = Frame(le, Relation::from_pairs(n, r_pairs));
  }

  std::map<std::string, StateSet> val;
  if (doc.contains("val")) {
    if (!doc["val"].is_object()) throw FormatError("\"val\" must map atoms to state lists");
    for (const auto& [atom, states] : doc["val"].items()) {
      if (!states.is_array()) throw FormatError("valuation of " + atom + " must be a list of states");
      StateSet xs = 0;
      for (const auto& s : states) {
        if (!s.is_string() || !ids.count(s.get<std::string>()))
          throw FormatError("valuation of " + atom + " names an unknown state");
        xs |= bit(ids[s.get<std::string>()]);
      }
      if (upclose) xs = up_closure(frame, xs);
      val[atom] = xs;
    }
  }
  return Model(std::move(frame), std::move(val), std::move(names));
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Model load_model(const std::string& path) { return model_from_json(read_file(path)); }

std::string model_to_json(const Model& m, int indent) {
  json doc = frame_doc(m.frame(), m.names());
  json val = json::object();
  for (const auto& [atom, xs] : m.val()) {
    json states = json::array();
    for (int s = 0; s < m.size(); ++s)
      if ((xs >> s) & 1U) states.push_back(m.name(s));
    val[atom] = states;
  }
  doc["val"] = val;
  return doc.dump(indent);
}

std::string frame_to_json(const Frame& f, const std::vector<std::string>& names, int indent) {
  return frame_doc(f, names.empty() ? default_state_names(f.size()) : names).dump(indent);
}

}  // namespace imlkit
