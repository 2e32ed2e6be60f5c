// imlkit: command-line front end.
// Exit codes: 0 query answered, 1 answered negatively, 2 usage/IO/format error.

#include <CLI11.hpp>
#include <json.hpp>

#include <iostream>
#include <optional>
#include <string>

#include "imlkit/decide.hpp"
#include "imlkit/filtration.hpp"
#include "imlkit/formula.hpp"
#include "imlkit/io.hpp"
#include "imlkit/proofsys.hpp"
#include "imlkit/semantics.hpp"
#include "imlkit/structures.hpp"
#include "imlkit/transform.hpp"

using nlohmann::json;
using namespace imlkit;

namespace {

constexpr int kYes = 0;
constexpr int kNo = 1;
constexpr int kError = 2;

json model_json(const Model& m) { return json::parse(model_to_json(m)); }

json countermodel_json(const Countermodel& cm) {
  return {{"model", model_json(cm.model)}, {"state", cm.model.name(cm.state)}};
}

json valuation_json(const Model& names, const std::map<std::string, StateSet>& val) {
  json out = json::object();
  for (const auto& [atom, xs] : val) {
    json states = json::array();
    for (int s = 0; s < names.size(); ++s)
      if ((xs >> s) & 1U) states.push_back(names.name(s));
    out[atom] = states;
  }
  return out;
}

std::string set_text(const Model& m, StateSet xs) {
  std::string out = "{";
  bool first = true;
  for (int s = 0; s < m.size(); ++s)
    if ((xs >> s) & 1U) {
      out += (first ? "" : ",") + m.name(s);
      first = false;
    }
  return out + "}";
}

std::string valuation_text(const Model& m, const std::map<std::string, StateSet>& val) {
  std::string out;
  for (const auto& [atom, xs] : val) out += (out.empty() ? "" : ", ") + atom + "=" + set_text(m, xs);
  return out.empty() ? "(no atoms)" : out;
}

int state_of(const Model& m, const std::string& name) {
  auto id = m.state_id(name);
  if (!id) throw FormatError("unknown state " + name);
  return *id;
}

struct Options {
  std::string format;
  bool json() const { return format == "json"; }
};

void emit(const json& j) { std::cout << j.dump(2) << "\n"; }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"imlkit: intuitionistic modal logic toolkit"};
  app.require_subcommand(1);
  app.fallthrough();
  Options opt;
  app.add_option("--format", opt.format, "Output format")->check(CLI::IsMember({"json", "text"}));

  std::string formula_text, model_path, state_name, variant_text = "new";

  auto* parse_cmd = app.add_subcommand("parse", "Parse and print a formula");
  parse_cmd->add_option("FORMULA", formula_text)->required();

  auto* sat_cmd = app.add_subcommand("sat", "Truth of a formula at a state");
  sat_cmd->add_option("MODEL", model_path)->required();
  sat_cmd->add_option("STATE", state_name)->required();
  sat_cmd->add_option("FORMULA", formula_text)->required();
  sat_cmd->add_option("--variant", variant_text, "new, fs or wij");

  auto* valid_cmd = app.add_subcommand("valid", "Validity of a formula in the frame of a file");
  valid_cmd->add_option("MODEL_OR_FRAME", model_path)->required();
  valid_cmd->add_option("FORMULA", formula_text)->required();
  valid_cmd->add_option("--variant", variant_text, "new, fs or wij");

  auto* props_cmd = app.add_subcommand("props", "Frame predicates");
  props_cmd->add_option("FRAME", model_path)->required();

  std::string class_text = "all";
  int max_states = 4;
  bool dedup = false;
  std::optional<std::uint64_t> max_frames;
  std::optional<double> time_limit;
  int threads = 0;
  bool quiet = false;
  auto* decide_cmd = app.add_subcommand("decide", "Bounded countermodel search");
  decide_cmd->add_option("FORMULA", formula_text)->required();
  decide_cmd->add_option("--class", class_text, "Frame class, e.g. fc or fbdc");
  decide_cmd->add_option("--max-states", max_states)->check(CLI::Range(1, kMaxEnumStates));
  decide_cmd->add_flag("--dedup", dedup, "Skip isomorphic frames");
  decide_cmd->add_option("--max-frames", max_frames);
  decide_cmd->add_option("--time-limit", time_limit, "Seconds");
  decide_cmd->add_option("--threads", threads);
  decide_cmd->add_option("--variant", variant_text, "new, fs or wij");
  decide_cmd->add_flag("--quiet", quiet, "No progress on standard error");

  bool largest = false;
  auto* filter_cmd = app.add_subcommand("filter", "Smallest or largest filtration");
  filter_cmd->add_option("MODEL", model_path)->required();
  filter_cmd->add_option("FORMULA", formula_text)->required();
  filter_cmd->add_flag("--largest", largest);

  std::string op, other_path, at_name, other_at_name;
  auto* transform_cmd = app.add_subcommand("transform", "Model constructions");
  transform_cmd->add_option("MODEL", model_path)->required();
  transform_cmd->add_option("--op", op)
      ->required()
      ->check(CLI::IsMember({"intersect", "double", "double-refl", "partition", "join"}));
  transform_cmd->add_option("--other", other_path, "Second model for join");
  transform_cmd->add_option("--at", at_name, "State of the first model for join");
  transform_cmd->add_option("--other-at", other_at_name, "State of the second model for join");

  std::string script_path, logic_text;
  auto* prove_cmd = app.add_subcommand("prove", "Check a proof script");
  prove_cmd->add_option("SCRIPT", script_path)->required();
  prove_cmd->add_option("--logic", logic_text, "Override the logic, e.g. min+Af");

  std::string predicate_text;
  int def_states = 3;
  auto* defcheck_cmd = app.add_subcommand("defcheck", "Check that a formula defines a frame predicate");
  defcheck_cmd->add_option("FORMULA", formula_text)->required();
  defcheck_cmd->add_option("--predicate", predicate_text)->required();
  defcheck_cmd->add_option("--max-states", def_states)->check(CLI::Range(1, kMaxEnumStates));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kError;
  }

  auto default_format = [&](const char* f) {
    if (opt.format.empty()) opt.format = f;
  };

  try {
    if (*parse_cmd) {
      default_format("text");
      Formula f = parse(formula_text);
      if (opt.json()) {
        json atoms_j = json::array();
        for (const auto& a : atoms(f)) atoms_j.push_back(a);
        emit({{"formula", f.str()}, {"length", f.length()}, {"depth", f.depth()}, {"atoms", atoms_j}});
      } else {
        std::cout << f.str() << "\n";
      }
      return kYes;
    }

    if (*sat_cmd) {
      default_format("text");
      Model m = load_model(model_path);
      Formula f = parse(formula_text);
      Variant v = variant_from_name(variant_text);
      bool r = sat(m, state_of(m, state_name), f, v);
      if (opt.json())
        emit({{"formula", f.str()}, {"state", state_name}, {"variant", variant_name(v)}, {"sat", r}});
      else
        std::cout << (r ? "true" : "false") << "\n";
      return r ? kYes : kNo;
    }

    if (*valid_cmd) {
      default_format("text");
      Model m = load_model(model_path);
      Formula f = parse(formula_text);
      Variant v = variant_from_name(variant_text);
      ValidityResult r = valid_in_frame(m.frame(), f, v);
      if (opt.json()) {
        json out = {{"formula", f.str()}, {"valid", r.valid}, {"valuations_checked", r.valuations_checked}};
        if (r.witness)
          out["witness"] = {{"val", valuation_json(m, r.witness->val)}, {"state", m.name(r.witness->state)}};
        emit(out);
      } else if (r.valid) {
        std::cout << "valid\n";
      } else {
        std::cout << "invalid: fails at " << m.name(r.witness->state) << " under "
                  << valuation_text(m, r.witness->val) << "\n";
      }
      return r.valid ? kYes : kNo;
    }

    if (*props_cmd) {
      default_format("json");
      Model m = load_model(model_path);
      if (opt.json()) {
        json out = json::object();
        for (Predicate p : all_predicates()) out[std::string(predicate_name(p))] = check_property(m.frame(), p);
        emit(out);
      } else {
        for (Predicate p : all_predicates())
          std::cout << predicate_name(p) << " " << (check_property(m.frame(), p) ? "true" : "false") << "\n";
      }
      return kYes;
    }

    if (*decide_cmd) {
      default_format("json");
      Formula f = parse(formula_text);
      FrameClassSpec spec = FrameClassSpec::parse(class_text);
      Variant v = variant_from_name(variant_text);
      SearchBudget budget;
      budget.max_states = max_states;
      budget.dedup_isomorphic = dedup;
      budget.max_frames = max_frames;
      budget.time_limit = time_limit;
      budget.threads = threads;
      if (!quiet) budget.progress = [](int k) { std::cerr << "searching frames with " << k << " states\n"; };
      SearchOutcome out = countermodel_search(f, spec, budget, v);
      if (opt.json()) {
        json j = {{"formula", f.str()},
                  {"class", spec.str()},
                  {"max_states", max_states},
                  {"variant", variant_name(v)},
                  {"result", out.countermodel ? "countermodel" : "none"},
                  {"frames_examined", out.frames_examined},
                  {"complete", out.complete},
                  {"truncated", out.truncated}};
        if (out.countermodel) j["countermodel"] = countermodel_json(*out.countermodel);
        emit(j);
      } else if (out.countermodel) {
        const Model& cm = out.countermodel->model;
        std::cout << "countermodel: fails at " << cm.name(out.countermodel->state) << "\n"
                  << model_to_json(cm) << "\n";
      } else {
        std::cout << "no countermodel up to " << max_states << " states (" << out.frames_examined
                  << " frames" << (out.complete ? ", complete" : "") << (out.truncated ? ", truncated" : "")
                  << ")\n";
      }
      return out.countermodel ? kNo : kYes;
    }

    if (*filter_cmd) {
      default_format("json");
      Model m = load_model(model_path);
      Formula f = parse(formula_text);
      FormulaSet sigma = closure(f);
      Filtration fl = largest ? largest_filtration(m, sigma) : smallest_filtration(m, sigma);
      json classes = json::object();
      for (int s = 0; s < m.size(); ++s) classes[m.name(s)] = fl.model.name(fl.class_of[s]);
      if (opt.json())
        emit({{"model", model_json(fl.model)}, {"class_of", classes}});
      else {
        std::cout << model_to_json(fl.model) << "\n";
        for (int s = 0; s < m.size(); ++s) std::cout << m.name(s) << " -> " << fl.model.name(fl.class_of[s]) << "\n";
      }
      return kYes;
    }

    if (*transform_cmd) {
      default_format("json");
      Model m = load_model(model_path);
      std::optional<Model> result;
      StateMap map;
      if (op == "intersect") {
        result = intersectional_update(m);
      } else if (op == "double" || op == "double-refl" || op == "partition") {
        Constructed c = op == "double" ? double_strict(m) : op == "double-refl" ? double_reflexive(m) : partitionize(m);
        result = std::move(c.model);
        map = std::move(c.map);
      } else {
        if (other_path.empty() || at_name.empty() || other_at_name.empty())
          throw FormatError("join needs --other, --at and --other-at");
        Model m2 = load_model(other_path);
        Joined j = rooted_join(m, state_of(m, at_name), m2, state_of(m2, other_at_name));
        result = std::move(j.model);
        map = std::move(j.map);
      }
      std::cout << model_to_json(*result) << "\n";
      if (!opt.json() && !map.empty())
        for (int s = 0; s < result->size(); ++s) {
          const Origin& o = map[s];
          std::cout << result->name(s) << " <- "
                    << (o.state < 0 ? std::string("new") : "state " + std::to_string(o.state)) << "\n";
        }
      return kYes;
    }

    if (*prove_cmd) {
      default_format("text");
      Derivation d = derivation_from_json(read_file(script_path));
      if (!logic_text.empty()) d.logic = Logic::parse(logic_text);
      CheckReport r = check_derivation(d);
      if (opt.json()) {
        json hyps = json::array();
        for (int h : r.hypotheses) hyps.push_back(h);
        json out = {{"ok", r.ok}, {"verdict", r.verdict()}, {"logic", r.logic.name}, {"hypotheses", hyps},
                    {"lines", d.lines.size()}};
        if (!r.ok) {
          out["failing_line"] = r.failing_line;
          out["reason"] = r.reason;
        }
        emit(out);
      } else if (r.ok) {
        std::cout << "ok\n";
      } else {
        std::cout << "rejected: line " << r.failing_line << ": " << r.reason << "\n";
      }
      return r.ok ? kYes : kNo;
    }

    if (*defcheck_cmd) {
      default_format("json");
      Formula f = parse(formula_text);
      Predicate p = predicate_from_name(predicate_text);
      DefinabilityReport r = definability_check(f, p, def_states);
      if (opt.json()) {
        json out = {{"formula", f.str()},
                    {"predicate", predicate_name(p)},
                    {"max_states", def_states},
                    {"holds", r.holds},
                    {"frames_checked", r.frames_checked}};
        if (r.in_class_refuting) out["in_class_refuting"] = countermodel_json(*r.in_class_refuting);
        if (r.outside_validating) out["outside_validating"] = json::parse(frame_to_json(*r.outside_validating));
        emit(out);
      } else if (r.holds) {
        std::cout << "holds on all " << r.frames_checked << " frames\n";
      } else {
        std::cout << "fails\n";
        if (r.in_class_refuting) std::cout << "in class, refuting:\n" << model_to_json(r.in_class_refuting->model) << "\n";
        if (r.outside_validating) std::cout << "outside class, validating:\n" << frame_to_json(*r.outside_validating) << "\n";
      }
      return r.holds ? kYes : kNo;
    }
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kError;
  }
  return kError;
}
