#pragma once

#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "imlkit/formula.hpp"
#include "imlkit/structures.hpp"

namespace imlkit {

// Modal schemas A1..A6, Af, Ab, Ad, Auref, Adref, Ausym, Adsym, Autra, Adtra
// and the propositional basis IPL1..IPL10, all over schematic atoms p, q, r.
const std::vector<std::string>& schema_names();
const Formula& schema(std::string_view name);  // throws UnknownSchema
Formula instantiate_schema(std::string_view name, const Substitution& sigma);

// Intuitionistic propositional provability of premises => goal, with every
// box or diamond formula treated as an opaque atom.
bool ipl_prove(const std::vector<Formula>& premises, const Formula& goal);

enum class Rule { Hyp, Axiom, R1, R2, R3, R4, MP, IPL, DiaConj };
std::string_view rule_name(Rule r);

struct Justification {
  Rule rule = Rule::Hyp;
  std::string axiom;                // Rule::Axiom
  std::optional<Substitution> sigma;  // explicit instance; matched when absent
  std::vector<int> refs;            // 1-based line numbers
};

// "hyp", "axiom:A2 {p: q, q: r}", "R3 4", "MP 1 3", "IPL 1,3,4", "DIACONJ 6".
// Throws FormatError.
Justification parse_justification(std::string_view text);
std::string print_justification(const Justification& j);

struct ProofLine {
  Formula formula;
  Justification by;
  std::string label;  // optional free text, e.g. a line number in a source text
};

// The axioms and rules a derivation may use.
struct Logic {
  std::string name;
  std::set<std::string> axioms;
  std::set<Rule> rules;

  // A1..A6 and the IPL basis with R1..R4, MP, IPL steps and hypotheses.
  static Logic minimal();
  // "min", or "min+Af+Ad", or a bare axiom list such as "A1,R1,IPL"
  // (rule names and schema names mixed). Throws FormatError.
  static Logic parse(std::string_view text);
  Logic with_axiom(const std::string& a) const;
  // Frames on which every theorem of this logic is valid (for soundness checks).
  FrameClassSpec frame_class() const;
};

struct Derivation {
  std::optional<Logic> logic;  // when absent: the minimal logic plus whatever extra axioms are cited
  std::vector<ProofLine> lines;
};

struct CheckReport {
  bool ok = true;
  int failing_line = 0;  // 1-based, 0 when ok
  std::string reason;
  Logic logic;                     // the logic the derivation was checked against
  std::vector<bool> from_hypotheses;  // per line: depends on a hypothesis line
  std::vector<int> hypotheses;        // 1-based hypothesis line numbers
  bool is_theorem() const { return ok && hypotheses.empty(); }
  std::string verdict() const;  // "theorem", "derivation from hypotheses" or "rejected"
};

CheckReport check_derivation(const Derivation& d);

// Proof-script JSON: an array of {"formula", "by"[, "label"]}, or an object
// {"logic": "...", "lines": [...]}. Throws FormatError / ParseError.
Derivation derivation_from_json(std::string_view text);
std::string derivation_to_json(const Derivation& d);

struct EquivalenceEntry {
  std::string direction;  // e.g. "A5, A6 from A1, R1"
  std::vector<std::pair<std::string, CheckReport>> scripts;
  bool ok() const;
};

// Scripts deriving A5, A6 from {A1, R1, IPL} and A1 (and the rule R1) from
// {A5, A6, R4, IPL}.
std::vector<EquivalenceEntry> derived_equivalence_check();
// Bundled script texts by name: "a5_from_a1_r1", "a6_from_r1", "a1_from_a5_r4",
// "r1_from_a6_r4".
const std::vector<std::pair<std::string, std::string>>& bundled_scripts();

}  // namespace imlkit
