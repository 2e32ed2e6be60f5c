#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "imlkit/formula.hpp"
#include "imlkit/structures.hpp"

namespace imlkit {

enum class Variant { New, FischerServi, Wijesekera };

std::string_view variant_name(Variant v);
Variant variant_from_name(std::string_view name);  // "new", "fs", "wij" and long forms

// A formula flattened into a DAG of distinct subformulas, children first.
struct CompiledFormula {
  struct Op {
    Kind kind;
    int a = -1;
    int b = -1;
    int atom = -1;  // index into `atoms` for Kind::Atom
  };
  std::vector<Op> ops;
  std::vector<Formula> subformulas;  // parallel to ops
  std::vector<std::string> atoms;    // sorted
  int root = -1;

  explicit CompiledFormula(const Formula& f);
  CompiledFormula(const std::vector<Formula>& fs);  // shared DAG, roots in `roots`
  std::vector<int> roots;
  int index_of(const Formula& f) const;  // -1 if absent

 private:
  int add(const Formula& f);
  std::unordered_map<Formula, int, FormulaHash> index_;
};

// Truth sets of every subformula in one model, computed bottom-up once.
class Evaluator {
 public:
  Evaluator(const Model& m, Variant v = Variant::New);

  StateSet truth(const Formula& f);
  bool sat(int s, const Formula& f) { return (truth(f) >> s) & 1U; }
  // Truth sets aligned with c.ops.
  std::vector<StateSet> run(const CompiledFormula& c) const;

 private:
  const Model& m_;
  Variant v_;
  std::unordered_map<Formula, StateSet, FormulaHash> memo_;
};

// One connective applied to truth sets (unused operands are ignored).
StateSet apply_connective(Kind k, const Frame& fr, StateSet a, StateSet b, Variant v = Variant::New);

StateSet truth_set(const Model& m, const Formula& f, Variant v = Variant::New);
bool sat(const Model& m, int s, const Formula& f, Variant v = Variant::New);
bool true_in_model(const Model& m, const Formula& f, Variant v = Variant::New);

// All upward closed subsets of the frame, ascending by bitmask.
std::vector<StateSet> up_sets(const Frame& f);

struct Countervaluation {
  std::map<std::string, StateSet> val;
  int state = -1;
};

struct ValidityResult {
  bool valid = true;
  std::optional<Countervaluation> witness;
  std::uint64_t valuations_checked = 0;
  explicit operator bool() const { return valid; }
};

// Checks every assignment of upward closed sets to the atoms of `f`, in
// lexicographic order over atom-sorted up-set bitmasks, and reports the first
// failing valuation together with the lowest failing state.
ValidityResult valid_in_frame(const Frame& fr, const Formula& f, Variant v = Variant::New);

struct HeredityViolation {
  Formula formula;
  int from = -1;
  int to = -1;
};

std::optional<HeredityViolation> heredity_violation(const Model& m, const Formula& f,
                                                    Variant v = Variant::New);
bool heredity_check(const Model& m, const Formula& f, Variant v = Variant::New);

}  // namespace imlkit
