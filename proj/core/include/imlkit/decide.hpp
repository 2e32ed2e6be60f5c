#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "imlkit/formula.hpp"
#include "imlkit/semantics.hpp"
#include "imlkit/structures.hpp"

namespace imlkit {

// Enumeration is limited to frames whose relations fit a 64-bit mask.
inline constexpr int kMaxEnumStates = 6;

// All preorders on k labelled points as row-major masks, ascending.
const std::vector<std::uint64_t>& preorders(int k);

// Canonical isomorphism representative: the least (le mask, r mask) over all
// state permutations.
std::pair<std::uint64_t, std::uint64_t> canonical_form(const Frame& f);
bool is_canonical(const Frame& f);

// Visits frames with 1..n states satisfying `spec`, ordered by size, then le
// mask, then r mask. The visitor returns false to stop early.
void for_each_frame(int n, const FrameClassSpec& spec, bool dedup,
                    const std::function<bool(const Frame&)>& visit);
std::vector<Frame> enumerate_frames(int n, const FrameClassSpec& spec, bool dedup = false);

// Worker count: IMLKIT_THREADS if set, else the hardware concurrency.
int default_threads();

// Parallel scan in canonical frame order. Returns the first frame (in that
// order) on which `hit` holds, together with the number of spec frames up to
// and including it (or all of them when nothing hits).
struct ScanResult {
  std::optional<Frame> frame;
  std::uint64_t frames_examined = 0;
  bool truncated = false;
};
struct ScanLimits {
  std::optional<std::uint64_t> max_frames;
  std::optional<double> time_limit;  // seconds
  int threads = 0;                   // 0: default_threads()
  std::function<void(int)> progress;  // called once per frame size as the scan reaches it
};
ScanResult scan_frames(int n, const FrameClassSpec& spec, bool dedup,
                       const std::function<bool(const Frame&)>& hit, const ScanLimits& limits = {});

struct SearchBudget {
  int max_states = 4;
  bool dedup_isomorphic = false;
  std::optional<std::uint64_t> max_frames;
  std::optional<double> time_limit;
  int threads = 0;
  std::function<void(int)> progress;
};

struct Countermodel {
  Model model;
  int state = -1;
};

struct SearchOutcome {
  std::optional<Countermodel> countermodel;  // empty: none up to the budget
  std::uint64_t frames_examined = 0;
  // The bound max_states >= 2^length(f) was reached and the search was not cut
  // short, so an empty result proves validity on the whole class.
  bool complete = false;
  bool truncated = false;
};

SearchOutcome countermodel_search(const Formula& f, const FrameClassSpec& spec,
                                  const SearchBudget& budget = {}, Variant v = Variant::New);

struct DefinabilityReport {
  bool holds = true;
  std::optional<Countermodel> in_class_refuting;  // frame in the class, formula fails
  std::optional<Frame> outside_validating;        // frame outside the class, formula valid
  std::uint64_t frames_checked = 0;
};

DefinabilityReport definability_check(const Formula& f, Predicate p, int n);

struct RulePreservationEntry {
  std::string rule;     // R1..R4
  Formula first;        // pool member in the A position
  int instances = 0;
  std::uint64_t premise_valid = 0;  // (frame, instance) pairs with a valid premise
  std::uint64_t violations = 0;
  std::optional<Frame> violating_frame;
  std::optional<Formula> violating_premise;
  bool preserved() const { return violations == 0; }
};

struct RulePreservationReport {
  std::vector<RulePreservationEntry> entries;  // rule-major, one per pool member
  std::uint64_t frames = 0;
  bool all_preserved() const;
};

RulePreservationReport rule_preservation_check(int n, const std::vector<Formula>& pool = {});

struct InclusionProbe {
  std::optional<bool> valid_on_spec2;          // empty when spec2 is not given
  std::optional<Countermodel> spec2_refutation;
  std::optional<Countermodel> spec1_refutation;
  bool strict() const { return spec1_refutation.has_value() && valid_on_spec2.value_or(true); }
};

InclusionProbe logic_inclusion_probe(const Formula& f, const FrameClassSpec& spec1,
                                     const std::optional<FrameClassSpec>& spec2, int n);

// Two models over the same states and relation <=: do all formulas built from
// `atom_names` have the same truth sets in both? Explores truth-set pairs
// level by level up to `max_depth` (or to a fixpoint when max_depth < 0).
struct AgreementReport {
  bool agree = true;
  std::optional<Formula> witness;  // a formula with different truth sets
  int depth = 0;                   // levels explored
  bool saturated = false;          // fixpoint reached, so the answer covers all depths
  std::map<std::string, StateSet> valuation;  // set by frames_agree on disagreement
};

AgreementReport compare_by_formulas(const Model& m1, const Model& m2,
                                    const std::vector<std::string>& atom_names, int max_depth = -1);

// Same check for every valuation of `atom_names` by up-sets, shared by the two
// frames. Stops at the first disagreement.
AgreementReport frames_agree(const Frame& f1, const Frame& f2,
                             const std::vector<std::string>& atom_names, int max_depth = -1);

}  // namespace imlkit
