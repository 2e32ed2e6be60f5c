#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "imlkit/errors.hpp"

namespace imlkit {

// Sets of states are bitmasks; bit s stands for state s.
using StateSet = std::uint64_t;
inline constexpr int kMaxStates = 64;

inline constexpr StateSet bit(int s) { return StateSet{1} << s; }
inline constexpr StateSet all_states(int n) { return n >= 64 ? ~StateSet{0} : (bit(n) - 1); }

// Dense boolean matrix over states 0..n-1, one bitmask per row.
class Relation {
 public:
  Relation() = default;
  explicit Relation(int n);
  static Relation identity(int n);
  static Relation full(int n);
  static Relation from_pairs(int n, const std::vector<std::pair<int, int>>& pairs);
  // Row-major bit encoding: bit (i*n + j) is set iff i rel j. Needs n <= 8.
  static Relation from_mask(int n, std::uint64_t mask);
  std::uint64_t mask() const;

  int size() const { return n_; }
  bool test(int s, int t) const { return (rows_[s] >> t) & 1U; }
  void set(int s, int t, bool v = true);
  StateSet row(int s) const { return rows_[s]; }
  void set_row(int s, StateSet r) { rows_[s] = r; }
  std::vector<std::pair<int, int>> pairs() const;
  bool empty() const;

  Relation transpose() const;
  bool operator==(const Relation& o) const;

 private:
  int n_ = 0;
  std::array<StateSet, kMaxStates> rows_{};
};

Relation compose(const Relation& a, const Relation& b);
Relation operator&(const Relation& a, const Relation& b);
Relation operator|(const Relation& a, const Relation& b);
bool subset(const Relation& a, const Relation& b);
bool is_reflexive(const Relation& r);
bool is_symmetric(const Relation& r);
bool is_transitive(const Relation& r);
Relation rt_closure(const Relation& r);
// Union of rows of `r` over the states in `xs`.
StateSet image(const Relation& r, StateSet xs);

// A finite birelational frame (W, <=, R). Derived relations are cached.
class Frame {
 public:
  Frame() = default;
  // Throws NotPreorder if `le` is not reflexive and transitive.
  Frame(Relation le, Relation r);
  static Frame unchecked(Relation le, Relation r);

  int size() const { return le_.size(); }
  const Relation& le() const { return le_; }
  const Relation& ge() const { return ge_; }
  const Relation& r() const { return r_; }
  const Relation& le_r() const { return le_r_; }  // <= o R
  const Relation& ge_r() const { return ge_r_; }  // >= o R

  bool operator==(const Frame& o) const { return le_ == o.le_ && r_ == o.r_; }

 private:
  void derive();
  Relation le_, ge_, r_, le_r_, ge_r_;
};

Frame build_frame(int n, const std::vector<std::pair<int, int>>& le_gen,
                  const std::vector<std::pair<int, int>>& r, bool close);

enum class Predicate {
  all, fc, bc, dc, uc, qfc, qbc, qdc, quc, ref, sym, tra, par, uref, dref, usym, dsym, utra, dtra
};

const std::vector<Predicate>& all_predicates();  // the 19 names, `all` first
std::string_view predicate_name(Predicate p);
Predicate predicate_from_name(std::string_view name);  // throws UnknownPredicate

bool check_property(const Frame& f, Predicate p);
bool check_property(const Frame& f, std::string_view name);

// Conjunction of predicates. Accepts "fc", "fc,bc", "fc+bc" and the
// compact confluence names "fbc", "fbdc", ...
class FrameClassSpec {
 public:
  FrameClassSpec() : preds_{Predicate::all} {}
  FrameClassSpec(std::initializer_list<Predicate> ps);
  static FrameClassSpec parse(std::string_view text);

  bool holds(const Frame& f) const;
  const std::vector<Predicate>& predicates() const { return preds_; }
  bool is_all() const;
  std::string str() const;

 private:
  std::vector<Predicate> preds_;
};

struct ImplicationCheck {
  Predicate premise;
  Predicate conclusion;
  bool premise_holds;
  bool conclusion_holds;
  bool ok() const { return !premise_holds || conclusion_holds; }
};
std::vector<ImplicationCheck> implied_properties_check(const Frame& f);

struct Subframe {
  Frame frame;
  std::vector<int> origin;  // new state -> old state
};
StateSet generated_states(const Frame& f, int s);
Subframe generated_subframe(const Frame& f, int s);
Subframe restrict_frame(const Frame& f, StateSet keep);

bool is_le_closed(const Frame& f, StateSet xs);
StateSet up_closure(const Frame& f, StateSet xs);

class Model {
 public:
  Model() = default;
  // Throws NotLeClosed if some V(p) is not upward closed.
  Model(Frame frame, std::map<std::string, StateSet> val, std::vector<std::string> names = {});

  const Frame& frame() const { return frame_; }
  int size() const { return frame_.size(); }
  // Atoms missing from the map are false everywhere.
  StateSet valuation(const std::string& atom) const;
  const std::map<std::string, StateSet>& val() const { return val_; }
  // State names for external formats; defaults to a, b, c, ... (or s0, s1, ...).
  const std::string& name(int s) const { return names_[s]; }
  const std::vector<std::string>& names() const { return names_; }
  std::optional<int> state_id(std::string_view name) const;

 private:
  Frame frame_;
  std::map<std::string, StateSet> val_;
  std::vector<std::string> names_;
};

std::vector<std::string> default_state_names(int n);
Model restrict_model(const Model& m, const std::vector<int>& keep);

}  // namespace imlkit
