#include "imlkit/structures.hpp"

#include <algorithm>
#include <bit>

namespace imlkit {

Relation::Relation(int n) : n_(n) {
  if (n < 0 || n > kMaxStates)
    throw Error("frames are limited to " + std::to_string(kMaxStates) + " states");
}

Relation Relation::identity(int n) {
  Relation r(n);
  for (int s = 0; s < n; ++s) r.rows_[s] = bit(s);
  return r;
}

Relation Relation::full(int n) {
  Relation r(n);
  for (int s = 0; s < n; ++s) r.rows_[s] = all_states(n);
  return r;
}

Relation Relation::from_pairs(int n, const std::vector<std::pair<int, int>>& pairs) {
  Relation r(n);
  for (auto [s, t] : pairs) {
    if (s < 0 || s >= n || t < 0 || t >= n) throw Error("relation pair out of range");
    r.set(s, t);
  }
  return r;
}

Relation Relation::from_mask(int n, std::uint64_t mask) {
  Relation r(n);
  for (int s = 0; s < n; ++s) r.rows_[s] = (mask >> (s * n)) & all_states(n);
  return r;
}

std::uint64_t Relation::mask() const {
  std::uint64_t m = 0;
  for (int s = 0; s < n_; ++s) m |= rows_[s] << (s * n_);
  return m;
}

void Relation::set(int s, int t, bool v) {
  if (v)
    rows_[s] |= bit(t);
  else
    rows_[s] &= ~bit(t);
}

std::vector<std::pair<int, int>> Relation::pairs() const {
  std::vector<std::pair<int, int>> out;
  for (int s = 0; s < n_; ++s)
    for (int t = 0; t < n_; ++t)
      if (test(s, t)) out.emplace_back(s, t);
  return out;
}

bool Relation::empty() const {
  for (int s = 0; s < n_; ++s)
    if (rows_[s]) return false;
  return true;
}

Relation Relation::transpose() const {
  Relation out(n_);
  for (int s = 0; s < n_; ++s)
    for (StateSet row = rows_[s]; row; row &= row - 1) out.rows_[std::countr_zero(row)] |= bit(s);
  return out;
}

bool Relation::operator==(const Relation& o) const {
  if (n_ != o.n_) return false;
  for (int s = 0; s < n_; ++s)
    if (rows_[s] != o.rows_[s]) return false;
  return true;
}

StateSet image(const Relation& r, StateSet xs) {
  StateSet out = 0;
  for (; xs; xs &= xs - 1) out |= r.row(std::countr_zero(xs));
  return out;
}

Relation compose(const Relation& a, const Relation& b) {
  Relation out(a.size());
  for (int s = 0; s < a.size(); ++s) out.set_row(s, image(b, a.row(s)));
  return out;
}

Relation operator&(const Relation& a, const Relation& b) {
  Relation out(a.size());
  for (int s = 0; s < a.size(); ++s) out.set_row(s, a.row(s) & b.row(s));
  return out;
}

Relation operator|(const Relation& a, const Relation& b) {
  Relation out(a.size());
  for (int s = 0; s < a.size(); ++s) out.set_row(s, a.row(s) | b.row(s));
  return out;
}

bool subset(const Relation& a, const Relation& b) {
  for (int s = 0; s < a.size(); ++s)
    if (a.row(s) & ~b.row(s)) return false;
  return true;
}

bool is_reflexive(const Relation& r) {
  for (int s = 0; s < r.size(); ++s)
    if (!r.test(s, s)) return false;
  return true;
}

bool is_symmetric(const Relation& r) { return r == r.transpose(); }

bool is_transitive(const Relation& r) { return subset(compose(r, r), r); }

Relation rt_closure(const Relation& r) {
  Relation out = r | Relation::identity(r.size());
  // Warshall on bit rows.
  for (int k = 0; k < r.size(); ++k)
    for (int s = 0; s < r.size(); ++s)
      if (out.test(s, k)) out.set_row(s, out.row(s) | out.row(k));
  return out;
}

Frame::Frame(Relation le, Relation r) : le_(std::move(le)), r_(std::move(r)) {
  if (le_.size() < 1) throw Error("a frame needs at least one state");
  if (r_.size() != le_.size()) throw Error("relations of a frame must share the carrier");
  if (!is_reflexive(le_) || !is_transitive(le_))
    throw NotPreorder("the intuitionistic relation is not a preorder");
  derive();
}

Frame Frame::unchecked(Relation le, Relation r) {
  Frame f;
  f.le_ = std::move(le);
  f.r_ = std::move(r);
  f.derive();
  return f;
}

void Frame::derive() {
  ge_ = le_.transpose();
  le_r_ = compose(le_, r_);
  ge_r_ = compose(ge_, r_);
}

Frame build_frame(int n, const std::vector<std::pair<int, int>>& le_gen,
                  const std::vector<std::pair<int, int>>& r, bool close) {
  Relation le = Relation::from_pairs(n, le_gen);
  if (close) le = rt_closure(le);
  return Frame(std::move(le), Relation::from_pairs(n, r));
}

namespace {

struct PredicateName {
  Predicate p;
  std::string_view name;
};

constexpr PredicateName kPredicateNames[] = {
    {Predicate::all, "all"},   {Predicate::fc, "fc"},     {Predicate::bc, "bc"},
    {Predicate::dc, "dc"},     {Predicate::uc, "uc"},     {Predicate::qfc, "qfc"},
    {Predicate::qbc, "qbc"},   {Predicate::qdc, "qdc"},   {Predicate::quc, "quc"},
    {Predicate::ref, "ref"},   {Predicate::sym, "sym"},   {Predicate::tra, "tra"},
    {Predicate::par, "par"},   {Predicate::uref, "uref"}, {Predicate::dref, "dref"},
    {Predicate::usym, "usym"}, {Predicate::dsym, "dsym"}, {Predicate::utra, "utra"},
    {Predicate::dtra, "dtra"},
};

// (<= o R o <=) and (>= o R o >=)
Relation up_detour(const Frame& f) { return compose(f.le_r(), f.le()); }
Relation down_detour(const Frame& f) { return compose(f.ge_r(), f.ge()); }

}  // namespace

const std::vector<Predicate>& all_predicates() {
  static const std::vector<Predicate> ps = [] {
    std::vector<Predicate> v;
    for (const auto& pn : kPredicateNames) v.push_back(pn.p);
    return v;
  }();
  return ps;
}

std::string_view predicate_name(Predicate p) {
  for (const auto& pn : kPredicateNames)
    if (pn.p == p) return pn.name;
  return "?";
}

Predicate predicate_from_name(std::string_view name) {
  for (const auto& pn : kPredicateNames)
    if (pn.name == name) return pn.p;
  throw UnknownPredicate("unknown frame predicate '" + std::string(name) + "'");
}

bool check_property(const Frame& f, Predicate p) {
  const Relation& le = f.le();
  const Relation& ge = f.ge();
  const Relation& r = f.r();
  switch (p) {
    case Predicate::all: return true;
    case Predicate::fc: return subset(f.ge_r(), compose(r, ge));
    case Predicate::bc: return subset(compose(r, le), f.le_r());
    case Predicate::dc: return subset(f.le_r(), compose(r, le));
    case Predicate::uc: return subset(compose(r, ge), f.ge_r());
    case Predicate::qfc:
    case Predicate::qbc:
    case Predicate::qdc:
    case Predicate::quc: {
      Relation i = up_detour(f) & down_detour(f);
      if (p == Predicate::qfc) return subset(f.ge_r(), compose(i, ge));
      if (p == Predicate::qbc) return subset(compose(r, le), compose(le, i));
      if (p == Predicate::qdc) return subset(f.le_r(), compose(i, le));
      return subset(compose(r, ge), compose(ge, i));
    }
    case Predicate::ref: return is_reflexive(r);
    case Predicate::sym: return is_symmetric(r);
    case Predicate::tra: return is_transitive(r);
    case Predicate::par: return is_reflexive(r) && is_symmetric(r) && is_transitive(r);
    case Predicate::uref: return is_reflexive(up_detour(f));
    case Predicate::dref: return is_reflexive(down_detour(f));
    case Predicate::usym: return subset(r.transpose(), up_detour(f));
    case Predicate::dsym: return subset(r.transpose(), down_detour(f));
    case Predicate::utra: return subset(compose(compose(r, le), r), up_detour(f));
    case Predicate::dtra: return subset(compose(compose(r, ge), r), down_detour(f));
  }
  return false;
}

bool check_property(const Frame& f, std::string_view name) {
  return check_property(f, predicate_from_name(name));
}

FrameClassSpec::FrameClassSpec(std::initializer_list<Predicate> ps) : preds_(ps) {
  if (preds_.empty()) preds_.push_back(Predicate::all);
}

FrameClassSpec FrameClassSpec::parse(std::string_view text) {
  FrameClassSpec spec;
  spec.preds_.clear();
  std::size_t i = 0;
  while (i <= text.size()) {
    std::size_t j = text.find_first_of(",+& ", i);
    if (j == std::string_view::npos) j = text.size();
    std::string_view tok = text.substr(i, j - i);
    i = j + 1;
    if (tok.empty()) continue;
    bool known = false;
    for (const auto& pn : kPredicateNames)
      if (pn.name == tok) known = true;
    if (known) {
      spec.preds_.push_back(predicate_from_name(tok));
      continue;
    }
    // Compact confluence names: fbc = fc and bc, fbdc = fc, bc and dc, ...
    bool compact = tok.size() >= 3 && tok.back() == 'c' &&
                   tok.substr(0, tok.size() - 1).find_first_not_of("fbdu") == std::string_view::npos;
    if (!compact) throw UnknownPredicate("unknown frame class '" + std::string(tok) + "'");
    for (char c : tok.substr(0, tok.size() - 1))
      spec.preds_.push_back(predicate_from_name(std::string(1, c) + "c"));
  }
  if (spec.preds_.empty()) throw UnknownPredicate("empty frame class specification");
  return spec;
}

bool FrameClassSpec::holds(const Frame& f) const {
  for (Predicate p : preds_)
    if (!check_property(f, p)) return false;
  return true;
}

bool FrameClassSpec::is_all() const {
  return std::all_of(preds_.begin(), preds_.end(), [](Predicate p) { return p == Predicate::all; });
}

std::string FrameClassSpec::str() const {
  std::string out;
  for (Predicate p : preds_) {
    if (!out.empty()) out += ",";
    out += predicate_name(p);
  }
  return out;
}

std::vector<ImplicationCheck> implied_properties_check(const Frame& f) {
  static const std::pair<Predicate, Predicate> kPairs[] = {
      {Predicate::fc, Predicate::qfc},    {Predicate::bc, Predicate::qbc},
      {Predicate::dc, Predicate::qdc},    {Predicate::uc, Predicate::quc},
      {Predicate::ref, Predicate::uref},  {Predicate::ref, Predicate::dref},
      {Predicate::sym, Predicate::usym},  {Predicate::sym, Predicate::dsym},
  };
  std::vector<ImplicationCheck> out;
  for (auto [a, b] : kPairs) out.push_back({a, b, check_property(f, a), check_property(f, b)});
  return out;
}

StateSet generated_states(const Frame& f, int s) {
  StateSet seen = bit(s);
  StateSet frontier = seen;
  while (frontier) {
    StateSet next = image(f.le(), frontier) | image(f.ge(), frontier) | image(f.r(), frontier);
    frontier = next & ~seen;
    seen |= next;
  }
  return seen;
}

Subframe restrict_frame(const Frame& f, StateSet keep) {
  std::vector<int> origin;
  for (int s = 0; s < f.size(); ++s)
    if (keep & bit(s)) origin.push_back(s);
  int n = static_cast<int>(origin.size());
  Relation le(n), r(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      le.set(i, j, f.le().test(origin[i], origin[j]));
      r.set(i, j, f.r().test(origin[i], origin[j]));
    }
  return {Frame(std::move(le), std::move(r)), std::move(origin)};
}

Subframe generated_subframe(const Frame& f, int s) {
  if (s < 0 || s >= f.size()) throw Error("state out of range");
  return restrict_frame(f, generated_states(f, s));
}

StateSet up_closure(const Frame& f, StateSet xs) { return image(f.le(), xs); }

bool is_le_closed(const Frame& f, StateSet xs) { return up_closure(f, xs) == xs; }

std::vector<std::string> default_state_names(int n) {
  std::vector<std::string> out;
  for (int s = 0; s < n; ++s)
    out.push_back(n <= 26 ? std::string(1, static_cast<char>('a' + s)) : "s" + std::to_string(s));
  return out;
}

Model::Model(Frame frame, std::map<std::string, StateSet> val, std::vector<std::string> names)
    : frame_(std::move(frame)), val_(std::move(val)), names_(std::move(names)) {
  if (names_.empty()) names_ = default_state_names(frame_.size());
  if (static_cast<int>(names_.size()) != frame_.size())
    throw Error("state name list does not match the frame size");
  for (const auto& [p, xs] : val_) {
    if (xs & ~all_states(frame_.size())) throw Error("valuation of '" + p + "' is out of range");
    if (!is_le_closed(frame_, xs))
      throw NotLeClosed("valuation of '" + p + "' is not closed upward under <=");
  }
}

StateSet Model::valuation(const std::string& atom) const {
  auto it = val_.find(atom);
  return it == val_.end() ? 0 : it->second;
}

std::optional<int> Model::state_id(std::string_view name) const {
  for (int s = 0; s < size(); ++s)
    if (names_[s] == name) return s;
  return std::nullopt;
}

Model restrict_model(const Model& m, const std::vector<int>& keep) {
  StateSet mask = 0;
  for (int s : keep) mask |= bit(s);
  Subframe sub = restrict_frame(m.frame(), mask);
  std::map<std::string, StateSet> val;
  std::vector<std::string> names;
  for (int old : sub.origin) names.push_back(m.name(old));
  for (const auto& [p, xs] : m.val()) {
    StateSet ys = 0;
    for (std::size_t i = 0; i < sub.origin.size(); ++i)
      if (xs & bit(sub.origin[i])) ys |= bit(static_cast<int>(i));
    val[p] = ys;
  }
  return Model(std::move(sub.frame), std::move(val), std::move(names));
}

}  // namespace imlkit
