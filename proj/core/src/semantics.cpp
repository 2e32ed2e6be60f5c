#include "imlkit/semantics.hpp"

#include <algorithm>
#include <bit>
#include <limits>
#include <unordered_map>

namespace imlkit {

std::string_view variant_name(Variant v) {
  switch (v) {
    case Variant::New: return "new";
    case Variant::FischerServi: return "fs";
    case Variant::Wijesekera: return "wij";
  }
  return "?";
}

Variant variant_from_name(std::string_view name) {
  if (name == "new") return Variant::New;
  if (name == "fs" || name == "fischer_servi") return Variant::FischerServi;
  if (name == "wij" || name == "wijesekera") return Variant::Wijesekera;
  throw Error("unknown semantics variant '" + std::string(name) + "'");
}

CompiledFormula::CompiledFormula(const Formula& f) : CompiledFormula(std::vector<Formula>{f}) {
  root = roots.front();
}

CompiledFormula::CompiledFormula(const std::vector<Formula>& fs) {
  std::set<std::string> names;
  for (const auto& f : fs) {
    auto a = imlkit::atoms(f);
    names.insert(a.begin(), a.end());
  }
  atoms.assign(names.begin(), names.end());
  for (const auto& f : fs) roots.push_back(add(f));
  if (!roots.empty()) root = roots.front();
}

int CompiledFormula::add(const Formula& f) {
  int existing = index_of(f);
  if (existing >= 0) return existing;
  Op op{f.kind()};
  if (f.is_binary()) {
    op.a = add(f.lhs());
    op.b = add(f.rhs());
  } else if (f.is_modal()) {
    op.a = add(f.arg());
  } else if (f.is_atom()) {
    op.atom = static_cast<int>(std::lower_bound(atoms.begin(), atoms.end(), f.name()) - atoms.begin());
  }
  ops.push_back(op);
  subformulas.push_back(f);
  int id = static_cast<int>(ops.size()) - 1;
  index_.emplace(f, id);
  return id;
}

int CompiledFormula::index_of(const Formula& f) const {
  auto it = index_.find(f);
  return it == index_.end() ? -1 : it->second;
}

namespace {

StateSet all_in(const Relation& rel, StateSet target, int n) {
  StateSet out = 0;
  for (int s = 0; s < n; ++s)
    if ((rel.row(s) & ~target) == 0) out |= bit(s);
  return out;
}

StateSet some_in(const Relation& rel, StateSet target, int n) {
  StateSet out = 0;
  for (int s = 0; s < n; ++s)
    if (rel.row(s) & target) out |= bit(s);
  return out;
}

StateSet apply(Kind k, const Frame& fr, StateSet a, StateSet b, Variant v) {
  int n = fr.size();
  StateSet everything = all_states(n);
  switch (k) {
    case Kind::Top: return everything;
    case Kind::Bot: return 0;
    case Kind::And: return a & b;
    case Kind::Or: return a | b;
    case Kind::Impl: return all_in(fr.le(), ~a | b, n);
    case Kind::Box: return all_in(fr.le_r(), a, n);
    case Kind::Dia:
      switch (v) {
        case Variant::New: return some_in(fr.ge_r(), a, n);
        case Variant::FischerServi: return some_in(fr.r(), a, n);
        case Variant::Wijesekera: return all_in(fr.le(), some_in(fr.r(), a, n), n);
      }
      break;
    case Kind::Atom: break;
  }
  return 0;
}

}  // namespace

StateSet apply_connective(Kind k, const Frame& fr, StateSet a, StateSet b, Variant v) {
  return apply(k, fr, a, b, v);
}

Evaluator::Evaluator(const Model& m, Variant v) : m_(m), v_(v) {}

StateSet Evaluator::truth(const Formula& f) {
  auto it = memo_.find(f);
  if (it != memo_.end()) return it->second;
  StateSet out;
  if (f.is_atom()) {
    out = m_.valuation(f.name());
  } else if (f.is_binary()) {
    StateSet a = truth(f.lhs());
    StateSet b = truth(f.rhs());
    out = apply(f.kind(), m_.frame(), a, b, v_);
  } else if (f.is_modal()) {
    out = apply(f.kind(), m_.frame(), truth(f.arg()), 0, v_);
  } else {
    out = apply(f.kind(), m_.frame(), 0, 0, v_);
  }
  memo_.emplace(f, out);
  return out;
}

std::vector<StateSet> Evaluator::run(const CompiledFormula& c) const {
  std::vector<StateSet> t(c.ops.size());
  for (std::size_t i = 0; i < c.ops.size(); ++i) {
    const auto& op = c.ops[i];
    if (op.kind == Kind::Atom)
      t[i] = m_.valuation(c.atoms[op.atom]);
    else
      t[i] = apply(op.kind, m_.frame(), op.a >= 0 ? t[op.a] : 0, op.b >= 0 ? t[op.b] : 0, v_);
  }
  return t;
}

StateSet truth_set(const Model& m, const Formula& f, Variant v) { return Evaluator(m, v).truth(f); }

bool sat(const Model& m, int s, const Formula& f, Variant v) {
  if (s < 0 || s >= m.size()) throw Error("state out of range");
  return (truth_set(m, f, v) >> s) & 1U;
}

bool true_in_model(const Model& m, const Formula& f, Variant v) {
  return truth_set(m, f, v) == all_states(m.size());
}

std::vector<StateSet> up_sets(const Frame& f) {
  // Grow from the empty set by adding principal up-sets; every up-set is a
  // union of principal ones.
  std::vector<StateSet> out;
  std::vector<StateSet> stack{0};
  std::unordered_map<StateSet, bool> seen{{0, true}};
  while (!stack.empty()) {
    StateSet x = stack.back();
    stack.pop_back();
    out.push_back(x);
    for (int s = 0; s < f.size(); ++s) {
      StateSet y = x | f.le().row(s);
      if (seen.emplace(y, true).second) stack.push_back(y);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

// Evaluates a compiled formula on 64 valuations at once: word[op*n + s] has
// bit l set iff the subformula holds at s under valuation l of the block.
class LaneEvaluator {
 public:
  LaneEvaluator(const Frame& fr, const CompiledFormula& c, Variant v)
      : fr_(fr), c_(c), v_(v), n_(fr.size()), words_(c.ops.size() * fr.size()), tmp_(fr.size()) {}

  // atom_words[a*n + s]
  void run(const std::vector<std::uint64_t>& atom_words) {
    for (std::size_t i = 0; i < c_.ops.size(); ++i) {
      const auto& op = c_.ops[i];
      std::uint64_t* out = &words_[i * n_];
      const std::uint64_t* a = op.a >= 0 ? &words_[op.a * n_] : nullptr;
      const std::uint64_t* b = op.b >= 0 ? &words_[op.b * n_] : nullptr;
      switch (op.kind) {
        case Kind::Atom:
          for (int s = 0; s < n_; ++s) out[s] = atom_words[op.atom * n_ + s];
          break;
        case Kind::Top:
          for (int s = 0; s < n_; ++s) out[s] = ~std::uint64_t{0};
          break;
        case Kind::Bot:
          for (int s = 0; s < n_; ++s) out[s] = 0;
          break;
        case Kind::And:
          for (int s = 0; s < n_; ++s) out[s] = a[s] & b[s];
          break;
        case Kind::Or:
          for (int s = 0; s < n_; ++s) out[s] = a[s] | b[s];
          break;
        case Kind::Impl:
          for (int t = 0; t < n_; ++t) tmp_[t] = ~a[t] | b[t];
          meet(fr_.le(), tmp_.data(), out);
          break;
        case Kind::Box:
          meet(fr_.le_r(), a, out);
          break;
        case Kind::Dia:
          if (v_ == Variant::New) {
            join(fr_.ge_r(), a, out);
          } else if (v_ == Variant::FischerServi) {
            join(fr_.r(), a, out);
          } else {
            join(fr_.r(), a, tmp_.data());
            meet(fr_.le(), tmp_.data(), out);
          }
          break;
      }
    }
  }

  const std::uint64_t* result(int op) const { return &words_[op * n_]; }

 private:
  void meet(const Relation& rel, const std::uint64_t* in, std::uint64_t* out) const {
    for (int s = 0; s < n_; ++s) {
      std::uint64_t w = ~std::uint64_t{0};
      for (StateSet row = rel.row(s); row; row &= row - 1) w &= in[std::countr_zero(row)];
      out[s] = w;
    }
  }
  void join(const Relation& rel, const std::uint64_t* in, std::uint64_t* out) const {
    for (int s = 0; s < n_; ++s) {
      std::uint64_t w = 0;
      for (StateSet row = rel.row(s); row; row &= row - 1) w |= in[std::countr_zero(row)];
      out[s] = w;
    }
  }

  const Frame& fr_;
  const CompiledFormula& c_;
  Variant v_;
  int n_;
  std::vector<std::uint64_t> words_;
  std::vector<std::uint64_t> tmp_;
};

}  // namespace

ValidityResult valid_in_frame(const Frame& fr, const Formula& f, Variant v) {
  CompiledFormula c(f);
  const int n = fr.size();
  const auto ups = up_sets(fr);
  const std::uint64_t radix = ups.size();
  const std::size_t k = c.atoms.size();

  std::uint64_t total = 1;
  for (std::size_t i = 0; i < k; ++i) {
    if (total > std::numeric_limits<std::uint64_t>::max() / radix / 2)
      throw Error("too many valuations to enumerate");
    total *= radix;
  }

  // The trailing `low` atoms take every combination of their values within a
  // group of `group` consecutive lanes; that pattern is the same in every block
  // and is built once. The leading atoms are fixed per group, and a block holds
  // `groups` consecutive groups, so lane order is valuation order.
  std::size_t low = 0;
  std::uint64_t group = 1;
  while (low < k && group * radix <= 64) {
    group *= radix;
    ++low;
  }
  const std::size_t high = k - low;
  const std::uint64_t groups = 64 / group;
  const std::uint64_t high_total = total / group;

  std::vector<std::uint64_t> low_words(low * n, 0);
  for (std::uint64_t lane = 0; lane < group; ++lane) {
    std::uint64_t rest = lane;
    for (std::size_t a = low; a-- > 0;) {
      for (StateSet xs = ups[rest % radix]; xs; xs &= xs - 1)
        low_words[a * n + std::countr_zero(xs)] |= std::uint64_t{1} << lane;
      rest /= radix;
    }
  }
  for (auto& w : low_words) {
    std::uint64_t rep = 0;
    for (std::uint64_t g = 0; g < groups; ++g) rep |= w << (g * group);
    w = rep;
  }
  const std::uint64_t group_mask = group == 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << group) - 1);

  ValidityResult res;
  LaneEvaluator lanes(fr, c, v);
  std::vector<std::uint64_t> atom_words(k * n);
  std::vector<std::uint64_t> digits(high, 0);  // leading atoms of the current group, last fastest

  for (std::uint64_t hi = 0; hi < high_total; hi += groups) {
    const std::uint64_t count = std::min<std::uint64_t>(groups, high_total - hi);
    std::fill(atom_words.begin(), atom_words.begin() + high * n, 0);
    std::copy(low_words.begin(), low_words.end(), atom_words.begin() + high * n);
    std::vector<std::uint64_t> first = digits;
    for (std::uint64_t g = 0; g < count; ++g) {
      for (std::size_t a = 0; a < high; ++a)
        for (StateSet xs = ups[digits[a]]; xs; xs &= xs - 1)
          atom_words[a * n + std::countr_zero(xs)] |= group_mask << (g * group);
      for (std::size_t a = high; a-- > 0;) {
        if (++digits[a] < radix) break;
        digits[a] = 0;
      }
    }
    lanes.run(atom_words);
    const std::uint64_t used = count * group;
    const std::uint64_t lane_mask = used == 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << used) - 1);
    const std::uint64_t* root = lanes.result(c.root);
    std::uint64_t failing = 0;
    for (int s = 0; s < n; ++s) failing |= ~root[s] & lane_mask;
    if (failing) {
      const int lane = std::countr_zero(failing);
      std::vector<std::uint64_t> d = first;
      for (std::uint64_t g = 0; g < static_cast<std::uint64_t>(lane) / group; ++g)
        for (std::size_t a = high; a-- > 0;) {
          if (++d[a] < radix) break;
          d[a] = 0;
        }
      Countervaluation w;
      for (std::size_t a = 0; a < high; ++a) w.val[c.atoms[a]] = ups[d[a]];
      std::uint64_t rest = lane % group;
      for (std::size_t a = low; a-- > 0;) {
        w.val[c.atoms[high + a]] = ups[rest % radix];
        rest /= radix;
      }
      for (int s = 0; s < n; ++s)
        if (!((root[s] >> lane) & 1U)) {
          w.state = s;
          break;
        }
      res.valid = false;
      res.witness = std::move(w);
      res.valuations_checked = hi * group + lane + 1;
      return res;
    }
  }
  res.valuations_checked = total;
  return res;
}

std::optional<HeredityViolation> heredity_violation(const Model& m, const Formula& f, Variant v) {
  Evaluator ev(m, v);
  for (const auto& g : closure(f)) {
    StateSet t = ev.truth(g);
    for (int s = 0; s < m.size(); ++s) {
      if (!((t >> s) & 1U)) continue;
      StateSet missing = m.frame().le().row(s) & ~t;
      if (missing) return HeredityViolation{g, s, std::countr_zero(missing)};
    }
  }
  return std::nullopt;
}

bool heredity_check(const Model& m, const Formula& f, Variant v) {
  return !heredity_violation(m, f, v).has_value();
}

}  // namespace imlkit
