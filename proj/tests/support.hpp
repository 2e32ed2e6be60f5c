#pragma once

// Naive reference implementations written directly from the first-order
// definitions, plus random generators shared by the test programs. Nothing here
// uses the bitmask machinery of the library beyond reading a Frame's pairs.

#include <algorithm>
#include <functional>
#include <optional>
#include <stdexcept>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "imlkit/formula.hpp"
#include "imlkit/io.hpp"
#include "imlkit/semantics.hpp"
#include "imlkit/structures.hpp"

namespace oracle {

using imlkit::Formula;
using imlkit::Kind;
using imlkit::Variant;

struct NFrame {
  int n = 0;
  std::vector<std::vector<bool>> le, r;

  NFrame() = default;
  explicit NFrame(const imlkit::Frame& f) : n(f.size()), le(n, std::vector<bool>(n)), r(le) {
    for (int s = 0; s < n; ++s)
      for (int t = 0; t < n; ++t) {
        le[s][t] = f.le().test(s, t);
        r[s][t] = f.r().test(s, t);
      }
  }
  bool ge(int s, int t) const { return le[t][s]; }
};

using Val = std::map<std::string, std::set<int>>;

inline Val to_val(const imlkit::Model& m) {
  Val v;
  for (const auto& [a, xs] : m.val())
    for (int s = 0; s < m.size(); ++s)
      if ((xs >> s) & 1U) v[a].insert(s);
  return v;
}

// Recursive satisfaction straight from the clauses.
inline bool sat(const NFrame& f, const Val& v, int s, const Formula& a, Variant var = Variant::New) {
  const int n = f.n;
  switch (a.kind()) {
    case Kind::Atom: {
      auto it = v.find(a.name());
      return it != v.end() && it->second.count(s);
    }
    case Kind::Top: return true;
    case Kind::Bot: return false;
    case Kind::And: return sat(f, v, s, a.lhs(), var) && sat(f, v, s, a.rhs(), var);
    case Kind::Or: return sat(f, v, s, a.lhs(), var) || sat(f, v, s, a.rhs(), var);
    case Kind::Impl:
      for (int t = 0; t < n; ++t)
        if (f.le[s][t] && sat(f, v, t, a.lhs(), var) && !sat(f, v, t, a.rhs(), var)) return false;
      return true;
    case Kind::Box:
      // for all t with s <= u R t
      for (int u = 0; u < n; ++u)
        for (int t = 0; t < n; ++t)
          if (f.le[s][u] && f.r[u][t] && !sat(f, v, t, a.arg(), var)) return false;
      return true;
    case Kind::Dia:
      if (var == Variant::FischerServi) {
        for (int t = 0; t < n; ++t)
          if (f.r[s][t] && sat(f, v, t, a.arg(), var)) return true;
        return false;
      }
      if (var == Variant::Wijesekera) {
        for (int t = 0; t < n; ++t) {
          if (!f.le[s][t]) continue;
          bool found = false;
          for (int u = 0; u < n && !found; ++u) found = f.r[t][u] && sat(f, v, u, a.arg(), var);
          if (!found) return false;
        }
        return true;
      }
      // exists t with s >= u R t
      for (int u = 0; u < n; ++u)
        for (int t = 0; t < n; ++t)
          if (f.ge(s, u) && f.r[u][t] && sat(f, v, t, a.arg(), var)) return true;
      return false;
  }
  return false;
}

inline bool up_closed(const NFrame& f, unsigned mask) {
  for (int s = 0; s < f.n; ++s)
    for (int t = 0; t < f.n; ++t)
      if (((mask >> s) & 1U) && f.le[s][t] && !((mask >> t) & 1U)) return false;
  return true;
}

inline std::vector<unsigned> up_sets(const NFrame& f) {
  std::vector<unsigned> out;
  for (unsigned m = 0; m < (1U << f.n); ++m)
    if (up_closed(f, m)) out.push_back(m);
  return out;
}

struct Refutation {
  std::map<std::string, unsigned> val;
  int state;
};

// First refuting valuation in lexicographic order over the sorted atoms, then
// the lowest refuted state.
inline std::optional<Refutation> refute(const NFrame& f, const Formula& a, Variant var = Variant::New) {
  const std::set<std::string> atom_set = imlkit::atoms(a);
  std::vector<std::string> names(atom_set.begin(), atom_set.end());
  std::vector<unsigned> ups = up_sets(f);
  std::vector<std::size_t> idx(names.size(), 0);
  while (true) {
    Val v;
    std::map<std::string, unsigned> raw;
    for (std::size_t i = 0; i < names.size(); ++i) {
      raw[names[i]] = ups[idx[i]];
      for (int s = 0; s < f.n; ++s)
        if ((ups[idx[i]] >> s) & 1U) v[names[i]].insert(s);
    }
    for (int s = 0; s < f.n; ++s)
      if (!sat(f, v, s, a, var)) return Refutation{raw, s};
    std::size_t pos = names.size();
    bool done = true;
    while (pos > 0) {
      --pos;
      if (++idx[pos] < ups.size()) {
        done = false;
        break;
      }
      idx[pos] = 0;
    }
    if (done) return std::nullopt;
  }
}

// Frame predicates, from their quantified definitions.
inline bool pred(const NFrame& f, const std::string& name) {
  const int n = f.n;
  auto le_r = [&](int s, int t) {
    for (int u = 0; u < n; ++u)
      if (f.le[s][u] && f.r[u][t]) return true;
    return false;
  };
  auto ge_r = [&](int s, int t) {
    for (int u = 0; u < n; ++u)
      if (f.ge(s, u) && f.r[u][t]) return true;
    return false;
  };
  auto r_le = [&](int s, int t) {
    for (int u = 0; u < n; ++u)
      if (f.r[s][u] && f.le[u][t]) return true;
    return false;
  };
  auto r_ge = [&](int s, int t) {
    for (int u = 0; u < n; ++u)
      if (f.r[s][u] && f.ge(u, t)) return true;
    return false;
  };
  auto le_r_le = [&](int s, int t) {
    for (int u = 0; u < n; ++u)
      if (le_r(s, u) && f.le[u][t]) return true;
    return false;
  };
  auto ge_r_ge = [&](int s, int t) {
    for (int u = 0; u < n; ++u)
      if (ge_r(s, u) && f.ge(u, t)) return true;
    return false;
  };
  auto both = [&](int s, int t) { return le_r_le(s, t) && ge_r_ge(s, t); };
  auto all2 = [&](auto cond) {
    for (int s = 0; s < n; ++s)
      for (int t = 0; t < n; ++t)
        if (!cond(s, t)) return false;
    return true;
  };
  auto exists = [&](auto cond) {
    for (int u = 0; u < n; ++u)
      if (cond(u)) return true;
    return false;
  };

  if (name == "all") return true;
  if (name == "fc") return all2([&](int s, int t) { return !ge_r(s, t) || r_ge(s, t); });
  if (name == "bc") return all2([&](int s, int t) { return !r_le(s, t) || le_r(s, t); });
  if (name == "dc") return all2([&](int s, int t) { return !le_r(s, t) || r_le(s, t); });
  if (name == "uc") return all2([&](int s, int t) { return !r_ge(s, t) || ge_r(s, t); });
  if (name == "qfc")
    return all2([&](int s, int t) { return !ge_r(s, t) || exists([&](int u) { return both(s, u) && f.ge(u, t); }); });
  if (name == "qbc")
    return all2([&](int s, int t) { return !r_le(s, t) || exists([&](int u) { return f.le[s][u] && both(u, t); }); });
  if (name == "qdc")
    return all2([&](int s, int t) { return !le_r(s, t) || exists([&](int u) { return both(s, u) && f.le[u][t]; }); });
  if (name == "quc")
    return all2([&](int s, int t) { return !r_ge(s, t) || exists([&](int u) { return f.ge(s, u) && both(u, t); }); });
  if (name == "ref") return all2([&](int s, int t) { return s != t || f.r[s][s]; });
  if (name == "sym") return all2([&](int s, int t) { return !f.r[s][t] || f.r[t][s]; });
  if (name == "tra")
    return all2([&](int s, int t) {
      for (int u = 0; u < n; ++u)
        if (f.r[s][t] && f.r[t][u] && !f.r[s][u]) return false;
      return true;
    });
  if (name == "par") return pred(f, "ref") && pred(f, "sym") && pred(f, "tra");
  if (name == "uref") return all2([&](int s, int t) { return s != t || le_r_le(s, s); });
  if (name == "dref") return all2([&](int s, int t) { return s != t || ge_r_ge(s, s); });
  if (name == "usym") return all2([&](int s, int t) { return !f.r[s][t] || le_r_le(t, s); });
  if (name == "dsym") return all2([&](int s, int t) { return !f.r[s][t] || ge_r_ge(t, s); });
  if (name == "utra" || name == "dtra") {
    const bool up = name == "utra";
    for (int s = 0; s < n; ++s)
      for (int t = 0; t < n; ++t)
        for (int u = 0; u < n; ++u)
          for (int v = 0; v < n; ++v) {
            if (!f.r[s][t] || !f.r[u][v]) continue;
            if (up && f.le[t][u] && !le_r_le(s, v)) return false;
            if (!up && f.ge(t, u) && !ge_r_ge(s, v)) return false;
          }
    return true;
  }
  throw std::runtime_error("oracle: unknown predicate " + name);
}

// Preorders on k labelled points by brute force over all relations.
inline std::size_t count_preorders(int k) {
  std::size_t count = 0;
  const int bits = k * k;
  for (unsigned long m = 0; m < (1UL << bits); ++m) {
    auto has = [&](int i, int j) { return (m >> (i * k + j)) & 1UL; };
    bool ok = true;
    for (int i = 0; i < k && ok; ++i) ok = has(i, i);
    for (int i = 0; i < k && ok; ++i)
      for (int j = 0; j < k && ok; ++j)
        for (int l = 0; l < k && ok; ++l)
          if (has(i, j) && has(j, l) && !has(i, l)) ok = false;
    if (ok) ++count;
  }
  return count;
}

// Intuitionistic propositional validity by Kripke countermodels over all
// preorders with up to `max_nodes` points; modal subformulas count as atoms.
inline bool ipl_valid_upto(const Formula& goal, int max_nodes) {
  // Freeze modal subformulas into fresh atoms.
  std::map<std::string, std::string> frozen;
  std::function<Formula(const Formula&)> freeze = [&](const Formula& a) -> Formula {
    switch (a.kind()) {
      case Kind::Box:
      case Kind::Dia: {
        auto it = frozen.emplace(a.str(), "m" + std::to_string(frozen.size())).first;
        return Formula::atom(it->second);
      }
      case Kind::And: return Formula::conj(freeze(a.lhs()), freeze(a.rhs()));
      case Kind::Or: return Formula::disj(freeze(a.lhs()), freeze(a.rhs()));
      case Kind::Impl: return Formula::impl(freeze(a.lhs()), freeze(a.rhs()));
      default: return a;
    }
  };
  Formula g = freeze(goal);
  for (int k = 1; k <= max_nodes; ++k) {
    for (unsigned long m = 0; m < (1UL << (k * k)); ++m) {
      NFrame f;
      f.n = k;
      f.le.assign(k, std::vector<bool>(k));
      f.r.assign(k, std::vector<bool>(k));
      for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) f.le[i][j] = (m >> (i * k + j)) & 1UL;
      bool pre = true;
      for (int i = 0; i < k && pre; ++i) pre = f.le[i][i];
      for (int i = 0; i < k && pre; ++i)
        for (int j = 0; j < k && pre; ++j)
          for (int l = 0; l < k && pre; ++l)
            if (f.le[i][j] && f.le[j][l] && !f.le[i][l]) pre = false;
      if (!pre) continue;
      if (refute(f, g)) return false;
    }
  }
  return true;
}

}  // namespace oracle

namespace gen {

using imlkit::Formula;

// Random formula of depth at most `depth` over `atoms`.
inline Formula formula(std::mt19937& rng, int depth, const std::vector<std::string>& atoms, bool modal = true) {
  std::uniform_int_distribution<int> pick(0, 99);
  if (depth == 0 || pick(rng) < 20) {
    int x = pick(rng);
    if (x < 8) return Formula::top();
    if (x < 16) return Formula::bot();
    return Formula::atom(atoms[pick(rng) % atoms.size()]);
  }
  int c = pick(rng) % (modal ? 5 : 3);
  switch (c) {
    case 0: return Formula::impl(formula(rng, depth - 1, atoms, modal), formula(rng, depth - 1, atoms, modal));
    case 1: return Formula::conj(formula(rng, depth - 1, atoms, modal), formula(rng, depth - 1, atoms, modal));
    case 2: return Formula::disj(formula(rng, depth - 1, atoms, modal), formula(rng, depth - 1, atoms, modal));
    case 3: return Formula::box(formula(rng, depth - 1, atoms, modal));
    default: return Formula::dia(formula(rng, depth - 1, atoms, modal));
  }
}

// Random preorder: random relation, then reflexive-transitive closure.
inline imlkit::Relation preorder(std::mt19937& rng, int n, double density = 0.25) {
  std::bernoulli_distribution coin(density);
  imlkit::Relation le(n);
  for (int s = 0; s < n; ++s)
    for (int t = 0; t < n; ++t)
      if (s != t && coin(rng)) le.set(s, t);
  return imlkit::rt_closure(le);
}

inline imlkit::Frame frame(std::mt19937& rng, int n, double le_density = 0.25, double r_density = 0.3) {
  std::bernoulli_distribution coin(r_density);
  imlkit::Relation r(n);
  for (int s = 0; s < n; ++s)
    for (int t = 0; t < n; ++t)
      if (coin(rng)) r.set(s, t);
  return imlkit::Frame(preorder(rng, n, le_density), r);
}

inline imlkit::Model model(std::mt19937& rng, const imlkit::Frame& f, const std::vector<std::string>& atoms) {
  std::vector<imlkit::StateSet> ups = imlkit::up_sets(f);
  std::map<std::string, imlkit::StateSet> val;
  for (const auto& a : atoms) val[a] = ups[std::uniform_int_distribution<std::size_t>(0, ups.size() - 1)(rng)];
  return imlkit::Model(f, val);
}

inline int size(std::mt19937& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

// Random forward confluent frame: random frames until one is fc, falling back
// to an R closed under the confluence by saturation.
inline imlkit::Frame fc_frame(std::mt19937& rng, int n) {
  for (int tries = 0; tries < 200; ++tries) {
    imlkit::Frame f = frame(rng, n, 0.3, 0.25);
    if (imlkit::check_property(f, imlkit::Predicate::fc)) return f;
  }
  // R := R o >= satisfies >= o R subset R o >= only when closed; use R = >= o R o >=.
  imlkit::Frame f = frame(rng, n, 0.3, 0.25);
  imlkit::Relation r = imlkit::compose(imlkit::compose(f.ge(), f.r()), f.ge());
  return imlkit::Frame(f.le(), r);
}

}  // namespace gen
