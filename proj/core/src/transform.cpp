#include "imlkit/transform.hpp"

#include <algorithm>
#include <set>

namespace imlkit {

namespace {

std::map<std::string, StateSet> lift_valuation(const Model& m, const StateMap& map) {
  std::map<std::string, StateSet> out;
  for (const auto& [p, xs] : m.val()) {
    StateSet ys = 0;
    for (std::size_t i = 0; i < map.size(); ++i)
      if (map[i].state >= 0 && (xs & bit(map[i].state))) ys |= bit(static_cast<int>(i));
    out[p] = ys;
  }
  return out;
}

void check_capacity(std::size_t n) {
  if (n > static_cast<std::size_t>(kMaxStates))
    throw Error("construction needs " + std::to_string(n) + " states, more than " +
                std::to_string(kMaxStates));
}

Constructed doubled(const Model& m, bool keep_loops) {
  const int n = m.size();
  check_capacity(2 * static_cast<std::size_t>(n));
  StateMap map;
  std::vector<std::string> names;
  for (int t = 0; t < n; ++t)
    for (int j = 0; j < 2; ++j) {
      map.push_back({t, j, -1, 1});
      names.push_back("(" + m.name(t) + "," + std::to_string(j) + ")");
    }
  const int n2 = 2 * n;
  Relation le(n2), r(n2);
  for (int x = 0; x < n2; ++x)
    for (int y = 0; y < n2; ++y) {
      const Origin& a = map[x];
      const Origin& b = map[y];
      le.set(x, y, m.frame().le().test(a.state, b.state));
      bool step = m.frame().r().test(a.state, b.state) && a.copy == 0 && b.copy == 1;
      r.set(x, y, step || (keep_loops && x == y));
    }
  Model out(Frame(std::move(le), std::move(r)), lift_valuation(m, map), std::move(names));
  return {std::move(out), std::move(map)};
}

}  // namespace

Model intersectional_update(const Model& m) {
  const Frame& f = m.frame();
  Relation up = compose(f.le_r(), f.le());
  Relation down = compose(f.ge_r(), f.ge());
  return Model(Frame(f.le(), up & down), m.val(), m.names());
}

Constructed double_strict(const Model& m) { return doubled(m, false); }

Constructed double_reflexive(const Model& m) {
  if (!is_reflexive(m.frame().r())) throw NotReflexive("double_reflexive needs a reflexive frame");
  return doubled(m, true);
}

Constructed partitionize(const Model& m) {
  const Relation& r = m.frame().r();
  if (!is_reflexive(r) || !is_symmetric(r))
    throw PreconditionFailed("partitionize needs a reflexive and symmetric frame");
  const int n = m.size();
  StateMap map;
  std::vector<std::string> names;
  for (int t = 0; t < n; ++t)
    for (int u = 0; u < n; ++u)
      if (r.test(t, u)) {
        map.push_back({t, 0, u, 1});
        std::string pair = t == u ? m.name(t)
                                  : m.name(std::min(t, u)) + "," + m.name(std::max(t, u));
        names.push_back("(" + m.name(t) + ",{" + pair + "})");
      }
  check_capacity(map.size());
  const int k = static_cast<int>(map.size());
  Relation le(k), rr(k);
  for (int x = 0; x < k; ++x)
    for (int y = 0; y < k; ++y) {
      const Origin& a = map[x];
      const Origin& b = map[y];
      le.set(x, y, m.frame().le().test(a.state, b.state));
      std::set<int> pa{a.state, a.partner}, pb{b.state, b.partner};
      rr.set(x, y, r.test(a.state, b.state) && pa == pb);
    }
  Model out(Frame(std::move(le), std::move(rr)), lift_valuation(m, map), std::move(names));
  return {std::move(out), std::move(map)};
}

Joined rooted_join(const Model& m1, int s1, const Model& m2, int s2) {
  if (s1 < 0 || s1 >= m1.size() || s2 < 0 || s2 >= m2.size()) throw Error("state out of range");
  const int n1 = m1.size();
  const int n2 = m2.size();
  check_capacity(static_cast<std::size_t>(n1) + n2 + 1);
  const int n = n1 + n2 + 1;
  const int root = n - 1;

  StateMap map;
  std::vector<std::string> names;
  std::set<std::string> used;
  for (int t = 0; t < n1; ++t) {
    map.push_back({t, 0, -1, 1});
    names.push_back(m1.name(t));
  }
  for (int t = 0; t < n2; ++t) {
    map.push_back({t, 0, -1, 2});
    names.push_back(m2.name(t));
  }
  // Keep names unique: clashing names get the component number appended.
  for (int x = 0; x < n1 + n2; ++x) used.insert(names[x]);
  if (used.size() != static_cast<std::size_t>(n1 + n2))
    for (int x = 0; x < n1 + n2; ++x) names[x] += "." + std::to_string(map[x].component);
  std::string root_name = "root";
  while (std::find(names.begin(), names.end(), root_name) != names.end()) root_name += "'";
  map.push_back({-1, 0, -1, 0});
  names.push_back(root_name);

  Relation le(n), r(n);
  for (int a = 0; a < n1; ++a)
    for (int b = 0; b < n1; ++b) {
      le.set(a, b, m1.frame().le().test(a, b));
      r.set(a, b, m1.frame().r().test(a, b));
    }
  for (int a = 0; a < n2; ++a)
    for (int b = 0; b < n2; ++b) {
      le.set(n1 + a, n1 + b, m2.frame().le().test(a, b));
      r.set(n1 + a, n1 + b, m2.frame().r().test(a, b));
    }
  le.set(root, root);
  for (int t = 0; t < n1; ++t)
    if (m1.frame().le().test(s1, t)) le.set(root, t);
  for (int t = 0; t < n2; ++t)
    if (m2.frame().le().test(s2, t)) le.set(root, n1 + t);
  le = rt_closure(le);

  std::map<std::string, StateSet> val;
  for (const auto& [p, xs] : m1.val()) val[p] |= xs;
  for (const auto& [p, xs] : m2.val()) val[p] |= xs << n1;

  Model out(Frame(std::move(le), std::move(r)), std::move(val), std::move(names));
  return {std::move(out), std::move(map), root};
}

}  // namespace imlkit
