#include "imlkit/filtration.hpp"

#include <algorithm>
#include <map>

namespace imlkit {

EquivalenceSetting equiv_classes(const Model& m, const FormulaSet& sigma) {
  if (!is_closed(sigma)) throw SigmaNotClosed("the formula set is not closed under subformulas");
  EquivalenceSetting es;
  es.sigma = sigma.to_vector();
  Evaluator ev(m);
  for (const auto& f : es.sigma) es.truth.push_back(ev.truth(f));

  std::map<std::vector<bool>, int> ids;
  es.class_of.assign(m.size(), -1);
  for (int s = 0; s < m.size(); ++s) {
    std::vector<bool> sig;
    for (StateSet t : es.truth) sig.push_back((t >> s) & 1U);
    auto [it, fresh] = ids.emplace(std::move(sig), static_cast<int>(es.classes.size()));
    if (fresh) es.classes.emplace_back();
    es.class_of[s] = it->second;
    es.classes[it->second].push_back(s);
  }
  return es;
}

namespace {

bool holds_at(StateSet t, int s) { return (t >> s) & 1U; }

// Every sigma member true at s is true at t.
bool sig_below(const EquivalenceSetting& es, int s, int t) {
  for (StateSet x : es.truth)
    if (holds_at(x, s) && !holds_at(x, t)) return false;
  return true;
}

Filtration quotient(const Model& m, const EquivalenceSetting& es, const Relation& r) {
  const int k = static_cast<int>(es.classes.size());
  Relation le(k);
  for (int x = 0; x < k; ++x)
    for (int y = 0; y < k; ++y) le.set(x, y, sig_below(es, es.classes[x][0], es.classes[y][0]));

  std::map<std::string, StateSet> val;
  for (std::size_t i = 0; i < es.sigma.size(); ++i) {
    if (!es.sigma[i].is_atom()) continue;
    StateSet xs = 0;
    for (int x = 0; x < k; ++x)
      if (holds_at(es.truth[i], es.classes[x][0])) xs |= bit(x);
    val[es.sigma[i].name()] = xs;
  }

  std::vector<std::string> names;
  for (const auto& cls : es.classes) {
    std::string n = "[";
    for (std::size_t i = 0; i < cls.size(); ++i) n += (i ? "," : "") + m.name(cls[i]);
    names.push_back(n + "]");
  }
  return {Model(Frame(std::move(le), r), std::move(val), std::move(names)), es.class_of};
}

}  // namespace

Filtration smallest_filtration(const Model& m, const FormulaSet& sigma) {
  EquivalenceSetting es = equiv_classes(m, sigma);
  const int k = static_cast<int>(es.classes.size());
  Relation r(k);
  for (auto [s, t] : m.frame().r().pairs()) r.set(es.class_of[s], es.class_of[t]);
  return quotient(m, es, r);
}

Filtration largest_filtration(const Model& m, const FormulaSet& sigma) {
  EquivalenceSetting es = equiv_classes(m, sigma);
  const int k = static_cast<int>(es.classes.size());
  Relation r(k);
  for (int x = 0; x < k; ++x)
    for (int y = 0; y < k; ++y) {
      int s = es.classes[x][0];
      int t = es.classes[y][0];
      bool ok = true;
      for (std::size_t i = 0; i < es.sigma.size() && ok; ++i) {
        const Formula& f = es.sigma[i];
        if (!f.is_modal()) continue;
        int arg = static_cast<int>(std::find(es.sigma.begin(), es.sigma.end(), f.arg()) - es.sigma.begin());
        if (f.kind() == Kind::Box)
          ok = !holds_at(es.truth[i], s) || holds_at(es.truth[arg], t);
        else
          ok = !holds_at(es.truth[arg], t) || holds_at(es.truth[i], s);
      }
      r.set(x, y, ok);
    }
  return quotient(m, es, r);
}

bool FiltrationReport::ok() const {
  return std::all_of(holds.begin(), holds.end(), [](bool b) { return b; });
}

FiltrationReport is_filtration(const Model& cand, const Model& orig, const FormulaSet& sigma,
                               const std::vector<int>& class_of) {
  if (static_cast<int>(class_of.size()) != orig.size())
    throw WrongCarrier("class map does not cover the original states");
  for (int c : class_of)
    if (c < 0 || c >= cand.size()) throw WrongCarrier("class map points outside the candidate");

  EquivalenceSetting es = equiv_classes(orig, sigma);
  const int n = orig.size();
  const Frame& f = orig.frame();
  const Frame& g = cand.frame();
  FiltrationReport rep;
  rep.holds.fill(true);
  auto fail = [&](int i, std::string why) {
    if (rep.holds[i]) rep.detail[i] = std::move(why);
    rep.holds[i] = false;
  };
  auto pair_text = [&](int s, int t) { return "(" + orig.name(s) + "," + orig.name(t) + ")"; };

  // 1: the carrier is the quotient.
  if (cand.size() != static_cast<int>(es.classes.size()))
    fail(0, "candidate has " + std::to_string(cand.size()) + " states, expected " +
                std::to_string(es.classes.size()));
  for (int s = 0; s < n; ++s)
    for (int t = 0; t < n; ++t)
      if ((class_of[s] == class_of[t]) != es.agree(s, t))
        fail(0, "class map disagrees with the equivalence at " + pair_text(s, t));

  Relation up = compose(g.le_r(), g.le());    // <=' o R' o <='
  Relation down = compose(g.ge_r(), g.ge());  // >=' o R' o >='
  Evaluator ev(orig);

  for (int s = 0; s < n; ++s)
    for (int t = 0; t < n; ++t) {
      const int cs = class_of[s];
      const int ct = class_of[t];
      if (f.le().test(s, t) && !g.le().test(cs, ct)) fail(1, "s<=t lost at " + pair_text(s, t));
      if (f.le_r().test(s, t) && !up.test(cs, ct)) fail(3, "s<=oRt lost at " + pair_text(s, t));
      if (f.ge_r().test(s, t) && !down.test(cs, ct)) fail(5, "s>=oRt lost at " + pair_text(s, t));
    }

  for (const auto& a : sigma) {
    StateSet ta = ev.truth(a);
    if (a.kind() == Kind::Impl) {
      StateSet tl = ev.truth(a.lhs());
      StateSet tr = ev.truth(a.rhs());
      for (int s = 0; s < n; ++s)
        for (int t = 0; t < n; ++t)
          if (holds_at(ta, s) && g.le().test(class_of[s], class_of[t]) && holds_at(tl, t) &&
              !holds_at(tr, t))
            fail(2, a.str() + " at " + pair_text(s, t));
    } else if (a.kind() == Kind::Box) {
      StateSet targ = ev.truth(a.arg());
      for (int s = 0; s < n; ++s)
        for (int t = 0; t < n; ++t)
          if (holds_at(ta, s) && g.le_r().test(class_of[s], class_of[t]) && !holds_at(targ, t))
            fail(4, a.str() + " at " + pair_text(s, t));
    } else if (a.kind() == Kind::Dia) {
      StateSet targ = ev.truth(a.arg());
      for (int s = 0; s < n; ++s)
        for (int t = 0; t < n; ++t)
          if (holds_at(targ, t) && g.ge_r().test(class_of[s], class_of[t]) && !holds_at(ta, s))
            fail(6, a.str() + " at " + pair_text(s, t));
    } else if (a.is_atom()) {
      StateSet expect = 0;
      for (int s = 0; s < n; ++s)
        if (holds_at(ta, s)) expect |= bit(class_of[s]);
      if (cand.valuation(a.name()) != expect) fail(7, "valuation of " + a.name());
    }
  }
  return rep;
}

bool filtration_lemma_check(const Model& cand, const Model& orig, const FormulaSet& sigma,
                            const std::vector<int>& class_of) {
  Evaluator ev_orig(orig);
  Evaluator ev_cand(cand);
  for (const auto& a : sigma) {
    StateSet t0 = ev_orig.truth(a);
    StateSet t1 = ev_cand.truth(a);
    for (int s = 0; s < orig.size(); ++s)
      if (holds_at(t0, s) != holds_at(t1, class_of[s])) return false;
  }
  return true;
}

}  // namespace imlkit
