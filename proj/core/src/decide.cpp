#include "imlkit/decide.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <chrono>
#include <cstdlib>
#include <exception>
#include <limits>
#include <mutex>
#include <numeric>
#include <set>
#include <stdexcept>
#include <thread>
#include <unordered_map>

namespace imlkit {

namespace {

// Number of preorders on k labelled points (OEIS A000798).
constexpr std::array<std::uint64_t, kMaxEnumStates + 1> kPreorderCount = {1, 1, 4, 29, 355, 6942, 209527};

// r masks per work unit.
constexpr std::uint64_t kBlock = 4096;

void check_size(int n) {
  if (n < 1 || n > kMaxEnumStates)
    throw Error("frame enumeration supports 1 to " + std::to_string(kMaxEnumStates) + " states");
}

std::vector<std::uint64_t> extend_preorders(const std::vector<std::uint64_t>& prev, int k) {
  const int m = k - 1;  // the new point
  std::vector<std::uint64_t> out;
  out.reserve(kPreorderCount[k]);
  for (std::uint64_t pm : prev) {
    Relation le = Relation::from_mask(m, pm);
    Frame f = Frame::unchecked(le, Relation(m));
    std::vector<StateSet> ups = up_sets(f);
    // Down-sets are the complements of up-sets.
    for (StateSet u : ups) {
      for (StateSet up2 : ups) {
        StateSet d = all_states(m) & ~up2;
        bool ok = true;
        for (int y = 0; y < m && ok; ++y)
          if ((d >> y) & 1U) ok = (le.row(y) & u) == u;
        if (!ok) continue;
        Relation nl(k);
        for (int i = 0; i < m; ++i) nl.set_row(i, le.row(i) | (((d >> i) & 1U) ? bit(m) : 0));
        nl.set_row(m, u | bit(m));
        out.push_back(nl.mask());
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

const std::vector<std::vector<int>>& permutations(int k) {
  static std::array<std::vector<std::vector<int>>, kMaxEnumStates + 1> cache;
  static std::array<std::once_flag, kMaxEnumStates + 1> once;
  std::call_once(once[k], [k] {
    std::vector<int> p(k);
    std::iota(p.begin(), p.end(), 0);
    do cache[k].push_back(p);
    while (std::next_permutation(p.begin(), p.end()));
  });
  return cache[k];
}

std::uint64_t permuted_mask(const Relation& r, const std::vector<int>& perm) {
  const int k = r.size();
  std::uint64_t m = 0;
  for (int i = 0; i < k; ++i) {
    StateSet row = r.row(i);
    for (int j = 0; j < k; ++j)
      if ((row >> j) & 1U) m |= std::uint64_t{1} << (perm[i] * k + perm[j]);
  }
  return m;
}

bool frame_less(const Frame& a, const Frame& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  if (a.le().mask() != b.le().mask()) return a.le().mask() < b.le().mask();
  return a.r().mask() < b.r().mask();
}

// Global work-unit numbering: size-major, then le index, then r block.
struct UnitPlan {
  std::vector<std::uint64_t> start;  // first unit of each size, index k-1; last entry is the total
  std::vector<std::uint64_t> blocks;

  explicit UnitPlan(int n) {
    std::uint64_t acc = 0;
    for (int k = 1; k <= n; ++k) {
      start.push_back(acc);
      std::uint64_t rs = std::uint64_t{1} << (k * k);
      std::uint64_t b = (rs + kBlock - 1) / kBlock;
      blocks.push_back(b);
      acc += kPreorderCount[k] * b;
    }
    start.push_back(acc);
  }
  std::uint64_t total() const { return start.back(); }
  // (k, le index, first r, end r)
  std::tuple<int, std::uint64_t, std::uint64_t, std::uint64_t> locate(std::uint64_t u) const {
    int k = 1;
    while (u >= start[k]) ++k;
    std::uint64_t off = u - start[k - 1];
    std::uint64_t b = blocks[k - 1];
    std::uint64_t rs = std::uint64_t{1} << (k * k);
    std::uint64_t lo = (off % b) * kBlock;
    return {k, off / b, lo, std::min(rs, lo + kBlock)};
  }
};

Countermodel countermodel_on(const Frame& fr, const Formula& f, Variant v) {
  ValidityResult res = valid_in_frame(fr, f, v);
  if (res.valid || !res.witness) throw std::logic_error("countermodel frame validates the formula");
  Countermodel cm{Model(fr, res.witness->val), res.witness->state};
  if (sat(cm.model, cm.state, f, v)) throw std::logic_error("countermodel does not refute the formula");
  return cm;
}

}  // namespace

const std::vector<std::uint64_t>& preorders(int k) {
  check_size(k);
  static std::array<std::vector<std::uint64_t>, kMaxEnumStates + 1> cache;
  static std::array<std::once_flag, kMaxEnumStates + 1> once;
  std::call_once(once[k], [k] {
    if (k == 1)
      cache[k] = {1};
    else
      cache[k] = extend_preorders(preorders(k - 1), k);
    if (cache[k].size() != kPreorderCount[k]) throw std::logic_error("preorder count mismatch");
  });
  return cache[k];
}

std::pair<std::uint64_t, std::uint64_t> canonical_form(const Frame& f) {
  check_size(f.size());
  std::pair<std::uint64_t, std::uint64_t> best{std::numeric_limits<std::uint64_t>::max(),
                                               std::numeric_limits<std::uint64_t>::max()};
  for (const auto& perm : permutations(f.size())) {
    std::uint64_t le = permuted_mask(f.le(), perm);
    if (le > best.first) continue;
    std::pair<std::uint64_t, std::uint64_t> cand{le, permuted_mask(f.r(), perm)};
    best = std::min(best, cand);
  }
  return best;
}

bool is_canonical(const Frame& f) {
  check_size(f.size());
  const std::uint64_t le0 = f.le().mask();
  const std::uint64_t r0 = f.r().mask();
  for (const auto& perm : permutations(f.size())) {
    std::uint64_t le = permuted_mask(f.le(), perm);
    if (le > le0) continue;
    if (le < le0) return false;
    if (permuted_mask(f.r(), perm) < r0) return false;
  }
  return true;
}

void for_each_frame(int n, const FrameClassSpec& spec, bool dedup,
                    const std::function<bool(const Frame&)>& visit) {
  check_size(n);
  for (int k = 1; k <= n; ++k) {
    const std::uint64_t rs = std::uint64_t{1} << (k * k);
    for (std::uint64_t lm : preorders(k)) {
      Relation le = Relation::from_mask(k, lm);
      for (std::uint64_t rm = 0; rm < rs; ++rm) {
        Frame f = Frame::unchecked(le, Relation::from_mask(k, rm));
        if (!spec.holds(f)) continue;
        if (dedup && !is_canonical(f)) continue;
        if (!visit(f)) return;
      }
    }
  }
}

std::vector<Frame> enumerate_frames(int n, const FrameClassSpec& spec, bool dedup) {
  std::vector<Frame> out;
  for_each_frame(n, spec, dedup, [&](const Frame& f) {
    out.push_back(f);
    return true;
  });
  return out;
}

int default_threads() {
  if (const char* env = std::getenv("IMLKIT_THREADS")) {
    int t = std::atoi(env);
    if (t >= 1) return t;
  }
  unsigned hc = std::thread::hardware_concurrency();
  return hc == 0 ? 1 : static_cast<int>(hc);
}

ScanResult scan_frames(int n, const FrameClassSpec& spec, bool dedup,
                       const std::function<bool(const Frame&)>& hit, const ScanLimits& limits) {
  check_size(n);
  const UnitPlan plan(n);
  const int threads = std::max(1, limits.threads > 0 ? limits.threads : default_threads());
  const auto t0 = std::chrono::steady_clock::now();
  constexpr std::uint64_t kNone = std::numeric_limits<std::uint64_t>::max();

  std::atomic<std::uint64_t> next{0};
  std::atomic<std::uint64_t> best{kNone};
  std::atomic<std::uint64_t> examined{0};
  std::atomic<bool> stop{false};
  std::atomic<bool> truncated{false};
  std::atomic<int> reported{0};
  std::mutex mu;
  std::unordered_map<std::uint64_t, std::uint64_t> unit_counts;
  std::optional<Frame> best_frame;
  std::uint64_t best_pos = 0;
  std::exception_ptr error;

  auto out_of_budget = [&] {
    if (limits.max_frames && examined.load() >= *limits.max_frames) return true;
    if (limits.time_limit) {
      std::chrono::duration<double> el = std::chrono::steady_clock::now() - t0;
      if (el.count() > *limits.time_limit) return true;
    }
    return false;
  };

  auto worker = [&] {
    try {
      while (!stop.load()) {
        const std::uint64_t u = next.fetch_add(1);
        if (u >= plan.total() || u > best.load()) return;
        if (out_of_budget()) {
          truncated = true;
          stop = true;
          return;
        }
        auto [k, li, lo, hi] = plan.locate(u);
        if (limits.progress) {
          int seen = reported.load();
          while (k > seen && !reported.compare_exchange_weak(seen, k)) {
          }
          if (k > seen) {
            std::lock_guard lock(mu);
            limits.progress(k);
          }
        }
        Relation le = Relation::from_mask(k, preorders(k)[li]);
        std::uint64_t count = 0;
        bool found = false;
        for (std::uint64_t rm = lo; rm < hi; ++rm) {
          Frame f = Frame::unchecked(le, Relation::from_mask(k, rm));
          if (!spec.holds(f)) continue;
          if (dedup && !is_canonical(f)) continue;
          if (limits.max_frames && examined.fetch_add(1) >= *limits.max_frames) {
            truncated = true;
            stop = true;
            break;
          }
          if (!limits.max_frames) examined.fetch_add(1);
          ++count;
          if (hit(f)) {
            std::lock_guard lock(mu);
            if (u < best.load()) {
              best = u;
              best_frame = f;
              best_pos = count;
            }
            found = true;
            break;
          }
          if (best.load() < u) break;
        }
        if (!found) {
          std::lock_guard lock(mu);
          unit_counts[u] = count;
        }
      }
    } catch (...) {
      std::lock_guard lock(mu);
      if (!error) error = std::current_exception();
      stop = true;
    }
  };

  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int i = 0; i < threads; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (error) std::rethrow_exception(error);

  ScanResult res;
  res.truncated = truncated.load();
  const std::uint64_t b = best.load();
  if (b != kNone) {
    res.frame = best_frame;
    res.frames_examined = best_pos;
    for (const auto& [u, c] : unit_counts)
      if (u < b) res.frames_examined += c;
  } else {
    for (const auto& [u, c] : unit_counts) res.frames_examined += c;
  }
  return res;
}

SearchOutcome countermodel_search(const Formula& f, const FrameClassSpec& spec, const SearchBudget& budget,
                                  Variant v) {
  ScanLimits limits{budget.max_frames, budget.time_limit, budget.threads, budget.progress};
  ScanResult scan = scan_frames(
      budget.max_states, spec, budget.dedup_isomorphic,
      [&](const Frame& fr) { return !valid_in_frame(fr, f, v).valid; }, limits);
  SearchOutcome out;
  out.frames_examined = scan.frames_examined;
  out.truncated = scan.truncated;
  if (scan.frame) {
    if (!spec.holds(*scan.frame)) throw std::logic_error("countermodel frame is outside the class");
    out.countermodel = countermodel_on(*scan.frame, f, v);
  }
  const int len = f.length();
  out.complete = !out.truncated && len < 31 && budget.max_states >= (1 << len);
  return out;
}

DefinabilityReport definability_check(const Formula& f, Predicate p, int n) {
  DefinabilityReport rep;
  ScanResult all = scan_frames(n, FrameClassSpec{}, false, [&](const Frame& fr) {
    return check_property(fr, p) != valid_in_frame(fr, f).valid;
  });
  rep.frames_checked = all.frames_examined;
  if (!all.frame) return rep;
  rep.holds = false;
  ScanResult a = scan_frames(n, FrameClassSpec{}, false, [&](const Frame& fr) {
    return check_property(fr, p) && !valid_in_frame(fr, f).valid;
  });
  if (a.frame) rep.in_class_refuting = countermodel_on(*a.frame, f, Variant::New);
  ScanResult b = scan_frames(n, FrameClassSpec{}, false, [&](const Frame& fr) {
    return !check_property(fr, p) && valid_in_frame(fr, f).valid;
  });
  rep.outside_validating = b.frame;
  return rep;
}

bool RulePreservationReport::all_preserved() const {
  return std::all_of(entries.begin(), entries.end(), [](const auto& e) { return e.preserved(); });
}

RulePreservationReport rule_preservation_check(int n, const std::vector<Formula>& pool_in) {
  const std::vector<Formula> pool =
      pool_in.empty() ? std::vector<Formula>{Formula::atom("p"), Formula::atom("q"), Formula::atom("r")} : pool_in;
  const std::size_t m = pool.size();

  // instances[rule][i]: (premise, conclusion) pairs with pool[i] in the A position.
  struct Instance {
    Formula premise, conclusion;
  };
  static const char* kRules[] = {"R1", "R2", "R3", "R4"};
  std::vector<std::vector<std::vector<Instance>>> inst(4, std::vector<std::vector<Instance>>(m));
  for (std::size_t i = 0; i < m; ++i) {
    const Formula& a = pool[i];
    inst[0][i].push_back({a, Formula::box(a)});
    for (const auto& b : pool) {
      inst[1][i].push_back({Formula::impl(a, b), Formula::impl(Formula::dia(a), Formula::dia(b))});
      inst[3][i].push_back({Formula::impl(a, b), Formula::impl(Formula::box(a), Formula::box(b))});
      for (const auto& c : pool)
        inst[2][i].push_back(
            {Formula::impl(Formula::dia(a), Formula::disj(b, Formula::box(Formula::impl(a, c)))),
             Formula::impl(Formula::dia(a), Formula::disj(b, Formula::dia(c)))});
    }
  }

  RulePreservationReport rep;
  for (int r = 0; r < 4; ++r)
    for (std::size_t i = 0; i < m; ++i) {
      RulePreservationEntry e{kRules[r], pool[i], 0, 0, 0, std::nullopt, std::nullopt};
      e.instances = static_cast<int>(inst[r][i].size());
      rep.entries.push_back(std::move(e));
    }

  std::mutex mu;
  ScanResult scan = scan_frames(n, FrameClassSpec{}, true, [&](const Frame& fr) {
    std::unordered_map<Formula, bool, FormulaHash> cache;
    auto valid = [&](const Formula& f) {
      auto it = cache.find(f);
      if (it != cache.end()) return it->second;
      bool v = valid_in_frame(fr, f).valid;
      cache.emplace(f, v);
      return v;
    };
    std::vector<std::pair<std::uint64_t, std::uint64_t>> local(rep.entries.size());
    std::vector<std::optional<Formula>> bad(rep.entries.size());
    for (int r = 0; r < 4; ++r)
      for (std::size_t i = 0; i < m; ++i) {
        const std::size_t idx = r * m + i;
        for (const auto& in : inst[r][i]) {
          if (!valid(in.premise)) continue;
          ++local[idx].first;
          if (!valid(in.conclusion)) {
            ++local[idx].second;
            if (!bad[idx]) bad[idx] = in.premise;
          }
        }
      }
    std::lock_guard lock(mu);
    for (std::size_t idx = 0; idx < local.size(); ++idx) {
      auto& e = rep.entries[idx];
      e.premise_valid += local[idx].first;
      e.violations += local[idx].second;
      if (bad[idx] && (!e.violating_frame || frame_less(fr, *e.violating_frame))) {
        e.violating_frame = fr;
        e.violating_premise = bad[idx];
      }
    }
    return false;
  });
  rep.frames = scan.frames_examined;
  return rep;
}

InclusionProbe logic_inclusion_probe(const Formula& f, const FrameClassSpec& spec1,
                                     const std::optional<FrameClassSpec>& spec2, int n) {
  InclusionProbe probe;
  SearchBudget budget;
  budget.max_states = n;
  if (spec2) {
    SearchOutcome o2 = countermodel_search(f, *spec2, budget);
    probe.valid_on_spec2 = !o2.countermodel.has_value();
    probe.spec2_refutation = o2.countermodel;
  }
  probe.spec1_refutation = countermodel_search(f, spec1, budget).countermodel;
  return probe;
}

AgreementReport compare_by_formulas(const Model& m1, const Model& m2, const std::vector<std::string>& atom_names,
                                    int max_depth) {
  if (m1.size() != m2.size()) throw PreconditionFailed("models must have the same number of states");
  const Frame& f1 = m1.frame();
  const Frame& f2 = m2.frame();
  using Pair = std::pair<StateSet, StateSet>;
  std::set<Pair> seen;
  std::vector<std::pair<Pair, Formula>> known;
  std::vector<std::pair<Pair, Formula>> frontier;
  AgreementReport rep;

  auto add = [&](Pair p, const Formula& f, std::vector<std::pair<Pair, Formula>>& into) {
    if (!seen.insert(p).second) return true;
    into.emplace_back(p, f);
    if (p.first != p.second) {
      rep.agree = false;
      rep.witness = f;
      return false;
    }
    return true;
  };

  const StateSet all = all_states(m1.size());
  bool go = add({all, all}, Formula::top(), frontier) && add({0, 0}, Formula::bot(), frontier);
  for (const auto& a : atom_names) {
    if (!go) break;
    go = add({m1.valuation(a), m2.valuation(a)}, Formula::atom(a), frontier);
  }
  while (go) {
    known.insert(known.end(), frontier.begin(), frontier.end());
    if (frontier.empty()) {
      rep.saturated = true;
      break;
    }
    if (max_depth >= 0 && rep.depth >= max_depth) break;
    ++rep.depth;
    std::vector<std::pair<Pair, Formula>> fresh;
    auto un = [&](Kind k, const std::pair<Pair, Formula>& x) {
      Pair p{apply_connective(k, f1, x.first.first, 0), apply_connective(k, f2, x.first.second, 0)};
      return add(p, k == Kind::Box ? Formula::box(x.second) : Formula::dia(x.second), fresh);
    };
    auto bin = [&](Kind k, const std::pair<Pair, Formula>& x, const std::pair<Pair, Formula>& y) {
      Pair p{apply_connective(k, f1, x.first.first, y.first.first),
             apply_connective(k, f2, x.first.second, y.first.second)};
      Formula f = k == Kind::And  ? Formula::conj(x.second, y.second)
                  : k == Kind::Or ? Formula::disj(x.second, y.second)
                                  : Formula::impl(x.second, y.second);
      return add(p, f, fresh);
    };
    const std::size_t old_end = known.size() - frontier.size();
    for (std::size_t i = old_end; i < known.size() && go; ++i)
      go = un(Kind::Box, known[i]) && un(Kind::Dia, known[i]);
    for (std::size_t i = 0; i < known.size() && go; ++i)
      for (std::size_t j = (i < old_end ? old_end : 0); j < known.size() && go; ++j)
        for (Kind k : {Kind::And, Kind::Or, Kind::Impl})
          if (!(go = bin(k, known[i], known[j]))) break;
    frontier = std::move(fresh);
  }
  return rep;
}

AgreementReport frames_agree(const Frame& f1, const Frame& f2, const std::vector<std::string>& atom_names,
                             int max_depth) {
  if (f1.size() != f2.size() || !(f1.le() == f2.le()))
    throw PreconditionFailed("frames must share their states and relation <=");
  const std::vector<StateSet> ups = up_sets(f1);
  const std::size_t na = atom_names.size();
  std::vector<std::size_t> idx(na, 0);
  AgreementReport last;
  while (true) {
    std::map<std::string, StateSet> val;
    for (std::size_t i = 0; i < na; ++i) val[atom_names[i]] = ups[idx[i]];
    AgreementReport rep = compare_by_formulas(Model(f1, val), Model(f2, val), atom_names, max_depth);
    if (!rep.agree) {
      rep.valuation = val;
      return rep;
    }
    if (last.depth < rep.depth) last.depth = rep.depth;
    last.saturated = (idx == std::vector<std::size_t>(na, 0)) ? rep.saturated : (last.saturated && rep.saturated);
    std::size_t pos = na;
    while (pos > 0) {
      --pos;
      if (++idx[pos] < ups.size()) break;
      idx[pos] = 0;
      if (pos == 0) return last;
    }
    if (na == 0) return last;
  }
}

}  // namespace imlkit
