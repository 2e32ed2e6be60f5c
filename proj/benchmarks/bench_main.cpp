#include <benchmark/benchmark.h>

#include "imlkit/decide.hpp"
#include "imlkit/filtration.hpp"
#include "imlkit/formula.hpp"
#include "imlkit/proofsys.hpp"
#include "imlkit/semantics.hpp"

using namespace imlkit;

namespace {

const char* kTenAtom = "<>(g & (b -> c) & h & i & (e -> j)) -> <>(b & g & (b -> c) & h & i & (e -> j)) | d";

void BM_Parse(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(parse(kTenAtom));
}
BENCHMARK(BM_Parse);

void BM_PrintRoundTrip(benchmark::State& state) {
  Formula f = parse(kTenAtom);
  for (auto _ : state) benchmark::DoNotOptimize(parse(print(f)));
}
BENCHMARK(BM_PrintRoundTrip);

// Discrete three-state frame with a cyclic R: eight up-sets per atom.
Frame cycle3() { return Frame(Relation::identity(3), Relation::from_pairs(3, {{0, 1}, {1, 2}, {2, 0}})); }

void BM_ValidInFrame(benchmark::State& state) {
  Frame f = cycle3();
  const std::vector<const char*> formulas = {"[](p|q)->((<>p->[]q)->[]q)", "<>(p&q&r&s)-><>p",
                                             "<>(p&q&r&s&t)-><>(p&t)"};
  Formula a = parse(formulas[static_cast<std::size_t>(state.range(0))]);
  for (auto _ : state) benchmark::DoNotOptimize(valid_in_frame(f, a));
  state.SetLabel(std::to_string(atoms(a).size()) + " atoms");
}
BENCHMARK(BM_ValidInFrame)->DenseRange(0, 2);

void BM_CountermodelSearchValid(benchmark::State& state) {
  Formula a = schema("A2");
  for (auto _ : state)
    benchmark::DoNotOptimize(
        countermodel_search(a, FrameClassSpec{}, {.max_states = static_cast<int>(state.range(0)), .threads = 1}));
}
BENCHMARK(BM_CountermodelSearchValid)->DenseRange(2, 3)->Unit(benchmark::kMillisecond);

void BM_CountermodelSearchRefuted(benchmark::State& state) {
  Formula a = parse("<>(p->q)->([]p-><>q)");
  for (auto _ : state) benchmark::DoNotOptimize(countermodel_search(a, FrameClassSpec{}, {.max_states = 3}));
}
BENCHMARK(BM_CountermodelSearchRefuted)->Unit(benchmark::kMicrosecond);

void BM_EnumerateFrames(benchmark::State& state) {
  for (auto _ : state) {
    std::uint64_t n = 0;
    for_each_frame(static_cast<int>(state.range(0)), FrameClassSpec{}, state.range(1) != 0, [&](const Frame&) {
      ++n;
      return true;
    });
    benchmark::DoNotOptimize(n);
  }
}
BENCHMARK(BM_EnumerateFrames)->Args({3, 0})->Args({3, 1})->Unit(benchmark::kMillisecond);

void BM_IplProve(benchmark::State& state) {
  const std::vector<std::pair<std::vector<const char*>, const char*>> goals = {
      {{}, "((p->q)->p)->p"},
      {{}, "~~(p|~p)"},
      {{"<>p->[]q|r", "[]q->s"}, "<>p->s|r"},
      {{}, "((p|q)->r)->((p->r)&(q->r))"}};
  const auto& [prem_text, goal_text] = goals[static_cast<std::size_t>(state.range(0))];
  std::vector<Formula> prem;
  for (const char* p : prem_text) prem.push_back(parse(p));
  Formula goal = parse(goal_text);
  for (auto _ : state) benchmark::DoNotOptimize(ipl_prove(prem, goal));
}
BENCHMARK(BM_IplProve)->DenseRange(0, 3);

void BM_SmallestFiltration(benchmark::State& state) {
  const int n = 6;
  Relation le = Relation::identity(n);
  for (int s = 0; s + 2 < n; ++s) le.set(s, s + 2);
  Frame f(rt_closure(le), Relation::from_pairs(n, {{0, 1}, {2, 3}, {4, 5}}));
  Model m(f, {{"p", bit(5)}});
  FormulaSet sigma = closure(parse("~<>~p->[]p"));
  for (auto _ : state) benchmark::DoNotOptimize(smallest_filtration(m, sigma));
}
BENCHMARK(BM_SmallestFiltration);

}  // namespace
BENCHMARK_MAIN();
