#include <benchmark/benchmark.h>

#include <random>

#include "pegg/powerfilter.hpp"
#include "pegg/residue_tables.hpp"
#include "pegg/search.hpp"

using namespace pegg;

namespace {

TableSet& tables() {
  static TableSet t([] {
    TableOptions o;
    o.profile = TableProfile::compact;
    o.compact_cap_bytes = 8 * kMiB;
    return o;
  }());
  return t;
}

SearchConfig cfg(int log2) {
  SearchConfig c;
  c.exps = {3, 3, 4};
  c.s_max = Natural(1) << log2;
  c.V = 2;
  return c;
}

void BM_search_all_serial(benchmark::State& st) {
  const auto c = cfg(static_cast<int>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(search_all_serial(c, tables()));
}

void BM_search_all_omp(benchmark::State& st) {
  const auto c = cfg(static_cast<int>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(search_all(c, tables()));
}

TableSpec skip_spec() {
  TableSpec s;
  s.exps = {3, 3, 4};
  s.perm = Permutation::ax_minus_cz;
  s.skip_factors = {13, 19, 31};
  return s;
}

void BM_skip_build_serial(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(build_skipahead_table_serial(skip_spec()));
}

void BM_skip_build_omp(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(build_skipahead_table(skip_spec()));
}

void power_test(benchmark::State& st, FlagLayout layout) {
  const auto f = build_filter(3, default_moduli(3), {}, layout);
  gmp_randclass rnd(gmp_randinit_default);
  rnd.seed(7);
  std::vector<Natural> in;
  for (int i = 0; i < 4096; ++i) in.push_back(rnd.get_z_bits(160));
  std::size_t hits = 0;
  for (auto _ : st)
    for (const auto& n : in) hits += is_kth_power_filtered(f, n);
  benchmark::DoNotOptimize(hits);
  st.SetItemsProcessed(st.iterations() * static_cast<std::int64_t>(in.size()));
}

void BM_power_test_bytes(benchmark::State& st) { power_test(st, FlagLayout::bytes); }
void BM_power_test_bits(benchmark::State& st) { power_test(st, FlagLayout::bits); }

}  // namespace

BENCHMARK(BM_search_all_serial)->Arg(30)->Arg(34)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_search_all_omp)->Arg(30)->Arg(34)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_skip_build_serial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_skip_build_omp)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_power_test_bytes);
BENCHMARK(BM_power_test_bits);

BENCHMARK_MAIN();
