// Copyright 2026 The sparsediv Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <benchmark/benchmark.h>

#include "sparsediv/apinterp.hpp"
#include "sparsediv/bench.hpp"
#include "sparsediv/ffinterp.hpp"
#include "sparsediv/fft.hpp"

namespace {

using namespace sparsediv;

const PrimeField kF61(bench::kDefaultQ);

InterpConfig config(std::uint64_t terms, unsigned log2d) {
  InterpConfig cfg;
  cfg.terms = terms;
  cfg.degree_bound = BigInt(1) << log2d;
  return cfg;
}

void BM_Dft(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  std::vector<Complex> v(n, Complex{1.0, 0.5});
  const Dft& plan = dft_plan(n);
  for (auto _ : state) {
    plan.transform(v, -1);
    benchmark::DoNotOptimize(v.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n));
}
BENCHMARK(BM_Dft)->Arg(1009)->Arg(1024)->Arg(4099)->Arg(65521)->Arg(65537);

void BM_FqProbe(benchmark::State& state) {
  const auto T = static_cast<std::uint64_t>(state.range(0));
  const SparseFqBackend box(kF61, bench::gen_ff(kF61, T, BigInt(1) << 32, 1));
  const std::uint64_t p = primes_from(lambda_bound(T, BigInt(1) << 32), 1).front();
  Rng rng(2);
  for (auto _ : state) benchmark::DoNotOptimize(box.probe(p, kF61.random_nonzero(rng)));
}
BENCHMARK(BM_FqProbe)->Arg(10)->Arg(40);

void BM_ApproxProbe(benchmark::State& state) {
  const auto f = bench::gen_approx(50, BigInt(1) << 20, 0.01, 1);
  const EpsApproxBox box(f, 1e-9, 1);
  const std::uint64_t p = primes_from(lambda_bound(50, BigInt(1) << 20), 1).front();
  for (auto _ : state) benchmark::DoNotOptimize(approx_remainder(box, p, RootOfUnity{}));
}
BENCHMARK(BM_ApproxProbe)->Unit(benchmark::kMillisecond);

template <InterpResult (*Interp)(const FqBlackBox&, const InterpConfig&, Rng&)>
void BM_Interp(benchmark::State& state) {
  const auto T = static_cast<std::uint64_t>(state.range(0));
  const auto log2d = static_cast<unsigned>(state.range(1));
  const auto f = bench::gen_ff(kF61, T, BigInt(1) << log2d, 3);
  const SparseFqBackend box(kF61, f);
  Rng rng(4);
  std::uint64_t probes = 0;
  for (auto _ : state) {
    const InterpResult r = Interp(box, config(T, log2d), rng);
    probes += r.stats.probes;
    benchmark::DoNotOptimize(r.poly);
  }
  state.counters["probes"] = benchmark::Counter(static_cast<double>(probes), benchmark::Counter::kAvgIterations);
}

InterpResult mc(const FqBlackBox& b, const InterpConfig& c, Rng& r) { return interpolate_mc(b, c, r); }
InterpResult adaptive(const FqBlackBox& b, const InterpConfig& c, Rng& r) { return interpolate_adaptive(b, c, r); }
InterpResult gs(const FqBlackBox& b, const InterpConfig& c, Rng& r) { return gs_interpolate_mc(b, c, r); }

#define INTERP_ARGS ->Args({10, 20})->Args({20, 24})->Args({40, 32})->Unit(benchmark::kMillisecond)
BENCHMARK(BM_Interp<mc>)->Name("BM_Alg1") INTERP_ARGS;
BENCHMARK(BM_Interp<adaptive>)->Name("BM_Alg1pp") INTERP_ARGS;
BENCHMARK(BM_Interp<gs>)->Name("BM_Gsmc") INTERP_ARGS;

}  // namespace
BENCHMARK_MAIN();
