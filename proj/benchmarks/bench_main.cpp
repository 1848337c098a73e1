#include <benchmark/benchmark.h>

#include <vector>

#include "biortho/biortho.hpp"

using namespace biortho;

namespace {

KGState make_kg(int n, std::uint64_t seed) {
  GridSpec g(n, 0.5);
  MomentumLayout layout(g);
  Dispersion d(1.0);
  Rng rng(seed);
  KGState s = KGState::zeros(layout, d);
  for (auto e : kFrequencySigns) s.component(e).samples = wavepacket_samples(layout, random_packets(rng, {}));
  return s;
}

PhotonState make_photon(int n, std::uint64_t seed) {
  MomentumLayout layout(GridSpec(n, 0.5));
  Rng rng(seed);
  std::vector<SpectralField> f;
  for (auto e : kFrequencySigns)
    for (auto h : kHelicities) f.emplace_back(layout, wavepacket_samples(layout, random_packets(rng, {})), e, h);
  return PhotonState(std::move(f));
}

void BM_ToPosition(benchmark::State& st) {
  GridSpec g(int(st.range(0)), 0.5);
  std::vector<Complex> a(g.size(), Complex(1.0, 0.5));
  for (auto _ : st) benchmark::DoNotOptimize(to_position(g, a, FrequencySign::positive));
}
BENCHMARK(BM_ToPosition)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);

void BM_Synthesize(benchmark::State& st) {
  auto s = make_kg(int(st.range(0)), 1);
  for (auto _ : st) benchmark::DoNotOptimize(synthesize(s.c_plus(), s.disp(), 1.0));
}
BENCHMARK(BM_Synthesize)->Arg(16)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);

void BM_KGScalarProduct(benchmark::State& st) {
  auto a = make_kg(int(st.range(0)), 1), b = make_kg(int(st.range(0)), 2);
  for (auto _ : st) benchmark::DoNotOptimize(kg_scalar_product(a, b));
}
BENCHMARK(BM_KGScalarProduct)->Arg(32)->Arg(64)->Unit(benchmark::kMicrosecond);

void BM_KGDensity(benchmark::State& st) {
  auto s = make_kg(int(st.range(0)), 3);
  for (auto _ : st) benchmark::DoNotOptimize(probability_density(s, 0.5));
}
BENCHMARK(BM_KGDensity)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);

void BM_PhotonDensity(benchmark::State& st) {
  auto s = make_photon(int(st.range(0)), 4);
  for (auto _ : st) benchmark::DoNotOptimize(photon_probability_density(s, 0.5));
}
BENCHMARK(BM_PhotonDensity)->Arg(32)->Unit(benchmark::kMillisecond);

void BM_EmittedWavefunction(benchmark::State& st) {
  const double t = 100.0, W = 0.5;
  auto m = EmissionModel::with_window(1.0, CVec3(1.0, 0.0, 0.0), 1.0, W, EmissionModel::radial_nodes_for(W, t, 2 * t), 4, 6);
  std::vector<Vec3> pts;
  for (int i = 0; i < st.range(0); ++i) pts.emplace_back(0.3 * i, 0.2 * i, 0.1 * i);
  for (auto _ : st) benchmark::DoNotOptimize(emitted_wavefunction(m, Helicity::plus, t, pts));
  st.SetItemsProcessed(st.iterations() * st.range(0));
}
BENCHMARK(BM_EmittedWavefunction)->Arg(64)->Arg(512)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
