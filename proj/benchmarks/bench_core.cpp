#include <benchmark/benchmark.h>

#include "fusionlab/certificate.hpp"
#include "fusionlab/engine.hpp"
#include "fusionlab/measure.hpp"
#include "fusionlab/space.hpp"

#include <fstream>
#include <random>
#include <sstream>

using namespace fusionlab;

namespace {

ClopenSet random_set(std::mt19937_64& rng, std::uint32_t ks, std::uint32_t js, int cylinders) {
  ClopenSet out;
  for (int i = 0; i < cylinders; ++i) {
    std::map<Coord, bool> c;
    for (int t = 0; t < 4; ++t) c[{static_cast<std::uint32_t>(rng() % ks), static_cast<std::uint32_t>(rng() % js)}] = rng() & 1u;
    out = out | ClopenSet::cylinder(c);
  }
  return out;
}

std::string read_family(const char* name) {
  std::ifstream in(std::string(FUSIONLAB_FAMILIES_DIR) + "/" + name);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string solve(const std::string& source, Mode mode, std::uint64_t stages) {
  SolveRequest r;
  r.source = source;
  r.mode = mode;
  r.options.stages = stages;
  r.bits = 4;
  return solve_request(r).certificate;
}

} // namespace

static void BM_Union(benchmark::State& state) {
  std::mt19937_64 rng(1);
  const auto js = static_cast<std::uint32_t>(state.range(0));
  const ClopenSet a = random_set(rng, 4, js, 12);
  const ClopenSet b = random_set(rng, 4, js, 12);
  for (auto _ : state) benchmark::DoNotOptimize(a | b);
  state.counters["bits"] = static_cast<double>((a | b).support().size());
}
BENCHMARK(BM_Union)->Arg(2)->Arg(4)->Arg(5);

static void BM_Measure(benchmark::State& state) {
  std::mt19937_64 rng(2);
  const ClopenSet a = random_set(rng, 4, 4, 16);
  for (auto _ : state) benchmark::DoNotOptimize(measure(a));
}
BENCHMARK(BM_Measure);

static void BM_Resolution(benchmark::State& state) {
  std::mt19937_64 rng(3);
  const ClopenSet a = random_set(rng, 4, 5, 16);
  for (auto _ : state) benchmark::DoNotOptimize(resolution(a));
}
BENCHMARK(BM_Resolution);

static void BM_SolveBinary(benchmark::State& state) {
  const std::string source = read_family("mixed.fam");
  for (auto _ : state) benchmark::DoNotOptimize(solve(source, Mode::Binary, static_cast<std::uint64_t>(state.range(0))));
}
BENCHMARK(BM_SolveBinary)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);

static void BM_SolveCantor(benchmark::State& state) {
  const std::string source = read_family("cantor.fam");
  for (auto _ : state) benchmark::DoNotOptimize(solve(source, Mode::Cantor, 8));
}
BENCHMARK(BM_SolveCantor)->Unit(benchmark::kMillisecond);

static void BM_Verify(benchmark::State& state) {
  const std::string cert = solve(read_family("mixed.fam"), Mode::Binary, 8);
  for (auto _ : state) benchmark::DoNotOptimize(verify_certificate(cert));
}
BENCHMARK(BM_Verify)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
