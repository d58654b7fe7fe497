#include <benchmark/benchmark.h>

#include <filesystem>
#include <random>
#include <vector>

#include "dvp/driver.hpp"
#include "dvp/io.hpp"
#include "dvp/probe.hpp"
#include "dvp/verify.hpp"

namespace {

const std::filesystem::path kData = DVP_BENCH_DATA_DIR;

dvp::MaterialParams table1() { return dvp::io::load_material(kData / "materials" / "table1.json"); }

dvp::Program axial(double strain) {
  dvp::LoadingSegment seg;
  seg.duration = strain / 100.0;
  seg.controls[0] = {dvp::ControlKind::StrainRate, 100.0};
  return {seg};
}

void BM_DistanceToScaled(benchmark::State& state) {
  const dvp::geometry::ArcBoundary egg = dvp::io::load_shape(kData / "shapes" / "egg.json");
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<dvp::geometry::Vec2> ys(1024);
  for (auto& y : ys) y = dvp::geometry::polar(3.0 * u(rng), 3.14159 * u(rng));
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(dvp::geometry::distance_to_scaled(egg, 0.7, ys[i++ & 1023]));
  }
}
BENCHMARK(BM_DistanceToScaled);

void BM_Evaluate(benchmark::State& state) {
  const dvp::MaterialParams params = table1();
  std::mt19937_64 rng(2);
  std::vector<dvp::verify::PlasticSample> samples;
  for (int i = 0; i < 256; ++i) samples.push_back(dvp::verify::random_plastic_state(params, rng));
  std::size_t i = 0;
  for (auto _ : state) {
    const auto& s = samples[i++ & 255];
    benchmark::DoNotOptimize(dvp::evaluate(params, s.state, s.eps));
  }
}
BENCHMARK(BM_Evaluate);

void BM_AxialPrestrain(benchmark::State& state) {
  const dvp::MaterialParams params = table1();
  const dvp::Program program = axial(1e-3 * static_cast<double>(state.range(0)));
  std::size_t steps = 0;
  for (auto _ : state) {
    const dvp::Trajectory tr = dvp::run(params, {}, program, {0.0, 1000000000});
    steps += tr.steps;
  }
  state.counters["steps/s"] = benchmark::Counter(static_cast<double>(steps), benchmark::Counter::kIsRate);
}
BENCHMARK(BM_AxialPrestrain)->Arg(2)->Arg(20)->Unit(benchmark::kMillisecond);

void BM_Locus(benchmark::State& state) {
  const dvp::MaterialParams params = table1();
  const dvp::MaterialState st = dvp::run(params, {}, axial(0.02), {0.0, 1000000000}).final_state;
  for (auto _ : state) {
    benchmark::DoNotOptimize(dvp::probe::locus(params, st, dvp::probe::Plane::AxialTorsion, 0.0, 0.0,
                                               static_cast<std::size_t>(state.range(0))));
  }
}
BENCHMARK(BM_Locus)->Arg(360)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
