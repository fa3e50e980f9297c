#include <benchmark/benchmark.h>

#include "carnotcut/cutlocus.hpp"
#include "carnotcut/hamiltonian.hpp"
#include "carnotcut/scalars.hpp"
#include "carnotcut/solver.hpp"

namespace {

using namespace carnotcut;

void BM_ExpMapClosedForm(benchmark::State& state) {
  const Covector p0{Vec3{0.6, -0.2, 0.5}, Vec3{0.3, 1.1, -0.7}};
  for (auto _ : state) benchmark::DoNotOptimize(exp_map(p0, 1.0));
}
BENCHMARK(BM_ExpMapClosedForm);

void BM_ExpMapOde(benchmark::State& state) {
  const Covector p0{Vec3{0.6, -0.2, 0.5}, Vec3{0.3, 1.1, -0.7}};
  const int steps = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(exp_map_ode(p0, 1.0, steps));
}
BENCHMARK(BM_ExpMapOde)->Arg(100)->Arg(1000);

void BM_PInv(benchmark::State& state) {
  double v = 0.1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(sf::P_inv(v));
    v = v < 50.0 ? v * 1.7 : 0.1;
  }
}
BENCHMARK(BM_PInv);

void BM_QInv(benchmark::State& state) {
  double v = 0.1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(sf::Q_inv(v));
    v = v < 50.0 ? v * 1.7 : 0.1;
  }
}
BENCHMARK(BM_QInv);

void BM_CutDistance(benchmark::State& state) {
  const Bivec3 t{0.5, 0.2, -0.1};
  const GroupPoint p{support_normal(t) * 0.8, t};
  for (auto _ : state) benchmark::DoNotOptimize(cut_distance(CutPoint(p)));
}
BENCHMARK(BM_CutDistance);

void BM_ShootingDistance(benchmark::State& state) {
  const GroupPoint target{Vec3{0.3, -0.2, 0.9}, Bivec3{0.5, 0.1, -0.3}};
  ShootingConfig cfg;
  cfg.threads = 1;
  for (auto _ : state) benchmark::DoNotOptimize(distance(target, cfg));
}
BENCHMARK(BM_ShootingDistance);

}  // namespace

BENCHMARK_MAIN();
