// Microbenchmarks for assembly, linear solves and time stepping.

#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

#include "kuz/analysis.hpp"
#include "kuz/assembly.hpp"
#include "kuz/fe_space.hpp"
#include "kuz/mesh.hpp"
#include "kuz/solvers.hpp"
#include "kuz/stepper.hpp"

namespace {

kuz::FeSpace unit_space(int nx, int k) { return {kuz::build_rect_mesh({}, nx, nx), k}; }

std::vector<double> wave(const kuz::FeSpace& s) {
  std::vector<double> w(s.num_dofs());
  for (std::size_t i = 0; i < w.size(); ++i) {
    const auto p = s.dof_coords()[i];
    w[i] = std::sin(M_PI * p.x) * std::sin(M_PI * p.y);
  }
  return w;
}

void BM_AssembleMass(benchmark::State& st) {
  const auto s = unit_space(static_cast<int>(st.range(0)), static_cast<int>(st.range(1)));
  for (auto _ : st) benchmark::DoNotOptimize(kuz::assemble_mass(s, std::nullopt, kuz::DofSet::kFree));
  st.counters["dofs"] = static_cast<double>(s.num_free());
}
BENCHMARK(BM_AssembleMass)->ArgsProduct({{16, 32, 64}, {1, 2, 3}})->Unit(benchmark::kMillisecond);

void BM_AssembleStiffness(benchmark::State& st) {
  const auto s = unit_space(static_cast<int>(st.range(0)), 2);
  for (auto _ : st) benchmark::DoNotOptimize(kuz::assemble_stiffness(s, kuz::DofSet::kFree));
}
BENCHMARK(BM_AssembleStiffness)->Arg(16)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);

void BM_AssembleConvection(benchmark::State& st) {
  const auto s = unit_space(static_cast<int>(st.range(0)), 2);
  const auto w = wave(s);
  for (auto _ : st) benchmark::DoNotOptimize(kuz::assemble_convection(s, w, kuz::DofSet::kFree));
}
BENCHMARK(BM_AssembleConvection)->Arg(16)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);

kuz::SparseMatrix step_like_matrix(const kuz::FeSpace& s) {
  const auto m = kuz::assemble_mass(s, std::nullopt, kuz::DofSet::kFree);
  const auto a = kuz::assemble_stiffness(s, kuz::DofSet::kFree);
  auto sum = m;
  for (std::size_t i = 0; i < sum.nnz(); ++i) sum.values()[i] += 1e-3 * a.values()[i];
  return sum;
}

void BM_SolveDirect(benchmark::State& st) {
  const auto s = unit_space(static_cast<int>(st.range(0)), 2);
  const auto a = step_like_matrix(s);
  const std::vector<double> b(a.size(), 1.0);
  for (auto _ : st) benchmark::DoNotOptimize(kuz::solve_direct(a, b));
}
BENCHMARK(BM_SolveDirect)->Arg(16)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);

void BM_SolveIterative(benchmark::State& st) {
  const auto s = unit_space(static_cast<int>(st.range(0)), 2);
  const auto a = step_like_matrix(s);
  const std::vector<double> b(a.size(), 1.0), x0(a.size(), 0.0);
  for (auto _ : st) benchmark::DoNotOptimize(kuz::solve_iterative(a, b, x0, 1e-10, 2000));
}
BENCHMARK(BM_SolveIterative)->Arg(16)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);

void BM_Step(benchmark::State& st) {
  const auto s = unit_space(static_cast<int>(st.range(0)), 2);
  kuz::ModelParams p{.kappa = 0.7, .c2 = 1.0, .beta = 1e-3, .ell = 2.0};
  p.forcing = kuz::manufactured_forcing(p, 0.1, 0.5);
  const double tau = 1.5e-3;
  kuz::Stepper stepper(s, p, tau);
  auto state = kuz::initial_state(s, p, kuz::ManufacturedSolution{0.1, 0.5}.initial_data(), tau);
  for (auto _ : st) stepper.step(state);
}
BENCHMARK(BM_Step)->Arg(16)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
