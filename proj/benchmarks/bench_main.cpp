#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "simplex_mle/simplex_mle.hpp"

using namespace simplex_mle;

namespace {

ConstraintModel qin_lawless() {
  Alphabet a(std::vector<double>{-2, -1, 0, 1, 2});
  return ConstraintModel(a, qin_lawless_generator(a)(0.0));
}

ConstraintModel gap_model() {
  Alphabet a(std::vector<double>{-1, 1, 10});
  return ConstraintModel(a, {ConstraintRow{{-1, 1, 10}, 0.0, RowKind::Equality}});
}

ConstraintModel wide_model(std::size_t m) {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  std::vector<double> labels(m);
  for (std::size_t i = 0; i < m; ++i) labels[i] = double(i);
  std::vector<double> u(m);
  for (double& v : u) v = unif(rng);
  Alphabet a(labels);
  return ConstraintModel(a, {ConstraintRow{u, 0.0, RowKind::Equality}});
}

TypeVector wide_type(std::size_t m) {
  std::mt19937 rng(8);
  std::uniform_real_distribution<double> unif(0.1, 1.0);
  std::vector<double> nu(m);
  double total = 0.0;
  for (double& v : nu) {
    v = unif(rng);
    total += v;
  }
  for (double& v : nu) v /= total;
  return TypeVector(nu);
}

void BM_SmithSolvePerturbed(benchmark::State& state) {
  auto model = qin_lawless();
  auto schedule = PerturbationSchedule::default_schedule();
  auto nu = perturb_type(TypeVector({0.0, 0.0, 0.7, 0.3, 0.0}), 1e-5, schedule);
  for (auto _ : state) benchmark::DoNotOptimize(smith_solve(model, nu));
}
BENCHMARK(BM_SmithSolvePerturbed);

void BM_PPSolveGap(benchmark::State& state) {
  auto model = gap_model();
  TypeVector nu({0.6, 0.4, 0.0});
  for (auto _ : state) benchmark::DoNotOptimize(pp_solve(model, nu));
}
BENCHMARK(BM_PPSolveGap);

void BM_SupportCheck(benchmark::State& state) {
  auto model = wide_model(std::size_t(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(support_check(model));
}
BENCHMARK(BM_SupportCheck)->Arg(10)->Arg(50)->Arg(100);

void BM_Classify(benchmark::State& state) {
  auto model = gap_model();
  TypeVector nu({0.6, 0.4, 0.0});
  for (auto _ : state) benchmark::DoNotOptimize(classify(model, nu));
}
BENCHMARK(BM_Classify);

void BM_Conjugate(benchmark::State& state) {
  std::size_t m = std::size_t(state.range(0));
  auto nu = wide_type(m);
  std::mt19937 rng(9);
  std::uniform_real_distribution<double> unif(-2.0, 2.0);
  std::vector<double> z(m);
  for (double& v : z) v = unif(rng);
  for (auto _ : state) benchmark::DoNotOptimize(conjugate(nu, z));
}
BENCHMARK(BM_Conjugate)->Arg(10)->Arg(1000);

void BM_ELSolve(benchmark::State& state) {
  Alphabet a(std::vector<double>{-2, -1, 0, 1, 2});
  ConstraintModel model(a, second_moment_generator(a)(1.01));
  TypeVector nu({0.6, 0.3, 0.0, 0.0, 0.1});
  for (auto _ : state) benchmark::DoNotOptimize(el_solve(model, nu));
}
BENCHMARK(BM_ELSolve);

}  // namespace

BENCHMARK_MAIN();
