#include <benchmark/benchmark.h>

#include "dualcert/certify.hpp"
#include "dualcert/dual.hpp"
#include "dualcert/instance.hpp"
#include "dualcert/primal.hpp"
#include "dualcert/rng.hpp"

namespace {

using namespace dualcert;

ProblemInstance bench_instance(Eigen::Index n, Eigen::Index N) {
  return generate_random(12345, n, N, CaseTarget::unbiased);
}

void BM_primal_value(benchmark::State& state) {
  const auto inst = bench_instance(state.range(0), 4);
  SampleRng rng(1, 1, 0);
  const Eigen::VectorXd x = rng.normal_vector(inst.dim);
  for (auto _ : state) benchmark::DoNotOptimize(primal_value(inst, x));
}
BENCHMARK(BM_primal_value)->Arg(16)->Arg(64)->Arg(256);

void BM_primal_gradient(benchmark::State& state) {
  const auto inst = bench_instance(state.range(0), 4);
  SampleRng rng(1, 1, 0);
  const Eigen::VectorXd x = rng.normal_vector(inst.dim);
  for (auto _ : state) benchmark::DoNotOptimize(primal_gradient(inst, x));
}
BENCHMARK(BM_primal_gradient)->Arg(16)->Arg(64)->Arg(256);

void BM_primal_hessian(benchmark::State& state) {
  const auto inst = bench_instance(state.range(0), 4);
  SampleRng rng(1, 1, 0);
  const Eigen::VectorXd x = rng.normal_vector(inst.dim);
  for (auto _ : state) benchmark::DoNotOptimize(primal_hessian(inst, x));
}
BENCHMARK(BM_primal_hessian)->Arg(16)->Arg(64)->Arg(256);

void BM_find_critical_point(benchmark::State& state) {
  const auto inst = bench_instance(state.range(0), 2);
  SampleRng rng(1, 2, 0);
  const Eigen::VectorXd x_init = rng.normal_vector(inst.dim);
  for (auto _ : state) benchmark::DoNotOptimize(find_critical_point(inst, x_init));
}
BENCHMARK(BM_find_critical_point)->Arg(4)->Arg(16)->Arg(64);

void BM_dual_value(benchmark::State& state) {
  const auto inst = bench_instance(state.range(0), 4);
  SampleRng rng(1, 3, 0);
  const Eigen::VectorXd x = rng.normal_vector(inst.dim);
  const Eigen::VectorXd v0 = dual_multipliers(inst, x);
  const auto choice = select_regularization(inst, v0, x);
  const Eigen::VectorXd v_star = dual_vector(inst, x, v0, choice.K);
  for (auto _ : state) benchmark::DoNotOptimize(dual_value(inst, v_star, v0, choice.K));
}
BENCHMARK(BM_dual_value)->Arg(16)->Arg(64)->Arg(256);

void BM_select_regularization(benchmark::State& state) {
  const auto inst = bench_instance(state.range(0), 4);
  SampleRng rng(1, 4, 0);
  const Eigen::VectorXd x = rng.normal_vector(inst.dim);
  const Eigen::VectorXd v0 = dual_multipliers(inst, x);
  for (auto _ : state) benchmark::DoNotOptimize(select_regularization(inst, v0, x));
}
BENCHMARK(BM_select_regularization)->Arg(16)->Arg(64);

void BM_certify_reference(benchmark::State& state) {
  ProblemInstance inst;
  inst.dim = 1;
  inst.num_terms = 1;
  inst.A = Eigen::MatrixXd::Constant(1, 1, 1.0);
  inst.B = {Eigen::MatrixXd::Constant(1, 1, 2.0)};
  inst.gamma = Eigen::VectorXd::Constant(1, 1.0);
  inst.c = Eigen::VectorXd::Constant(1, -1.0);
  inst.f = Eigen::VectorXd::Zero(1);

  CertifyConfig cfg;
  cfg.samples = state.range(0);
  const Eigen::VectorXd x_init = Eigen::VectorXd::Constant(1, 0.6);
  for (auto _ : state) benchmark::DoNotOptimize(certify(inst, x_init, cfg));
}
BENCHMARK(BM_certify_reference)->Arg(100)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
