#include <benchmark/benchmark.h>

#include <random>

#include "cann/baseline_nn.hpp"
#include "cann/data.hpp"
#include "cann/optimizer.hpp"
#include "cann/stress.hpp"

using namespace cann;

namespace {

CannWeights sample_weights() {
  CannWeights w;
  w.lin_i1 = 0.1185;
  w.exp_lin_i1 = {0.0387, 0.752};
  w.exp_lin_i2 = {0.0022, 0.295};
  return w;
}

void NominalStress(benchmark::State& state) {
  const CannWeights w = sample_weights();
  double lambda = 1.0;
  for (auto _ : state) {
    lambda = lambda >= 8.0 ? 1.0 : lambda + 0.1;
    benchmark::DoNotOptimize(nominal_stress(w, DeformationMode::UniaxialTension, lambda));
  }
}
BENCHMARK(NominalStress);

void StressWeightGradient(benchmark::State& state) {
  const CannWeights w = sample_weights();
  for (auto _ : state) {
    benchmark::DoNotOptimize(stress_weight_gradient(w, DeformationMode::EquibiaxialTension, 2.5));
  }
}
BENCHMARK(StressWeightGradient);

void LossGradientMultiMode(benchmark::State& state) {
  const Dataset data = builtin_dataset("treloar20_multi");
  const CannWeights w = sample_weights();
  for (auto _ : state) {
    benchmark::DoNotOptimize(loss_gradient(w, data));
  }
}
BENCHMARK(LossGradientMultiMode);

void TrainEpochs(benchmark::State& state) {
  const Dataset data = builtin_dataset("treloar20_multi");
  AdamConfig config;
  config.epochs = static_cast<int>(state.range(0));
  config.init_scale = 1e-6;
  config.learning_rate = 1e-5;
  for (auto _ : state) {
    benchmark::DoNotOptimize(train_cann(data, config));
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(TrainEpochs)->Arg(100)->Arg(1000)->Complexity();

void MlpForward(benchmark::State& state) {
  const MlpParams p = MlpParams::initialize({1, 8, 1}, 7);
  double lambda = 1.0;
  for (auto _ : state) {
    lambda = lambda >= 8.0 ? 1.0 : lambda + 0.1;
    benchmark::DoNotOptimize(mlp_forward(p, lambda));
  }
}
BENCHMARK(MlpForward);

}  // namespace

BENCHMARK_MAIN();
