#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "cann/data.hpp"
#include "cann/energy.hpp"

namespace cann {

/// First-order optimizer settings. The seed drives both the weight
/// initialization and nothing else; identical configs give bitwise-identical
/// training runs.
struct AdamConfig {
  double learning_rate = 1e-3;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
  int epochs = 10000;
  std::uint64_t seed = 42;
  double init_scale = 0.5;  // weights start uniform in [0, init_scale]

  void validate() const;
};

/// Outcome of a training run. loss_history[e] is the mean squared error at
/// the start of epoch e+1; the first entry is the loss of the drawn initial
/// weights. The loss of final_weights itself is one update past the last
/// entry.
struct TrainingRecord {
  CannWeights final_weights;
  std::vector<double> loss_history;  // MPa^2, one entry per epoch
  int epochs_run = 0;
  double final_gradient_norm = 0.0;
};

/// Raised when the training loss turns non-finite (exponential overflow).
class DivergenceError : public std::runtime_error {
 public:
  DivergenceError(int epoch, const std::string& what)
      : std::runtime_error("diverged at epoch " + std::to_string(epoch) + ": " + what),
        epoch_(epoch) {}
  int epoch() const { return epoch_; }

 private:
  int epoch_;
};

/// Mean squared error of the model stress against the dataset, all points of
/// all modes pooled with equal weight. Throws std::invalid_argument for an
/// empty dataset.
double mse_loss(const CannWeights& w, const Dataset& dataset);

/// Exact gradient of mse_loss in canonical weight order:
/// (2/n) * sum_i residual_i * dP1/dw at each point.
std::array<double, kNumWeights> loss_gradient(const CannWeights& w, const Dataset& dataset);

/// Full-batch projected ADAM on the twelve energy weights. Each epoch applies
/// one bias-corrected ADAM update followed by the projection w = max(w, 0).
/// Weights are initialized uniformly in [0, init_scale] from the seeded
/// generator. Throws DivergenceError when the loss becomes non-finite.
TrainingRecord train_cann(const Dataset& dataset, const AdamConfig& config);

namespace detail {

/// Deterministic uniform double in [0, 1) built from the top 53 bits of a
/// 64-bit draw, independent of standard-library distribution quirks.
template <class Engine>
double uniform_unit(Engine& engine) {
  return static_cast<double>(engine() >> 11) * 0x1.0p-53;
}

/// Reusable bias-corrected ADAM state over a flat parameter vector.
class AdamState {
 public:
  AdamState(std::size_t n, double lr, double beta1, double beta2, double epsilon)
      : lr_(lr), beta1_(beta1), beta2_(beta2), epsilon_(epsilon), m_(n, 0.0), v_(n, 0.0) {}

  /// One update step; gradient and params must have the state's size.
  void step(const std::vector<double>& gradient, std::vector<double>& params);

 private:
  double lr_, beta1_, beta2_, epsilon_;
  std::vector<double> m_, v_;
  int t_ = 0;
};

}  // namespace detail

}  // namespace cann
