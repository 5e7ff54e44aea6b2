#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "cann/optimizer.hpp"

namespace cann {

/// Fully connected tanh network mapping one scalar (stretch) to one scalar
/// (nominal stress). Hidden layers apply tanh, the output layer is affine.
/// weights[k] is row-major with shape (layer_sizes[k+1], layer_sizes[k]).
struct MlpParams {
  std::vector<int> layer_sizes;
  std::vector<std::vector<double>> weights;
  std::vector<std::vector<double>> biases;

  /// Zero biases, weights uniform in [-1/sqrt(fan_in), 1/sqrt(fan_in)].
  static MlpParams initialize(const std::vector<int>& layer_sizes, std::uint64_t seed);

  int parameter_count() const;
  void validate() const;  // throws std::invalid_argument on shape mismatch
};

/// Gradient of the network output with respect to every weight and bias,
/// shaped like the parameters.
struct MlpGradient {
  std::vector<std::vector<double>> weights;
  std::vector<std::vector<double>> biases;
};

struct MlpTrainingRecord {
  MlpParams params;
  std::vector<double> loss_history;  // MPa^2, one entry per epoch
  int epochs_run = 0;
};

double mlp_forward(const MlpParams& params, double lambda);

MlpGradient mlp_gradient(const MlpParams& params, double lambda);

/// Full-batch ADAM on the mean squared error over (lambda, stress) pairs.
/// init_scale of the config is ignored; initialization is the scaled-uniform
/// scheme of MlpParams::initialize.
MlpTrainingRecord mlp_train(const std::vector<std::pair<double, double>>& data,
                            const AdamConfig& config, const std::vector<int>& layer_sizes);

}  // namespace cann
