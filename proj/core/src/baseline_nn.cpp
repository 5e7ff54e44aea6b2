#include "cann/baseline_nn.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace cann {

namespace {

// Forward pass keeping the post-activation values of every layer; z[0] is
// the input, z.back() the scalar output.
std::vector<std::vector<double>> forward_trace(const MlpParams& p, double lambda) {
  const std::size_t n_layers = p.layer_sizes.size();
  std::vector<std::vector<double>> z(n_layers);
  z[0] = {lambda};
  for (std::size_t k = 0; k + 1 < n_layers; ++k) {
    const int rows = p.layer_sizes[k + 1];
    const int cols = p.layer_sizes[k];
    const bool output_layer = (k + 2 == n_layers);
    z[k + 1].resize(rows);
    for (int r = 0; r < rows; ++r) {
      double acc = p.biases[k][r];
      for (int c = 0; c < cols; ++c) acc += p.weights[k][r * cols + c] * z[k][c];
      z[k + 1][r] = output_layer ? acc : std::tanh(acc);
    }
  }
  return z;
}

}  // namespace

MlpParams MlpParams::initialize(const std::vector<int>& layer_sizes, std::uint64_t seed) {
  if (layer_sizes.size() < 2) throw std::invalid_argument("need at least input and output layers");
  for (int n : layer_sizes)
    if (n < 1) throw std::invalid_argument("layer sizes must be positive");
  if (layer_sizes.front() != 1 || layer_sizes.back() != 1) {
    throw std::invalid_argument("network maps one stretch to one stress; "
                                "input and output layers must have size 1");
  }

  std::mt19937_64 rng(seed);
  MlpParams p;
  p.layer_sizes = layer_sizes;
  for (std::size_t k = 0; k + 1 < layer_sizes.size(); ++k) {
    const int rows = layer_sizes[k + 1];
    const int cols = layer_sizes[k];
    const double bound = 1.0 / std::sqrt(static_cast<double>(cols));
    std::vector<double> w(static_cast<std::size_t>(rows) * cols);
    for (double& v : w) v = bound * (2.0 * detail::uniform_unit(rng) - 1.0);
    p.weights.push_back(std::move(w));
    p.biases.emplace_back(rows, 0.0);
  }
  return p;
}

int MlpParams::parameter_count() const {
  int n = 0;
  for (const auto& w : weights) n += static_cast<int>(w.size());
  for (const auto& b : biases) n += static_cast<int>(b.size());
  return n;
}

void MlpParams::validate() const {
  const std::size_t n_links = layer_sizes.empty() ? 0 : layer_sizes.size() - 1;
  if (layer_sizes.size() < 2 || weights.size() != n_links || biases.size() != n_links) {
    throw std::invalid_argument("layer structure does not chain");
  }
  for (std::size_t k = 0; k < n_links; ++k) {
    const std::size_t rows = static_cast<std::size_t>(layer_sizes[k + 1]);
    const std::size_t cols = static_cast<std::size_t>(layer_sizes[k]);
    if (weights[k].size() != rows * cols || biases[k].size() != rows) {
      throw std::invalid_argument("weight/bias shapes do not match layer_sizes at layer " +
                                  std::to_string(k));
    }
  }
}

double mlp_forward(const MlpParams& params, double lambda) {
  params.validate();
  return forward_trace(params, lambda).back()[0];
}

MlpGradient mlp_gradient(const MlpParams& params, double lambda) {
  params.validate();
  const auto z = forward_trace(params, lambda);
  const std::size_t n_links = params.layer_sizes.size() - 1;

  MlpGradient g;
  g.weights.resize(n_links);
  g.biases.resize(n_links);

  // delta = d(output)/d(pre-activation of layer k+1), built backwards from
  // the affine output layer.
  std::vector<double> delta = {1.0};
  for (std::size_t k = n_links; k-- > 0;) {
    const int rows = params.layer_sizes[k + 1];
    const int cols = params.layer_sizes[k];
    g.weights[k].assign(static_cast<std::size_t>(rows) * cols, 0.0);
    g.biases[k].assign(rows, 0.0);
    for (int r = 0; r < rows; ++r) {
      g.biases[k][r] = delta[r];
      for (int c = 0; c < cols; ++c) g.weights[k][r * cols + c] = delta[r] * z[k][c];
    }
    if (k == 0) break;
    std::vector<double> prev(cols, 0.0);
    for (int c = 0; c < cols; ++c) {
      double acc = 0.0;
      for (int r = 0; r < rows; ++r) acc += delta[r] * params.weights[k][r * cols + c];
      // z[k] holds tanh values of that hidden layer; tanh' = 1 - tanh^2.
      prev[c] = acc * (1.0 - z[k][c] * z[k][c]);
    }
    delta = std::move(prev);
  }
  return g;
}

MlpTrainingRecord mlp_train(const std::vector<std::pair<double, double>>& data,
                            const AdamConfig& config, const std::vector<int>& layer_sizes) {
  if (data.empty()) throw std::invalid_argument("dataset is empty");
  config.validate();

  MlpParams p = MlpParams::initialize(layer_sizes, config.seed);
  const std::size_t n_links = layer_sizes.size() - 1;

  // Flatten parameters for the shared ADAM state: weights then biases,
  // layer by layer.
  std::size_t dim = 0;
  for (std::size_t k = 0; k < n_links; ++k) dim += p.weights[k].size() + p.biases[k].size();
  detail::AdamState adam(dim, config.learning_rate, config.beta1, config.beta2, config.epsilon);

  std::vector<double> flat(dim), grad(dim);
  MlpTrainingRecord rec;
  rec.loss_history.reserve(static_cast<std::size_t>(config.epochs));

  auto gather = [&](std::vector<double>& out) {
    std::size_t i = 0;
    for (std::size_t k = 0; k < n_links; ++k) {
      for (double v : p.weights[k]) out[i++] = v;
      for (double v : p.biases[k]) out[i++] = v;
    }
  };
  auto scatter = [&](const std::vector<double>& in) {
    std::size_t i = 0;
    for (std::size_t k = 0; k < n_links; ++k) {
      for (double& v : p.weights[k]) v = in[i++];
      for (double& v : p.biases[k]) v = in[i++];
    }
  };

  auto mse = [&]() {
    double loss = 0.0;
    for (const auto& [lambda, stress] : data) {
      const double r = forward_trace(p, lambda).back()[0] - stress;
      loss += r * r;
    }
    return loss / static_cast<double>(data.size());
  };

  const double scale = 2.0 / static_cast<double>(data.size());
  // Same convention as the energy-network trainer: loss_history[e-1] is the
  // loss at the start of epoch e.
  for (int epoch = 1; epoch <= config.epochs; ++epoch) {
    const double loss = mse();
    if (!std::isfinite(loss)) {
      throw DivergenceError(epoch, "baseline loss is non-finite");
    }
    rec.loss_history.push_back(loss);

    std::fill(grad.begin(), grad.end(), 0.0);
    for (const auto& [lambda, stress] : data) {
      const auto z = forward_trace(p, lambda);
      const double r = z.back()[0] - stress;
      const MlpGradient g = mlp_gradient(p, lambda);
      std::size_t i = 0;
      for (std::size_t k = 0; k < n_links; ++k) {
        for (double v : g.weights[k]) grad[i++] += scale * r * v;
        for (double v : g.biases[k]) grad[i++] += scale * r * v;
      }
    }
    gather(flat);
    adam.step(grad, flat);
    scatter(flat);
  }
  if (!std::isfinite(mse())) {
    throw DivergenceError(config.epochs, "baseline loss is non-finite after the last update");
  }

  rec.params = std::move(p);
  rec.epochs_run = config.epochs;
  return rec;
}

}  // namespace cann
