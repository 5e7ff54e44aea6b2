#include "cann/optimizer.hpp"

#include <cmath>
#include <random>

#include "cann/stress.hpp"

namespace cann {

namespace detail {

void AdamState::step(const std::vector<double>& gradient, std::vector<double>& params) {
  ++t_;
  const double mc = 1.0 - std::pow(beta1_, t_);
  const double vc = 1.0 - std::pow(beta2_, t_);
  for (std::size_t k = 0; k < params.size(); ++k) {
    m_[k] = beta1_ * m_[k] + (1.0 - beta1_) * gradient[k];
    v_[k] = beta2_ * v_[k] + (1.0 - beta2_) * gradient[k] * gradient[k];
    const double mhat = m_[k] / mc;
    const double vhat = v_[k] / vc;
    params[k] -= lr_ * mhat / (std::sqrt(vhat) + epsilon_);
  }
}

}  // namespace detail

void AdamConfig::validate() const {
  if (!(learning_rate > 0.0)) throw std::invalid_argument("learning_rate must be positive");
  if (beta1 < 0.0 || beta1 >= 1.0) throw std::invalid_argument("beta1 must be in [0, 1)");
  if (beta2 < 0.0 || beta2 >= 1.0) throw std::invalid_argument("beta2 must be in [0, 1)");
  if (!(epsilon > 0.0)) throw std::invalid_argument("epsilon must be positive");
  if (epochs < 1) throw std::invalid_argument("epochs must be at least 1");
  if (init_scale < 0.0) throw std::invalid_argument("init_scale must be non-negative");
}

namespace {

void require_nonempty(const Dataset& dataset) {
  if (dataset.empty()) throw std::invalid_argument("dataset is empty");
}

}  // namespace

double mse_loss(const CannWeights& w, const Dataset& dataset) {
  require_nonempty(dataset);
  double sum = 0.0;
  for (const Sample& s : dataset.samples) {
    const double r = nominal_stress(w, s.mode, s.lambda).p1 - s.stress_mpa;
    sum += r * r;
  }
  return sum / static_cast<double>(dataset.size());
}

std::array<double, kNumWeights> loss_gradient(const CannWeights& w, const Dataset& dataset) {
  require_nonempty(dataset);
  std::array<double, kNumWeights> grad{};
  const double scale = 2.0 / static_cast<double>(dataset.size());
  for (const Sample& s : dataset.samples) {
    const double r = nominal_stress(w, s.mode, s.lambda).p1 - s.stress_mpa;
    const auto dp = stress_weight_gradient(w, s.mode, s.lambda);
    for (int k = 0; k < kNumWeights; ++k) grad[k] += scale * r * dp[k];
  }
  return grad;
}

TrainingRecord train_cann(const Dataset& dataset, const AdamConfig& config) {
  require_nonempty(dataset);
  config.validate();

  std::mt19937_64 rng(config.seed);
  std::vector<double> params(kNumWeights);
  for (double& p : params) p = config.init_scale * detail::uniform_unit(rng);

  detail::AdamState adam(kNumWeights, config.learning_rate, config.beta1, config.beta2,
                         config.epsilon);

  TrainingRecord rec;
  rec.loss_history.reserve(static_cast<std::size_t>(config.epochs));
  std::array<double, kNumWeights> warr;
  std::vector<double> grad(kNumWeights);

  // loss_history[e-1] is the loss at the start of epoch e, so the first
  // entry is the loss of the drawn initial weights.
  for (int epoch = 1; epoch <= config.epochs; ++epoch) {
    std::copy(params.begin(), params.end(), warr.begin());
    const CannWeights w = CannWeights::from_array(warr);
    const double loss = mse_loss(w, dataset);
    if (!std::isfinite(loss)) {
      throw DivergenceError(epoch, "loss is non-finite (exponential overflow); "
                                   "reduce init_scale or the learning rate");
    }
    rec.loss_history.push_back(loss);
    const auto g = loss_gradient(w, dataset);
    for (double v : g) {
      if (!std::isfinite(v)) {
        throw DivergenceError(epoch, "gradient is non-finite (exponential overflow); "
                                     "reduce init_scale or the learning rate");
      }
    }
    std::copy(g.begin(), g.end(), grad.begin());
    adam.step(grad, params);
    for (double& p : params)
      if (p < 0.0) p = 0.0;
  }

  std::copy(params.begin(), params.end(), warr.begin());
  rec.final_weights = CannWeights::from_array(warr);
  rec.epochs_run = config.epochs;
  const double final_loss = mse_loss(rec.final_weights, dataset);
  if (!std::isfinite(final_loss)) {
    throw DivergenceError(config.epochs, "loss is non-finite after the last update; "
                                         "reduce init_scale or the learning rate");
  }
  const auto g = loss_gradient(rec.final_weights, dataset);
  double norm2 = 0.0;
  for (double v : g) norm2 += v * v;
  rec.final_gradient_norm = std::sqrt(norm2);
  return rec;
}

}  // namespace cann
