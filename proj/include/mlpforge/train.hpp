#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mlpforge/data.hpp"
#include "mlpforge/error.hpp"
#include "mlpforge/network.hpp"
#include "mlpforge/rng.hpp"

namespace mlpforge {

struct Hyperparams {
  double rate = 0.5;            // per-call rate multiplier
  double learning_rate = 0.1;
  double momentum = 0.05;
  double dropout_prob = 0.3;
  bool paper_faithful = false;  // dropout at evaluation time and Train-mode error logging

  void validate() const {
    if (!(learning_rate > 0) || !std::isfinite(learning_rate)) throw ConfigError("learning_rate must be > 0");
    if (!std::isfinite(rate)) throw ConfigError("rate must be finite");
    if (!(momentum >= 0) || !std::isfinite(momentum)) throw ConfigError("momentum must be >= 0");
    if (!(dropout_prob >= 0 && dropout_prob <= 1)) throw ConfigError("dropout must lie in [0, 1]");
  }

  friend bool operator==(const Hyperparams&, const Hyperparams&) = default;
};

namespace detail {

inline void check_target(const Network& net, std::span<const double> target) {
  if (target.size() != net.topology.outputs())
    throw DimensionError("target has " + std::to_string(target.size()) + " components, network has " +
                         std::to_string(net.topology.outputs()) + " outputs");
}

/// Momentum step on the incoming weights and the threshold of one neuron,
/// using the neuron's current error. prev_* receive the pre-update values.
inline void update_weights(Network& net, std::size_t layer, std::size_t neuron, const Hyperparams& hp) {
  const double error = net.errors[layer][neuron];
  WeightMatrix& w = net.weights[layer - 1];
  WeightMatrix& prev = net.prev_weights[layer - 1];
  const auto& source = net.outputs[layer - 1];
  for (std::size_t src = 0; src < w.cols(); ++src) {
    const double temp_weight = w(neuron, src);
    w(neuron, src) += (hp.rate * hp.learning_rate * error * source[src]) +
                      (hp.momentum * (w(neuron, src) - prev(neuron, src)));
    prev(neuron, src) = temp_weight;
  }
  double& theta = net.thresholds[layer][neuron];
  double& prev_theta = net.prev_thresholds[layer][neuron];
  const double temp_threshold = theta;
  theta += (hp.rate * hp.learning_rate * error * -1) + (hp.momentum * (theta - prev_theta));
  prev_theta = temp_threshold;
}

}  // namespace detail

/// One online training step on a single pattern.
///
/// Runs a Train-mode forward pass, then updates the output layer neuron by
/// neuron (delta = (t - o) f'(o), applied immediately), then the hidden
/// layers from last to first. A hidden neuron's delta sums prev_weight times
/// the downstream delta over its outgoing synapses; since the downstream
/// layer has already been updated, prev_weight is exactly the weight the
/// forward pass used. Dropped neurons are still updated (their zero output
/// goes into the derivative and into downstream weight steps).
template <UniformSource Rng>
void train_pattern(Network& net, std::span<const double> input, std::span<const double> target,
                   const Hyperparams& hp, Rng& rng) {
  detail::check_input(net, input);
  detail::check_target(net, target);
  feed_forward(net, input, Mode::Train, hp.dropout_prob, rng);

  const std::size_t out = net.layers() - 1;
  for (std::size_t n = 0; n < net.outputs[out].size(); ++n) {
    const double o = net.outputs[out][n];
    net.errors[out][n] = (target[n] - o) * gate_derivative(net.activation, o);
    detail::update_weights(net, out, n, hp);
  }

  for (std::size_t layer = out - 1; layer >= 1; --layer) {
    const WeightMatrix& prev = net.prev_weights[layer];
    const auto& downstream = net.errors[layer + 1];
    for (std::size_t n = 0; n < net.outputs[layer].size(); ++n) {
      double error = 0.0;
      for (std::size_t dst = 0; dst < downstream.size(); ++dst) error += prev(dst, n) * downstream[dst];
      error *= gate_derivative(net.activation, net.outputs[layer][n]);
      net.errors[layer][n] = error;
      detail::update_weights(net, layer, n, hp);
    }
  }
}

/// 0.5 * sum (t - o)^2 at the Eval-mode output.
inline double half_squared_error(const Network& net, std::span<const double> input, std::span<const double> target) {
  detail::check_target(net, target);
  const auto out = predict(net, input);
  double e = 0;
  for (std::size_t k = 0; k < out.size(); ++k) e += (target[k] - out[k]) * (target[k] - out[k]);
  return 0.5 * e;
}

/// Analytic dE/dparam for E = 0.5 * sum (t - o)^2, no dropout, in the
/// order of flatten_parameters(). Hidden deltas use the current weights.
inline std::vector<double> compute_gradients(const Network& net, std::span<const double> input,
                                             std::span<const double> target) {
  detail::check_input(net, input);
  detail::check_target(net, target);
  const std::size_t layers = net.layers();

  std::vector<std::vector<double>> o(layers);
  o[0].assign(input.begin(), input.end());
  for (std::size_t layer = 1; layer < layers; ++layer) {
    o[layer].resize(net.topology.layer_sizes[layer]);
    for (std::size_t n = 0; n < o[layer].size(); ++n)
      o[layer][n] = gate_calculate(net.activation, detail::pre_activation(net, layer, n, o[layer - 1]));
  }

  // delta = -dE/d(pre-activation)
  std::vector<std::vector<double>> delta(layers);
  delta[layers - 1].resize(o[layers - 1].size());
  for (std::size_t n = 0; n < delta[layers - 1].size(); ++n) {
    const double out = o[layers - 1][n];
    delta[layers - 1][n] = (target[n] - out) * gate_derivative(net.activation, out);
  }
  for (std::size_t layer = layers - 2; layer >= 1; --layer) {
    const WeightMatrix& w = net.weights[layer];
    delta[layer].resize(o[layer].size());
    for (std::size_t n = 0; n < o[layer].size(); ++n) {
      double sum = 0;
      for (std::size_t dst = 0; dst < w.rows(); ++dst) sum += w(dst, n) * delta[layer + 1][dst];
      delta[layer][n] = sum * gate_derivative(net.activation, o[layer][n]);
    }
  }

  std::vector<double> grad;
  grad.reserve(parameter_count(net));
  for (std::size_t k = 0; k + 1 < layers; ++k) {
    const WeightMatrix& w = net.weights[k];
    for (std::size_t dst = 0; dst < w.rows(); ++dst)
      for (std::size_t src = 0; src < w.cols(); ++src) grad.push_back(-delta[k + 1][dst] * o[k][src]);
  }
  for (std::size_t n = 0; n < net.topology.inputs(); ++n) grad.push_back(0.0);
  for (std::size_t layer = 1; layer < layers; ++layer)
    for (double d : delta[layer]) grad.push_back(d);  // d(pre)/d(theta) = -1
  return grad;
}

/// Central differences of half_squared_error, one parameter at a time, on
/// a private copy of the network.
inline std::vector<double> finite_difference_gradients(const Network& net, std::span<const double> input,
                                                       std::span<const double> target, double h = 1e-5) {
  if (!(h > 0) || !std::isfinite(h)) throw DomainError("finite_difference_gradients: h must be > 0");
  Network probe = net;
  std::vector<double*> params;
  for_each_parameter(probe, [&](double& v) { params.push_back(&v); });

  std::vector<double> grad(params.size());
  for (std::size_t i = 0; i < params.size(); ++i) {
    const double saved = *params[i];
    *params[i] = saved + h;
    const double plus = half_squared_error(probe, input, target);
    *params[i] = saved - h;
    const double minus = half_squared_error(probe, input, target);
    *params[i] = saved;
    grad[i] = (plus - minus) / (2 * h);
  }
  return grad;
}

struct GradientComparison {
  double max_relative_error = 0;
  std::size_t checked = 0;  // elements with |analytic| above the floor
};

/// Element-wise |a - n| / |a| over elements whose analytic magnitude
/// exceeds `floor`.
inline GradientComparison compare_gradients(std::span<const double> analytic, std::span<const double> numeric,
                                            double floor = 1e-8) {
  if (analytic.size() != numeric.size()) throw DimensionError("gradient vectors differ in length");
  GradientComparison cmp;
  for (std::size_t i = 0; i < analytic.size(); ++i) {
    const double a = std::abs(analytic[i]);
    if (!(a > floor)) continue;
    ++cmp.checked;
    cmp.max_relative_error = std::max(cmp.max_relative_error, std::abs(analytic[i] - numeric[i]) / a);
  }
  return cmp;
}

/// sqrt(SSE / N) over the dataset with Eval-mode outputs.
inline double rms_error(const Network& net, const Dataset& data) {
  if (data.empty()) throw DomainError("rms_error: empty dataset");
  double sse = 0;
  for (const Sample& s : data) {
    const auto out = predict(net, s.input);
    detail::check_target(net, s.target);
    for (std::size_t k = 0; k < out.size(); ++k) sse += (out[k] - s.target[k]) * (out[k] - s.target[k]);
  }
  return std::sqrt(sse / static_cast<double>(data.size()));
}

// ---------------------------------------------------------------------------
// Epoch loop

struct LogEntry {
  std::size_t epoch;
  double rms;

  friend bool operator==(const LogEntry&, const LogEntry&) = default;
};

struct TrainingConfig {
  Topology topology;
  Activation activation = Activation::Sigmoid;
  Hyperparams hyper;
  std::uint64_t seed = 0;
  std::size_t epochs = 0;
  std::size_t log_every = 1;
};

enum class RunStatus { Completed, StoppedBelowThreshold, Diverged };

struct TrainingLog {
  TrainingConfig config;
  std::vector<LogEntry> entries;
  RunStatus status = RunStatus::Completed;
  std::size_t epochs_run = 0;
  std::optional<std::size_t> last_finite_epoch;  // set when status == Diverged
  Network final_model;
};

struct TrainingOptions {
  /// Called for every log entry as soon as it is recorded.
  std::function<void(const LogEntry&)> on_log;
  /// Stop at the first logged epoch whose RMS is below this.
  std::optional<double> stop_below_rms;
  /// Seeded Fisher-Yates shuffle of the visiting order each epoch.
  bool shuffle = false;
};

/// Runs `epochs` passes over `data` in stored order, one train_pattern call
/// per sample. Logs RMS at every epoch divisible by log_every and at the
/// last epoch. By default the logged RMS is the Eval-mode rms_error; with
/// hyper.paper_faithful it is accumulated from a Train-mode forward pass
/// right after each pattern's update, and that pass consumes RNG draws.
/// A non-finite parameter ends the run with status Diverged.
template <UniformSource Rng>
TrainingLog run_training(Network& net, const Dataset& data, std::size_t epochs, const Hyperparams& hp,
                         std::size_t log_every, Rng& rng, const TrainingOptions& options = {}) {
  hp.validate();
  if (epochs == 0) throw ConfigError("epochs must be positive");
  if (log_every == 0) throw ConfigError("log_every must be positive");
  if (data.empty()) throw DomainError("run_training: empty dataset");
  if (data.input_dim() != net.topology.inputs() || data.target_dim() != net.topology.outputs())
    throw DimensionError("dataset is " + std::to_string(data.input_dim()) + "->" +
                         std::to_string(data.target_dim()) + ", network is " +
                         std::to_string(net.topology.inputs()) + "->" + std::to_string(net.topology.outputs()));

  TrainingLog log;
  log.config.topology = net.topology;
  log.config.activation = net.activation;
  log.config.hyper = hp;
  if constexpr (requires { rng.seed(); }) log.config.seed = rng.seed();
  log.config.epochs = epochs;
  log.config.log_every = log_every;

  std::vector<std::size_t> order(data.size());
  std::iota(order.begin(), order.end(), std::size_t{0});

  for (std::size_t epoch = 0; epoch < epochs; ++epoch) {
    if (options.shuffle) {
      for (std::size_t i = order.size() - 1; i > 0; --i) {
        const auto j = static_cast<std::size_t>(rng.uniform() * static_cast<double>(i + 1));
        std::swap(order[i], order[std::min(j, i)]);
      }
    }

    double sse = 0;
    bool finite = true;
    try {
      for (std::size_t idx : order) {
        const Sample& s = data[idx];
        train_pattern(net, s.input, s.target, hp, rng);
        if (hp.paper_faithful) {
          const auto out = feed_forward(net, s.input, Mode::Train, hp.dropout_prob, rng);
          for (std::size_t k = 0; k < out.size(); ++k) sse += (out[k] - s.target[k]) * (out[k] - s.target[k]);
        }
      }
      finite = parameters_finite(net);
    } catch (const DomainError&) {
      finite = false;  // a gate saw an overflowed pre-activation
    }
    log.epochs_run = epoch + 1;
    if (!finite) {
      log.status = RunStatus::Diverged;
      if (epoch > 0) log.last_finite_epoch = epoch - 1;
      break;
    }

    if (epoch % log_every == 0 || epoch + 1 == epochs) {
      double rms = 0;
      try {
        rms = hp.paper_faithful ? std::sqrt(sse / static_cast<double>(data.size())) : rms_error(net, data);
      } catch (const DomainError&) {
        log.status = RunStatus::Diverged;
        log.last_finite_epoch = epoch;
        break;
      }
      const LogEntry entry{epoch, rms};
      log.entries.push_back(entry);
      if (options.on_log) options.on_log(entry);
      if (options.stop_below_rms && rms < *options.stop_below_rms) {
        log.status = RunStatus::StoppedBelowThreshold;
        break;
      }
    }
  }
  log.final_model = net;
  return log;
}

}  // namespace mlpforge
