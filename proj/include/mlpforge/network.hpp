#pragma once

#include <algorithm>
#include <cmath>
#include <concepts>
#include <cstddef>
#include <span>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "mlpforge/activation.hpp"
#include "mlpforge/error.hpp"
#include "mlpforge/rng.hpp"

namespace mlpforge {

/// Layer widths: input, one or more hidden, output. Adjacent layers are fully connected.
struct Topology {
  std::vector<std::size_t> layer_sizes;

  void validate() const {
    if (layer_sizes.size() < 3)
      throw ConfigError("topology needs at least 3 layers (input, hidden..., output), got " +
                        std::to_string(layer_sizes.size()));
    for (std::size_t size : layer_sizes)
      if (size == 0) throw ConfigError("topology layer sizes must be positive");
  }

  std::size_t layers() const noexcept { return layer_sizes.size(); }
  std::size_t inputs() const noexcept { return layer_sizes.front(); }
  std::size_t outputs() const noexcept { return layer_sizes.back(); }

  std::size_t neuron_count() const noexcept {
    std::size_t n = 0;
    for (std::size_t s : layer_sizes) n += s;
    return n;
  }

  std::size_t synapse_count() const noexcept {
    std::size_t n = 0;
    for (std::size_t k = 0; k + 1 < layer_sizes.size(); ++k) n += layer_sizes[k] * layer_sizes[k + 1];
    return n;
  }

  friend bool operator==(const Topology&, const Topology&) = default;
};

/// Dense row-major block of weights between two layers, indexed [dest][source].
class WeightMatrix {
 public:
  WeightMatrix() = default;
  WeightMatrix(std::size_t dest, std::size_t source) : rows_(dest), cols_(source), data_(dest * source, 0.0) {}

  double& operator()(std::size_t dest, std::size_t source) { return data_[dest * cols_ + source]; }
  double operator()(std::size_t dest, std::size_t source) const { return data_[dest * cols_ + source]; }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::span<double> values() noexcept { return data_; }
  std::span<const double> values() const noexcept { return data_; }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

/// The learner state. weights[k] connects layer k to layer k + 1.
/// Per-neuron vectors (thresholds, outputs, ...) are indexed [layer][neuron];
/// input-layer thresholds are allocated and initialized but never read.
struct Network {
  Activation activation = Activation::Sigmoid;
  Topology topology;

  std::vector<WeightMatrix> weights;
  std::vector<WeightMatrix> prev_weights;
  std::vector<std::vector<double>> thresholds;
  std::vector<std::vector<double>> prev_thresholds;

  std::vector<std::vector<double>> outputs;
  std::vector<std::vector<double>> errors;
  std::vector<std::vector<bool>> dropped;

  std::size_t layers() const noexcept { return topology.layers(); }
  bool is_hidden(std::size_t layer) const noexcept { return layer > 0 && layer + 1 < layers(); }
  std::span<const double> output_values() const noexcept { return outputs.back(); }
};

/// All-zero network with every buffer shaped for `topology`.
inline Network make_zero_network(Activation kind, const Topology& topology) {
  topology.validate();
  Network net;
  net.activation = kind;
  net.topology = topology;
  const auto& sizes = topology.layer_sizes;
  for (std::size_t k = 0; k + 1 < sizes.size(); ++k) {
    net.weights.emplace_back(sizes[k + 1], sizes[k]);
    net.prev_weights.emplace_back(sizes[k + 1], sizes[k]);
  }
  for (std::size_t size : sizes) {
    net.thresholds.emplace_back(size, 0.0);
    net.prev_thresholds.emplace_back(size, 0.0);
    net.outputs.emplace_back(size, 0.0);
    net.errors.emplace_back(size, 0.0);
    net.dropped.emplace_back(size, false);
  }
  return net;
}

/// Draws every parameter from uniform [-1, 1) in a fixed order:
/// all thresholds layer by layer (input layer included), then each weight
/// block in layer order, iterating source neurons in the outer loop and
/// destination neurons in the inner loop. prev_* start equal to the values.
template <UniformSource Rng>
Network build_network(Activation kind, const Topology& topology, Rng& rng) {
  Network net = make_zero_network(kind, topology);
  auto draw = [&rng] { return static_cast<double>(rng.uniform()) * 2.0 - 1.0; };
  for (std::size_t layer = 0; layer < net.layers(); ++layer)
    for (double& theta : net.thresholds[layer]) theta = draw();
  for (std::size_t k = 0; k < net.weights.size(); ++k) {
    WeightMatrix& w = net.weights[k];
    for (std::size_t src = 0; src < w.cols(); ++src)
      for (std::size_t dst = 0; dst < w.rows(); ++dst) w(dst, src) = draw();
  }
  net.prev_weights = net.weights;
  net.prev_thresholds = net.thresholds;
  return net;
}

enum class Mode { Train, Eval };

namespace detail {

inline void check_input(const Network& net, std::span<const double> input) {
  if (input.size() != net.topology.inputs())
    throw DimensionError("input has " + std::to_string(input.size()) + " components, network expects " +
                         std::to_string(net.topology.inputs()));
}

/// Weighted sum of the previous layer minus the threshold, summed in
/// ascending source order.
inline double pre_activation(const Network& net, std::size_t layer, std::size_t neuron,
                             std::span<const double> source_outputs) {
  const WeightMatrix& w = net.weights[layer - 1];
  double activation = 0;
  for (std::size_t src = 0; src < w.cols(); ++src) activation += w(neuron, src) * source_outputs[src];
  activation -= net.thresholds[layer][neuron];
  return activation;
}

}  // namespace detail

/// Forward pass. In Train mode each hidden neuron, in layer then index
/// order, consumes one draw u and is dropped (output 0) when
/// u < dropout_prob. Surviving activations are not rescaled. Eval mode never
/// draws and never drops. The output layer is never dropped.
template <UniformSource Rng>
std::vector<double> feed_forward(Network& net, std::span<const double> input, Mode mode, double dropout_prob,
                                 Rng& rng) {
  detail::check_input(net, input);
  std::copy(input.begin(), input.end(), net.outputs[0].begin());
  for (std::size_t layer = 1; layer < net.layers(); ++layer) {
    const bool hidden = net.is_hidden(layer);
    for (std::size_t n = 0; n < net.outputs[layer].size(); ++n) {
      if (hidden && mode == Mode::Train && rng.uniform() < dropout_prob) {
        net.dropped[layer][n] = true;
        net.outputs[layer][n] = 0;
        continue;
      }
      net.dropped[layer][n] = false;
      net.outputs[layer][n] =
          gate_calculate(net.activation, detail::pre_activation(net, layer, n, net.outputs[layer - 1]));
    }
  }
  return net.outputs.back();
}

namespace detail {
struct NoDraws {
  double uniform() const { throw Error("RNG consumed during an Eval-mode forward pass"); }
};
}  // namespace detail

/// Eval-mode forward pass; updates the network's transient outputs.
inline std::vector<double> feed_forward(Network& net, std::span<const double> input) {
  detail::NoDraws none;
  return feed_forward(net, input, Mode::Eval, 0.0, none);
}

/// Eval-mode pre-activations of every non-input layer (index 0 is empty).
/// Does not touch the network's transient state.
inline std::vector<std::vector<double>> pre_activations(const Network& net, std::span<const double> input) {
  detail::check_input(net, input);
  std::vector<std::vector<double>> pre(net.layers());
  std::vector<double> prev(input.begin(), input.end());
  for (std::size_t layer = 1; layer < net.layers(); ++layer) {
    pre[layer].resize(net.topology.layer_sizes[layer]);
    std::vector<double> out(pre[layer].size());
    for (std::size_t n = 0; n < out.size(); ++n) {
      pre[layer][n] = detail::pre_activation(net, layer, n, prev);
      out[n] = gate_calculate(net.activation, pre[layer][n]);
    }
    prev = std::move(out);
  }
  return pre;
}

/// Eval-mode outputs without mutating the network. Same arithmetic as
/// feed_forward(net, input).
inline std::vector<double> predict(const Network& net, std::span<const double> input) {
  detail::check_input(net, input);
  std::vector<double> prev(input.begin(), input.end());
  for (std::size_t layer = 1; layer < net.layers(); ++layer) {
    std::vector<double> out(net.topology.layer_sizes[layer]);
    for (std::size_t n = 0; n < out.size(); ++n)
      out[n] = gate_calculate(net.activation, detail::pre_activation(net, layer, n, prev));
    prev = std::move(out);
  }
  return prev;
}

/// Smallest hidden width satisfying the 2n + 1 rule for n inputs.
inline std::size_t hidden_width(std::size_t input_dim) {
  if (input_dim == 0) throw DomainError("hidden_width: input dimension must be positive");
  return 2 * input_dim + 1;
}

/// Visits every trainable parameter in serialization order: each weight
/// block in layer order ([dest][source], row-major), then every layer's
/// thresholds (input layer included).
template <typename Net, typename F>
  requires std::same_as<std::remove_const_t<Net>, Network>
void for_each_parameter(Net& net, F&& f) {
  for (auto& block : net.weights)
    for (auto& w : block.values()) f(w);
  for (auto& layer : net.thresholds)
    for (auto& theta : layer) f(theta);
}

inline std::size_t parameter_count(const Network& net) {
  return net.topology.synapse_count() + net.topology.neuron_count();
}

inline std::vector<double> flatten_parameters(const Network& net) {
  std::vector<double> flat;
  flat.reserve(parameter_count(net));
  for_each_parameter(net, [&](double v) { flat.push_back(v); });
  return flat;
}

/// prev_weights and prev_thresholds flattened in the same order.
inline std::vector<double> flatten_previous(const Network& net) {
  std::vector<double> flat;
  flat.reserve(parameter_count(net));
  for (const auto& block : net.prev_weights)
    for (double w : block.values()) flat.push_back(w);
  for (const auto& layer : net.prev_thresholds)
    for (double theta : layer) flat.push_back(theta);
  return flat;
}

inline bool parameters_finite(const Network& net) {
  bool ok = true;
  for_each_parameter(net, [&](double v) { ok = ok && std::isfinite(v); });
  return ok;
}

}  // namespace mlpforge
