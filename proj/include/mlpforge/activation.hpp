#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <string_view>

#include "mlpforge/error.hpp"

namespace mlpforge {

enum class Activation { Tanh, Sigmoid, LeakyStep };

/// Negative-side slope of the leaky step gate.
inline constexpr double kLeakyConstant = 0.01;

namespace detail {
inline void require_finite(double x, const char* what) {
  if (!std::isfinite(x)) throw DomainError(std::string(what) + ": non-finite argument");
}
}  // namespace detail

/// The gate nonlinearity f applied to a pre-activation.
inline double gate_calculate(Activation kind, double activation) {
  detail::require_finite(activation, "gate_calculate");
  switch (kind) {
    case Activation::Tanh:
      return std::tanh(activation);
    case Activation::Sigmoid:
      return 1.0 / (1.0 + std::exp(-activation));
    case Activation::LeakyStep:
      return activation < 0 ? activation * kLeakyConstant : activation;
  }
  throw DomainError("gate_calculate: unknown activation");
}

/// f' written in terms of the gate's output o = f(a), not of a itself.
/// LeakyStep treats o == 0 as the negative branch.
inline double gate_derivative(Activation kind, double output) {
  detail::require_finite(output, "gate_derivative");
  switch (kind) {
    case Activation::Tanh:
      return 1 - output * output;
    case Activation::Sigmoid:
      return output * (1 - output);
    case Activation::LeakyStep:
      return output > 0 ? 1.0 : kLeakyConstant;
  }
  throw DomainError("gate_derivative: unknown activation");
}

inline std::string_view to_string(Activation kind) {
  switch (kind) {
    case Activation::Tanh:
      return "tanh";
    case Activation::Sigmoid:
      return "sigmoid";
    case Activation::LeakyStep:
      return "leaky_step";
  }
  return "unknown";
}

/// Accepts the canonical tags plus "leaky"/"relu" as aliases for the step gate.
inline std::optional<Activation> parse_activation(std::string_view tag) {
  if (tag == "tanh") return Activation::Tanh;
  if (tag == "sigmoid") return Activation::Sigmoid;
  if (tag == "leaky_step" || tag == "leaky" || tag == "relu") return Activation::LeakyStep;
  return std::nullopt;
}

}  // namespace mlpforge
