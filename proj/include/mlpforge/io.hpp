#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "mlpforge/data.hpp"
#include "mlpforge/error.hpp"
#include "mlpforge/network.hpp"
#include "mlpforge/numfmt.hpp"
#include "mlpforge/train.hpp"

namespace mlpforge {

inline constexpr int kModelFormatVersion = 1;
inline constexpr int kLogFormatVersion = 1;

struct ModelBundle {
  Network network;
  std::optional<Normalizer> normalizer;
};

namespace detail {

/// JSON number text that round-trips bit-exactly. "-0" would come back as
/// the integer 0, so negative zero is spelled as a float.
inline std::string json_number(double v) {
  if (!std::isfinite(v)) throw DomainError("cannot serialize non-finite parameter");
  if (v == 0 && std::signbit(v)) return "-0.0";
  return format_double(v);
}

inline void write_array(std::ostream& os, std::span<const double> values) {
  os << '[';
  for (std::size_t i = 0; i < values.size(); ++i) os << (i ? ", " : "") << json_number(values[i]);
  os << ']';
}

inline void write_blocks(std::ostream& os, const std::vector<WeightMatrix>& blocks) {
  os << "[\n";
  for (std::size_t k = 0; k < blocks.size(); ++k) {
    const WeightMatrix& w = blocks[k];
    os << "    [";
    for (std::size_t dst = 0; dst < w.rows(); ++dst) {
      os << (dst ? ", " : "");
      write_array(os, w.values().subspan(dst * w.cols(), w.cols()));
    }
    os << (k + 1 < blocks.size() ? "],\n" : "]\n");
  }
  os << "  ]";
}

inline void write_layers(std::ostream& os, const std::vector<std::vector<double>>& layers) {
  os << "[\n";
  for (std::size_t k = 0; k < layers.size(); ++k) {
    os << "    ";
    write_array(os, layers[k]);
    os << (k + 1 < layers.size() ? ",\n" : "\n");
  }
  os << "  ]";
}

}  // namespace detail

/// Deterministic text serialization: fixed key order, arrays in the
/// parameter order of flatten_parameters(), shortest round-trip decimals.
inline std::string save_model(const Network& net, const std::optional<Normalizer>& norm = std::nullopt) {
  std::ostringstream os;
  os << "{\n";
  os << "  \"format_version\": " << kModelFormatVersion << ",\n";
  os << "  \"activation\": \"" << to_string(net.activation) << "\",\n";
  os << "  \"layer_sizes\": [";
  for (std::size_t k = 0; k < net.topology.layer_sizes.size(); ++k)
    os << (k ? ", " : "") << net.topology.layer_sizes[k];
  os << "],\n";
  os << "  \"weights\": ";
  detail::write_blocks(os, net.weights);
  os << ",\n  \"prev_weights\": ";
  detail::write_blocks(os, net.prev_weights);
  os << ",\n  \"thresholds\": ";
  detail::write_layers(os, net.thresholds);
  os << ",\n  \"prev_thresholds\": ";
  detail::write_layers(os, net.prev_thresholds);
  os << ",\n  \"normalizer\": ";
  if (!norm) {
    os << "null";
  } else {
    os << "{\"min_input\": " << detail::json_number(norm->min_input)
       << ", \"max_input\": " << detail::json_number(norm->max_input)
       << ", \"min_output\": " << detail::json_number(norm->min_output)
       << ", \"max_output\": " << detail::json_number(norm->max_output);
    if (norm->mode == NormalizationMode::PerFeature) {
      os << ", \"mode\": \"per_feature\", \"feature_min_input\": ";
      detail::write_array(os, norm->feature_min_input);
      os << ", \"feature_max_input\": ";
      detail::write_array(os, norm->feature_max_input);
      os << ", \"feature_min_output\": ";
      detail::write_array(os, norm->feature_min_output);
      os << ", \"feature_max_output\": ";
      detail::write_array(os, norm->feature_max_output);
    }
    os << '}';
  }
  os << "\n}\n";
  return os.str();
}

namespace detail {

using nlohmann::json;

inline const json& member(const json& obj, const char* key) {
  auto it = obj.find(key);
  if (it == obj.end()) throw LoadError(std::string("missing field '") + key + "'");
  return *it;
}

inline double number(const json& v, const std::string& where) {
  if (!v.is_number()) throw LoadError(where + ": expected a number");
  return v.get<double>();
}

inline std::vector<double> number_array(const json& v, std::size_t expected, const std::string& where) {
  if (!v.is_array() || v.size() != expected)
    throw LoadError(where + ": expected an array of " + std::to_string(expected) + " numbers");
  std::vector<double> out;
  out.reserve(expected);
  for (const json& x : v) out.push_back(number(x, where));
  return out;
}

inline void read_blocks(const json& v, std::vector<WeightMatrix>& blocks, const char* name) {
  if (!v.is_array() || v.size() != blocks.size())
    throw LoadError(std::string(name) + ": expected " + std::to_string(blocks.size()) + " weight blocks");
  for (std::size_t k = 0; k < blocks.size(); ++k) {
    WeightMatrix& w = blocks[k];
    const std::string where = std::string(name) + "[" + std::to_string(k) + "]";
    if (!v[k].is_array() || v[k].size() != w.rows())
      throw LoadError(where + ": expected " + std::to_string(w.rows()) + " rows");
    for (std::size_t dst = 0; dst < w.rows(); ++dst) {
      const auto row = number_array(v[k][dst], w.cols(), where + "[" + std::to_string(dst) + "]");
      for (std::size_t src = 0; src < w.cols(); ++src) w(dst, src) = row[src];
    }
  }
}

inline void read_layers(const json& v, std::vector<std::vector<double>>& layers, const char* name) {
  if (!v.is_array() || v.size() != layers.size())
    throw LoadError(std::string(name) + ": expected " + std::to_string(layers.size()) + " layers");
  for (std::size_t k = 0; k < layers.size(); ++k)
    layers[k] = number_array(v[k], layers[k].size(), std::string(name) + "[" + std::to_string(k) + "]");
}

}  // namespace detail

/// Rebuilds a network saved by save_model. Transient fields (outputs,
/// errors, dropout mask) come back zeroed.
inline ModelBundle load_model(std::string_view text) {
  using detail::json;
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw LoadError(std::string("malformed model file: ") + e.what());
  }
  if (!doc.is_object()) throw LoadError("model file must be a JSON object");

  const json& version = detail::member(doc, "format_version");
  if (!version.is_number_integer()) throw LoadError("format_version must be an integer");
  if (version.get<long long>() != kModelFormatVersion) throw UnsupportedVersionError(version.get<long long>());

  const json& tag = detail::member(doc, "activation");
  if (!tag.is_string()) throw LoadError("activation must be a string");
  const auto kind = parse_activation(tag.get<std::string>());
  if (!kind) throw LoadError("unknown activation '" + tag.get<std::string>() + "'");

  const json& sizes = detail::member(doc, "layer_sizes");
  if (!sizes.is_array()) throw LoadError("layer_sizes must be an array");
  Topology topology;
  for (const json& s : sizes) {
    if (!s.is_number_unsigned() || s.get<std::uint64_t>() == 0)
      throw LoadError("layer_sizes must hold positive integers");
    topology.layer_sizes.push_back(s.get<std::size_t>());
  }
  try {
    topology.validate();
  } catch (const ConfigError& e) {
    throw LoadError(e.what());
  }

  ModelBundle bundle{make_zero_network(*kind, topology), std::nullopt};
  Network& net = bundle.network;
  detail::read_blocks(detail::member(doc, "weights"), net.weights, "weights");
  detail::read_blocks(detail::member(doc, "prev_weights"), net.prev_weights, "prev_weights");
  detail::read_layers(detail::member(doc, "thresholds"), net.thresholds, "thresholds");
  detail::read_layers(detail::member(doc, "prev_thresholds"), net.prev_thresholds, "prev_thresholds");

  const json& norm = detail::member(doc, "normalizer");
  if (!norm.is_null()) {
    if (!norm.is_object()) throw LoadError("normalizer must be an object or null");
    Normalizer n;
    n.min_input = detail::number(detail::member(norm, "min_input"), "normalizer.min_input");
    n.max_input = detail::number(detail::member(norm, "max_input"), "normalizer.max_input");
    n.min_output = detail::number(detail::member(norm, "min_output"), "normalizer.min_output");
    n.max_output = detail::number(detail::member(norm, "max_output"), "normalizer.max_output");
    if (auto mode = norm.find("mode"); mode != norm.end()) {
      if (*mode != "per_feature") throw LoadError("normalizer.mode must be \"per_feature\" when present");
      n.mode = NormalizationMode::PerFeature;
      const std::size_t in = topology.inputs(), out = topology.outputs();
      n.feature_min_input = detail::number_array(detail::member(norm, "feature_min_input"), in, "feature_min_input");
      n.feature_max_input = detail::number_array(detail::member(norm, "feature_max_input"), in, "feature_max_input");
      n.feature_min_output =
          detail::number_array(detail::member(norm, "feature_min_output"), out, "feature_min_output");
      n.feature_max_output =
          detail::number_array(detail::member(norm, "feature_max_output"), out, "feature_max_output");
    }
    bundle.normalizer = std::move(n);
  }
  return bundle;
}

inline void save_model_file(const std::filesystem::path& path, const Network& net,
                            const std::optional<Normalizer>& norm = std::nullopt) {
  const std::string text = save_model(net, norm);
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::ios_base::failure("cannot open " + path.string() + " for writing");
  os << text;
  os.flush();
  if (!os) throw std::ios_base::failure("write failed: " + path.string());
}

inline ModelBundle load_model_file(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::ios_base::failure("cannot open " + path.string());
  const std::string text{std::istreambuf_iterator<char>(is), std::istreambuf_iterator<char>()};
  return load_model(text);
}

// ---------------------------------------------------------------------------
// Training log: "format_version,1", "# key=value" config lines, then one
// "epoch,<i>,rms,<err>" row per entry.

inline std::string_view to_string(RunStatus status) {
  switch (status) {
    case RunStatus::Completed: return "completed";
    case RunStatus::StoppedBelowThreshold: return "stopped_below_threshold";
    case RunStatus::Diverged: return "diverged";
  }
  return "unknown";
}

inline std::string format_training_log(const TrainingLog& log) {
  const TrainingConfig& c = log.config;
  std::ostringstream os;
  os << "format_version," << kLogFormatVersion << '\n';
  os << "# activation=" << to_string(c.activation) << '\n';
  os << "# layers=";
  for (std::size_t k = 0; k < c.topology.layer_sizes.size(); ++k) os << (k ? "," : "") << c.topology.layer_sizes[k];
  os << '\n';
  os << "# rate=" << format_double(c.hyper.rate) << '\n';
  os << "# learning_rate=" << format_double(c.hyper.learning_rate) << '\n';
  os << "# momentum=" << format_double(c.hyper.momentum) << '\n';
  os << "# dropout=" << format_double(c.hyper.dropout_prob) << '\n';
  os << "# paper_faithful=" << (c.hyper.paper_faithful ? "true" : "false") << '\n';
  os << "# seed=" << c.seed << '\n';
  os << "# epochs=" << c.epochs << '\n';
  os << "# log_every=" << c.log_every << '\n';
  os << "# status=" << to_string(log.status) << '\n';
  os << "# epochs_run=" << log.epochs_run << '\n';
  for (const LogEntry& e : log.entries) os << "epoch," << e.epoch << ",rms," << format_double(e.rms) << '\n';
  return os.str();
}

inline void write_training_log(const TrainingLog& log, const std::filesystem::path& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::ios_base::failure("cannot open " + path.string() + " for writing");
  os << format_training_log(log);
  os.flush();
  if (!os) throw std::ios_base::failure("write failed: " + path.string());
}

}  // namespace mlpforge
