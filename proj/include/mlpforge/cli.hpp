#pragma once

// Command-line front end: generate | train | eval | gradcheck.
//
// Exit statuses are a stable contract:
//   0 success, 1 I/O, 2 usage/config, 3 divergence, 4 gradcheck failure.

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <ios>
#include <limits>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "mlpforge/activation.hpp"
#include "mlpforge/data.hpp"
#include "mlpforge/error.hpp"
#include "mlpforge/io.hpp"
#include "mlpforge/network.hpp"
#include "mlpforge/numfmt.hpp"
#include "mlpforge/rng.hpp"
#include "mlpforge/train.hpp"

namespace mlpforge::cli {

enum ExitStatus : int { kOk = 0, kIoError = 1, kUsage = 2, kDiverged = 3, kGradcheckFailed = 4 };

/// Datasets are drawn from SplitMix64(seed); network initialization, dropout
/// and pattern draws use SplitMix64(seed ^ kModelStreamSalt). The split lets
/// `generate`, `train` and `eval` reproduce the same data from one seed.
inline constexpr std::uint64_t kModelStreamSalt = 0x6A09E667F3BCC909ULL;

inline SplitMix64 data_stream(std::uint64_t seed) { return SplitMix64(seed); }
inline SplitMix64 model_stream(std::uint64_t seed) { return SplitMix64(seed ^ kModelStreamSalt); }

// ---------------------------------------------------------------------------
// Dataset specs: or | and | xor | linear3:<count> | csv:<path>

struct DatasetSpec {
  enum class Kind { Gate, Linear3, Csv } kind = Kind::Gate;
  LogicGate gate = LogicGate::Or;
  std::size_t count = 0;
  std::string path;
};

namespace detail {

inline std::optional<std::uint64_t> parse_u64(std::string_view text) {
  text = trim(text);
  if (text.empty()) return std::nullopt;
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || ptr != text.data() + text.size()) return std::nullopt;
  return v;
}

inline std::size_t parse_positive(std::string_view key, std::string_view text) {
  const auto v = parse_u64(text);
  if (!v || *v == 0) throw ConfigError(std::string(key) + " must be a positive integer, got '" + std::string(text) + "'");
  return static_cast<std::size_t>(*v);
}

inline double parse_real(std::string_view key, std::string_view text) {
  const auto v = parse_double(text);
  if (!v) throw ConfigError(std::string(key) + " must be a finite number, got '" + std::string(text) + "'");
  return *v;
}

inline bool parse_bool(std::string_view key, std::string_view text) {
  text = trim(text);
  if (text == "true" || text == "1" || text == "yes") return true;
  if (text == "false" || text == "0" || text == "no") return false;
  throw ConfigError(std::string(key) + " must be true or false, got '" + std::string(text) + "'");
}

}  // namespace detail

inline DatasetSpec parse_dataset_spec(std::string_view text) {
  text = trim(text);
  DatasetSpec spec;
  if (text == "or" || text == "and" || text == "xor") {
    spec.kind = DatasetSpec::Kind::Gate;
    spec.gate = text == "or" ? LogicGate::Or : text == "and" ? LogicGate::And : LogicGate::Xor;
  } else if (text.starts_with("linear3:")) {
    spec.kind = DatasetSpec::Kind::Linear3;
    spec.count = detail::parse_positive("linear3 count", text.substr(8));
  } else if (text.starts_with("csv:") && text.size() > 4) {
    spec.kind = DatasetSpec::Kind::Csv;
    spec.path = std::string(text.substr(4));
  } else {
    throw ConfigError("unknown dataset spec '" + std::string(text) + "' (expected or|and|xor|linear3:N|csv:PATH)");
  }
  return spec;
}

/// Throws ConfigError for a missing seed, std::ios_base::failure for an
/// unreadable CSV and ParseError for a malformed one.
inline Dataset materialize(const DatasetSpec& spec, std::optional<std::uint64_t> seed) {
  switch (spec.kind) {
    case DatasetSpec::Kind::Gate:
      return logic_gate_dataset(spec.gate);
    case DatasetSpec::Kind::Linear3: {
      if (!seed) throw ConfigError("linear3 datasets need a seed (--seed or MLPFORGE_SEED)");
      auto rng = data_stream(*seed);
      return random_linear_dataset(spec.count, rng);
    }
    case DatasetSpec::Kind::Csv:
      return load_csv(spec.path);
  }
  throw ConfigError("unreachable dataset kind");
}

// ---------------------------------------------------------------------------
// Run configuration

enum class NormalizeMode { None, Global, PerFeature };

struct RunConfig {
  Activation activation = Activation::Sigmoid;
  /// Layer widths; std::nullopt entries are "auto" (hidden_width of the input).
  /// Empty means fully automatic: [inputs, hidden_width(inputs), outputs].
  std::vector<std::optional<std::size_t>> layers;
  std::size_t epochs = 1000;
  Hyperparams hyper;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> dataset;
  NormalizeMode normalize = NormalizeMode::None;
  std::size_t log_every = 1000;
  std::optional<double> stop_below_rms;
};

inline std::vector<std::optional<std::size_t>> parse_layers(std::string_view text) {
  text = trim(text);
  std::vector<std::optional<std::size_t>> layers;
  if (text == "auto") return layers;
  std::size_t start = 0;
  while (true) {
    const auto comma = text.find(',', start);
    const auto cell = trim(text.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start));
    if (cell == "auto")
      layers.emplace_back(std::nullopt);
    else
      layers.emplace_back(detail::parse_positive("layers", cell));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  if (layers.size() < 3) throw ConfigError("layers needs at least 3 entries, got '" + std::string(text) + "'");
  if (!layers.front() || !layers.back()) throw ConfigError("input and output widths cannot be 'auto'");
  return layers;
}

/// Applies one key=value setting. Keys use underscores; flags map onto them.
inline void apply_setting(RunConfig& cfg, std::string_view key, std::string_view value) {
  value = trim(value);
  if (key == "activation") {
    const auto kind = parse_activation(value);
    if (!kind) throw ConfigError("unknown activation '" + std::string(value) + "' (tanh|sigmoid|leaky_step)");
    cfg.activation = *kind;
  } else if (key == "layers") {
    cfg.layers = parse_layers(value);
  } else if (key == "epochs") {
    cfg.epochs = detail::parse_positive(key, value);
  } else if (key == "rate") {
    cfg.hyper.rate = detail::parse_real(key, value);
  } else if (key == "learning_rate") {
    cfg.hyper.learning_rate = detail::parse_real(key, value);
  } else if (key == "momentum") {
    cfg.hyper.momentum = detail::parse_real(key, value);
  } else if (key == "dropout") {
    cfg.hyper.dropout_prob = detail::parse_real(key, value);
  } else if (key == "seed") {
    const auto seed = detail::parse_u64(value);
    if (!seed) throw ConfigError("seed must be an unsigned 64-bit integer, got '" + std::string(value) + "'");
    cfg.seed = *seed;
  } else if (key == "dataset") {
    parse_dataset_spec(value);
    cfg.dataset = std::string(value);
  } else if (key == "normalize") {
    if (value == "none")
      cfg.normalize = NormalizeMode::None;
    else if (value == "global")
      cfg.normalize = NormalizeMode::Global;
    else if (value == "per_feature")
      cfg.normalize = NormalizeMode::PerFeature;
    else
      throw ConfigError("normalize must be global|per_feature|none, got '" + std::string(value) + "'");
  } else if (key == "paper_faithful") {
    cfg.hyper.paper_faithful = detail::parse_bool(key, value);
  } else if (key == "log_every") {
    cfg.log_every = detail::parse_positive(key, value);
  } else if (key == "stop_below_rms") {
    const double v = detail::parse_real(key, value);
    if (!(v > 0)) throw ConfigError("stop_below_rms must be > 0");
    cfg.stop_below_rms = v;
  } else {
    throw ConfigError("unknown setting '" + std::string(key) + "'");
  }
}

/// Named experiment presets.
inline RunConfig preset(std::string_view name) {
  RunConfig cfg;
  if (name == "or-paper") {
    cfg.activation = Activation::Sigmoid;
    cfg.layers = {2, 2, 1};
    cfg.epochs = 150000;
    cfg.dataset = "or";
    cfg.normalize = NormalizeMode::None;
  } else if (name == "linear3-paper") {
    cfg.activation = Activation::Sigmoid;
    cfg.layers = {3, 7, 1};
    cfg.epochs = 100000;
    cfg.dataset = "linear3:1000";
    cfg.normalize = NormalizeMode::Global;
  } else {
    throw ConfigError("unknown preset '" + std::string(name) + "' (or-paper|linear3-paper)");
  }
  cfg.hyper = Hyperparams{};
  cfg.log_every = 1000;
  return cfg;
}

/// Flat "key=value" lines; '#' starts a comment line.
inline void apply_config_text(RunConfig& cfg, std::istream& is) {
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(is, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto body = trim(line);
    if (body.empty() || body.front() == '#') continue;
    const auto eq = body.find('=');
    if (eq == std::string_view::npos)
      throw ConfigError("config line " + std::to_string(line_no) + ": expected key=value");
    try {
      apply_setting(cfg, trim(body.substr(0, eq)), body.substr(eq + 1));
    } catch (const ConfigError& e) {
      throw ConfigError("config line " + std::to_string(line_no) + ": " + e.what());
    }
  }
}

inline std::optional<std::uint64_t> seed_from_env() {
  const char* env = std::getenv("MLPFORGE_SEED");
  if (!env || !*env) return std::nullopt;
  const auto seed = detail::parse_u64(env);
  if (!seed) throw ConfigError("MLPFORGE_SEED must be an unsigned 64-bit integer");
  return seed;
}

inline Topology resolve_topology(const RunConfig& cfg, std::size_t inputs, std::size_t outputs) {
  Topology t;
  if (cfg.layers.empty()) {
    t.layer_sizes = {inputs, hidden_width(inputs), outputs};
  } else {
    const std::size_t in = *cfg.layers.front();
    for (const auto& width : cfg.layers) t.layer_sizes.push_back(width ? *width : hidden_width(in));
  }
  t.validate();
  if (t.inputs() != inputs || t.outputs() != outputs)
    throw ConfigError("layers " + std::to_string(t.inputs()) + "..." + std::to_string(t.outputs()) +
                      " do not match dataset dimensions " + std::to_string(inputs) + "->" + std::to_string(outputs));
  return t;
}

namespace detail {

inline std::string format_vector(std::span<const double> v) {
  std::string s = "[";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + format_double(v[i]);
  return s + "]";
}

inline std::string read_file(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::ios_base::failure("cannot open " + path);
  std::ostringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

/// Maps library exceptions onto exit statuses.
template <typename F>
int guarded(std::ostream& err, F&& body) {
  try {
    return body();
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const DimensionError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const LoadError& e) {
    err << "error: cannot load model: " << e.what() << '\n';
    return kIoError;
  } catch (const std::ios_base::failure& e) {
    err << "error: " << e.what() << '\n';
    return kIoError;
  }
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Commands

inline int cmd_generate(const std::string& spec_text, const std::string& out_path,
                        std::optional<std::uint64_t> seed, std::ostream& out, std::ostream& err) {
  return detail::guarded(err, [&] {
    const DatasetSpec spec = parse_dataset_spec(spec_text);
    if (spec.kind == DatasetSpec::Kind::Csv) throw ConfigError("generate cannot produce a csv: dataset");
    if (!seed) seed = seed_from_env();
    const Dataset data = materialize(spec, seed);
    save_csv(data, out_path);
    out << "wrote " << data.size() << " samples to " << out_path << '\n';
    return int{kOk};
  });
}

struct TrainPaths {
  std::optional<std::string> model_out;
  std::optional<std::string> log_out;
};

inline int cmd_train(RunConfig cfg, const TrainPaths& paths, std::ostream& out, std::ostream& err) {
  return detail::guarded(err, [&] {
    cfg.hyper.validate();
    if (!cfg.seed) cfg.seed = seed_from_env();
    if (!cfg.seed) throw ConfigError("a seed is required (--seed, config seed=, or MLPFORGE_SEED)");
    if (!cfg.dataset) throw ConfigError("no dataset given (--dataset or --preset)");

    const Dataset raw = materialize(parse_dataset_spec(*cfg.dataset), cfg.seed);
    std::optional<Normalizer> norm;
    if (cfg.normalize != NormalizeMode::None)
      norm = fit_normalizer(raw, cfg.normalize == NormalizeMode::Global ? NormalizationMode::Global
                                                                         : NormalizationMode::PerFeature);
    const Dataset data = norm ? normalize(*norm, raw) : raw;
    const Topology topology = resolve_topology(cfg, data.input_dim(), data.target_dim());

    auto rng = model_stream(*cfg.seed);
    Network net = build_network(cfg.activation, topology, rng);

    TrainingOptions options;
    options.stop_below_rms = cfg.stop_below_rms;
    options.on_log = [&out](const LogEntry& e) { out << "epoch=" << e.epoch << " rms=" << format_double(e.rms) << '\n'; };
    TrainingLog log = run_training(net, data, cfg.epochs, cfg.hyper, cfg.log_every, rng, options);
    log.config.seed = *cfg.seed;

    if (paths.log_out) write_training_log(log, *paths.log_out);
    if (log.status == RunStatus::Diverged) {
      err << "error: training diverged at epoch " << log.epochs_run - 1 << "; last finite epoch: "
          << (log.last_finite_epoch ? std::to_string(*log.last_finite_epoch) : std::string("none")) << '\n';
      return int{kDiverged};
    }
    if (log.status == RunStatus::StoppedBelowThreshold)
      out << "stopped at epoch " << log.entries.back().epoch << ": rms below "
          << format_double(*cfg.stop_below_rms) << '\n';
    if (paths.model_out) save_model_file(*paths.model_out, net, norm);
    return int{kOk};
  });
}

struct EvalOptions {
  std::string model_path;
  std::string dataset;
  bool denormalize = false;
  bool paper_faithful = false;
  double dropout = Hyperparams{}.dropout_prob;
  std::optional<std::uint64_t> seed;
};

/// Prints "input=<v> computed=<o> expected=<t>" per pattern, then "rms=<e>".
/// With an embedded normalizer the raw inputs are scaled before the forward
/// pass; --denormalize reports outputs and RMS in the original units.
inline int cmd_eval(EvalOptions opts, std::ostream& out, std::ostream& err) {
  return detail::guarded(err, [&] {
    if (!opts.seed) opts.seed = seed_from_env();
    if (!(opts.dropout >= 0 && opts.dropout <= 1)) throw ConfigError("dropout must lie in [0, 1]");
    const ModelBundle bundle = load_model_file(opts.model_path);
    if (opts.denormalize && !bundle.normalizer)
      throw ConfigError("--denormalize needs a model with embedded normalizer bounds; this model has none");
    if (opts.paper_faithful && !opts.seed) throw ConfigError("--paper-faithful evaluation needs a seed");

    const Dataset raw = materialize(parse_dataset_spec(opts.dataset), opts.seed);
    Network net = bundle.network;
    if (raw.input_dim() != net.topology.inputs() || raw.target_dim() != net.topology.outputs())
      throw DimensionError("dataset is " + std::to_string(raw.input_dim()) + "->" +
                           std::to_string(raw.target_dim()) + ", model is " + std::to_string(net.topology.inputs()) +
                           "->" + std::to_string(net.topology.outputs()));

    const auto& norm = bundle.normalizer;
    auto rng = model_stream(opts.seed.value_or(0));
    double sse = 0;
    for (const Sample& s : raw) {
      const std::vector<double> x = norm ? normalize_input(*norm, s.input) : s.input;
      std::vector<double> computed =
          opts.paper_faithful ? feed_forward(net, x, Mode::Train, opts.dropout, rng) : predict(net, x);
      std::vector<double> expected = s.target;
      for (std::size_t k = 0; k < computed.size(); ++k) {
        if (opts.denormalize)
          computed[k] = denormalize_output(*norm, computed[k], k);
        else if (norm)
          expected[k] = normalize_output(*norm, expected[k], k);
        sse += (computed[k] - expected[k]) * (computed[k] - expected[k]);
      }
      out << "input=" << detail::format_vector(s.input) << " computed=" << detail::format_vector(computed)
          << " expected=" << detail::format_vector(expected) << '\n';
    }
    out << "rms=" << format_double(std::sqrt(sse / static_cast<double>(raw.size()))) << '\n';
    return int{kOk};
  });
}

struct GradcheckOptions {
  std::string layers = "2,3,1";
  std::string activation = "sigmoid";
  std::optional<std::uint64_t> seed;
  double h = 1e-5;
};

/// Pre-activations closer than this to the leaky step's kink are avoided.
inline constexpr double kKinkMargin = 1e-3;

inline double gradcheck_tolerance(Activation kind) { return kind == Activation::LeakyStep ? 1e-3 : 1e-4; }

/// Min |pre-activation| over every non-input neuron.
inline double kink_distance(const Network& net, std::span<const double> input) {
  double closest = std::numeric_limits<double>::infinity();
  for (const auto& layer : pre_activations(net, input))
    for (double a : layer) closest = std::min(closest, std::abs(a));
  return closest;
}

inline int cmd_gradcheck(GradcheckOptions opts, std::ostream& out, std::ostream& err) {
  return detail::guarded(err, [&] {
    if (!(opts.h > 0) || !std::isfinite(opts.h)) throw ConfigError("h must be > 0");
    const auto kind = parse_activation(opts.activation);
    if (!kind) throw ConfigError("unknown activation '" + opts.activation + "'");
    if (!opts.seed) opts.seed = seed_from_env();
    if (!opts.seed) throw ConfigError("a seed is required (--seed or MLPFORGE_SEED)");
    const auto widths = parse_layers(opts.layers);
    Topology topology;
    for (const auto& w : widths) topology.layer_sizes.push_back(w ? *w : hidden_width(*widths.front()));

    auto rng = model_stream(*opts.seed);
    const Network net = build_network(*kind, topology, rng);
    std::vector<double> input(topology.inputs()), target(topology.outputs());
    for (int attempt = 0;; ++attempt) {
      for (double& x : input) x = rng.uniform();
      for (double& t : target) t = rng.uniform();
      if (*kind != Activation::LeakyStep || kink_distance(net, input) >= kKinkMargin) break;
      if (attempt == 1000) throw DomainError("no kink-free pattern found for this seed");
    }

    const auto analytic = compute_gradients(net, input, target);
    const auto numeric = finite_difference_gradients(net, input, target, opts.h);
    const auto cmp = compare_gradients(analytic, numeric);
    const double tol = gradcheck_tolerance(*kind);
    out << "parameters=" << analytic.size() << " checked=" << cmp.checked
        << " max_rel_error=" << format_double(cmp.max_relative_error) << " tolerance=" << format_double(tol) << '\n';
    const bool pass = cmp.max_relative_error < tol;
    out << (pass ? "gradcheck passed" : "gradcheck FAILED") << '\n';
    return int{pass ? kOk : kGradcheckFailed};
  });
}

// ---------------------------------------------------------------------------
// Argument parsing

/// Entry point shared by the executable and the tests. `args` excludes the
/// program name.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Feed-forward network trainer with momentum backprop and dropout", "mlpforge"};
  app.require_subcommand(1);

  // Options shared by several subcommands.
  std::optional<std::uint64_t> seed;
  std::string out_path, log_path, config_path, preset_name;

  // generate
  auto* gen = app.add_subcommand("generate", "Write a dataset as CSV");
  std::string gen_spec;
  gen->add_option("dataset", gen_spec, "or|and|xor|linear3:N")->required();
  gen->add_option("--seed", seed, "Seed for random datasets");
  gen->add_option("--out", out_path, "Output CSV path")->required();

  // train
  auto* train = app.add_subcommand("train", "Train a network and write model and log");
  train->add_option("--preset", preset_name, "or-paper|linear3-paper");
  train->add_option("--config", config_path, "Flat key=value config file");
  train->add_option("--out", out_path, "Model output path");
  train->add_option("--log", log_path, "Training log output path");
  const std::vector<std::pair<std::string, std::string>> train_flags = {
      {"--activation", "activation"}, {"--layers", "layers"},     {"--epochs", "epochs"},
      {"--rate", "rate"},             {"--learning-rate", "learning_rate"},
      {"--momentum", "momentum"},     {"--dropout", "dropout"},   {"--seed", "seed"},
      {"--dataset", "dataset"},       {"--normalize", "normalize"},
      {"--log-every", "log_every"},   {"--stop-below-rms", "stop_below_rms"},
  };
  std::map<std::string, std::string> train_values;
  std::vector<std::pair<CLI::Option*, std::string>> train_options;
  for (const auto& [flag, key] : train_flags)
    train_options.emplace_back(train->add_option(flag, train_values[key]), key);
  bool train_paper_faithful = false;
  train->add_flag("--paper-faithful", train_paper_faithful, "Dropout in evaluation and Train-mode error logging");

  // eval
  auto* eval = app.add_subcommand("eval", "Evaluate a saved model on a dataset");
  EvalOptions eval_opts;
  eval->add_option("model", eval_opts.model_path, "Model file")->required();
  eval->add_option("--dataset", eval_opts.dataset, "or|and|xor|linear3:N|csv:PATH")->required();
  eval->add_flag("--denormalize", eval_opts.denormalize, "Report outputs in original units");
  eval->add_flag("--paper-faithful", eval_opts.paper_faithful, "Apply dropout during evaluation");
  eval->add_option("--dropout", eval_opts.dropout, "Dropout probability for --paper-faithful");
  eval->add_option("--seed", seed, "Seed for random datasets and dropout draws");

  // gradcheck
  auto* grad = app.add_subcommand("gradcheck", "Compare analytic and finite-difference gradients");
  GradcheckOptions grad_opts;
  grad->add_option("--layers", grad_opts.layers, "Comma-separated widths");
  grad->add_option("--activation", grad_opts.activation, "tanh|sigmoid|leaky_step");
  grad->add_option("--seed", seed, "Seed");
  grad->set_help_flag("--help", "Print this help message and exit");  // frees the name "h"
  grad->add_option("--h", grad_opts.h, "Central-difference step");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n' << "run with --help for usage\n";
    return kUsage;
  }

  if (gen->parsed()) return cmd_generate(gen_spec, out_path, seed, out, err);

  if (train->parsed()) {
    RunConfig cfg;
    const int status = detail::guarded(err, [&] {
      if (!preset_name.empty()) cfg = preset(preset_name);
      if (!config_path.empty()) {
        std::istringstream text(detail::read_file(config_path));
        apply_config_text(cfg, text);
      }
      for (const auto& [option, key] : train_options)
        if (option->count() > 0) apply_setting(cfg, key, train_values[key]);
      if (train_paper_faithful) cfg.hyper.paper_faithful = true;
      return int{kOk};
    });
    if (status != kOk) return status;
    TrainPaths paths;
    if (!out_path.empty()) paths.model_out = out_path;
    if (!log_path.empty()) paths.log_out = log_path;
    return cmd_train(cfg, paths, out, err);
  }

  if (eval->parsed()) {
    eval_opts.seed = seed;
    return cmd_eval(eval_opts, out, err);
  }

  grad_opts.seed = seed;
  return cmd_gradcheck(grad_opts, out, err);
}

}  // namespace mlpforge::cli
