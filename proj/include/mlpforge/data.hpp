#pragma once

#include <algorithm>
#include <cstddef>
#include <filesystem>
#include <fstream>
#include <istream>
#include <ostream>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <tuple>
#include <utility>
#include <vector>

#include "mlpforge/error.hpp"
#include "mlpforge/numfmt.hpp"
#include "mlpforge/rng.hpp"

namespace mlpforge {

struct Sample {
  std::vector<double> input;
  std::vector<double> target;

  friend bool operator==(const Sample&, const Sample&) = default;
};

/// Ordered (input, target) pairs with fixed dimensions.
class Dataset {
 public:
  Dataset(std::size_t input_dim, std::size_t target_dim) : input_dim_(input_dim), target_dim_(target_dim) {
    if (input_dim == 0 || target_dim == 0) throw DimensionError("dataset dimensions must be positive");
  }

  void push_back(std::vector<double> input, std::vector<double> target) {
    if (input.size() != input_dim_ || target.size() != target_dim_)
      throw DimensionError("sample is " + std::to_string(input.size()) + "->" + std::to_string(target.size()) +
                           ", dataset is " + std::to_string(input_dim_) + "->" + std::to_string(target_dim_));
    pairs_.push_back({std::move(input), std::move(target)});
  }

  std::size_t input_dim() const noexcept { return input_dim_; }
  std::size_t target_dim() const noexcept { return target_dim_; }
  std::size_t size() const noexcept { return pairs_.size(); }
  bool empty() const noexcept { return pairs_.empty(); }

  const Sample& operator[](std::size_t i) const { return pairs_[i]; }
  Sample& operator[](std::size_t i) { return pairs_[i]; }
  auto begin() const noexcept { return pairs_.begin(); }
  auto end() const noexcept { return pairs_.end(); }
  auto begin() noexcept { return pairs_.begin(); }
  auto end() noexcept { return pairs_.end(); }

  friend bool operator==(const Dataset&, const Dataset&) = default;

 private:
  std::size_t input_dim_;
  std::size_t target_dim_;
  std::vector<Sample> pairs_;
};

enum class LogicGate { Or, And, Xor };

/// Truth table of a two-input gate in lexicographic input order.
inline Dataset logic_gate_dataset(LogicGate gate) {
  Dataset data(2, 1);
  for (int a = 0; a <= 1; ++a) {
    for (int b = 0; b <= 1; ++b) {
      int y = 0;
      switch (gate) {
        case LogicGate::Or: y = a | b; break;
        case LogicGate::And: y = a & b; break;
        case LogicGate::Xor: y = a ^ b; break;
      }
      data.push_back({double(a), double(b)}, {double(y)});
    }
  }
  return data;
}

/// `count` samples of t = x1 + x2 - x3 with x1 in [-60, 40), x2 in [-40, 60)
/// and x3 in [-50, 50), drawn x1, x2, x3 per sample.
template <UniformSource Rng>
Dataset random_linear_dataset(std::size_t count, Rng& rng) {
  if (count == 0) throw DomainError("random_linear_dataset: count must be positive");
  Dataset data(3, 1);
  for (std::size_t i = 0; i < count; ++i) {
    const double x1 = rng.uniform() * 100 - 60;
    const double x2 = rng.uniform() * 100 - 40;
    const double x3 = rng.uniform() * 100 - 50;
    data.push_back({x1, x2, x3}, {x1 + x2 - x3});
  }
  return data;
}

// ---------------------------------------------------------------------------
// Min-max scaling

enum class NormalizationMode { Global, PerFeature };

/// Min-max bounds. In Global mode one scalar pair covers every input
/// component and one covers every target component. PerFeature mode adds
/// per-column bounds and uses those instead; the scalars then still hold
/// the global extrema.
struct Normalizer {
  double min_input = 0;
  double max_input = 1;
  double min_output = 0;
  double max_output = 1;

  NormalizationMode mode = NormalizationMode::Global;
  std::vector<double> feature_min_input, feature_max_input;
  std::vector<double> feature_min_output, feature_max_output;

  double input_min(std::size_t j) const { return mode == NormalizationMode::Global ? min_input : feature_min_input.at(j); }
  double input_max(std::size_t j) const { return mode == NormalizationMode::Global ? max_input : feature_max_input.at(j); }
  double output_min(std::size_t j) const { return mode == NormalizationMode::Global ? min_output : feature_min_output.at(j); }
  double output_max(std::size_t j) const { return mode == NormalizationMode::Global ? max_output : feature_max_output.at(j); }

  friend bool operator==(const Normalizer&, const Normalizer&) = default;
};

inline Normalizer fit_normalizer(const Dataset& data, NormalizationMode mode = NormalizationMode::Global) {
  if (data.empty()) throw DomainError("fit_normalizer: empty dataset");
  Normalizer norm;
  norm.mode = mode;
  norm.min_input = norm.max_input = data[0].input[0];
  norm.min_output = norm.max_output = data[0].target[0];
  norm.feature_min_input = norm.feature_max_input = data[0].input;
  norm.feature_min_output = norm.feature_max_output = data[0].target;
  for (const Sample& s : data) {
    for (std::size_t j = 0; j < s.input.size(); ++j) {
      norm.min_input = std::min(norm.min_input, s.input[j]);
      norm.max_input = std::max(norm.max_input, s.input[j]);
      norm.feature_min_input[j] = std::min(norm.feature_min_input[j], s.input[j]);
      norm.feature_max_input[j] = std::max(norm.feature_max_input[j], s.input[j]);
    }
    for (std::size_t j = 0; j < s.target.size(); ++j) {
      norm.min_output = std::min(norm.min_output, s.target[j]);
      norm.max_output = std::max(norm.max_output, s.target[j]);
      norm.feature_min_output[j] = std::min(norm.feature_min_output[j], s.target[j]);
      norm.feature_max_output[j] = std::max(norm.feature_max_output[j], s.target[j]);
    }
  }
  if (mode == NormalizationMode::Global) {
    norm.feature_min_input.clear();
    norm.feature_max_input.clear();
    norm.feature_min_output.clear();
    norm.feature_max_output.clear();
    if (!(norm.max_input > norm.min_input)) throw DegenerateSpanError("fit_normalizer: input span is zero");
    if (!(norm.max_output > norm.min_output)) throw DegenerateSpanError("fit_normalizer: output span is zero");
  } else {
    for (std::size_t j = 0; j < norm.feature_min_input.size(); ++j)
      if (!(norm.feature_max_input[j] > norm.feature_min_input[j]))
        throw DegenerateSpanError("fit_normalizer: input column " + std::to_string(j + 1) + " has zero span");
    for (std::size_t j = 0; j < norm.feature_min_output.size(); ++j)
      if (!(norm.feature_max_output[j] > norm.feature_min_output[j]))
        throw DegenerateSpanError("fit_normalizer: output column " + std::to_string(j + 1) + " has zero span");
  }
  return norm;
}

/// Values outside the fitted range map outside [0, 1]; nothing is clamped.
inline double normalize_input(const Normalizer& norm, double x, std::size_t column = 0) {
  return (x - norm.input_min(column)) / (norm.input_max(column) - norm.input_min(column));
}

inline std::vector<double> normalize_input(const Normalizer& norm, std::span<const double> x) {
  std::vector<double> out(x.size());
  for (std::size_t j = 0; j < x.size(); ++j) out[j] = normalize_input(norm, x[j], j);
  return out;
}

inline double normalize_output(const Normalizer& norm, double y, std::size_t column = 0) {
  return (y - norm.output_min(column)) / (norm.output_max(column) - norm.output_min(column));
}

inline double denormalize_output(const Normalizer& norm, double value, std::size_t column = 0) {
  return value * (norm.output_max(column) - norm.output_min(column)) + norm.output_min(column);
}

/// Scaled copy of `data`; the argument is left untouched.
inline Dataset normalize(const Normalizer& norm, const Dataset& data) {
  Dataset out = data;
  for (Sample& s : out) {
    for (std::size_t j = 0; j < s.input.size(); ++j) s.input[j] = normalize_input(norm, s.input[j], j);
    for (std::size_t j = 0; j < s.target.size(); ++j) s.target[j] = normalize_output(norm, s.target[j], j);
  }
  return out;
}

// ---------------------------------------------------------------------------
// CSV: header "x1,...,xn,y1,...,ym", one sample per row.

inline void write_csv(const Dataset& data, std::ostream& os) {
  for (std::size_t j = 0; j < data.input_dim(); ++j) os << (j ? ",x" : "x") << j + 1;
  for (std::size_t j = 0; j < data.target_dim(); ++j) os << ",y" << j + 1;
  os << '\n';
  for (const Sample& s : data) {
    for (std::size_t j = 0; j < s.input.size(); ++j) os << (j ? "," : "") << format_double(s.input[j]);
    for (double t : s.target) os << ',' << format_double(t);
    os << '\n';
  }
}

namespace detail {

inline std::vector<std::string_view> split_commas(std::string_view line) {
  std::vector<std::string_view> cells;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    cells.push_back(line.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return cells;
}

/// Returns (n, m) for a header x1..xn,y1..ym, or (0, 0) if malformed.
inline std::pair<std::size_t, std::size_t> parse_header(std::string_view line) {
  std::size_t n = 0, m = 0;
  for (std::string_view cell : split_commas(line)) {
    cell = trim(cell);
    if (cell.size() < 2) return {0, 0};
    const char kind = cell[0];
    const std::string expected = std::to_string((kind == 'x' ? n : m) + 1);
    if (cell.substr(1) != expected) return {0, 0};
    if (kind == 'x' && m == 0) {
      ++n;
    } else if (kind == 'y') {
      ++m;
    } else {
      return {0, 0};
    }
  }
  return {n, m};
}

}  // namespace detail

inline Dataset read_csv(std::istream& is) {
  std::string line;
  std::size_t line_no = 0;
  std::size_t n = 0, m = 0;
  while (std::getline(is, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty()) continue;
    std::tie(n, m) = detail::parse_header(line);
    if (n == 0 || m == 0)
      throw ParseError(line_no, "missing or malformed header (expected x1,...,xn,y1,...,ym)");
    break;
  }
  if (n == 0) throw ParseError(0, "empty CSV: missing header");

  Dataset data(n, m);
  while (std::getline(is, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty()) continue;
    const auto cells = detail::split_commas(line);
    if (cells.size() != n + m)
      throw ParseError(line_no, "row has " + std::to_string(cells.size()) + " cells, header declares " +
                                    std::to_string(n + m));
    std::vector<double> input(n), target(m);
    for (std::size_t c = 0; c < cells.size(); ++c) {
      const auto value = parse_double(cells[c]);
      if (!value)
        throw ParseError(line_no, "cell " + std::to_string(c + 1) + " is not a finite number: '" +
                                      std::string(cells[c]) + "'");
      (c < n ? input[c] : target[c - n]) = *value;
    }
    data.push_back(std::move(input), std::move(target));
  }
  if (data.empty()) throw ParseError(line_no, "CSV has a header but no data rows");
  return data;
}

inline Dataset load_csv(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::ios_base::failure("cannot open " + path.string());
  return read_csv(is);
}

inline void save_csv(const Dataset& data, const std::filesystem::path& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::ios_base::failure("cannot open " + path.string() + " for writing");
  write_csv(data, os);
  os.flush();
  if (!os) throw std::ios_base::failure("write failed: " + path.string());
}

}  // namespace mlpforge
