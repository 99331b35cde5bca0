#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <gtest/gtest.h>

#include "mlpforge/data.hpp"

using namespace mlpforge;

namespace {

Dataset make(std::initializer_list<std::pair<std::vector<double>, std::vector<double>>> rows) {
  Dataset d(rows.begin()->first.size(), rows.begin()->second.size());
  for (const auto& [x, y] : rows) d.push_back(x, y);
  return d;
}

Dataset parse(const std::string& text) {
  std::istringstream is(text);
  return read_csv(is);
}

std::size_t parse_error_line(const std::string& text) {
  try {
    parse(text);
  } catch (const ParseError& e) {
    return e.line();
  }
  return static_cast<std::size_t>(-1);
}

}  // namespace

TEST(LogicGates, TruthTables) {
  const Dataset expected_or = make({{{0, 0}, {0}}, {{0, 1}, {1}}, {{1, 0}, {1}}, {{1, 1}, {1}}});
  EXPECT_EQ(logic_gate_dataset(LogicGate::Or), expected_or);
  const Dataset expected_and = make({{{0, 0}, {0}}, {{0, 1}, {0}}, {{1, 0}, {0}}, {{1, 1}, {1}}});
  EXPECT_EQ(logic_gate_dataset(LogicGate::And), expected_and);
  const Dataset expected_xor = make({{{0, 0}, {0}}, {{0, 1}, {1}}, {{1, 0}, {1}}, {{1, 1}, {0}}});
  EXPECT_EQ(logic_gate_dataset(LogicGate::Xor), expected_xor);
}

TEST(Dataset, RejectsMismatchedSamples) {
  Dataset d(2, 1);
  EXPECT_THROW(d.push_back({1.0}, {1.0}), DimensionError);
  EXPECT_THROW(d.push_back({1.0, 2.0}, {}), DimensionError);
  EXPECT_THROW(Dataset(0, 1), DimensionError);
}

TEST(RandomLinear, RangesAndTargets) {
  SplitMix64 rng(7);
  const Dataset d = random_linear_dataset(1000, rng);
  ASSERT_EQ(d.size(), 1000u);
  EXPECT_EQ(d.input_dim(), 3u);
  for (const Sample& s : d) {
    EXPECT_GE(s.input[0], -60.0);
    EXPECT_LT(s.input[0], 40.0);
    EXPECT_GE(s.input[1], -40.0);
    EXPECT_LT(s.input[1], 60.0);
    EXPECT_GE(s.input[2], -50.0);
    EXPECT_LT(s.input[2], 50.0);
    EXPECT_EQ(s.target[0], s.input[0] + s.input[1] - s.input[2]);
  }
  EXPECT_THROW(random_linear_dataset(0, rng), DomainError);
}

TEST(RandomLinear, DrawOrderX1X2X3) {
  SplitMix64 rng(99), replay(99);
  const Dataset d = random_linear_dataset(2, rng);
  for (const Sample& s : d) {
    EXPECT_EQ(s.input[0], replay.uniform() * 100 - 60);
    EXPECT_EQ(s.input[1], replay.uniform() * 100 - 40);
    EXPECT_EQ(s.input[2], replay.uniform() * 100 - 50);
  }
  const double x1 = 10, x2 = 20, x3 = 5;
  EXPECT_EQ(x1 + x2 - x3, 25.0);
}

TEST(Normalizer, GlobalExtrema) {
  const Dataset d = make({{{0, 10}, {5}}, {{-2, 3}, {7}}});
  const Normalizer n = fit_normalizer(d);
  EXPECT_EQ(n.min_input, -2);
  EXPECT_EQ(n.max_input, 10);
  EXPECT_EQ(n.min_output, 5);
  EXPECT_EQ(n.max_output, 7);
}

TEST(Normalizer, DegenerateSpans) {
  EXPECT_THROW(fit_normalizer(make({{{1, 1}, {3}}})), DegenerateSpanError);
  EXPECT_THROW(fit_normalizer(make({{{1, 2}, {3}}, {{2, 1}, {3}}})), DegenerateSpanError);
  EXPECT_THROW(fit_normalizer(Dataset(1, 1)), DomainError);
}

TEST(Normalizer, PointValues) {
  Normalizer n;
  n.min_input = -60;
  n.max_input = 40;
  n.min_output = -150;
  n.max_output = 150;
  EXPECT_EQ(normalize_input(n, -60.0), 0.0);
  EXPECT_EQ(normalize_input(n, 40.0), 1.0);
  EXPECT_EQ(normalize_input(n, -10.0), 0.5);
  EXPECT_EQ(normalize_input(n, 90.0), 1.5);  // no clamping
  EXPECT_EQ(denormalize_output(n, 0.0), -150.0);
  EXPECT_EQ(denormalize_output(n, 1.0), 150.0);
}

TEST(Normalizer, FittedDataLandsInUnitInterval) {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    SplitMix64 rng(seed);
    const Dataset raw = random_linear_dataset(1000, rng);
    const Normalizer n = fit_normalizer(raw);
    EXPECT_GE(n.min_input, -60.0);
    EXPECT_LT(n.max_input, 60.0);
    const Dataset scaled = normalize(n, raw);
    EXPECT_NE(scaled, raw);
    bool in0 = false, in1 = false, out0 = false, out1 = false;
    for (const Sample& s : scaled) {
      for (double x : s.input) {
        EXPECT_GE(x, 0.0);
        EXPECT_LE(x, 1.0);
        in0 = in0 || x == 0.0;
        in1 = in1 || x == 1.0;
      }
      EXPECT_GE(s.target[0], 0.0);
      EXPECT_LE(s.target[0], 1.0);
      out0 = out0 || s.target[0] == 0.0;
      out1 = out1 || s.target[0] == 1.0;
    }
    EXPECT_TRUE(in0 && in1 && out0 && out1);
    for (std::size_t i = 0; i < raw.size(); ++i)
      EXPECT_NEAR(denormalize_output(n, scaled[i].target[0]), raw[i].target[0], 1e-12);
  }
}

TEST(Normalizer, InvariantUnderReordering) {
  SplitMix64 rng(3);
  const Dataset d = random_linear_dataset(200, rng);
  Dataset rev(3, 1);
  for (std::size_t i = d.size(); i-- > 0;) rev.push_back(d[i].input, d[i].target);
  EXPECT_EQ(fit_normalizer(d), fit_normalizer(rev));
}

TEST(Normalizer, GlobalDiffersFromPerFeature) {
  // Column 1 lives in [0, 1], column 2 in [100, 200].
  const Dataset d = make({{{0, 100}, {0}}, {{1, 200}, {1}}, {{0.5, 150}, {0.5}}});
  const Normalizer global = fit_normalizer(d);
  const Normalizer per = fit_normalizer(d, NormalizationMode::PerFeature);
  EXPECT_EQ(global.min_input, 0);
  EXPECT_EQ(global.max_input, 200);
  EXPECT_EQ(normalize(global, d)[1].input[0], 1.0 / 200);
  EXPECT_EQ(normalize(per, d)[1].input[0], 1.0);
  EXPECT_EQ(normalize(per, d)[0].input[1], 0.0);
  EXPECT_EQ(normalize(global, d)[0].input[1], 0.5);
}

TEST(Csv, RoundTripIsExact) {
  SplitMix64 rng(5);
  for (const Dataset& d : {logic_gate_dataset(LogicGate::Or), random_linear_dataset(300, rng)}) {
    std::ostringstream os;
    write_csv(d, os);
    EXPECT_EQ(parse(os.str()), d);
  }
  const auto path = std::filesystem::temp_directory_path() / "mlpforge_test_or.csv";
  save_csv(logic_gate_dataset(LogicGate::Or), path);
  EXPECT_EQ(load_csv(path), logic_gate_dataset(LogicGate::Or));
  std::filesystem::remove(path);
}

TEST(Csv, HeaderDeterminesDimensions) {
  const Dataset d = parse("x1,x2,x3,y1\r\n1,2,3,4\r\n5,6,7,8\r\n");
  EXPECT_EQ(d.input_dim(), 3u);
  EXPECT_EQ(d.target_dim(), 1u);
  EXPECT_EQ(d.size(), 2u);
  EXPECT_EQ(d[1].target[0], 8.0);
}

TEST(Csv, Errors) {
  EXPECT_EQ(parse_error_line("x1,x2,x3,y1\n1,2,3,4\n1,2\n"), 3u);
  EXPECT_EQ(parse_error_line("x1,y1\n1,abc\n"), 2u);
  EXPECT_EQ(parse_error_line("x1,y1\n1,inf\n"), 2u);
  EXPECT_EQ(parse_error_line("1,2\n3,4\n"), 1u);
  EXPECT_EQ(parse_error_line("x1,y2\n1,2\n"), 1u);
  EXPECT_EQ(parse_error_line("y1,x1\n1,2\n"), 1u);
  EXPECT_EQ(parse_error_line("x1\n1\n"), 1u);
  EXPECT_EQ(parse_error_line(""), 0u);
  EXPECT_EQ(parse_error_line("x1,y1\n"), 1u);
  try {
    parse("x1,x2,x3,y1\n1,2\n");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("line 2"), std::string::npos);
  }
  EXPECT_THROW(load_csv("/nonexistent/dir/file.csv"), std::ios_base::failure);
}
