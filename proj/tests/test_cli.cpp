#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "mlpforge/cli.hpp"

using namespace mlpforge;
namespace fs = std::filesystem;

namespace {

struct Result {
  int status;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int status = cli::run(args, out, err);
  return {status, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream is(p, std::ios::binary);
  std::ostringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

std::size_t lines(const std::string& s) {
  std::size_t n = 0;
  for (char c : s) n += c == '\n';
  return n;
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("mlpforge_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
    unsetenv("MLPFORGE_SEED");
  }
  void TearDown() override { fs::remove_all(dir_); }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  fs::path dir_;
};

}  // namespace

TEST_F(CliTest, GenerateLinear) {
  const auto r = run({"generate", "linear3:1000", "--seed", "7", "--out", path("lin.csv")});
  ASSERT_EQ(r.status, 0) << r.err;
  const Dataset d = load_csv(path("lin.csv"));
  EXPECT_EQ(d.size(), 1000u);
  EXPECT_EQ(d.input_dim(), 3u);
  auto rng = cli::data_stream(7);
  EXPECT_EQ(d, random_linear_dataset(1000, rng));
}

TEST_F(CliTest, GenerateGateAndErrors) {
  ASSERT_EQ(run({"generate", "or", "--out", path("or.csv")}).status, 0);
  EXPECT_EQ(lines(slurp(path("or.csv"))), 5u);
  EXPECT_EQ(run({"generate", "linear3:0", "--seed", "1", "--out", path("x.csv")}).status, 2);
  EXPECT_EQ(run({"generate", "linear3:10", "--out", path("x.csv")}).status, 2);  // no seed
  EXPECT_EQ(run({"generate", "bogus", "--out", path("x.csv")}).status, 2);
  EXPECT_EQ(run({"generate", "or", "--out", path("missing/dir/x.csv")}).status, 1);
  EXPECT_EQ(run({"frobnicate"}).status, 2);
  EXPECT_EQ(run({}).status, 2);
}

TEST_F(CliTest, TrainOrPresetIsDeterministic) {
  auto train = [&](const std::string& tag) {
    return run({"train", "--preset", "or-paper", "--epochs", "3000", "--seed", "11", "--out", path(tag + ".json"),
                "--log", path(tag + ".log")});
  };
  const auto a = train("a"), b = train("b");
  ASSERT_EQ(a.status, 0) << a.err;
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(slurp(path("a.json")), slurp(path("b.json")));
  EXPECT_EQ(slurp(path("a.log")), slurp(path("b.log")));
  EXPECT_TRUE(a.out.starts_with("epoch=0 rms="));
  EXPECT_NE(a.out.find("epoch=2999 rms="), std::string::npos);
  EXPECT_EQ(lines(a.out), 4u);  // 0, 1000, 2000, 2999
  const ModelBundle m = load_model_file(path("a.json"));
  EXPECT_EQ(m.network.topology.layer_sizes, (std::vector<std::size_t>{2, 2, 1}));
  EXPECT_FALSE(m.normalizer);
  EXPECT_NE(slurp(path("a.log")).find("# seed=11\n"), std::string::npos);
}

TEST_F(CliTest, TrainLinearPresetEmbedsNormalizer) {
  const auto r = run({"train", "--preset", "linear3-paper", "--dataset", "linear3:40", "--epochs", "30",
                      "--log-every", "10", "--seed", "3", "--out", path("m.json")});
  ASSERT_EQ(r.status, 0) << r.err;
  EXPECT_EQ(lines(r.out), 4u);
  const ModelBundle m = load_model_file(path("m.json"));
  ASSERT_TRUE(m.normalizer);
  auto rng = cli::data_stream(3);
  EXPECT_EQ(*m.normalizer, fit_normalizer(random_linear_dataset(40, rng)));
  EXPECT_EQ(m.network.topology.layer_sizes, (std::vector<std::size_t>{3, 7, 1}));

  const auto e = run({"eval", path("m.json"), "--dataset", "linear3:40", "--seed", "3", "--denormalize"});
  ASSERT_EQ(e.status, 0) << e.err;
  EXPECT_EQ(lines(e.out), 41u);
  EXPECT_TRUE(e.out.starts_with("input=["));
}

TEST_F(CliTest, SeedSourcesAndConfigFile) {
  EXPECT_EQ(run({"train", "--preset", "or-paper", "--epochs", "10"}).status, 2);
  setenv("MLPFORGE_SEED", "5", 1);
  const auto env = run({"train", "--preset", "or-paper", "--epochs", "10", "--log-every", "5"});
  unsetenv("MLPFORGE_SEED");
  ASSERT_EQ(env.status, 0) << env.err;
  const auto flag = run({"train", "--preset", "or-paper", "--epochs", "10", "--log-every", "5", "--seed", "5"});
  EXPECT_EQ(env.out, flag.out);

  {
    std::ofstream cfg(path("run.cfg"));
    cfg << "# OR with a wider hidden layer\n"
        << "activation = tanh\nlayers=2,auto,1\nepochs=10\nseed=5\ndataset=or\nlog_every=5\n";
  }
  const auto file = run({"train", "--config", path("run.cfg"), "--out", path("c.json")});
  ASSERT_EQ(file.status, 0) << file.err;
  const ModelBundle m = load_model_file(path("c.json"));
  EXPECT_EQ(m.network.activation, Activation::Tanh);
  EXPECT_EQ(m.network.topology.layer_sizes, (std::vector<std::size_t>{2, 5, 1}));

  const auto over = run({"train", "--config", path("run.cfg"), "--layers", "2,3,1", "--out", path("o.json")});
  ASSERT_EQ(over.status, 0) << over.err;
  EXPECT_EQ(load_model_file(path("o.json")).network.topology.layer_sizes, (std::vector<std::size_t>{2, 3, 1}));

  {
    std::ofstream cfg(path("bad.cfg"));
    cfg << "epochs=10\nwat=1\n";
  }
  const auto bad = run({"train", "--config", path("bad.cfg"), "--seed", "1", "--dataset", "or"});
  EXPECT_EQ(bad.status, 2);
  EXPECT_NE(bad.err.find("line 2"), std::string::npos);
  EXPECT_EQ(run({"train", "--config", path("nope.cfg")}).status, 1);
}

TEST_F(CliTest, TrainConfigValidation) {
  EXPECT_EQ(run({"train", "--seed", "1", "--dataset", "or", "--dropout", "1.5"}).status, 2);
  EXPECT_EQ(run({"train", "--seed", "1", "--dataset", "or", "--layers", "3,2,1"}).status, 2);
  EXPECT_EQ(run({"train", "--seed", "1", "--dataset", "or", "--layers", "2,1"}).status, 2);
  EXPECT_EQ(run({"train", "--seed", "1", "--dataset", "or", "--activation", "softmax"}).status, 2);
  EXPECT_EQ(run({"train", "--seed", "1"}).status, 2);
  EXPECT_EQ(run({"train", "--seed", "1", "--preset", "nope"}).status, 2);
  EXPECT_EQ(run({"train", "--seed", "x", "--dataset", "or"}).status, 2);
  EXPECT_EQ(run({"train", "--seed", "1", "--dataset", "csv:" + path("missing.csv")}).status, 1);
}

TEST_F(CliTest, StopBelowRms) {
  const auto r = run({"train", "--preset", "or-paper", "--seed", "2", "--log-every", "100", "--stop-below-rms",
                      "0.3"});
  ASSERT_EQ(r.status, 0) << r.err;
  EXPECT_NE(r.out.find("stopped at epoch"), std::string::npos);
  EXPECT_LT(lines(r.out), 1500u);
}

TEST_F(CliTest, DivergenceExitsWithThree) {
  {
    std::ofstream csv(path("big.csv"));
    csv << "x1,y1\n50,1000000\n-50,-1000000\n";
  }
  const auto r = run({"train", "--dataset", "csv:" + path("big.csv"), "--activation", "leaky_step", "--layers",
                      "1,4,1", "--rate", "1000", "--dropout", "0", "--epochs", "1000", "--seed", "3", "--out",
                      path("d.json")});
  EXPECT_EQ(r.status, 3);
  EXPECT_NE(r.err.find("diverged"), std::string::npos);
  EXPECT_FALSE(fs::exists(path("d.json")));
}

TEST_F(CliTest, EvalOutputs) {
  ASSERT_EQ(run({"train", "--preset", "or-paper", "--epochs", "1", "--seed", "1", "--out", path("fresh.json")}).status,
            0);
  const auto r = run({"eval", path("fresh.json"), "--dataset", "or"});
  ASSERT_EQ(r.status, 0) << r.err;
  EXPECT_EQ(lines(r.out), 5u);
  EXPECT_TRUE(r.out.starts_with("input=[0,0] computed=["));
  EXPECT_NE(r.out.find("expected=[1]\nrms="), std::string::npos);
  EXPECT_EQ(r.out, run({"eval", path("fresh.json"), "--dataset", "or"}).out);

  EXPECT_EQ(run({"eval", path("fresh.json"), "--dataset", "or", "--denormalize"}).status, 2);
  EXPECT_EQ(run({"eval", path("fresh.json"), "--dataset", "linear3:5", "--seed", "1"}).status, 2);
  EXPECT_EQ(run({"eval", path("nothing.json"), "--dataset", "or"}).status, 1);
  EXPECT_EQ(run({"eval", path("fresh.json"), "--dataset", "or", "--paper-faithful"}).status, 2);
  EXPECT_EQ(run({"eval", path("fresh.json"), "--dataset", "or", "--paper-faithful", "--seed", "4"}).status, 0);
}

TEST_F(CliTest, Gradcheck) {
  const auto s = run({"gradcheck", "--layers", "2,3,1", "--activation", "sigmoid", "--seed", "42", "--h", "1e-5"});
  EXPECT_EQ(s.status, 0) << s.out << s.err;
  EXPECT_NE(s.out.find("gradcheck passed"), std::string::npos);
  EXPECT_EQ(run({"gradcheck", "--layers", "3,7,1", "--activation", "tanh", "--seed", "1"}).status, 0);
  EXPECT_EQ(run({"gradcheck", "--layers", "3,7,1", "--activation", "leaky_step", "--seed", "1"}).status, 0);
  EXPECT_EQ(run({"gradcheck", "--seed", "1", "--h", "0"}).status, 2);
  EXPECT_EQ(run({"gradcheck", "--layers", "2,3,1"}).status, 2);
  // A step this coarse breaks the agreement.
  EXPECT_EQ(run({"gradcheck", "--layers", "2,3,1", "--seed", "42", "--h", "0.5"}).status, 4);
}
