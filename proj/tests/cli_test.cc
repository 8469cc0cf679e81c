// Copyright 2026 The pkeys Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "pkeys/analysis.h"
#include "pkeys/ces.h"
#include "pkeys/cli.h"
#include "pkeys/policy.h"
#include "support.h"

namespace pkeys {
namespace {

namespace fs = std::filesystem;

const std::string kSeed(64, 'c');

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("pkeys_cli_" + std::string(::testing::UnitTest::GetInstance()
                                           ->current_test_info()
                                           ->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  int run(std::vector<std::string> args) {
    args.insert(args.begin(), "pkeys");
    std::ostringstream out;
    std::ostringstream err;
    int code = run_cli(args, out, err);
    out_ = out.str();
    err_ = err.str();
    return code;
  }

  std::string read(const std::string& name) const {
    std::ifstream in(path(name));
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
  }

  void write(const std::string& name, const std::string& text) const {
    std::ofstream(path(name)) << text;
  }

  fs::path dir_;
  std::string out_;
  std::string err_;
};

TEST_F(Cli, GenerateInterval) {
  ASSERT_EQ(run({"generate", "interval", "-n", "5", "--out", path("i5")}), 0);
  EXPECT_EQ(read("i5"), serialize_policy(interval_poset(5)));
  EXPECT_EQ(parse_policy(read("i5")).size(), 15u);
  ASSERT_EQ(run({"generate", "interval", "-n", "1"}), 0);
  EXPECT_EQ(parse_policy(out_).size(), 1u);
}

TEST_F(Cli, GenerateRandomIsReproducible) {
  ASSERT_EQ(run({"--seed", "2a", "generate", "random", "-n", "7", "--density", "0.4"}), 0);
  std::string first = out_;
  ASSERT_EQ(run({"generate", "random", "-n", "7", "--density", "0.4", "--seed", "2a"}), 0);
  EXPECT_EQ(out_, first);
  EXPECT_EQ(parse_policy(first), oracle::random_policy({0x2a, 7, 0.4}));
}

TEST_F(Cli, AnalyzeMatchesLibrary) {
  for (std::size_t n : {1, 3, 5}) {
    Policy p = interval_poset(n);
    write("p", serialize_policy(p));
    ASSERT_EQ(run({"analyze", "--policy", path("p")}), 0);
    EXPECT_EQ(out_, format_report(analyze_policy(p)));
  }
  PolicyReport r = analyze_policy(interval_poset(5));
  EXPECT_EQ(r.tree.total_secrets, 22u);
  EXPECT_EQ(r.chain.total_secrets, 35u);
  EXPECT_EQ(r.width, 5u);
  EXPECT_EQ(r.chain.parts, 5u);
  EXPECT_EQ(r.chain.max_secrets_per_user, 5u);
  PolicyReport d = analyze_policy(testing::diamond());
  EXPECT_EQ(d.tree.total_secrets, 5u);
  EXPECT_EQ(d.chain.total_secrets, 6u);
  EXPECT_EQ(d.hasse_edges, 4u);
  EXPECT_EQ(d.closure_pairs, 5u);
}

TEST_F(Cli, AnalyzeSingleton) {
  PolicyReport r = analyze_policy(interval_poset(1));
  EXPECT_EQ(r.labels, 1u);
  EXPECT_EQ(r.width, 1u);
  EXPECT_EQ(r.tree.total_secrets, 1u);
  EXPECT_EQ(r.tree.max_secrets_per_user, 1u);
  EXPECT_EQ(r.tree.max_derivation_length, 0u);
  EXPECT_EQ(r.chain.total_secrets, 1u);
  EXPECT_EQ(r.chain.max_derivation_length, 0u);
}

TEST_F(Cli, PartitionModes) {
  write("i5", serialize_policy(interval_poset(5)));
  ASSERT_EQ(run({"partition", "--policy", path("i5")}), 0);
  EXPECT_NE(out_.find("# secrets 22\n"), std::string::npos);

  write("chain", serialize_policy(testing::chain_poset(4)));
  ASSERT_EQ(run({"partition", "--policy", path("chain"), "--mode", "chain"}), 0);
  EXPECT_EQ(out_.substr(0, out_.find('#')), "c 0 > 1 > 2 > 3\n");

  auto leaves = [&](const std::string& mode) {
    EXPECT_EQ(run({"partition", "--policy", path("i5"), "--mode", mode}), 0);
    auto at = out_.find("# leaves ");
    return std::stoul(out_.substr(at + 9));
  };
  EXPECT_LE(leaves("tree-optimal"), leaves("tree"));

  ASSERT_EQ(run({"partition", "--policy", path("i5"), "--mode", "chain", "--dump-flow",
                 path("flow")}),
            0);
  EXPECT_EQ(read("flow").rfind("edge ", 0), 0u);
  EXPECT_EQ(run({"partition", "--policy", path("i5"), "--mode", "bogus"}), 2);
}

TEST_F(Cli, SetupIsReproducible) {
  write("i3", serialize_policy(interval_poset(3)));
  ASSERT_EQ(run({"partition", "--policy", path("i3"), "--out", path("t")}), 0);
  ASSERT_EQ(run({"setup", "--policy", path("i3"), "--partition", path("t"), "--seed", kSeed,
                 "--out", path("k1")}),
            0);
  ASSERT_EQ(run({"setup", "--policy", path("i3"), "--partition", path("t"), "--seed", kSeed,
                 "--out", path("k2")}),
            0);
  EXPECT_EQ(read("k1"), read("k2"));
  SchemeState s = parse_key_material(read("k1"), 6);
  std::size_t issued = 0;
  for (const Sigma& sigma : s.sigma) issued += sigma.size();
  EXPECT_EQ(issued, 7u);

  ASSERT_EQ(run({"setup", "--policy", path("i3"), "--partition", path("t"), "--out",
                 path("k3")}),
            0);
  EXPECT_EQ(out_.rfind("seed ", 0), 0u);
  EXPECT_NE(read("k3"), read("k1"));
  EXPECT_EQ(run({"setup", "--policy", path("i3"), "--partition", path("t"), "--seed", "12"}),
            2);
}

TEST_F(Cli, SingletonSetup) {
  write("one", serialize_policy(interval_poset(1)));
  write("t", "t 0 -\n");
  ASSERT_EQ(run({"setup", "--policy", path("one"), "--partition", path("t"), "--seed", kSeed}),
            0);
  SchemeState s = parse_key_material(out_, 1);
  EXPECT_EQ(s.sigma[0].size(), 1u);
  EXPECT_EQ(s.kappa.size(), 1u);
}

TEST_F(Cli, DeriveSweep) {
  Policy p = interval_poset(4);
  write("i4", serialize_policy(p));
  for (std::string mode : {"tree", "chain"}) {
    ASSERT_EQ(run({"partition", "--policy", path("i4"), "--mode", mode, "--out", path("part")}),
              0);
    ASSERT_EQ(run({"setup", "--policy", path("i4"), "--partition", path("part"), "--seed",
                   kSeed, "--out", path("keys")}),
              0);
    SchemeState s = parse_key_material(read("keys"), p.size());
    for (Label x = 0; x < p.size(); ++x) {
      for (Label y = 0; y < p.size(); ++y) {
        ASSERT_EQ(run({"derive", "--policy", path("i4"), "--partition", path("part"), "--keys",
                       path("keys"), std::to_string(x), std::to_string(y)}),
                  0);
        std::string expected = p.less_equal(y, x) ? to_hex(s.kappa[y]) : "BOT";
        EXPECT_EQ(out_, expected + "\n") << mode << " " << x << " " << y;
      }
    }
  }
  ASSERT_EQ(run({"derive", "--policy", path("i4"), "--partition", path("part"), "--keys",
                 path("keys"), "[1,4]", "[2,3]"}),
            0);
  EXPECT_NE(out_, "BOT\n");
}

TEST_F(Cli, DeriveRejectsMalformedSigma) {
  write("d", serialize_policy(testing::diamond()));
  write("t", "t 0 -\nt 1 0\nt 2 0\nt 3 1\n");
  ASSERT_EQ(run({"setup", "--policy", path("d"), "--partition", path("t"), "--seed", kSeed,
                 "--out", path("k")}),
            0);
  std::string keys = read("k");
  // Drop the second sigma entry of label 2, the secret of 3.
  auto block = keys.find("sigma 2:\n");
  auto second = keys.find("s 3 ", block);
  keys.erase(second, keys.find('\n', second) - second + 1);
  write("k", keys);
  EXPECT_EQ(run({"derive", "--policy", path("d"), "--partition", path("t"), "--keys",
                 path("k"), "2", "3"}),
            1);
}

TEST_F(Cli, VerifyPassesAndDetectsTampering) {
  write("i3", serialize_policy(interval_poset(3)));
  ASSERT_EQ(run({"partition", "--policy", path("i3"), "--out", path("t")}), 0);
  ASSERT_EQ(run({"setup", "--policy", path("i3"), "--partition", path("t"), "--seed", kSeed,
                 "--out", path("k")}),
            0);
  EXPECT_EQ(run({"verify", "--policy", path("i3"), "--partition", path("t"), "--keys",
                 path("k")}),
            0);
  EXPECT_EQ(out_.rfind("pass", 0), 0u);

  std::string keys = read("k");
  auto at = keys.find("k 0 ") + 4;
  keys[at] = keys[at] == '0' ? '1' : '0';
  write("k", keys);
  EXPECT_EQ(run({"verify", "--policy", path("i3"), "--partition", path("t"), "--keys",
                 path("k")}),
            1);
  EXPECT_NE(out_.find("FAIL correctness"), std::string::npos);
}

TEST_F(Cli, OracleCheck) {
  write("d", serialize_policy(testing::diamond()));
  EXPECT_EQ(run({"oracle-check", "--policy", path("d")}), 0);
  EXPECT_EQ(out_.find("FAIL"), std::string::npos);
  write("i5", serialize_policy(interval_poset(5)));
  EXPECT_EQ(run({"oracle-check", "--policy", path("i5")}), 1);
}

TEST_F(Cli, ExitCodes) {
  EXPECT_EQ(run({}), 2);
  EXPECT_EQ(run({"frobnicate"}), 2);
  EXPECT_EQ(run({"analyze"}), 2);
  EXPECT_EQ(run({"analyze", "--policy", path("missing")}), 1);
  write("bad", "p 2\ne 0 5\n");
  EXPECT_EQ(run({"analyze", "--policy", path("bad")}), 1);
  EXPECT_NE(err_.find("line 2"), std::string::npos);
  EXPECT_EQ(run({"generate", "interval"}), 2);
  EXPECT_EQ(run({"generate", "random", "-n", "3", "--density", "2"}), 2);
  EXPECT_EQ(run({"--help"}), 0);
}

}  // namespace
}  // namespace pkeys
