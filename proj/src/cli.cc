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

#include "pkeys/cli.h"

#include <CLI11.hpp>

#include <charconv>
#include <fstream>
#include <sstream>
#include <variant>

#include "pkeys/analysis.h"
#include "pkeys/ces.h"
#include "pkeys/chain_partition.h"
#include "pkeys/errors.h"
#include "pkeys/oracle.h"
#include "pkeys/tree_partition.h"

namespace pkeys {

namespace {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream o(path, std::ios::binary | std::ios::trunc);
  if (!o) throw Error("cannot write " + path);
  o << text;
  if (!o.flush()) throw Error("cannot write " + path);
}

std::uint64_t parse_seed64(const std::string& hex) {
  std::string_view s = hex;
  if (s.starts_with("0x") || s.starts_with("0X")) s.remove_prefix(2);
  std::uint64_t value = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value, 16);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) {
    throw UsageError("--seed must be at most 16 hex digits for generate");
  }
  return value;
}

using Partition = std::variant<TreePartition, ChainPartition>;

Partition load_partition(const Policy& p, const std::string& path) {
  std::string text = read_file(path);
  std::istringstream lines(text);
  std::string line;
  while (std::getline(lines, line)) {
    std::size_t i = line.find_first_not_of(" \t\r");
    if (i == std::string::npos || line[i] == '#') continue;
    if (line[i] == 't') return parse_tree_partition(p, text);
    if (line[i] == 'c') return parse_chain_partition(p, text);
    break;
  }
  throw InvalidPartition(path + ": expected 't' or 'c' lines");
}

const Forest& forest_of(const Partition& part, Forest& storage) {
  if (const auto* t = std::get_if<TreePartition>(&part)) return t->forest();
  storage = std::get<ChainPartition>(part).forest();
  return storage;
}

AnchorMap anchors_of(const Policy& p, const Partition& part) {
  if (const auto* t = std::get_if<TreePartition>(&part)) return anchors(p, *t);
  return phi_chain(p, std::get<ChainPartition>(part));
}

// Anchor sets as recorded in the key material.
AnchorMap anchors_from_sigma(const SchemeState& state) {
  AnchorMap a(state.sigma.size());
  for (std::size_t x = 0; x < state.sigma.size(); ++x) {
    for (const auto& [v, secret] : state.sigma[x]) a[x].push_back(v);
  }
  return a;
}

struct Globals {
  std::string policy;
  std::string out;
  std::string seed;
};

class Runner {
 public:
  Runner(std::ostream& out, std::ostream& err) : out_(out), err_(err) {}

  Globals g;

  // Sends text to --out when given, stdout otherwise.
  void emit(const std::string& text) {
    if (g.out.empty()) {
      out_ << text;
    } else {
      write_file(g.out, text);
    }
  }

  Policy policy() {
    if (g.policy.empty()) throw UsageError("--policy is required");
    return parse_policy(read_file(g.policy));
  }

  int generate(const std::string& kind, std::size_t n, double density) {
    if (n == 0) throw UsageError("-n must be at least 1");
    if (kind == "interval") {
      emit(serialize_policy(interval_poset(n)));
      return 0;
    }
    if (density < 0.0 || density > 1.0) {
      throw UsageError("--density must lie in [0, 1]");
    }
    std::uint64_t seed = g.seed.empty() ? 0 : parse_seed64(g.seed);
    emit(serialize_policy(oracle::random_policy({seed, n, density})));
    return 0;
  }

  int analyze() {
    out_ << format_report(analyze_policy(policy()));
    return 0;
  }

  int partition(const std::string& mode, const std::string& flow_path) {
    Policy p = policy();
    std::ostringstream text;
    if (mode == "chain") {
      ChainPartition c = minimal_chain_partition(p);
      text << dump_chain_partition(c);
      text << "# chains " << c.chain_count() << '\n';
      text << "# secrets " << chain_secrets(p, c) << '\n';
      if (!flow_path.empty()) {
        Network net = build_chain_network(p, width(p));
        write_file(flow_path, dump_flow(net, min_cost_flow(net)));
      }
    } else {
      if (!flow_path.empty()) throw UsageError("--dump-flow needs --mode chain");
      TreePartition t = mode == "tree" ? minimal_tree_partition(p)
                                       : optimal_tree_partition(p);
      text << dump_tree_partition(t);
      text << "# trees " << t.forest().roots().size() << '\n';
      text << "# leaves " << t.minimal_element_count() << '\n';
      text << "# secrets " << total_secrets(p, t, anchors(p, t)) << '\n';
    }
    emit(text.str());
    return 0;
  }

  int setup(const std::string& partition_path) {
    Policy p = policy();
    Partition part = load_partition(p, partition_path);
    Secret seed;
    if (g.seed.empty()) {
      seed = random_secret();
      (g.out.empty() ? err_ : out_) << "seed " << to_hex(seed) << '\n';
    } else {
      try {
        seed = secret_from_hex(g.seed);
      } catch (const std::invalid_argument& e) {
        throw UsageError(std::string("--seed: ") + e.what());
      }
    }
    Forest storage;
    const Forest& f = forest_of(part, storage);
    SchemeState state = ::pkeys::setup(p, f, anchors_of(p, part), seed);
    emit(serialize_key_material(state));
    return 0;
  }

  int derive_key(const std::string& partition_path, const std::string& keys_path,
                 const std::string& x_token, const std::string& y_token) {
    Policy p = policy();
    Partition part = load_partition(p, partition_path);
    SchemeState state = parse_key_material(read_file(keys_path), p.size());
    Label x = resolve_label(p, x_token);
    Label y = resolve_label(p, y_token);
    Forest storage;
    const Forest& f = forest_of(part, storage);
    auto key = derive(p, f, anchors_from_sigma(state), x, y, state.sigma[x]);
    out_ << (key ? to_hex(*key) : std::string("BOT")) << '\n';
    return 0;
  }

  int verify(const std::string& partition_path, const std::string& keys_path) {
    Policy p = policy();
    Partition part = load_partition(p, partition_path);
    SchemeState state = parse_key_material(read_file(keys_path), p.size());
    Forest storage;
    const Forest& f = forest_of(part, storage);
    VerifyReport report = verify_scheme(p, f, anchors_from_sigma(state), state);
    for (const VerifyFailure& failure : report.failures) {
      out_ << "FAIL " << failure.check << ": " << failure.detail << '\n';
    }
    if (!report.ok()) return 1;
    out_ << "pass " << report.pairs_checked << " pairs\n";
    return 0;
  }

  int oracle_check() {
    Policy p = policy();
    bool ok = true;
    auto compare = [&](std::string_view name, std::uint64_t library,
                       std::uint64_t brute) {
      bool same = library == brute;
      ok = ok && same;
      out_ << (same ? "ok   " : "FAIL ") << name << " library=" << library
           << " oracle=" << brute << '\n';
    };
    TreePartition t = minimal_tree_partition(p);
    compare("tree-secrets", total_secrets(p, t, anchors(p, t)),
            oracle::brute_min_tree_secrets(p));
    compare("tree-leaves", optimal_tree_partition(p).minimal_element_count(),
            oracle::brute_min_leaves_of_minimal_trees(p));
    ChainPartition c = minimal_chain_partition(p);
    oracle::ChainOptimum best = oracle::brute_min_chain_secrets(p);
    compare("chain-secrets", chain_secrets(p, c), best.secrets);
    std::size_t w = oracle::brute_width(p);
    compare("chain-count", c.chain_count(), w);
    compare("width", width(p), w);
    return ok ? 0 : 1;
  }

 private:
  std::ostream& out_;
  std::ostream& err_;
};

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  Runner run(out, err);
  CLI::App app{"Tree and chain partitions of information flow policies with "
               "key derivation that needs no public information.",
               "pkeys"};
  app.require_subcommand(1);
  app.option_defaults()->always_capture_default();
  app.add_option("--policy", run.g.policy, "Policy file");
  app.add_option("--out", run.g.out, "Write the primary output to this file");
  app.add_option("--seed", run.g.seed, "Hex seed");

  std::function<int()> action;

  auto* gen = app.add_subcommand("generate", "Write a policy file");
  gen->fallthrough();
  std::string kind;
  std::size_t n = 0;
  double density = 0.5;
  gen->add_option("kind", kind, "interval or random")
      ->required()
      ->check(CLI::IsMember({"interval", "random"}));
  gen->add_option("-n", n, "Size parameter")->required();
  gen->add_option("--density", density, "Edge probability for random policies");
  gen->callback([&] { action = [&] { return run.generate(kind, n, density); }; });

  auto* analyze = app.add_subcommand("analyze", "Report partition metrics");
  analyze->fallthrough();
  analyze->callback([&] { action = [&] { return run.analyze(); }; });

  auto* part = app.add_subcommand("partition", "Compute a partition");
  part->fallthrough();
  std::string mode = "tree";
  std::string flow_path;
  part->add_option("--mode", mode, "tree, tree-optimal or chain")
      ->check(CLI::IsMember({"tree", "tree-optimal", "chain"}));
  part->add_option("--dump-flow", flow_path, "Write the chain network flow here");
  part->callback([&] { action = [&] { return run.partition(mode, flow_path); }; });

  std::string partition_path;
  std::string keys_path;

  auto* setup = app.add_subcommand("setup", "Issue secrets and keys");
  setup->fallthrough();
  setup->add_option("--partition", partition_path, "Partition file")->required();
  setup->callback([&] { action = [&] { return run.setup(partition_path); }; });

  auto* derive = app.add_subcommand("derive", "Derive the key of y from x");
  derive->fallthrough();
  std::string x_token;
  std::string y_token;
  derive->add_option("--partition", partition_path, "Partition file")->required();
  derive->add_option("--keys", keys_path, "Key material file")->required();
  derive->add_option("x", x_token, "Holder label")->required();
  derive->add_option("y", y_token, "Target label")->required();
  derive->callback([&] {
    action = [&] { return run.derive_key(partition_path, keys_path, x_token, y_token); };
  });

  auto* verify = app.add_subcommand("verify", "Check key material");
  verify->fallthrough();
  verify->add_option("--partition", partition_path, "Partition file")->required();
  verify->add_option("--keys", keys_path, "Key material file")->required();
  verify->callback([&] {
    action = [&] { return run.verify(partition_path, keys_path); };
  });

  auto* check = app.add_subcommand("oracle-check",
                                   "Compare optimizers with exhaustive search");
  check->fallthrough();
  check->callback([&] { action = [&] { return run.oracle_check(); }; });

  std::vector<const char*> argv;
  argv.reserve(args.size() + 1);
  for (const std::string& a : args) argv.push_back(a.c_str());
  if (argv.empty()) argv.push_back("pkeys");

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }

  try {
    return action();
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace pkeys
