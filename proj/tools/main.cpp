// Command-line front end: encode / attack / decode single codewords through
// files, and run batch experiments from a config document. Exit codes:
// 0 success (or pass verdict), 1 fail verdict, 2 usage error, 3 I/O or parse
// error.
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "aqecc/experiment.hpp"
#include "aqecc/serialize.hpp"
#include "aqecc/strategies.hpp"

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFailVerdict = 1;
constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "' for reading");
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw IoError("error while reading '" + path + "'");
  return buf.str();
}

void write_output(const std::string& path, const std::string& content) {
  if (path == "-") {
    std::cout << content;
    if (!std::cout) throw IoError("error while writing to stdout");
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << content;
  if (!out) throw IoError("error while writing '" + path + "'");
}

// "none" | "subsets" | comma- or space-separated register indices.
void parse_registers_arg(const std::string& arg, aqecc::CliConfig& config) {
  config.registers.clear();
  config.registers_all_subsets = false;
  if (arg == "none" || arg.empty()) return;
  if (arg == "subsets") {
    config.registers_all_subsets = true;
    return;
  }
  std::string normalized = arg;
  for (char& c : normalized)
    if (c == ',') c = ' ';
  std::istringstream in(normalized);
  std::string tok;
  while (in >> tok) {
    size_t pos = 0;
    unsigned long long v = std::stoull(tok, &pos);
    if (pos != tok.size()) throw CLI::ValidationError("--registers", "bad index '" + tok + "'");
    config.registers.push_back(v);
  }
}

std::string key_match_flag(const aqecc::AqeccCodeword& cw, const aqecc::DecodeOutcome& out) {
  if (!aqecc::has_truth(cw)) return "unknown";
  if (!out.trace.keys_decoded) return "no";
  for (size_t i = 0; i < cw.params.n; ++i)
    if (out.trace.reconstructed_key_symbols[i] != aqecc::serialize_key(cw.truth.keys[i]))
      return "no";
  return "yes";
}

// Expands the config's strategy/register/pipeline selection into suite
// entries. Strategies with a pinned corruption set contribute only that set.
std::vector<aqecc::SuiteEntry> build_entries(const aqecc::AqeccParams& params,
                                             const aqecc::CliConfig& config) {
  std::vector<const aqecc::Strategy*> picked;
  if (config.strategy == "all") {
    for (const aqecc::Strategy& s : aqecc::strategy_library()) picked.push_back(&s);
  } else {
    picked.push_back(&aqecc::find_strategy(config.strategy));
  }
  std::optional<aqecc::Pipeline> pipeline;
  if (config.pipeline != "default") pipeline = aqecc::pipeline_from_name(config.pipeline);
  bool exhaustive = config.mode == "exhaustive";

  std::vector<std::vector<size_t>> sets;
  if (config.registers_all_subsets) {
    sets.push_back({});  // empty set first, then all subsets of size 1..t
    std::vector<size_t> stack;
    auto rec = [&](auto&& self, size_t start) -> void {
      if (!stack.empty()) sets.push_back(stack);
      if (stack.size() == params.t) return;
      for (size_t i = start; i < params.n; ++i) {
        stack.push_back(i);
        self(self, i + 1);
        stack.pop_back();
      }
    };
    rec(rec, 0);
  } else {
    sets.push_back(config.registers);
  }

  std::vector<aqecc::SuiteEntry> entries;
  for (const aqecc::Strategy* s : picked) {
    aqecc::Pipeline effective =
        pipeline.value_or(s->supports(aqecc::Pipeline::aqecc) ? aqecc::Pipeline::aqecc
                                                              : s->pipeline);
    if (!s->supports(effective))
      throw std::invalid_argument("strategy '" + s->name + "' does not support pipeline '" +
                                  aqecc::pipeline_name(effective) + "'");
    if (s->fixed_b) {
      entries.push_back({s->name, s->fixed_b(params), effective, exhaustive});
      continue;
    }
    for (const auto& b : sets) entries.push_back({s->name, b, effective, exhaustive});
  }
  return entries;
}

int cmd_encode(const aqecc::CliConfig& config, bool export_view) {
  aqecc::AqeccParams params = config.params();
  aqecc::Rng rng(config.seed);
  aqecc::AqeccCodeword cw = aqecc::encode(params, rng);
  write_output(config.out, aqecc::write_codeword(cw, !export_view));
  return kExitPass;
}

int cmd_attack(const std::string& in_path, const aqecc::CliConfig& config, bool export_view) {
  aqecc::AqeccCodeword cw = aqecc::parse_codeword(read_file(in_path));
  const aqecc::Strategy& strategy = aqecc::find_strategy(config.strategy);
  if (!strategy.supports(aqecc::Pipeline::aqecc))
    throw std::invalid_argument("strategy '" + strategy.name + "' has no register-scheme attack");
  std::vector<size_t> b = config.registers;
  if (b.empty() && strategy.fixed_b) b = strategy.fixed_b(cw.params);
  if (b.size() > cw.params.t)
    throw std::invalid_argument("corruption set larger than t=" + std::to_string(cw.params.t));
  aqecc::AttackScript script = strategy.make_script(cw.params, b, config.seed);
  cw = aqecc::apply_attack(cw, script);
  bool keep_truth = aqecc::has_truth(cw) && !export_view;
  write_output(config.out, aqecc::write_codeword(cw, keep_truth));
  return kExitPass;
}

int cmd_decode(const std::string& in_path, const std::string& out_path) {
  aqecc::AqeccCodeword cw = aqecc::parse_codeword(read_file(in_path));
  aqecc::DecodeOutcome out = aqecc::decode(cw);
  write_output(out_path, aqecc::write_outcome(out, cw.params, key_match_flag(cw, out)));
  return kExitPass;
}

int cmd_experiment(const aqecc::CliConfig& config) {
  aqecc::AqeccParams params = config.params();
  std::vector<aqecc::SuiteEntry> entries = build_entries(params, config);
  aqecc::ExperimentReport report = aqecc::run_suite(params, entries, config.trials, config.seed);
  write_output(config.out, aqecc::write_report(report));
  return report.pass ? kExitPass : kExitFailVerdict;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"approximate quantum error correction with classical authentication"};
  app.require_subcommand(1);

  aqecc::CliConfig config;
  std::optional<size_t> n, t, traps;
  std::optional<uint64_t> p, p_share, p_mac, trials, seed;
  std::optional<std::string> strategy, registers, pipeline, mode, out;
  std::string config_path, in_path;
  bool export_view = false;

  auto add_param_flags = [&](CLI::App* cmd) {
    cmd->add_option("--n", n, "number of registers");
    cmd->add_option("--t", t, "adversary budget (corrupted registers)");
    cmd->add_option("--p", p, "qudit dimension (prime, >= n)");
    cmd->add_option("--traps", traps, "trap qudits per register");
    cmd->add_option("--pshare", p_share, "share field modulus (0 = derive)");
    cmd->add_option("--pmac", p_mac, "tag field modulus (0 = derive)");
  };
  auto add_seed_out = [&](CLI::App* cmd) {
    cmd->add_option("--seed", seed, "master seed");
    cmd->add_option("--out", out, "output path ('-' = stdout)");
  };

  CLI::App* enc = app.add_subcommand("encode", "draw keys and encode a fresh codeword to a file");
  add_param_flags(enc);
  add_seed_out(enc);
  enc->add_flag("--export-view", export_view, "omit the ground-truth section (adversary view)");

  CLI::App* att = app.add_subcommand("attack", "apply a named attack strategy to a codeword file");
  att->add_option("--in", in_path, "input codeword file")->required();
  att->add_option("--strategy", strategy, "attack strategy name");
  att->add_option("--registers", registers, "corruption set: indices, 'none', or 'subsets'");
  add_seed_out(att);
  att->add_flag("--export-view", export_view, "omit the ground-truth section (adversary view)");

  CLI::App* dec = app.add_subcommand("decode", "decode a codeword file and emit the outcome");
  dec->add_option("--in", in_path, "input codeword file")->required();
  dec->add_option("--out", out, "output path ('-' = stdout)");

  CLI::App* exp = app.add_subcommand("experiment", "run a batch experiment and emit the report");
  exp->add_option("--config", config_path, "config document (flags override its values)");
  add_param_flags(exp);
  exp->add_option("--strategy", strategy, "strategy name or 'all'");
  exp->add_option("--registers", registers, "corruption set: indices, 'none', or 'subsets'");
  exp->add_option("--pipeline", pipeline, "default | aqecc | warmup3 | bare");
  exp->add_option("--mode", mode, "trials | exhaustive");
  exp->add_option("--trials", trials, "Monte-Carlo trials per run");
  add_seed_out(exp);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (!config_path.empty()) config = aqecc::parse_config(read_file(config_path));
    if (n) config.n = *n;
    if (t) config.t = *t;
    if (p) config.p = *p;
    if (traps) config.traps = *traps;
    if (p_share) config.p_share = *p_share;
    if (p_mac) config.p_mac = *p_mac;
    if (strategy) config.strategy = *strategy;
    if (registers) parse_registers_arg(*registers, config);
    if (pipeline) config.pipeline = *pipeline;
    if (mode) config.mode = *mode;
    if (trials) config.trials = *trials;
    if (seed) config.seed = *seed;
    if (out) config.out = *out;
    if (config.mode != "trials" && config.mode != "exhaustive")
      throw std::invalid_argument("mode must be 'trials' or 'exhaustive'");

    if (enc->parsed()) return cmd_encode(config, export_view);
    if (att->parsed()) return cmd_attack(in_path, config, export_view);
    if (dec->parsed()) return cmd_decode(in_path, config.out);
    return cmd_experiment(config);
  } catch (const aqecc::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitIo;
  } catch (const IoError& e) {
    std::cerr << "io error: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}
