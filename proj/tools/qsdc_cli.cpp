// qsdc: run protocol sessions, dump exact outcome tables, sweep attack rates.
//
// Exit codes: 0 delivered (or command succeeded), 1 usage/config error,
// 2 session aborted by the eavesdropping check.

#include <chrono>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qsdc/analysis.hpp"
#include "qsdc/bits.hpp"
#include "qsdc/protocol.hpp"
#include "qsdc/report.hpp"

namespace {

constexpr int kExitDelivered = 0;
constexpr int kExitUsage = 1;
constexpr int kExitAborted = 2;

struct RunConfig {
  std::size_t pairs = 1024;
  std::string message_hex;
  std::string message_bits;
  std::string attack = "none";
  double attack_probability = 1.0;
  double hadamard_fraction = 0.5;
  double check_fraction = 0.5;
  double threshold = 0.0;
  std::optional<std::uint64_t> seed;
  std::string report_path;
  std::string transcript_path;
  std::size_t samples = 0;
  bool test_mode = false;
  std::vector<std::string> grid;
  std::string bit = "all";
  std::string hadamard = "all";
};

void add_session_flags(CLI::App& cmd, RunConfig& cfg) {
  cmd.add_option("--pairs", cfg.pairs, "Number of EPR pairs N");
  auto* hex = cmd.add_option("--message-hex", cfg.message_hex, "Secret message as hex");
  auto* bits = cmd.add_option("--message-bits", cfg.message_bits, "Secret message as 0/1 string");
  hex->excludes(bits);
  cmd.add_option("--attack", cfg.attack, "Eve's strategy")
      ->check(CLI::IsMember({"none", "ir-z", "ir-x", "ir-random", "collective", "collective-h"}));
  cmd.add_option("--attack-probability", cfg.attack_probability,
                 "Per-episode chance that Eve acts")
      ->check(CLI::Range(0.0, 1.0));
  cmd.add_option("--hadamard-fraction", cfg.hadamard_fraction, "Fraction of pairs Bob flags");
  cmd.add_option("--check-fraction", cfg.check_fraction, "Fraction of pairs used for checking");
  cmd.add_option("--threshold", cfg.threshold, "Abort if the check error rate exceeds this");
  cmd.add_option("--seed", cfg.seed, "Master seed");
  cmd.add_option("--report", cfg.report_path, "Report output path (default: stdout)");
  cmd.add_flag("--test-mode", cfg.test_mode,
               "Require --seed and omit wall-clock metadata so reports are byte-identical");
}

std::uint64_t resolve_seed(const RunConfig& cfg) {
  if (cfg.seed) return *cfg.seed;
  if (cfg.test_mode) throw std::invalid_argument("--seed is required with --test-mode");
  std::random_device rd;
  const std::uint64_t seed = (static_cast<std::uint64_t>(rd()) << 32) | rd();
  std::cerr << "seed: " << seed << "\n";
  return seed;
}

qsdc::ProtocolParams make_params(const RunConfig& cfg, std::uint64_t seed) {
  qsdc::ProtocolParams p;
  p.n_pairs = cfg.pairs;
  p.hadamard_fraction = cfg.hadamard_fraction;
  p.check_fraction = cfg.check_fraction;
  p.abort_threshold = cfg.threshold;
  p.master_seed = seed;
  if (!cfg.message_hex.empty()) {
    p.message = qsdc::bits_from_hex(cfg.message_hex);
  } else if (!cfg.message_bits.empty()) {
    p.message = qsdc::bits_from_string(cfg.message_bits);
  } else if (p.n_pairs > 0 && p.check_count() <= p.n_pairs) {
    // No message given: fill the whole encoding sequence with random bits.
    auto rng = qsdc::RandomStream::derive(seed, qsdc::StreamTag::Message);
    p.message.resize(p.message_capacity());
    for (auto& b : p.message) b = rng.bit();
  }
  p.validate();
  return p;
}

qsdc::AttackModel make_attack(const RunConfig& cfg, double probability) {
  auto attack = qsdc::parse_attack(cfg.attack, probability);
  if (!attack) throw std::invalid_argument("unknown attack " + cfg.attack);
  attack->validate();
  return *attack;
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out << text;
}

qsdc::SimulationReport simulate(const qsdc::ProtocolParams& params,
                                const qsdc::AttackModel& attack, qsdc::SessionResult& session) {
  const auto start = std::chrono::steady_clock::now();
  session = qsdc::run_session(params, attack);
  const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
  return qsdc::make_report(params, attack, session, elapsed.count());
}

void attach_oracle_distances(qsdc::SimulationReport& report, std::size_t samples,
                             std::uint64_t seed) {
  if (samples == 0) return;
  auto rng = qsdc::RandomStream::derive(seed, qsdc::StreamTag::Sampling);
  for (const auto& cell : qsdc::standard_cells()) {
    report.oracle_tv_distances[cell.label()] = qsdc::oracle_vs_monte_carlo(cell, samples, rng);
  }
}

int cmd_run(const RunConfig& cfg) {
  const std::uint64_t seed = resolve_seed(cfg);
  const auto params = make_params(cfg, seed);
  const auto attack = make_attack(cfg, cfg.attack_probability);
  qsdc::SessionResult session;
  auto report = simulate(params, attack, session);
  attach_oracle_distances(report, cfg.samples, seed);
  write_output(cfg.report_path, qsdc::report_to_json(report, !cfg.test_mode).dump(2) + "\n");
  if (!cfg.transcript_path.empty()) {
    write_output(cfg.transcript_path, qsdc::transcript_to_jsonl(session.transcript));
  }
  return session.aborted ? kExitAborted : kExitDelivered;
}

std::vector<qsdc::Bit> expand_bits(const std::string& which, const char* flag) {
  if (which == "all") return {0, 1};
  if (which == "0") return {0};
  if (which == "1") return {1};
  throw std::invalid_argument(std::string(flag) + " must be 0, 1 or all");
}

int cmd_oracle(const RunConfig& cfg) {
  const auto action = qsdc::parse_attack_action(cfg.attack);
  if (!action) {
    throw std::invalid_argument("attack " + cfg.attack + " is not a single episode configuration");
  }
  const auto bits = expand_bits(cfg.bit, "--bit");
  const auto flags = expand_bits(cfg.hadamard, "--hadamard");
  std::optional<qsdc::RandomStream> rng;
  if (cfg.samples > 0) {
    if (cfg.samples < 1000) throw std::invalid_argument("--samples must be at least 1000");
    rng = qsdc::RandomStream::derive(resolve_seed(cfg), qsdc::StreamTag::Sampling);
  }

  nlohmann::ordered_json cells = nlohmann::ordered_json::array();
  for (auto h : flags) {
    for (auto b : bits) {
      const qsdc::EpisodeConfig config{b, h == 1, *action};
      auto doc = qsdc::distribution_to_json(qsdc::exact_distribution(config));
      if (rng) {
        doc["samples"] = cfg.samples;
        doc["tv_distance"] = qsdc::oracle_vs_monte_carlo(config, cfg.samples, *rng);
      }
      cells.push_back(std::move(doc));
    }
  }
  write_output(cfg.report_path, cells.dump(2) + "\n");
  return kExitDelivered;
}

int cmd_sweep(const RunConfig& cfg) {
  std::vector<double> grid;
  for (const auto& item : cfg.grid) {
    if (item.empty()) continue;
    std::size_t used = 0;
    double p = 0.0;
    try {
      p = std::stod(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != item.size()) throw std::invalid_argument("bad grid value '" + item + "'");
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("grid values must lie in [0, 1]");
    grid.push_back(p);
  }
  if (grid.empty()) throw std::invalid_argument("--grid needs at least one probability");
  const std::uint64_t seed = resolve_seed(cfg);
  const auto params = make_params(cfg, seed);
  nlohmann::ordered_json series = nlohmann::ordered_json::array();
  for (double p : grid) {
    const auto attack = make_attack(cfg, p);
    qsdc::SessionResult session;
    const auto report = simulate(params, attack, session);
    series.push_back(
        {{"attack_probability", p}, {"report", qsdc::report_to_json(report, !cfg.test_mode)}});
  }
  write_output(cfg.report_path, series.dump(2) + "\n");
  return kExitDelivered;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"EPR-pair quantum secure direct communication simulator"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto* run = app.add_subcommand("run", "Run one protocol session");
  add_session_flags(*run, cfg);
  run->add_option("--transcript", cfg.transcript_path, "Transcript output path (JSON lines)");
  run->add_option("--samples", cfg.samples,
                  "Monte Carlo samples per oracle cell for TV distances (0 = skip)");

  auto* oracle = app.add_subcommand("oracle", "Write exact outcome distributions");
  oracle->add_option("--attack", cfg.attack, "Eve's action for the cell");
  oracle->add_option("--bit", cfg.bit, "Alice's bit: 0, 1 or all");
  oracle->add_option("--hadamard", cfg.hadamard, "Hadamard flag: 0, 1 or all");
  oracle->add_option("--samples", cfg.samples, "Also compare against this many MC samples");
  oracle->add_option("--seed", cfg.seed, "Seed for the Monte Carlo comparison");
  oracle->add_option("--report", cfg.report_path, "Output path (default: stdout)");

  auto* sweep = app.add_subcommand("sweep", "Sweep the per-episode attack probability");
  add_session_flags(*sweep, cfg);
  sweep->add_option("--grid", cfg.grid, "Comma-separated attack probabilities")
      ->delimiter(',')
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (*run) return cmd_run(cfg);
    if (*oracle) return cmd_oracle(cfg);
    return cmd_sweep(cfg);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}
