#include "qsdc/report.hpp"

#include <type_traits>

#include "qsdc/bits.hpp"

namespace qsdc {

using nlohmann::ordered_json;

namespace {

ordered_json rate_json(const RateEstimate& r) {
  return {{"rate", r.rate},
          {"errors", r.errors},
          {"trials", r.trials},
          {"ci95", {r.ci_low, r.ci_high}}};
}

ordered_json indexed_bits(const std::vector<std::pair<std::size_t, Bit>>& items) {
  ordered_json out = ordered_json::array();
  for (const auto& [index, bit] : items) out.push_back({index, static_cast<int>(bit)});
  return out;
}

ordered_json transcript_line(const TranscriptEntry& entry) {
  return std::visit(
      [](const auto& e) -> ordered_json {
        using T = std::decay_t<decltype(e)>;
        if constexpr (std::is_same_v<T, BobHadamardPositions>) {
          return {{"step", 2}, {"actor", "Bob"}, {"payload", {{"hadamard_positions", e.positions}}}};
        } else if constexpr (std::is_same_v<T, AliceCheckPositions>) {
          return {{"step", 8}, {"actor", "Alice"}, {"payload", {{"check_positions", e.positions}}}};
        } else if constexpr (std::is_same_v<T, BobCheckResults>) {
          return {{"step", 8},
                  {"actor", "Bob"},
                  {"payload", {{"check_results", indexed_bits(e.results)}}}};
        } else if constexpr (std::is_same_v<T, AliceAbortDecision>) {
          return {{"step", 8},
                  {"actor", "Alice"},
                  {"payload", {{"abort", e.abort}, {"error_rate", e.error_rate}}}};
        } else {
          return {{"step", 9}, {"actor", "Alice"}, {"payload", {{"d_results", indexed_bits(e.results)}}}};
        }
      },
      entry);
}

}  // namespace

ordered_json report_to_json(const SimulationReport& rep, bool include_metadata) {
  const ProtocolParams& p = rep.params;
  ordered_json doc;
  doc["params"] = {{"pairs", p.n_pairs},
                   {"hadamard_fraction", p.hadamard_fraction},
                   {"check_fraction", p.check_fraction},
                   {"threshold", p.abort_threshold},
                   {"seed", p.master_seed},
                   {"message_hex", bits_to_hex(p.message)},
                   {"message_bits", p.message.size()}};
  doc["attack"] = {{"kind", attack_name(rep.attack)}, {"probability", rep.attack.probability}};
  doc["check_error_rate"] = rep.check.rate;
  doc["ci95"] = {rep.check.ci_low, rep.check.ci_high};
  doc["check_episodes"] = rep.check.trials;
  doc["detected"] = rep.detected;
  doc["aborted"] = rep.aborted;
  if (rep.recovered_message) {
    doc["recovered_message_hex"] = bits_to_hex(*rep.recovered_message);
    doc["recovered_message_bits"] = rep.recovered_message->size();
  } else {
    doc["recovered_message_hex"] = nullptr;
    doc["recovered_message_bits"] = nullptr;
  }
  doc["message_bit_error_rate"] = rep.message ? rate_json(*rep.message) : ordered_json(nullptr);
  doc["eve_mi_bits"] = rep.eve_mi_bits;
  doc["eve_mi_with_announcement_bits"] = rep.eve_mi_with_announcement_bits;
  doc["throughput"] = rep.throughput;
  ordered_json tv = ordered_json::object();
  for (const auto& [cell, d] : rep.oracle_tv_distances) tv[cell] = d;
  doc["oracle_tv_distances"] = tv;
  if (include_metadata) {
    doc["metadata"] = {{"elapsed_seconds", rep.elapsed_seconds},
                       {"episodes_per_second", rep.episodes_per_second}};
  }
  return doc;
}

std::string transcript_to_jsonl(const Transcript& transcript) {
  std::string out;
  for (const auto& entry : transcript) {
    out += transcript_line(entry).dump();
    out += '\n';
  }
  return out;
}

ordered_json distribution_to_json(const ExactDistribution& dist) {
  ordered_json table = ordered_json::object();
  for (std::size_t i = 0; i < dist.probabilities.size(); ++i) {
    table[dist.key(i)] = dist.probabilities[i];
  }
  std::string labels;
  for (const auto& l : dist.labels) labels += l;
  return {{"cell", dist.config.label()},
          {"attack", to_string(dist.config.action)},
          {"alice_bit", static_cast<int>(dist.config.alice_bit)},
          {"hadamard", dist.config.hadamard},
          {"outcome_order", labels},
          {"check_error_probability", check_error_probability(dist)},
          {"table", table}};
}

}  // namespace qsdc
