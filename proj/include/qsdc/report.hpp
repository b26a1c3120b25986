#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "qsdc/analysis.hpp"
#include "qsdc/protocol.hpp"

namespace qsdc {

/// Report document. Stable top-level fields: params, attack,
/// check_error_rate, ci95, detected, recovered_message_hex, eve_mi_bits,
/// throughput. Wall-clock data lives under "metadata", which is the only
/// non-deterministic part and is dropped when `include_metadata` is false.
nlohmann::ordered_json report_to_json(const SimulationReport& report, bool include_metadata);

/// One announcement per line: {"step":..,"actor":..,"payload":{..}}.
std::string transcript_to_jsonl(const Transcript& transcript);

nlohmann::ordered_json distribution_to_json(const ExactDistribution& dist);

}  // namespace qsdc
