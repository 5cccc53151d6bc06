#pragma once

#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "socnav/episode.hpp"
#include "socnav/evaluation.hpp"
#include "socnav/simulator.hpp"

namespace socnav {

inline constexpr int kConfigVersion = 1;
inline constexpr int kSnapshotVersion = 1;
inline constexpr int kReportVersion = 1;

/// Parses a scenario configuration document (JSON). Every key is optional
/// and falls back to the defaults; unknown keys are rejected. Errors are
/// ConfigError with the offending field path, or "line L, column C" for
/// syntax errors.
ScenarioConfig parse_config(std::string_view text);
ScenarioConfig load_config_file(const std::string& path);

nlohmann::json config_to_json(const ScenarioConfig& config);

/// Canonical text used for digests: compact JSON with sorted keys.
std::string canonical_config_text(const ScenarioConfig& config);

/// Versioned world snapshot; doubles round-trip bit-exactly.
nlohmann::json snapshot_to_json(const WorldState& state);
WorldState snapshot_from_json(const nlohmann::json& doc);

nlohmann::json report_to_json(const EvalReport& report);
nlohmann::json protocol_to_json(const ProtocolReport& report);

nlohmann::json observation_to_json(const Observation& obs);

}  // namespace socnav
