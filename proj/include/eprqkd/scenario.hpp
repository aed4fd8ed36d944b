#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "eprqkd/config.hpp"
#include "eprqkd/network.hpp"
#include "eprqkd/protocol.hpp"
#include "eprqkd/stats.hpp"

namespace eprqkd {

inline constexpr std::string_view kVersion = "0.1.0";

// Exact Born expectations for a configured scenario; tolerances for the
// sampled quantities are the 3-sigma binomial bounds, so an expectation of
// 0 or 1 must be met exactly.
struct Prediction {
  BellProbabilities outcome_dist;
  double forbidden_rate = 0.0;
  std::optional<double> key_agreement;     // among kept bits
  std::optional<double> eve_accuracy;      // active two-party channels
  std::optional<double> center_accuracy;   // network sessions
  std::optional<double> charley_recovery;  // mitm relay: 1.0
  std::array<double, 4> announced_dist{};  // network sessions
};

Prediction predict(const ScenarioConfig& config);

struct ScenarioResult {
  ScenarioConfig config;
  Prediction prediction;
  SessionReport session;
  std::optional<NetworkReport> network;
  std::optional<double> eve_accuracy;
  std::optional<double> center_accuracy;
  std::vector<EveRecord> eve_log;
  std::vector<FrequencyCheck> checks;
  bool unexpected_abort = false;

  bool all_checks_pass() const;
};

ScenarioResult execute_scenario(const ScenarioConfig& config);

// Tab-separated round lines under '#'-prefixed metadata; adversary and swap
// records ride along as comment lines. Bytes are a pure function of the
// config.
std::string render_transcript(const ScenarioResult& result);

std::string render_report(const ScenarioResult& result);

// Executes, writes <output_path>.transcript.tsv and <output_path>.report.txt,
// echoes the report to `out`. Returns 0 when every check passed and no
// unexpected abort occurred, 1 otherwise.
int run_scenario(const ScenarioConfig& config, std::ostream& out);

}  // namespace eprqkd
