#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "eprqkd/scenario.hpp"

using namespace eprqkd;

namespace {

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

int count_data_lines(const std::string& transcript) {
  std::istringstream in(transcript);
  std::string line;
  int count = 0;
  while (std::getline(in, line)) {
    if (!line.empty() && line[0] != '#') ++count;
  }
  return count;
}

}  // namespace

TEST_CASE("predict matches the honest and attack expectations") {
  ScenarioConfig honest;
  const Prediction p_honest = predict(honest);
  CHECK(p_honest.forbidden_rate == 0.0);
  CHECK(p_honest.outcome_dist[BellKind::PsiMinus] == doctest::Approx(0.5));
  CHECK(p_honest.outcome_dist[BellKind::PhiMinus] == doctest::Approx(0.5));
  CHECK(p_honest.outcome_dist[BellKind::PsiPlus] == 0.0);
  REQUIRE(p_honest.key_agreement.has_value());
  CHECK(*p_honest.key_agreement == doctest::Approx(1.0));

  ScenarioConfig intercept;
  intercept.channel = ChannelModel::Strategy::InterceptResend;
  const Prediction p_intercept = predict(intercept);
  CHECK(p_intercept.forbidden_rate == doctest::Approx(0.5));
  for (BellKind k : kAllBellKinds) {
    CHECK(p_intercept.outcome_dist[k] == doctest::Approx(0.25));
  }
  REQUIRE(p_intercept.key_agreement.has_value());
  CHECK(*p_intercept.key_agreement == doctest::Approx(0.5));

  ScenarioConfig cnot;
  cnot.channel = ChannelModel::Strategy::CnotAncilla;
  const Prediction p_cnot = predict(cnot);
  CHECK(p_cnot.forbidden_rate == doctest::Approx(0.5));
  REQUIRE(p_cnot.key_agreement.has_value());
  CHECK(*p_cnot.key_agreement == doctest::Approx(1.0));  // kept bits survive

  ScenarioConfig mispair;
  mispair.mode = Mode::Network;
  mispair.center = CenterStrategyKind::Mispair;
  const Prediction p_mispair = predict(mispair);
  CHECK(p_mispair.forbidden_rate == doctest::Approx(0.5));

  ScenarioConfig lie;
  lie.mode = Mode::Network;
  lie.center = CenterStrategyKind::MislabelResult;
  lie.lie_map = {BellKind::PhiMinus, BellKind::PhiPlus, BellKind::PsiMinus,
                 BellKind::PsiPlus};
  lie.variant = OpSetVariant::SigmaXOnly;
  const Prediction p_lie = predict(lie);
  CHECK(p_lie.forbidden_rate == 0.0);
  REQUIRE(p_lie.key_agreement.has_value());
  CHECK(*p_lie.key_agreement == doctest::Approx(0.0));  // reversed keys
}

TEST_CASE("executed scenarios pass their own predictions") {
  ScenarioConfig honest;
  honest.seed = 42;
  const ScenarioResult r = execute_scenario(honest);
  CHECK(r.all_checks_pass());
  CHECK(r.session.detection_count == 0);
  CHECK_FALSE(r.unexpected_abort);

  ScenarioConfig intercept;
  intercept.channel = ChannelModel::Strategy::InterceptResend;
  intercept.abort_threshold = intercept.rounds;
  intercept.seed = 1001;
  const ScenarioResult ri = execute_scenario(intercept);
  CHECK(ri.all_checks_pass());
  CHECK(ri.session.detection_count > 4000);

  ScenarioConfig mitm;
  mitm.mode = Mode::Network;
  mitm.center = CenterStrategyKind::MitmRelay;
  mitm.seed = 7;
  const ScenarioResult rm = execute_scenario(mitm);
  CHECK(rm.all_checks_pass());
  REQUIRE(rm.center_accuracy.has_value());
  CHECK(*rm.center_accuracy == 1.0);
}

TEST_CASE("transcripts carry one line per round and metadata as comments") {
  ScenarioConfig config;
  config.rounds = 50;
  config.batch_size = 10;
  config.seed = 3;
  const ScenarioResult result = execute_scenario(config);
  const std::string transcript = render_transcript(result);

  CHECK(count_data_lines(transcript) == 50);
  CHECK(transcript.find("# eprqkd transcript v") == 0);
  CHECK(transcript.find("#   seed = 3\n") != std::string::npos);
  CHECK(transcript.find("# round\tdirection\tsender_bit\top\toutcome\t"
                        "decoded\tforbidden\n") != std::string::npos);

  // Every data line has exactly 7 tab-separated fields.
  std::istringstream in(transcript);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    int tabs = 0;
    for (char c : line) {
      if (c == '\t') ++tabs;
    }
    CHECK(tabs == 6);
  }

  // Eve records ride along as comments for active channels.
  ScenarioConfig intercept = config;
  intercept.channel = ChannelModel::Strategy::InterceptResend;
  intercept.abort_threshold = 50;
  const std::string with_eve =
      render_transcript(execute_scenario(intercept));
  CHECK(with_eve.find("# eve\t") != std::string::npos);

  // Swap announcements appear for network runs, actual marked analysis-only.
  ScenarioConfig network;
  network.mode = Mode::Network;
  network.rounds = 20;
  const std::string with_swaps =
      render_transcript(execute_scenario(network));
  CHECK(with_swaps.find("# swap\t") != std::string::npos);
  CHECK(with_swaps.find("analysis-only") != std::string::npos);
  CHECK(count_data_lines(with_swaps) == 20);
}

TEST_CASE("reports list every check exactly once with a verdict") {
  ScenarioConfig config;
  config.rounds = 200;
  config.seed = 5;
  const ScenarioResult result = execute_scenario(config);
  const std::string report = render_report(result);

  for (const FrequencyCheck& check : result.checks) {
    std::size_t first = report.find("check\t" + check.label + "\t");
    REQUIRE(first != std::string::npos);
    CHECK(report.find("check\t" + check.label + "\t", first + 1) ==
          std::string::npos);
  }
  CHECK(report.find("verdict\tPASS") != std::string::npos);

  // A failing check turns the verdict around.
  ScenarioResult doctored = result;
  doctored.checks.push_back(
      check_frequency("doctored", 0.0, 1, 100));
  const std::string failing = render_report(doctored);
  CHECK(failing.find("FAIL") != std::string::npos);
  CHECK(failing.find("verdict\tFAIL") != std::string::npos);
  CHECK_FALSE(doctored.all_checks_pass());
}

TEST_CASE("run_scenario writes byte-identical artifacts for equal configs") {
  const std::filesystem::path dir =
      std::filesystem::temp_directory_path() / "eprqkd_scenario_test";
  std::filesystem::create_directories(dir);

  ScenarioConfig config;
  config.rounds = 120;
  config.seed = 9;
  config.output_path = (dir / "first").string();

  std::ostringstream sink;
  CHECK(run_scenario(config, sink) == 0);
  CHECK(sink.str().find("verdict\tPASS") != std::string::npos);

  const std::string transcript_a = slurp(dir / "first.transcript.tsv");
  const std::string report_a = slurp(dir / "first.report.txt");
  CHECK(report_a == sink.str());

  // A second run of the same config overwrites with identical bytes.
  std::ostringstream sink2;
  CHECK(run_scenario(config, sink2) == 0);
  CHECK(slurp(dir / "first.transcript.tsv") == transcript_a);
  CHECK(slurp(dir / "first.report.txt") == report_a);

  std::filesystem::remove_all(dir);
}
