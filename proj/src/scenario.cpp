#include "eprqkd/scenario.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace eprqkd {

namespace {

std::string format_value(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

// Exact Born distribution of the receiver's measurement for one encoded
// Bell state sent through the channel, averaged over what the channel
// itself randomizes (the intercept branch).
BellProbabilities delivered_distribution(const PureState& encoded,
                                         const ScenarioConfig& config) {
  switch (config.channel) {
    case ChannelModel::Strategy::Identity:
      return bell_probabilities(encoded, 1, 2);

    case ChannelModel::Strategy::InterceptResend: {
      // Eve measures the transit qubit (position 2 in the prediction frame)
      // and forwards the fake qubit; average the two branches.
      BellProbabilities avg;
      const PureState fake = PureState::qubit(config.fake_c, config.fake_d);
      for (int m = 0; m < 2; ++m) {
        double p_branch = 0.0;
        for (std::size_t i = 0; i < encoded.dim(); ++i) {
          if (static_cast<int>(i & 1) == m) {
            p_branch += std::norm(encoded.amplitude(i));
          }
        }
        if (p_branch <= 0.0) continue;
        const double scale = 1.0 / std::sqrt(p_branch);
        const PureState alice_qubit = PureState::qubit(
            encoded.amplitude(static_cast<std::size_t>(m)) * scale,
            encoded.amplitude(static_cast<std::size_t>(2 | m)) * scale);
        const BellProbabilities branch =
            bell_probabilities(tensor(alice_qubit, fake), 1, 2);
        for (BellKind k : kAllBellKinds) avg[k] += p_branch * branch[k];
      }
      return avg;
    }

    case ChannelModel::Strategy::CnotAncilla: {
      const PureState entangled =
          apply_cnot(tensor(encoded, PureState::computational(1, 0)), 2, 3);
      return bell_probabilities(entangled, 1, 2);
    }
  }
  throw std::logic_error("unknown channel strategy");
}

Prediction predict_two_party(const ScenarioConfig& config) {
  Prediction prediction;
  const CodeTable table = code_table_for(BellKind::PsiMinus);

  double agree = 0.0;
  for (int bit = 0; bit < 2; ++bit) {
    const PureState encoded =
        apply_1q(bell_state(BellKind::PsiMinus), 2, table.op_for_bit[bit]);
    const BellProbabilities dist = delivered_distribution(encoded, config);
    for (BellKind k : kAllBellKinds) {
      prediction.outcome_dist[k] += 0.5 * dist[k];
    }
    agree += 0.5 * dist[table.outcome_for_bit[bit]];
  }
  prediction.forbidden_rate = prediction.outcome_dist[table.forbidden[0]] +
                              prediction.outcome_dist[table.forbidden[1]];
  const double kept = 1.0 - prediction.forbidden_rate;
  if (kept > 0.0) prediction.key_agreement = agree / kept;
  if (config.channel != ChannelModel::Strategy::Identity) {
    prediction.eve_accuracy = 0.5;  // channel records carry no key information
  }
  return prediction;
}

Prediction predict_network(const ScenarioConfig& config) {
  Prediction prediction;

  double agree = 0.0;
  double kept = 0.0;
  for (BellKind actual : kAllBellKinds) {
    const double w_actual = 0.25;  // swap outcomes are exactly uniform
    BellKind announced = actual;
    if (config.center == CenterStrategyKind::MislabelResult) {
      announced = config.lie_map[static_cast<int>(actual)];
    }
    prediction.announced_dist[static_cast<int>(announced)] += w_actual;
    const CodeTable table = code_table_for(announced, config.variant);

    for (int bit = 0; bit < 2; ++bit) {
      const double w = w_actual * 0.5;
      BellProbabilities dist;
      switch (config.center) {
        case CenterStrategyKind::Honest:
        case CenterStrategyKind::MislabelResult: {
          const PureState encoded =
              apply_1q(bell_state(actual), 2, table.op_for_bit[bit]);
          dist = bell_probabilities(encoded, 1, 2);
          break;
        }
        case CenterStrategyKind::Mispair: {
          // The measured halves belong to different pairs.
          const PureState joint =
              tensor(bell_state(actual), bell_state(BellKind::PsiMinus));
          const PureState encoded = apply_1q(joint, 3, table.op_for_bit[bit]);
          dist = bell_probabilities(encoded, 1, 3);
          break;
        }
        case CenterStrategyKind::MitmRelay: {
          // The relay measures, re-encodes and forwards; the receiver sees
          // the expected outcome with certainty.
          dist[table.outcome_for_bit[bit]] = 1.0;
          break;
        }
      }
      for (BellKind k : kAllBellKinds) prediction.outcome_dist[k] += w * dist[k];
      prediction.forbidden_rate +=
          w * (dist[table.forbidden[0]] + dist[table.forbidden[1]]);
      agree += w * dist[table.outcome_for_bit[bit]];
      kept += w * (dist[table.outcome_for_bit[0]] +
                   dist[table.outcome_for_bit[1]]);
    }
  }
  if (kept > 0.0) prediction.key_agreement = agree / kept;
  prediction.center_accuracy =
      config.center == CenterStrategyKind::MitmRelay ? 1.0 : 0.5;
  return prediction;
}

}  // namespace

Prediction predict(const ScenarioConfig& config) {
  return config.mode == Mode::TwoParty ? predict_two_party(config)
                                       : predict_network(config);
}

bool ScenarioResult::all_checks_pass() const {
  for (const FrequencyCheck& check : checks) {
    if (!check.pass) return false;
  }
  return !unexpected_abort;
}

ScenarioResult execute_scenario(const ScenarioConfig& config) {
  ScenarioResult result;
  result.config = config;
  result.prediction = predict(config);

  if (config.mode == Mode::TwoParty) {
    SessionConfig session_config;
    session_config.rounds = config.rounds;
    session_config.batch_size = config.batch_size;
    session_config.shared_kind = BellKind::PsiMinus;
    session_config.abort_threshold = config.abort_threshold;
    session_config.seed = config.seed;

    ChannelModel channel = config.make_channel();
    result.session = run_session(session_config, channel);
    result.eve_log = channel.eve_log();
    if (config.channel != ChannelModel::Strategy::Identity) {
      result.eve_accuracy = eve_key_guess_accuracy(result.session, channel);
    }

    const auto executed =
        static_cast<std::int64_t>(result.session.rounds.size());
    const auto outcome_checks =
        compare_to_oracle(result.session.outcome_histogram,
                          result.prediction.outcome_dist, executed,
                          "outcome:");
    result.checks.insert(result.checks.end(), outcome_checks.begin(),
                         outcome_checks.end());
    result.checks.push_back(check_frequency(
        "forbidden_rate", result.prediction.forbidden_rate,
        result.session.detection_count, executed));
    if (result.prediction.key_agreement.has_value() &&
        !result.session.key_sender.empty()) {
      std::int64_t agree = 0;
      for (std::size_t i = 0; i < result.session.key_sender.size(); ++i) {
        if (result.session.key_sender[i] == result.session.key_receiver[i]) {
          ++agree;
        }
      }
      result.checks.push_back(check_frequency(
          "key_agreement", *result.prediction.key_agreement, agree,
          static_cast<std::int64_t>(result.session.key_sender.size())));
    }
    if (result.prediction.eve_accuracy.has_value()) {
      const GuessStats stats = eve_guess_stats(result.session, channel);
      if (stats.compared > 0) {
        result.checks.push_back(
            check_frequency("eve_guess_accuracy",
                            *result.prediction.eve_accuracy, stats.correct,
                            stats.compared));
      }
    }
  } else {
    NetworkConfig network_config;
    network_config.rounds = config.rounds;
    network_config.batch_size = config.batch_size;
    network_config.abort_threshold = config.abort_threshold;
    network_config.seed = config.seed;
    network_config.strategy = config.make_center_strategy();
    network_config.variant = config.variant;

    NetworkReport network = run_network_session(network_config);
    result.session = network.session;
    result.center_accuracy = center_information(network);

    const auto executed =
        static_cast<std::int64_t>(result.session.rounds.size());
    const auto outcome_checks =
        compare_to_oracle(result.session.outcome_histogram,
                          result.prediction.outcome_dist, executed,
                          "outcome:");
    result.checks.insert(result.checks.end(), outcome_checks.begin(),
                         outcome_checks.end());
    result.checks.push_back(check_frequency(
        "forbidden_rate", result.prediction.forbidden_rate,
        result.session.detection_count, executed));

    std::array<std::int64_t, 4> announced_counts{};
    for (const SwapAnnouncement& a : network.announcements) {
      ++announced_counts[static_cast<int>(a.announced)];
    }
    for (BellKind k : kAllBellKinds) {
      result.checks.push_back(check_frequency(
          "announced:" + std::string(to_string(k)),
          result.prediction.announced_dist[static_cast<int>(k)],
          announced_counts[static_cast<int>(k)],
          static_cast<std::int64_t>(network.announcements.size())));
    }
    if (result.prediction.key_agreement.has_value() &&
        !result.session.key_sender.empty()) {
      std::int64_t agree = 0;
      for (std::size_t i = 0; i < result.session.key_sender.size(); ++i) {
        if (result.session.key_sender[i] == result.session.key_receiver[i]) {
          ++agree;
        }
      }
      result.checks.push_back(check_frequency(
          "key_agreement", *result.prediction.key_agreement, agree,
          static_cast<std::int64_t>(result.session.key_sender.size())));
    }
    if (result.prediction.center_accuracy.has_value()) {
      const GuessStats stats = center_guess_stats(network);
      if (stats.compared > 0) {
        result.checks.push_back(check_frequency(
            "center_guess_accuracy", *result.prediction.center_accuracy,
            stats.correct, stats.compared));
      }
    }
    result.network = std::move(network);
  }

  result.unexpected_abort =
      result.session.aborted && result.prediction.forbidden_rate == 0.0;
  return result;
}

std::string render_transcript(const ScenarioResult& result) {
  std::ostringstream out;
  out << "# eprqkd transcript v" << kVersion << '\n';
  out << "# config:\n";
  {
    std::istringstream echo(echo_config(result.config));
    std::string line;
    while (std::getline(echo, line)) out << "#   " << line << '\n';
  }
  out << "# round\tdirection\tsender_bit\top\toutcome\tdecoded\tforbidden\n";
  for (const RoundRecord& round : result.session.rounds) {
    out << round.round_index << '\t' << to_string(round.direction) << '\t'
        << round.sender_bit << '\t' << to_string(round.sender_op) << '\t'
        << to_string(round.outcome) << '\t';
    if (round.decoded_bit.has_value()) {
      out << *round.decoded_bit;
    } else {
      out << '-';
    }
    out << '\t' << (round.forbidden ? 1 : 0) << '\n';
  }
  if (!result.eve_log.empty()) {
    out << "# eve\tround\tintercepted\tguessed\n";
    for (const EveRecord& record : result.eve_log) {
      out << "# eve\t" << record.round_index << '\t';
      if (record.intercepted_bit.has_value()) {
        out << *record.intercepted_bit;
      } else {
        out << '-';
      }
      out << '\t';
      if (record.guessed_bit.has_value()) {
        out << *record.guessed_bit;
      } else {
        out << '-';
      }
      out << '\n';
    }
  }
  if (result.network.has_value()) {
    out << "# swap\tpair\tannounced\tactual (actual is analysis-only)\n";
    for (const SwapAnnouncement& a : result.network->announcements) {
      out << "# swap\t" << a.pair_index << '\t' << to_string(a.announced)
          << '\t' << to_string(a.actual) << '\n';
    }
  }
  return out.str();
}

std::string render_report(const ScenarioResult& result) {
  std::ostringstream out;
  const ScenarioConfig& config = result.config;
  out << "# eprqkd report v" << kVersion << '\n';
  out << "# scenario: mode=" << to_string(config.mode);
  if (config.mode == Mode::TwoParty) {
    out << " channel=" << to_string(config.channel);
  } else {
    out << " center=" << to_string(config.center)
        << " variant=" << to_string(config.variant);
  }
  out << " seed=" << config.seed << " rounds=" << config.rounds << '\n';

  for (const FrequencyCheck& check : result.checks) {
    out << "check\t" << check.label
        << "\texpected=" << format_value(check.expected)
        << "\tobserved=" << format_value(check.observed())
        << "\ttolerance=" << format_value(check.tolerance)
        << "\ttrials=" << check.trials << '\t'
        << (check.pass ? "PASS" : "FAIL") << '\n';
  }

  out << "summary\trounds_executed = " << result.session.rounds.size() << '\n';
  out << "summary\tdetections = " << result.session.detection_count << '\n';
  out << "summary\taborted = " << (result.session.aborted ? 1 : 0) << '\n';
  out << "summary\tunexpected_abort = " << (result.unexpected_abort ? 1 : 0)
      << '\n';
  out << "summary\tkey_bits = " << result.session.key_sender.size() << '\n';
  out << "summary\tkey_agreement = "
      << format_value(result.session.key_agreement()) << '\n';
  if (result.eve_accuracy.has_value()) {
    out << "summary\teve_guess_accuracy = " << format_value(*result.eve_accuracy)
        << '\n';
  }
  if (result.center_accuracy.has_value()) {
    out << "summary\tcenter_guess_accuracy = "
        << format_value(*result.center_accuracy) << '\n';
  }
  out << "verdict\t" << (result.all_checks_pass() ? "PASS" : "FAIL") << '\n';
  return out.str();
}

int run_scenario(const ScenarioConfig& config, std::ostream& out) {
  const ScenarioResult result = execute_scenario(config);

  const std::string transcript_path = config.output_path + ".transcript.tsv";
  const std::string report_path = config.output_path + ".report.txt";

  std::ofstream transcript(transcript_path, std::ios::binary);
  if (!transcript) {
    throw std::runtime_error("cannot write " + transcript_path);
  }
  transcript << render_transcript(result);
  transcript.close();
  if (!transcript) {
    throw std::runtime_error("failed writing " + transcript_path);
  }

  const std::string report = render_report(result);
  std::ofstream report_file(report_path, std::ios::binary);
  if (!report_file) {
    throw std::runtime_error("cannot write " + report_path);
  }
  report_file << report;
  report_file.close();
  if (!report_file) {
    throw std::runtime_error("failed writing " + report_path);
  }

  out << report;
  return result.all_checks_pass() ? 0 : 1;
}

}  // namespace eprqkd
