#include "eprqkd/network.hpp"

#include <stdexcept>
#include <utility>

namespace eprqkd {

namespace {

// Fixed rule turning a swap outcome into a bit guess; outcomes are uniform,
// so the rule is right half the time whatever the users later encode.
int guess_from_outcome(BellKind actual) {
  return static_cast<int>(actual) & 1;
}

// Shortest operation sequence steering a shared Bell kind into another by
// acting on one qubit. {X, IY} composes to the remaining (sigma_z-like)
// swap, so every target is reachable.
std::vector<PauliCode> steering_ops(BellKind from, BellKind to) {
  if (from == to) return {};
  if (pauli_image(from, PauliCode::X) == to) return {PauliCode::X};
  if (pauli_image(from, PauliCode::IY) == to) return {PauliCode::IY};
  return {PauliCode::X, PauliCode::IY};
}

}  // namespace

QuantumFile QuantumFile::deposit(std::string owner, int count) {
  QuantumFile file;
  file.owner = std::move(owner);
  for (int i = 0; i < count; ++i) {
    file.pairs.push_back(bell_state(BellKind::PsiMinus));
  }
  return file;
}

PureState QuantumFile::take() {
  if (pairs.empty()) {
    throw std::runtime_error("quantum file of " + owner + " is exhausted");
  }
  PureState pair = std::move(pairs.front());
  pairs.pop_front();
  ++consumed;
  return pair;
}

std::string_view to_string(CenterStrategyKind kind) {
  switch (kind) {
    case CenterStrategyKind::Honest: return "honest";
    case CenterStrategyKind::MislabelResult: return "mislabel";
    case CenterStrategyKind::Mispair: return "mispair";
    case CenterStrategyKind::MitmRelay: return "mitm_relay";
  }
  return "?";
}

CenterStrategy CenterStrategy::honest() { return CenterStrategy{}; }

CenterStrategy CenterStrategy::mislabel(std::array<BellKind, 4> lie_map) {
  CenterStrategy s;
  s.kind = CenterStrategyKind::MislabelResult;
  s.lie_map = lie_map;
  return s;
}

CenterStrategy CenterStrategy::mispair(std::string substitute_user) {
  CenterStrategy s;
  s.kind = CenterStrategyKind::Mispair;
  s.substitute_user = std::move(substitute_user);
  return s;
}

CenterStrategy CenterStrategy::mitm_relay(std::string charley) {
  CenterStrategy s;
  s.kind = CenterStrategyKind::MitmRelay;
  s.charley = std::move(charley);
  return s;
}

BellKind CenterStrategy::announce(BellKind actual) const {
  if (kind == CenterStrategyKind::MislabelResult) {
    return lie_map[static_cast<int>(actual)];
  }
  return actual;
}

SwapResult entanglement_swap(const PureState& pair_a, const PureState& pair_b,
                             Rng& rng) {
  if (pair_a.num_qubits() != 2 || pair_b.num_qubits() != 2) {
    throw std::invalid_argument("entanglement_swap: inputs must be 2-qubit");
  }
  // Positions after the tensor: user_a = 1, center = 2, user_b = 3,
  // center = 4. The center measures its own halves.
  const PureState joint = tensor(pair_a, pair_b);
  const BellMeasurement m = bell_measure(joint, 2, 4, rng);
  const BellProjection shared = project_pair_onto_bell(
      m.residual, 2, 4, m.outcome);
  return SwapResult{m.outcome, shared.remainder};
}

void Center::deposit(QuantumFile file) {
  files_.insert_or_assign(file.owner, std::move(file));
}

QuantumFile& Center::file(const std::string& owner) {
  auto it = files_.find(owner);
  if (it == files_.end()) {
    throw std::invalid_argument("no quantum file for user " + owner);
  }
  return it->second;
}

std::vector<Correlation> request_correlation(Center& center,
                                             const std::string& user_a,
                                             const std::string& user_b,
                                             int count,
                                             const CenterStrategy& strategy,
                                             Rng& rng) {
  if (count <= 0) {
    throw std::invalid_argument("request_correlation: count must be positive");
  }

  auto require = [&](const std::string& owner, int needed) {
    if (center.file(owner).remaining() < needed) {
      throw std::runtime_error("insufficient pairs in quantum file of " +
                               owner);
    }
  };

  std::vector<Correlation> out;
  out.reserve(static_cast<std::size_t>(count));

  switch (strategy.kind) {
    case CenterStrategyKind::Honest:
    case CenterStrategyKind::MislabelResult: {
      require(user_a, count);
      require(user_b, count);
      for (int i = 1; i <= count; ++i) {
        SwapResult swap = entanglement_swap(center.file(user_a).take(),
                                            center.file(user_b).take(), rng);
        Correlation corr{
            SwapAnnouncement{i, strategy.announce(swap.outcome), swap.outcome},
            std::move(swap.shared), std::nullopt, std::nullopt};
        out.push_back(std::move(corr));
      }
      break;
    }

    case CenterStrategyKind::Mispair: {
      const std::string& sub = strategy.substitute_user;
      if (sub == user_a || sub == user_b) {
        throw std::invalid_argument(
            "mispair: substitute must be a third user");
      }
      require(user_a, count);
      require(sub, count);
      require(user_b, count);
      for (int i = 1; i <= count; ++i) {
        SwapResult swap = entanglement_swap(center.file(user_a).take(),
                                            center.file(sub).take(), rng);
        // user_b's own pair never enters the swap; the user-held half still
        // points at the center's file.
        Correlation corr{SwapAnnouncement{i, swap.outcome, swap.outcome},
                         std::move(swap.shared), center.file(user_b).take(),
                         std::nullopt};
        out.push_back(std::move(corr));
      }
      break;
    }

    case CenterStrategyKind::MitmRelay: {
      const std::string& charley = strategy.charley;
      if (charley == user_a || charley == user_b) {
        throw std::invalid_argument(
            "mitm_relay: charley must be a third user");
      }
      require(user_a, count);
      require(user_b, count);
      require(charley, 2 * count);
      for (int i = 1; i <= count; ++i) {
        SwapResult a_side = entanglement_swap(center.file(user_a).take(),
                                              center.file(charley).take(),
                                              rng);
        SwapResult b_side = entanglement_swap(center.file(charley).take(),
                                              center.file(user_b).take(),
                                              rng);
        Correlation corr{
            SwapAnnouncement{i, a_side.outcome, a_side.outcome},
            std::move(a_side.shared), std::move(b_side.shared),
            b_side.outcome};
        out.push_back(std::move(corr));
      }
      break;
    }
  }
  return out;
}

void NetworkConfig::validate() const {
  if (rounds <= 0) throw std::invalid_argument("rounds must be positive");
  if (batch_size <= 0) {
    throw std::invalid_argument("batch_size must be positive");
  }
  if (abort_threshold < 0) {
    throw std::invalid_argument("abort_threshold must be non-negative");
  }
}

namespace {

// Charley's decode of an intercepted round: the op set of the announced row
// maps the pair's actual kind to two distinct Bell states, so the measured
// outcome identifies the bit.
int relay_decode(BellKind measured, BellKind actual_kind,
                 const CodeTable& table) {
  if (measured == actual_kind) return 0;
  if (measured == pauli_image(actual_kind, table.op_for_bit[1])) return 1;
  throw std::logic_error("relay_decode: outcome outside the encoded images");
}

}  // namespace

NetworkReport run_network_session(const NetworkConfig& config) {
  config.validate();

  const CenterStrategy& strategy = config.strategy;
  Rng alice(config.seed, "alice");
  Rng bob(config.seed, "bob");
  Rng charley_rng(config.seed, "charley");
  Rng center_rng(config.seed, "center");

  Center center;
  center.deposit(QuantumFile::deposit("alice", config.rounds));
  center.deposit(QuantumFile::deposit("bob", config.rounds));
  if (strategy.kind == CenterStrategyKind::Mispair) {
    center.deposit(QuantumFile::deposit(strategy.substitute_user,
                                        config.rounds));
  } else if (strategy.kind == CenterStrategyKind::MitmRelay) {
    center.deposit(QuantumFile::deposit(strategy.charley, 2 * config.rounds));
  }

  std::vector<Correlation> correlations = request_correlation(
      center, "alice", "bob", config.rounds, strategy, center_rng);

  NetworkReport report;
  report.strategy_kind = strategy.kind;
  report.variant = config.variant;
  for (const Correlation& corr : correlations) {
    report.announcements.push_back(corr.announcement);
  }

  for (int round = 1; round <= config.rounds; ++round) {
    const Correlation& corr = correlations[static_cast<std::size_t>(round) - 1];
    const BellKind announced = corr.announcement.announced;
    const CodeTable table = code_table_for(announced, config.variant);

    const Direction direction =
        direction_for_round(round, config.batch_size);
    Rng& sender = direction == Direction::BobToAlice ? bob : alice;
    Rng& receiver = direction == Direction::BobToAlice ? alice : bob;

    const int bit = sender.next_bit();
    const PauliCode op = table.op_for_bit[bit];

    BellKind outcome = BellKind::PsiMinus;
    int center_guess = 0;

    switch (strategy.kind) {
      case CenterStrategyKind::Honest:
      case CenterStrategyKind::MislabelResult: {
        const int sender_qubit =
            direction == Direction::BobToAlice ? 2 : 1;
        const PureState encoded = apply_1q(corr.primary, sender_qubit, op);
        outcome = bell_measure(encoded, 1, 2, receiver).outcome;
        center_guess = guess_from_outcome(corr.announcement.actual);
        break;
      }

      case CenterStrategyKind::Mispair: {
        // Qubits: user_a = 1, substitute = 2, user_b = 3, center = 4. The
        // users measure their own halves (1, 3), which never shared a pair.
        const PureState joint = tensor(corr.primary, *corr.secondary);
        const int sender_qubit =
            direction == Direction::BobToAlice ? 3 : 1;
        const PureState encoded = apply_1q(joint, sender_qubit, op);
        outcome = bell_measure(encoded, 1, 3, receiver).outcome;
        center_guess = guess_from_outcome(corr.announcement.actual);
        break;
      }

      case CenterStrategyKind::MitmRelay: {
        if (direction == Direction::BobToAlice) {
          // Bob encodes on his half of the charley-bob pair; charley
          // intercepts the transit qubit and measures against his own half.
          const PureState encoded = apply_1q(*corr.secondary, 2, op);
          const BellKind seen =
              bell_measure(encoded, 1, 2, charley_rng).outcome;
          const int decoded = relay_decode(seen, *corr.secondary_kind, table);
          // The alice-charley pair is in the announced kind, so replaying
          // the row's own operation reproduces the expected outcome.
          const PureState forwarded =
              apply_1q(corr.primary, 2, table.op_for_bit[decoded]);
          outcome = bell_measure(forwarded, 1, 2, receiver).outcome;
          center_guess = decoded;
        } else {
          const PureState encoded = apply_1q(corr.primary, 1, op);
          const BellKind seen =
              bell_measure(encoded, 1, 2, charley_rng).outcome;
          const int decoded = relay_decode(seen, announced, table);
          // Steer the charley-bob pair onto the outcome Bob expects.
          const BellKind target = table.outcome_for_bit[decoded];
          PureState forwarded = *corr.secondary;
          for (PauliCode steer :
               steering_ops(*corr.secondary_kind, target)) {
            forwarded = apply_1q(forwarded, 1, steer);
          }
          outcome = bell_measure(forwarded, 1, 2, receiver).outcome;
          center_guess = decoded;
        }
        break;
      }
    }

    const std::optional<int> decoded = table.decode(outcome);

    RoundRecord record;
    record.round_index = round;
    record.direction = direction;
    record.sender_bit = bit;
    record.sender_op = op;
    record.outcome = outcome;
    record.decoded_bit = decoded;
    record.forbidden = !decoded.has_value();
    report.session.rounds.push_back(record);
    ++report.session.outcome_histogram[static_cast<int>(outcome)];
    report.center_guesses.push_back(center_guess);

    if (decoded.has_value()) {
      report.session.key_sender.push_back(bit);
      report.session.key_receiver.push_back(*decoded);
    } else {
      ++report.session.detection_count;
      if (report.session.detection_count > config.abort_threshold) {
        report.session.aborted = true;
        break;
      }
    }
  }

  for (const auto& [owner, file] : center.files()) {
    report.pairs_consumed[owner] = file.consumed;
  }
  return report;
}

GuessStats center_guess_stats(const NetworkReport& report) {
  GuessStats stats;
  for (std::size_t i = 0; i < report.session.rounds.size(); ++i) {
    const RoundRecord& round = report.session.rounds[i];
    if (round.forbidden) continue;
    ++stats.compared;
    if (report.center_guesses[i] == round.sender_bit) ++stats.correct;
  }
  return stats;
}

double center_information(const NetworkReport& report) {
  const GuessStats stats = center_guess_stats(report);
  if (stats.compared == 0) return 0.5;
  return static_cast<double>(stats.correct) /
         static_cast<double>(stats.compared);
}

}  // namespace eprqkd
