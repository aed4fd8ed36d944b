#include "eprqkd/protocol.hpp"

#include <stdexcept>

namespace eprqkd {

std::string_view to_string(Direction direction) {
  return direction == Direction::BobToAlice ? "bob_to_alice" : "alice_to_bob";
}

std::string_view to_string(OpSetVariant variant) {
  return variant == OpSetVariant::Standard ? "paper_table_1" : "sigma_x_only";
}

BellKind pauli_image(BellKind kind, PauliCode op) {
  // X swaps Psi-/Phi- and Psi+/Phi+; iY swaps Psi-/Phi+ and Psi+/Phi-.
  static constexpr std::array<std::array<BellKind, 4>, 3> kImages = {{
      {BellKind::PsiMinus, BellKind::PsiPlus, BellKind::PhiMinus,
       BellKind::PhiPlus},
      {BellKind::PhiMinus, BellKind::PhiPlus, BellKind::PsiMinus,
       BellKind::PsiPlus},
      {BellKind::PhiPlus, BellKind::PhiMinus, BellKind::PsiPlus,
       BellKind::PsiMinus},
  }};
  return kImages[static_cast<int>(op)][static_cast<int>(kind)];
}

bool CodeTable::is_forbidden(BellKind outcome) const {
  return outcome == forbidden[0] || outcome == forbidden[1];
}

std::optional<int> CodeTable::decode(BellKind outcome) const {
  if (outcome == outcome_for_bit[0]) return 0;
  if (outcome == outcome_for_bit[1]) return 1;
  return std::nullopt;
}

CodeTable code_table_for(BellKind shared, OpSetVariant variant) {
  const bool phi_row =
      shared == BellKind::PhiMinus || shared == BellKind::PhiPlus;
  const PauliCode one_op = (phi_row && variant == OpSetVariant::Standard)
                               ? PauliCode::IY
                               : PauliCode::X;

  CodeTable table;
  table.shared = shared;
  table.op_for_bit = {PauliCode::Id, one_op};
  table.outcome_for_bit = {shared, pauli_image(shared, one_op)};

  std::size_t next = 0;
  for (BellKind k : kAllBellKinds) {
    if (k != table.outcome_for_bit[0] && k != table.outcome_for_bit[1]) {
      table.forbidden[next++] = k;
    }
  }
  return table;
}

PureState encode_round(int bit, const PureState& pair, int sender_qubit,
                       const CodeTable& table) {
  if (bit != 0 && bit != 1) {
    throw std::invalid_argument("encode_round: bit must be 0 or 1");
  }
  return apply_1q(pair, sender_qubit, table.op_for_bit[bit]);
}

std::optional<int> decode_round(BellKind outcome, const CodeTable& table) {
  return table.decode(outcome);
}

void SessionConfig::validate() const {
  if (rounds <= 0) throw std::invalid_argument("rounds must be positive");
  if (batch_size <= 0) {
    throw std::invalid_argument("batch_size must be positive");
  }
  if (abort_threshold < 0) {
    throw std::invalid_argument("abort_threshold must be non-negative");
  }
}

double SessionReport::key_agreement() const {
  if (key_sender.empty()) return 1.0;
  std::size_t agree = 0;
  for (std::size_t i = 0; i < key_sender.size(); ++i) {
    if (key_sender[i] == key_receiver[i]) ++agree;
  }
  return static_cast<double>(agree) / static_cast<double>(key_sender.size());
}

Direction direction_for_round(int round_index, int batch_size) {
  const int batch = (round_index - 1) / batch_size;
  return batch % 2 == 0 ? Direction::BobToAlice : Direction::AliceToBob;
}

SessionReport run_session(const SessionConfig& config, ChannelModel& channel) {
  config.validate();

  const CodeTable table = code_table_for(config.shared_kind);
  Rng alice(config.seed, "alice");
  Rng bob(config.seed, "bob");
  Rng eve(config.seed, "eve");

  SessionReport report;
  report.rounds.reserve(static_cast<std::size_t>(config.rounds));

  for (int round = 1; round <= config.rounds; ++round) {
    const Direction direction = direction_for_round(round, config.batch_size);
    Rng& sender = direction == Direction::BobToAlice ? bob : alice;
    Rng& receiver = direction == Direction::BobToAlice ? alice : bob;
    const int sender_qubit = direction == Direction::BobToAlice ? 2 : 1;

    const PureState pair = bell_state(config.shared_kind);
    const int bit = sender.next_bit();
    const PureState encoded = encode_round(bit, pair, sender_qubit, table);

    TransitResult transit = channel.transit(encoded, sender_qubit, eve);
    const BellMeasurement measured =
        bell_measure(transit.state, 1, 2, receiver);
    channel.observe_residual(measured.residual, eve);

    const std::optional<int> decoded = decode_round(measured.outcome, table);

    RoundRecord record;
    record.round_index = round;
    record.direction = direction;
    record.sender_bit = bit;
    record.sender_op = table.op_for_bit[bit];
    record.outcome = measured.outcome;
    record.decoded_bit = decoded;
    record.forbidden = !decoded.has_value();
    report.rounds.push_back(record);
    ++report.outcome_histogram[static_cast<int>(measured.outcome)];

    if (decoded.has_value()) {
      report.key_sender.push_back(bit);
      report.key_receiver.push_back(*decoded);
    } else {
      ++report.detection_count;
      if (report.detection_count > config.abort_threshold) {
        report.aborted = true;
        break;
      }
    }
  }
  return report;
}

}  // namespace eprqkd
