#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "eprqkd/adversary.hpp"
#include "eprqkd/quantum.hpp"

namespace eprqkd {

enum class Direction { BobToAlice = 0, AliceToBob = 1 };

std::string_view to_string(Direction direction);

// Which operation pair encodes bit 1 on the Phi rows: i*sigma_y (standard)
// or the rejected sigma_x-only substitution.
enum class OpSetVariant { Standard = 0, SigmaXOnly = 1 };

std::string_view to_string(OpSetVariant variant);

// Bell image of a local encoding operation applied to either qubit of a
// shared Bell pair (global phase dropped).
BellKind pauli_image(BellKind kind, PauliCode op);

// One row of the encode/decode table: the operation and expected measurement
// outcome per bit value, plus the two outcomes whose appearance signals an
// eavesdropper.
struct CodeTable {
  BellKind shared;
  std::array<PauliCode, 2> op_for_bit;
  std::array<BellKind, 2> outcome_for_bit;
  std::array<BellKind, 2> forbidden;

  bool is_forbidden(BellKind outcome) const;
  // Bit value for a legal outcome, nullopt for a forbidden one.
  std::optional<int> decode(BellKind outcome) const;
};

// Row selection: {I, X} for the Psi kinds, {I, iY} (or {I, X} under
// SigmaXOnly) for the Phi kinds. Bit 0 maps to I and to the shared state
// itself; bit 1 to the image under the other operation.
CodeTable code_table_for(BellKind shared,
                         OpSetVariant variant = OpSetVariant::Standard);

PureState encode_round(int bit, const PureState& pair, int sender_qubit,
                       const CodeTable& table);

std::optional<int> decode_round(BellKind outcome, const CodeTable& table);

struct RoundRecord {
  int round_index = 0;  // 1-based
  Direction direction = Direction::BobToAlice;
  int sender_bit = 0;
  PauliCode sender_op = PauliCode::Id;
  BellKind outcome = BellKind::PsiMinus;
  std::optional<int> decoded_bit;
  bool forbidden = false;
};

struct SessionConfig {
  int rounds = 10000;
  int batch_size = 100;
  BellKind shared_kind = BellKind::PsiMinus;
  int abort_threshold = 0;  // forbidden outcomes tolerated before abort
  std::uint64_t seed = 0;

  void validate() const;  // throws std::invalid_argument
};

struct SessionReport {
  std::vector<int> key_sender;
  std::vector<int> key_receiver;
  int detection_count = 0;
  bool aborted = false;
  std::array<std::int64_t, 4> outcome_histogram{};  // BellKind enum order
  std::vector<RoundRecord> rounds;

  // Fraction of positions where the two keys agree (1.0 when empty).
  double key_agreement() const;
};

// Batch alternation schedule; the first batch goes Bob -> Alice.
Direction direction_for_round(int round_index, int batch_size);

// Runs the two-party session: per round a fresh shared pair is encoded by
// the sender (qubit 1 is Alice's, qubit 2 Bob's), the sender's qubit
// transits the channel, and the receiver Bell-measures the original pair
// positions. Party randomness comes from per-party streams sub-seeded from
// config.seed ("alice", "bob", "eve"), so a config determines the report
// bit for bit.
SessionReport run_session(const SessionConfig& config, ChannelModel& channel);

}  // namespace eprqkd
