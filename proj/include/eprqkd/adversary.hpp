#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "eprqkd/quantum.hpp"
#include "eprqkd/rng.hpp"

namespace eprqkd {

struct SessionReport;  // protocol.hpp

// Per-round record of what the channel's eavesdropper learned.
struct EveRecord {
  int round_index = 0;
  std::optional<int> intercepted_bit;            // intercept/resend result
  std::optional<DensityMatrix> ancilla_marginal; // post-transit, CNOT attack
  std::optional<int> guessed_bit;
};

struct TransitResult {
  PureState state;
  EveRecord record;
};

// Channel interposition strategies for the qubit in transit:
//   Identity        - passive channel, state delivered unchanged.
//   InterceptResend - the transit qubit is measured in the computational
//                     basis and replaced by a fake qubit c|0> + d|1>.
//   CnotAncilla     - a |0> ancilla is appended and CNOT'd from the transit
//                     qubit; Eve keeps the ancilla, the qubit passes on.
class ChannelModel {
public:
  enum class Strategy { Identity = 0, InterceptResend = 1, CnotAncilla = 2 };

  static ChannelModel identity();
  // Throws unless |c|^2 + |d|^2 = 1 within 1e-12.
  static ChannelModel intercept_resend(Complex c, Complex d);
  static ChannelModel cnot_ancilla();

  Strategy strategy() const { return strategy_; }
  Complex fake_c() const { return fake_c_; }
  Complex fake_d() const { return fake_d_; }

  // Passes the addressed qubit through the channel. Appends one EveRecord
  // per call for the active strategies; round indices count transits.
  TransitResult transit(const PureState& joint_state, int transit_qubit,
                        Rng& rng);

  // Called once per round after the receiver's measurement. For CnotAncilla
  // Eve measures her ancilla (last qubit) in the computational basis and
  // records the result as her bit guess.
  void observe_residual(const PureState& post_measurement_state, Rng& rng);

  const std::vector<EveRecord>& eve_log() const { return eve_log_; }

  // Ancilla marginal for the most recent round. Both local encodings leave
  // the ancilla in the same marginal, so this is also the average over the
  // sender's unobserved bit choice. CnotAncilla only.
  DensityMatrix eve_reduced_state() const;

private:
  ChannelModel(Strategy strategy, Complex c, Complex d);

  Strategy strategy_;
  Complex fake_c_;
  Complex fake_d_;
  int transits_ = 0;
  std::vector<EveRecord> eve_log_;
};

std::string_view to_string(ChannelModel::Strategy strategy);

struct GuessStats {
  std::int64_t compared = 0;
  std::int64_t correct = 0;
};

GuessStats eve_guess_stats(const SessionReport& report,
                           const ChannelModel& channel);

// Fraction of key bits Eve's fixed guessing rule gets right, compared over
// the non-forbidden rounds. 0.5 by convention when there is nothing to
// compare (passive channel, or every round forbidden).
double eve_key_guess_accuracy(const SessionReport& report,
                              const ChannelModel& channel);

}  // namespace eprqkd
