#include "eprqkd/adversary.hpp"

#include <cmath>
#include <stdexcept>

#include "eprqkd/protocol.hpp"

namespace eprqkd {

namespace {

// Replaces a qubit that measurement left in the definite state |bit> by a
// fresh qubit c|0> + d|1> at the same position.
PureState replace_collapsed_qubit(const PureState& state, int qubit, int bit,
                                  Complex c, Complex d) {
  const int n = state.num_qubits();
  const std::size_t mask = std::size_t{1} << (n - qubit);
  Amplitudes amps(state.dim(), Complex{0.0, 0.0});
  for (std::size_t i = 0; i < state.dim(); ++i) {
    const bool one = (i & mask) != 0;
    if (one != (bit == 1)) continue;
    const std::size_t base = i & ~mask;
    amps[base] += c * state.amplitude(i);
    amps[base | mask] += d * state.amplitude(i);
  }
  return PureState(n, std::move(amps));
}

}  // namespace

ChannelModel::ChannelModel(Strategy strategy, Complex c, Complex d)
    : strategy_(strategy), fake_c_(c), fake_d_(d) {}

ChannelModel ChannelModel::identity() {
  return ChannelModel(Strategy::Identity, Complex{1.0, 0.0}, Complex{0.0, 0.0});
}

ChannelModel ChannelModel::intercept_resend(Complex c, Complex d) {
  if (std::abs(std::norm(c) + std::norm(d) - 1.0) > 1e-12) {
    throw std::invalid_argument(
        "intercept_resend: fake amplitudes are not normalized");
  }
  return ChannelModel(Strategy::InterceptResend, c, d);
}

ChannelModel ChannelModel::cnot_ancilla() {
  return ChannelModel(Strategy::CnotAncilla, Complex{1.0, 0.0},
                      Complex{0.0, 0.0});
}

TransitResult ChannelModel::transit(const PureState& joint_state,
                                    int transit_qubit, Rng& rng) {
  ++transits_;
  EveRecord record;
  record.round_index = transits_;

  switch (strategy_) {
    case Strategy::Identity:
      return TransitResult{joint_state, record};

    case Strategy::InterceptResend: {
      const BitMeasurement m =
          measure_computational(joint_state, transit_qubit, rng);
      record.intercepted_bit = m.bit;
      record.guessed_bit = m.bit;
      eve_log_.push_back(record);
      PureState resent =
          replace_collapsed_qubit(m.residual, transit_qubit, m.bit, fake_c_,
                                  fake_d_);
      return TransitResult{std::move(resent), eve_log_.back()};
    }

    case Strategy::CnotAncilla: {
      PureState with_ancilla =
          tensor(joint_state, PureState::computational(1, 0));
      const int ancilla = with_ancilla.num_qubits();
      PureState entangled = apply_cnot(with_ancilla, transit_qubit, ancilla);
      record.ancilla_marginal = partial_trace(entangled, {ancilla});
      eve_log_.push_back(record);
      return TransitResult{std::move(entangled), eve_log_.back()};
    }
  }
  throw std::logic_error("transit: unknown strategy");
}

void ChannelModel::observe_residual(const PureState& post_measurement_state,
                                    Rng& rng) {
  if (strategy_ != Strategy::CnotAncilla) return;
  if (eve_log_.empty()) {
    throw std::logic_error("observe_residual: no transit recorded");
  }
  const int ancilla = post_measurement_state.num_qubits();
  const BitMeasurement m =
      measure_computational(post_measurement_state, ancilla, rng);
  eve_log_.back().guessed_bit = m.bit;
}

DensityMatrix ChannelModel::eve_reduced_state() const {
  if (strategy_ != Strategy::CnotAncilla) {
    throw std::logic_error("eve_reduced_state: channel has no ancilla");
  }
  if (eve_log_.empty() || !eve_log_.back().ancilla_marginal.has_value()) {
    throw std::logic_error("eve_reduced_state: no round transited yet");
  }
  return *eve_log_.back().ancilla_marginal;
}

std::string_view to_string(ChannelModel::Strategy strategy) {
  switch (strategy) {
    case ChannelModel::Strategy::Identity: return "identity";
    case ChannelModel::Strategy::InterceptResend: return "intercept_resend";
    case ChannelModel::Strategy::CnotAncilla: return "cnot_ancilla";
  }
  return "?";
}

GuessStats eve_guess_stats(const SessionReport& report,
                           const ChannelModel& channel) {
  GuessStats stats;
  const auto& log = channel.eve_log();
  for (const RoundRecord& round : report.rounds) {
    if (round.forbidden) continue;
    const std::size_t log_idx = static_cast<std::size_t>(round.round_index) - 1;
    if (log_idx >= log.size()) continue;
    const EveRecord& record = log[log_idx];
    if (!record.guessed_bit.has_value()) continue;
    ++stats.compared;
    if (*record.guessed_bit == round.sender_bit) ++stats.correct;
  }
  return stats;
}

double eve_key_guess_accuracy(const SessionReport& report,
                              const ChannelModel& channel) {
  const GuessStats stats = eve_guess_stats(report, channel);
  if (stats.compared == 0) return 0.5;
  return static_cast<double>(stats.correct) /
         static_cast<double>(stats.compared);
}

}  // namespace eprqkd
