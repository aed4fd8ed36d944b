#include "eprqkd/verification.hpp"

#include <cmath>
#include <utility>
#include <ostream>
#include <sstream>

#include "eprqkd/adversary.hpp"
#include "eprqkd/network.hpp"
#include "eprqkd/protocol.hpp"
#include "eprqkd/quantum.hpp"
#include "eprqkd/scenario.hpp"
#include "eprqkd/stats.hpp"

namespace eprqkd {

namespace {

// Fixed seeds so every verdict is reproducible bit for bit.
constexpr std::uint64_t kSeedHonest = 42;
constexpr std::uint64_t kSeedIntercept = 1001;
constexpr std::uint64_t kSeedCnot = 1002;
constexpr std::uint64_t kSeedDichotomySigmaX = 1003;
constexpr std::uint64_t kSeedDichotomyStandard = 1004;
constexpr std::uint64_t kSeedMispair = 1005;
constexpr std::uint64_t kSeedMitm = 1006;
constexpr std::uint64_t kSeedMitmReference = 1007;

constexpr int kRounds = 10000;
constexpr double kExactTol = 1e-12;
constexpr double kPhaseCheckTol = 1e-10;
constexpr double kMonteCarloTol = 0.02;

class Verdict {
public:
  explicit Verdict(std::string name) : name_(std::move(name)) {}

  void require(bool ok, const std::string& what) {
    if (!ok && pass_) {
      pass_ = false;
      detail_ = what;
    }
  }

  void require_close(double value, double expected, double tol,
                     const std::string& what) {
    if (std::abs(value - expected) > tol) {
      std::ostringstream msg;
      msg << what << ": got " << value << ", want " << expected << " +/- "
          << tol;
      require(false, msg.str());
    }
  }

  CriterionResult result(std::string summary_when_passing) const {
    return CriterionResult{name_, pass_,
                           pass_ ? std::move(summary_when_passing) : detail_};
  }

private:
  std::string name_;
  bool pass_ = true;
  std::string detail_;
};

ScenarioConfig base_config(Mode mode, std::uint64_t seed, int rounds,
                           int abort_threshold) {
  ScenarioConfig config;
  config.mode = mode;
  config.rounds = rounds;
  config.batch_size = 100;
  config.seed = seed;
  config.abort_threshold = abort_threshold;
  return config;
}

// 1. The eight (shared state, operation) -> outcome mappings, exact up to
// global phase, on either qubit.
CriterionResult criterion_encoding_algebra() {
  Verdict v("encoding_algebra");
  struct Row {
    BellKind shared;
    PauliCode op;
    BellKind image;
  };
  const Row rows[] = {
      {BellKind::PsiMinus, PauliCode::Id, BellKind::PsiMinus},
      {BellKind::PsiMinus, PauliCode::X, BellKind::PhiMinus},
      {BellKind::PsiPlus, PauliCode::Id, BellKind::PsiPlus},
      {BellKind::PsiPlus, PauliCode::X, BellKind::PhiPlus},
      {BellKind::PhiMinus, PauliCode::Id, BellKind::PhiMinus},
      {BellKind::PhiMinus, PauliCode::IY, BellKind::PsiPlus},
      {BellKind::PhiPlus, PauliCode::Id, BellKind::PhiPlus},
      {BellKind::PhiPlus, PauliCode::IY, BellKind::PsiMinus},
  };
  for (const Row& row : rows) {
    for (int qubit = 1; qubit <= 2; ++qubit) {
      const PureState got = apply_1q(bell_state(row.shared), qubit, row.op);
      std::ostringstream what;
      what << to_string(row.shared) << " under " << to_string(row.op)
           << " on qubit " << qubit;
      v.require(same_up_to_global_phase(got, bell_state(row.image),
                                        kPhaseCheckTol),
                what.str() + " is not " + std::string(to_string(row.image)));
      v.require(pauli_image(row.shared, row.op) == row.image,
                what.str() + ": pauli_image table disagrees");
    }
  }
  return v.result("8 mappings exact on both qubits");
}

// 2. Honest two-party session: no detections, identical keys, outcome
// support {psi_minus, phi_minus}.
CriterionResult criterion_honest_session() {
  Verdict v("honest_session");
  const ScenarioConfig config =
      base_config(Mode::TwoParty, kSeedHonest, kRounds, 0);
  const ScenarioResult r = execute_scenario(config);
  v.require(r.session.detection_count == 0, "forbidden outcome appeared");
  v.require(!r.session.aborted, "session aborted");
  v.require(r.session.key_sender.size() == static_cast<std::size_t>(kRounds),
            "key shorter than the round count");
  v.require(r.session.key_sender == r.session.key_receiver,
            "sender and receiver keys differ");
  v.require(
      r.session.outcome_histogram[static_cast<int>(BellKind::PsiPlus)] == 0 &&
          r.session.outcome_histogram[static_cast<int>(BellKind::PhiPlus)] ==
              0,
      "outcome outside {psi_minus, phi_minus}");
  return v.result("10^4 rounds, 0 detections, keys identical");
}

// 3. Intercept/resend: exact uniform Born distribution for every fake state,
// then the sampled forbidden rate and Eve accuracy.
CriterionResult criterion_intercept_resend() {
  Verdict v("intercept_resend");
  const double r2 = 1.0 / std::sqrt(2.0);
  const Complex fakes[][2] = {
      {{1.0, 0.0}, {0.0, 0.0}},
      {{0.0, 0.0}, {1.0, 0.0}},
      {{r2, 0.0}, {r2, 0.0}},
      {{r2, 0.0}, {0.0, r2}},
  };
  const CodeTable table = code_table_for(BellKind::PsiMinus);
  for (const auto& fake : fakes) {
    for (int bit = 0; bit < 2; ++bit) {
      const PureState encoded =
          apply_1q(bell_state(BellKind::PsiMinus), 2, table.op_for_bit[bit]);
      // Enumerate Eve's two measurement branches of the transit qubit and
      // average the receiver's exact Born distributions.
      BellProbabilities avg;
      for (int m = 0; m < 2; ++m) {
        double p_branch = std::norm(encoded.amplitude(m)) +
                          std::norm(encoded.amplitude(2 | m));
        if (p_branch == 0.0) continue;
        const double scale = 1.0 / std::sqrt(p_branch);
        const PureState alice = PureState::qubit(
            encoded.amplitude(m) * scale, encoded.amplitude(2 | m) * scale);
        const PureState joint =
            tensor(alice, PureState::qubit(fake[0], fake[1]));
        const BellProbabilities branch = bell_probabilities(joint, 1, 2);
        for (BellKind k : kAllBellKinds) avg[k] += p_branch * branch[k];
      }
      for (BellKind k : kAllBellKinds) {
        v.require_close(avg[k], 0.25, kExactTol,
                        "branch-averaged probability of " +
                            std::string(to_string(k)));
      }
    }
  }

  ScenarioConfig config =
      base_config(Mode::TwoParty, kSeedIntercept, kRounds, kRounds);
  config.channel = ChannelModel::Strategy::InterceptResend;
  const ScenarioResult r = execute_scenario(config);
  const double forbidden_rate =
      static_cast<double>(r.session.detection_count) / kRounds;
  v.require_close(forbidden_rate, 0.5, kMonteCarloTol, "forbidden rate");
  v.require(r.eve_accuracy.has_value(), "missing eve accuracy");
  if (r.eve_accuracy.has_value()) {
    v.require_close(*r.eve_accuracy, 0.5, kMonteCarloTol,
                    "eve guess accuracy");
  }
  return v.result("uniform Born exact; detection ~1/2; eve at chance");
}

// 4. CNOT ancilla attack: exact tripartite states, exact conditional
// outcome split, ancilla marginal I/2, Eve at chance over 10^4 rounds.
CriterionResult criterion_cnot_attack() {
  Verdict v("cnot_attack");
  const double r2 = 1.0 / std::sqrt(2.0);
  Rng unused(0);

  ChannelModel channel = ChannelModel::cnot_ancilla();
  const PureState after_id =
      channel.transit(bell_state(BellKind::PsiMinus), 2, unused).state;
  const PureState after_x =
      channel.transit(bell_state(BellKind::PhiMinus), 2, unused).state;

  // (|011> - |100>)/sqrt2 and (|000> - |111>)/sqrt2.
  for (std::size_t i = 0; i < 8; ++i) {
    const Complex want_id = i == 3 ? Complex{r2, 0.0}
                            : i == 4 ? Complex{-r2, 0.0}
                                     : Complex{0.0, 0.0};
    const Complex want_x = i == 0 ? Complex{r2, 0.0}
                           : i == 7 ? Complex{-r2, 0.0}
                                    : Complex{0.0, 0.0};
    v.require(std::abs(after_id.amplitude(i) - want_id) <= kExactTol,
              "post-CNOT state for op I has a wrong amplitude");
    v.require(std::abs(after_x.amplitude(i) - want_x) <= kExactTol,
              "post-CNOT state for op X has a wrong amplitude");
  }

  const BellProbabilities probs_id = bell_probabilities(after_id, 1, 2);
  const BellProbabilities probs_x = bell_probabilities(after_x, 1, 2);
  v.require_close(probs_id[BellKind::PsiMinus], 0.5, kExactTol,
                  "P(psi_minus | op I)");
  v.require_close(probs_id[BellKind::PsiPlus], 0.5, kExactTol,
                  "P(psi_plus | op I)");
  v.require_close(probs_id[BellKind::PhiMinus] + probs_id[BellKind::PhiPlus],
                  0.0, kExactTol, "P(phi outcomes | op I)");
  v.require_close(probs_x[BellKind::PhiMinus], 0.5, kExactTol,
                  "P(phi_minus | op X)");
  v.require_close(probs_x[BellKind::PhiPlus], 0.5, kExactTol,
                  "P(phi_plus | op X)");
  v.require_close(probs_x[BellKind::PsiMinus] + probs_x[BellKind::PsiPlus],
                  0.0, kExactTol, "P(psi outcomes | op X)");

  for (const PureState* state : {&after_id, &after_x}) {
    const DensityMatrix marginal = partial_trace(*state, {3});
    v.require(std::abs(marginal(0, 0) - Complex{0.5, 0.0}) <= kExactTol &&
                  std::abs(marginal(1, 1) - Complex{0.5, 0.0}) <= kExactTol &&
                  std::abs(marginal(0, 1)) <= kExactTol &&
                  std::abs(marginal(1, 0)) <= kExactTol,
              "ancilla marginal is not I/2");
  }
  const DensityMatrix via_channel = channel.eve_reduced_state();
  v.require(std::abs(via_channel(0, 0) - Complex{0.5, 0.0}) <= kExactTol,
            "channel-reported ancilla marginal is not I/2");

  ScenarioConfig config =
      base_config(Mode::TwoParty, kSeedCnot, kRounds, kRounds);
  config.channel = ChannelModel::Strategy::CnotAncilla;
  const ScenarioResult r = execute_scenario(config);
  for (const RoundRecord& round : r.session.rounds) {
    const bool psi_outcome = round.outcome == BellKind::PsiMinus ||
                             round.outcome == BellKind::PsiPlus;
    v.require(psi_outcome == (round.sender_op == PauliCode::Id),
              "conditional outcome support violated");
  }
  v.require(r.eve_accuracy.has_value(), "missing eve accuracy");
  if (r.eve_accuracy.has_value()) {
    v.require_close(*r.eve_accuracy, 0.5, kMonteCarloTol,
                    "eve guess accuracy");
  }
  return v.result("tripartite states exact; marginal I/2; eve at chance");
}

// 5. Entanglement swapping on psi_minus x psi_minus: exact uniform outcome
// distribution, and the shared pair matches the outcome kind.
CriterionResult criterion_entanglement_swap() {
  Verdict v("entanglement_swap");
  const PureState joint = tensor(bell_state(BellKind::PsiMinus),
                                 bell_state(BellKind::PsiMinus));
  const BellProbabilities probs = bell_probabilities(joint, 2, 4);
  for (BellKind k : kAllBellKinds) {
    v.require_close(probs[k], 0.25, kExactTol,
                    "swap outcome probability of " +
                        std::string(to_string(k)));
    const BellProjection projection = project_pair_onto_bell(joint, 2, 4, k);
    v.require(same_up_to_global_phase(projection.remainder, bell_state(k),
                                      kPhaseCheckTol),
              "shared state for outcome " + std::string(to_string(k)) +
                  " is not " + std::string(to_string(k)));
  }
  return v.result("uniform outcomes; shared pair equals the outcome kind");
}

// 6. Cheating-center dichotomy: the sigma_x-image lie is invisible under
// sigma_x-only encoding (keys complemented), and certainly detected on the
// lied rounds under the standard table.
CriterionResult criterion_cheating_center() {
  Verdict v("cheating_center");

  // sigma_x_only: announce the X-image of every actual outcome.
  {
    ScenarioConfig config =
        base_config(Mode::Network, kSeedDichotomySigmaX, kRounds, kRounds);
    config.center = CenterStrategyKind::MislabelResult;
    config.lie_map = {BellKind::PhiMinus, BellKind::PhiPlus,
                      BellKind::PsiMinus, BellKind::PsiPlus};
    config.variant = OpSetVariant::SigmaXOnly;
    const ScenarioResult r = execute_scenario(config);
    v.require(r.session.detection_count == 0,
              "sigma_x_only: lie was detected");
    v.require(r.session.key_sender.size() ==
                  static_cast<std::size_t>(kRounds),
              "sigma_x_only: rounds were lost");
    bool complemented = !r.session.key_sender.empty();
    for (std::size_t i = 0; i < r.session.key_sender.size(); ++i) {
      if (r.session.key_receiver[i] != 1 - r.session.key_sender[i]) {
        complemented = false;
        break;
      }
    }
    v.require(complemented,
              "sigma_x_only: receiver key is not the bitwise complement");
  }

  // Standard table, the same lie told on psi_plus outcomes: both encodings
  // of the actual state land in the announced row's forbidden set.
  {
    const CodeTable lied_row =
        code_table_for(BellKind::PhiPlus, OpSetVariant::Standard);
    for (int bit = 0; bit < 2; ++bit) {
      const PureState encoded = apply_1q(bell_state(BellKind::PsiPlus), 2,
                                         lied_row.op_for_bit[bit]);
      const BellProbabilities probs = bell_probabilities(encoded, 1, 2);
      const double p_forbidden =
          probs[lied_row.forbidden[0]] + probs[lied_row.forbidden[1]];
      v.require_close(p_forbidden, 1.0, kExactTol,
                      "standard table: detection probability per lied round");
    }

    ScenarioConfig config =
        base_config(Mode::Network, kSeedDichotomyStandard, kRounds, kRounds);
    config.center = CenterStrategyKind::MislabelResult;
    config.lie_map = {BellKind::PsiMinus, BellKind::PhiPlus,
                      BellKind::PhiMinus, BellKind::PhiPlus};
    const ScenarioResult r = execute_scenario(config);
    v.require(r.network.has_value(), "missing network report");
    if (r.network.has_value()) {
      int lied = 0;
      for (std::size_t i = 0; i < r.session.rounds.size(); ++i) {
        const bool lie_round =
            r.network->announcements[i].actual == BellKind::PsiPlus;
        if (lie_round) ++lied;
        v.require(r.session.rounds[i].forbidden == lie_round,
                  "standard table: detection does not track the lie");
      }
      v.require(lied > 0, "no lied rounds sampled");
      v.require(r.session.detection_count == lied,
                "standard table: detections != lied rounds");
    }
  }
  return v.result("lie invisible under sigma_x_only, certain under standard");
}

// 7. Mispaired users: the measured halves never shared a pair, so outcomes
// are exactly uniform and half of all rounds are flagged.
CriterionResult criterion_mispair() {
  Verdict v("mispair");
  for (BellKind announced : kAllBellKinds) {
    const CodeTable table = code_table_for(announced, OpSetVariant::Standard);
    for (int bit = 0; bit < 2; ++bit) {
      const PureState joint =
          tensor(bell_state(announced), bell_state(BellKind::PsiMinus));
      const PureState encoded = apply_1q(joint, 3, table.op_for_bit[bit]);
      const BellProbabilities probs = bell_probabilities(encoded, 1, 3);
      for (BellKind k : kAllBellKinds) {
        v.require_close(probs[k], 0.25, kExactTol,
                        "cross-pair outcome probability");
      }
    }
  }

  ScenarioConfig config =
      base_config(Mode::Network, kSeedMispair, kRounds, kRounds);
  config.center = CenterStrategyKind::Mispair;
  const ScenarioResult r = execute_scenario(config);
  const double forbidden_rate =
      static_cast<double>(r.session.detection_count) /
      static_cast<double>(r.session.rounds.size());
  v.require_close(forbidden_rate, 0.5, kMonteCarloTol, "forbidden rate");
  return v.result("cross-cut exactly uniform; detection ~1/2");
}

// 8. MITM relay: no detections, charley recovers the whole key, and the
// users' outcome histogram matches an honest run at 3 sigma.
CriterionResult criterion_mitm_relay() {
  Verdict v("mitm_relay");
  ScenarioConfig config = base_config(Mode::Network, kSeedMitm, kRounds, 0);
  config.center = CenterStrategyKind::MitmRelay;
  const ScenarioResult r = execute_scenario(config);
  v.require(r.session.detection_count == 0, "relay was detected");
  v.require(r.session.rounds.size() == static_cast<std::size_t>(kRounds),
            "session ended early");
  v.require(r.session.key_sender == r.session.key_receiver,
            "user keys disagree");
  v.require(r.network.has_value(), "missing network report");
  if (r.network.has_value()) {
    bool recovered = true;
    for (std::size_t i = 0; i < r.session.rounds.size(); ++i) {
      if (r.network->center_guesses[i] != r.session.rounds[i].sender_bit) {
        recovered = false;
        break;
      }
    }
    v.require(recovered, "charley's recovered key differs from the session key");
    v.require(center_information(*r.network) == 1.0,
              "charley's accuracy is not exactly 1");
  }

  ScenarioConfig honest =
      base_config(Mode::Network, kSeedMitmReference, kRounds, 0);
  const ScenarioResult h = execute_scenario(honest);
  v.require(h.session.rounds.size() == static_cast<std::size_t>(kRounds),
            "honest reference ended early");
  for (BellKind k : kAllBellKinds) {
    const double n1 = static_cast<double>(r.session.rounds.size());
    const double n2 = static_cast<double>(h.session.rounds.size());
    const double c1 = static_cast<double>(
        r.session.outcome_histogram[static_cast<int>(k)]);
    const double c2 = static_cast<double>(
        h.session.outcome_histogram[static_cast<int>(k)]);
    const double pooled = (c1 + c2) / (n1 + n2);
    const double sigma =
        std::sqrt(pooled * (1.0 - pooled) * (1.0 / n1 + 1.0 / n2));
    v.require(std::abs(c1 / n1 - c2 / n2) <= 3.0 * sigma,
              "outcome histogram distinguishable from honest: " +
                  std::string(to_string(k)));
  }
  return v.result("0 detections; key fully recovered; histogram honest-like");
}

// 9. Property sweep over 100 seeds: norm preservation, involutions, Born
// completeness, zero-probability soundness, transcript determinism.
CriterionResult criterion_properties() {
  Verdict v("properties");

  // Statistical checks with impossible expectations must fail loudly.
  v.require(!check_frequency("impossible", 0.0, 1, 1000).pass,
            "zero-probability outcome accepted");
  v.require(check_frequency("certain", 1.0, 1000, 1000).pass,
            "certain outcome rejected");

  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    Rng rng(seed, "properties");

    // A random 3-qubit state reached through the public operations.
    auto random_qubit = [&rng]() {
      const double theta = rng.next_real() * 3.14159265358979323846;
      const double phi = rng.next_real() * 2.0 * 3.14159265358979323846;
      return PureState::qubit(
          Complex{std::cos(theta / 2), 0.0},
          Complex{std::sin(theta / 2) * std::cos(phi),
                  std::sin(theta / 2) * std::sin(phi)});
    };
    PureState state = tensor(
        bell_state(kAllBellKinds[rng.next_u64() % 4]), random_qubit());
    for (int step = 0; step < 6; ++step) {
      const int choice = static_cast<int>(rng.next_u64() % 3);
      if (choice == 0) {
        const int qubit = 1 + static_cast<int>(rng.next_u64() % 3);
        const PauliCode op =
            static_cast<PauliCode>(rng.next_u64() % 3);
        state = apply_1q(state, qubit, op);
      } else if (choice == 1) {
        const int control = 1 + static_cast<int>(rng.next_u64() % 3);
        int target = 1 + static_cast<int>(rng.next_u64() % 3);
        if (target == control) target = 1 + (target % 3);
        state = apply_cnot(state, control, target);
      } else {
        const BellMeasurement m = bell_measure(state, 1, 2, rng);
        state = m.residual;
      }
      v.require(std::abs(state.norm() - 1.0) <= 1e-12,
                "norm drifted after an operation");
    }

    // Involutions: X twice is the identity, IY twice is a global sign.
    const PureState x_twice = apply_1q(apply_1q(state, 2, PauliCode::X), 2,
                                       PauliCode::X);
    v.require(x_twice.amplitudes() == state.amplitudes(),
              "X applied twice is not the exact identity");
    const PureState iy_twice = apply_1q(apply_1q(state, 2, PauliCode::IY), 2,
                                        PauliCode::IY);
    v.require(same_up_to_global_phase(iy_twice, state, kPhaseCheckTol),
              "IY applied twice is not a global phase");

    // Born completeness on whatever state the walk reached.
    const BellProbabilities probs = bell_probabilities(state, 1, 3);
    v.require(std::abs(probs.total() - 1.0) <= 1e-12,
              "Born probabilities do not sum to 1");

    // Determinism: identical configs give byte-identical transcripts.
    ScenarioConfig config =
        base_config(seed % 2 == 0 ? Mode::TwoParty : Mode::Network, seed,
                    200, 200);
    if (seed % 4 == 1) config.center = CenterStrategyKind::Mispair;
    if (seed % 4 == 2) config.channel = ChannelModel::Strategy::InterceptResend;
    if (seed % 4 == 0 && config.mode == Mode::TwoParty) {
      config.channel = ChannelModel::Strategy::CnotAncilla;
    }
    const std::string first = render_transcript(execute_scenario(config));
    const std::string second = render_transcript(execute_scenario(config));
    v.require(first == second, "transcripts differ between identical runs");

    // Honest rounds never produce a forbidden outcome, on any seed.
    ScenarioConfig honest = base_config(Mode::TwoParty, seed, 200, 0);
    const ScenarioResult hr = execute_scenario(honest);
    v.require(hr.session.detection_count == 0,
              "honest session produced a forbidden outcome");
  }
  return v.result("100 seeds: norms, involutions, Born sums, determinism");
}

}  // namespace

std::vector<CriterionResult> run_verification_suite() {
  using Criterion = CriterionResult (*)();
  const std::pair<const char*, Criterion> criteria[] = {
      {"encoding_algebra", &criterion_encoding_algebra},
      {"honest_session", &criterion_honest_session},
      {"intercept_resend", &criterion_intercept_resend},
      {"cnot_attack", &criterion_cnot_attack},
      {"entanglement_swap", &criterion_entanglement_swap},
      {"cheating_center", &criterion_cheating_center},
      {"mispair", &criterion_mispair},
      {"mitm_relay", &criterion_mitm_relay},
      {"properties", &criterion_properties},
  };
  std::vector<CriterionResult> results;
  results.reserve(std::size(criteria));
  for (const auto& [name, criterion] : criteria) {
    try {
      results.push_back(criterion());
    } catch (const std::exception& e) {
      results.push_back(
          CriterionResult{name, false, std::string("exception: ") + e.what()});
    }
  }
  return results;
}

std::vector<CriterionResult> run_seed_sweep() {
  struct Sweep {
    std::string name;
    int passes = 0;
  };
  Sweep intercept_rate{"sweep:intercept_forbidden_rate"};
  Sweep intercept_eve{"sweep:intercept_eve_accuracy"};
  Sweep cnot_eve{"sweep:cnot_eve_accuracy"};
  Sweep mispair_rate{"sweep:mispair_forbidden_rate"};
  Sweep center_acc{"sweep:honest_center_accuracy"};

  const double rate_tol = binomial_three_sigma(0.5, kRounds);

  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    {
      ScenarioConfig config =
          base_config(Mode::TwoParty, seed, kRounds, kRounds);
      config.channel = ChannelModel::Strategy::InterceptResend;
      const ScenarioResult r = execute_scenario(config);
      const double rate = static_cast<double>(r.session.detection_count) /
                          static_cast<double>(r.session.rounds.size());
      if (std::abs(rate - 0.5) <= rate_tol) ++intercept_rate.passes;
      const std::int64_t kept =
          static_cast<std::int64_t>(r.session.key_sender.size());
      if (kept > 0 && r.eve_accuracy.has_value() &&
          std::abs(*r.eve_accuracy - 0.5) <=
              binomial_three_sigma(0.5, kept)) {
        ++intercept_eve.passes;
      }
    }
    {
      ScenarioConfig config =
          base_config(Mode::TwoParty, seed, kRounds, kRounds);
      config.channel = ChannelModel::Strategy::CnotAncilla;
      const ScenarioResult r = execute_scenario(config);
      const std::int64_t kept =
          static_cast<std::int64_t>(r.session.key_sender.size());
      if (kept > 0 && r.eve_accuracy.has_value() &&
          std::abs(*r.eve_accuracy - 0.5) <=
              binomial_three_sigma(0.5, kept)) {
        ++cnot_eve.passes;
      }
    }
    {
      ScenarioConfig config =
          base_config(Mode::Network, seed, kRounds, kRounds);
      config.center = CenterStrategyKind::Mispair;
      const ScenarioResult r = execute_scenario(config);
      const double rate = static_cast<double>(r.session.detection_count) /
                          static_cast<double>(r.session.rounds.size());
      if (std::abs(rate - 0.5) <= rate_tol) ++mispair_rate.passes;
    }
    {
      ScenarioConfig config = base_config(Mode::Network, seed, kRounds, 0);
      const ScenarioResult r = execute_scenario(config);
      if (r.center_accuracy.has_value() &&
          std::abs(*r.center_accuracy - 0.5) <=
              binomial_three_sigma(0.5, kRounds)) {
        ++center_acc.passes;
      }
    }
  }

  std::vector<CriterionResult> results;
  for (const Sweep* sweep : {&intercept_rate, &intercept_eve, &cnot_eve,
                             &mispair_rate, &center_acc}) {
    results.push_back(CriterionResult{
        sweep->name, sweep->passes >= 99,
        std::to_string(sweep->passes) + "/100 seeds within 3 sigma"});
  }
  return results;
}

bool all_passed(const std::vector<CriterionResult>& results) {
  for (const CriterionResult& result : results) {
    if (!result.pass) return false;
  }
  return true;
}

void print_results(const std::vector<CriterionResult>& results,
                   std::ostream& out) {
  for (const CriterionResult& result : results) {
    out << (result.pass ? "PASS" : "FAIL") << "  " << result.name << "  ("
        << result.detail << ")\n";
  }
}

}  // namespace eprqkd
