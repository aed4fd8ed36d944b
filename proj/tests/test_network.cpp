#include <doctest.h>

#include <array>
#include <cmath>

#include "eprqkd/network.hpp"
#include "oracle.hpp"

using namespace eprqkd;

namespace {

NetworkConfig make_config(CenterStrategyKind kind, OpSetVariant variant,
                          int rounds, std::uint64_t seed,
                          int abort_threshold) {
  NetworkConfig config;
  config.rounds = rounds;
  config.batch_size = 100;
  config.seed = seed;
  config.abort_threshold = abort_threshold;
  config.variant = variant;
  switch (kind) {
    case CenterStrategyKind::Honest:
      config.strategy = CenterStrategy::honest();
      break;
    case CenterStrategyKind::Mispair:
      config.strategy = CenterStrategy::mispair("charley");
      break;
    case CenterStrategyKind::MitmRelay:
      config.strategy = CenterStrategy::mitm_relay("charley");
      break;
    case CenterStrategyKind::MislabelResult:
      break;  // caller fills the lie map
  }
  return config;
}

// Identify which Bell kind a 2-qubit oracle vector is, up to global phase.
int oracle_kind_of(const oracle::Vec& v) {
  for (int k = 0; k < 4; ++k) {
    if (std::abs(std::norm(oracle::dot(oracle::bell_vec(k), v)) - 1.0) <
        1e-10) {
      return k;
    }
  }
  return -1;
}

}  // namespace

TEST_CASE("swap outcome map derived independently: outcome equals shared") {
  // Oracle derivation: project psi- (x) psi- onto each Bell outcome of the
  // center-held qubits (2, 4) and identify the user-held remainder (1, 3).
  const oracle::Vec joint =
      oracle::kron_vec(oracle::bell_vec(0), oracle::bell_vec(0));
  for (int k = 0; k < 4; ++k) {
    const double p =
        oracle::bell_outcome_probability(joint, 4, 2, 4, k);
    CHECK(std::abs(p - 0.25) <= 1e-12);
    oracle::Vec rest = oracle::bell_outcome_rest(joint, 4, 2, 4, k);
    double norm2 = 0.0;
    for (const auto& a : rest) norm2 += std::norm(a);
    for (auto& a : rest) a /= std::sqrt(norm2);
    CHECK(oracle_kind_of(rest) == k);
  }

  // The library's swap reproduces the oracle's map on every seed tried.
  std::array<int, 4> seen{};
  for (std::uint64_t seed = 0; seed < 64; ++seed) {
    Rng rng(seed);
    const SwapResult swap = entanglement_swap(
        bell_state(BellKind::PsiMinus), bell_state(BellKind::PsiMinus), rng);
    CHECK(same_up_to_global_phase(swap.shared, bell_state(swap.outcome),
                                  1e-10));
    ++seen[static_cast<int>(swap.outcome)];
  }
  for (int count : seen) CHECK(count > 0);

  Rng throwaway(0);
  CHECK_THROWS_AS(
      entanglement_swap(bell_state(BellKind::PsiMinus),
                        tensor(bell_state(BellKind::PsiMinus),
                               bell_state(BellKind::PsiMinus)),
                        throwaway),
      std::invalid_argument);
}

TEST_CASE("swap outcomes are uniform over many draws") {
  std::array<int, 4> counts{};
  Rng rng(909, "swap_uniformity");
  const int trials = 10000;
  for (int t = 0; t < trials; ++t) {
    counts[static_cast<int>(
        entanglement_swap(bell_state(BellKind::PsiMinus),
                          bell_state(BellKind::PsiMinus), rng)
            .outcome)]++;
  }
  for (int k = 0; k < 4; ++k) {
    const double freq = static_cast<double>(counts[k]) / trials;
    CHECK(std::abs(freq - 0.25) <= 0.02);
  }
}

TEST_CASE("quantum files hand out pairs in order and count consumption") {
  QuantumFile file = QuantumFile::deposit("alice", 3);
  CHECK(file.remaining() == 3);
  for (int i = 0; i < 3; ++i) {
    const PureState pair = file.take();
    CHECK(same_up_to_global_phase(pair, bell_state(BellKind::PsiMinus)));
  }
  CHECK(file.consumed == 3);
  CHECK(file.remaining() == 0);
  CHECK_THROWS_AS(file.take(), std::runtime_error);
}

TEST_CASE("request_correlation follows the strategy") {
  Rng rng(42, "center");

  SUBCASE("honest announcements match the actual outcomes") {
    Center center;
    center.deposit(QuantumFile::deposit("alice", 100));
    center.deposit(QuantumFile::deposit("bob", 100));
    const auto correlations = request_correlation(
        center, "alice", "bob", 100, CenterStrategy::honest(), rng);
    CHECK(correlations.size() == 100);
    for (const Correlation& corr : correlations) {
      CHECK(corr.announcement.announced == corr.announcement.actual);
      CHECK(same_up_to_global_phase(
          corr.primary, bell_state(corr.announcement.actual), 1e-10));
      CHECK_FALSE(corr.secondary.has_value());
    }
    CHECK(center.file("alice").consumed == 100);
    CHECK(center.file("bob").consumed == 100);
  }

  SUBCASE("mislabel announces the lie map image") {
    Center center;
    center.deposit(QuantumFile::deposit("alice", 200));
    center.deposit(QuantumFile::deposit("bob", 200));
    std::array<BellKind, 4> lie = {BellKind::PsiMinus, BellKind::PhiPlus,
                                   BellKind::PhiMinus, BellKind::PhiPlus};
    const auto correlations = request_correlation(
        center, "alice", "bob", 200, CenterStrategy::mislabel(lie), rng);
    bool lied_at_least_once = false;
    for (const Correlation& corr : correlations) {
      if (corr.announcement.actual == BellKind::PsiPlus) {
        CHECK(corr.announcement.announced == BellKind::PhiPlus);
        lied_at_least_once = true;
      } else {
        CHECK(corr.announcement.announced == corr.announcement.actual);
      }
    }
    CHECK(lied_at_least_once);
  }

  SUBCASE("mispair entangles the requester with the substitute") {
    Center center;
    center.deposit(QuantumFile::deposit("alice", 10));
    center.deposit(QuantumFile::deposit("bob", 10));
    center.deposit(QuantumFile::deposit("charley", 10));
    const auto correlations = request_correlation(
        center, "alice", "bob", 10, CenterStrategy::mispair("charley"), rng);
    for (const Correlation& corr : correlations) {
      // The primary pair (alice, charley) is Bell-correlated...
      const BellProbabilities own =
          bell_probabilities(corr.primary, 1, 2);
      CHECK(std::abs(own[corr.announcement.actual] - 1.0) <= 1e-10);
      // ...but across the cut the users actually measure, everything is
      // uniform.
      REQUIRE(corr.secondary.has_value());
      const PureState four = tensor(corr.primary, *corr.secondary);
      const BellProbabilities cross = bell_probabilities(four, 1, 3);
      for (BellKind k : kAllBellKinds) {
        CHECK(std::abs(cross[k] - 0.25) <= 1e-12);
      }
    }
    CHECK(center.file("alice").consumed == 10);
    CHECK(center.file("charley").consumed == 10);
    CHECK(center.file("bob").consumed == 10);
    CHECK_THROWS_AS(
        request_correlation(center, "alice", "bob", 1,
                            CenterStrategy::mispair("alice"), rng),
        std::invalid_argument);
  }

  SUBCASE("insufficient pairs are rejected up front") {
    Center center;
    center.deposit(QuantumFile::deposit("alice", 5));
    center.deposit(QuantumFile::deposit("bob", 3));
    CHECK_THROWS_AS(request_correlation(center, "alice", "bob", 5,
                                        CenterStrategy::honest(), rng),
                    std::runtime_error);
    CHECK_THROWS_AS(center.file("nobody"), std::invalid_argument);
  }
}

TEST_CASE("honest network sessions behave like honest two-party sessions") {
  const NetworkConfig config = make_config(
      CenterStrategyKind::Honest, OpSetVariant::Standard, 10000, 314, 0);
  const NetworkReport report = run_network_session(config);

  CHECK(report.session.detection_count == 0);
  CHECK_FALSE(report.session.aborted);
  CHECK(report.session.key_sender == report.session.key_receiver);
  CHECK(report.announcements.size() == 10000);
  CHECK(report.pairs_consumed.at("alice") == 10000);
  CHECK(report.pairs_consumed.at("bob") == 10000);

  // All four announced kinds occur and never lie.
  std::array<int, 4> announced{};
  for (const SwapAnnouncement& a : report.announcements) {
    CHECK(a.announced == a.actual);
    ++announced[static_cast<int>(a.announced)];
  }
  for (int count : announced) CHECK(count > 0);

  // Every outcome respects the announced row.
  for (std::size_t i = 0; i < report.session.rounds.size(); ++i) {
    const CodeTable table =
        code_table_for(report.announcements[i].announced);
    CHECK_FALSE(table.is_forbidden(report.session.rounds[i].outcome));
  }

  const double accuracy = center_information(report);
  CHECK(std::abs(accuracy - 0.5) <= 0.02);
}

TEST_CASE("mispair is caught half the time") {
  const NetworkConfig config = make_config(
      CenterStrategyKind::Mispair, OpSetVariant::Standard, 10000, 315, 10000);
  const NetworkReport report = run_network_session(config);
  const double rate =
      static_cast<double>(report.session.detection_count) / 10000.0;
  CHECK(std::abs(rate - 0.5) <= 0.02);
  CHECK(report.pairs_consumed.at("charley") == 10000);
}

TEST_CASE("the sigma_x-image lie flips every bit under sigma_x_only") {
  NetworkConfig config =
      make_config(CenterStrategyKind::MislabelResult,
                  OpSetVariant::SigmaXOnly, 1000, 316, 1000);
  config.strategy = CenterStrategy::mislabel(
      {BellKind::PhiMinus, BellKind::PhiPlus, BellKind::PsiMinus,
       BellKind::PsiPlus});
  const NetworkReport report = run_network_session(config);
  CHECK(report.session.detection_count == 0);
  REQUIRE(report.session.key_sender.size() == 1000);
  for (std::size_t i = 0; i < 1000; ++i) {
    CHECK(report.session.key_receiver[i] ==
          1 - report.session.key_sender[i]);
  }
}

TEST_CASE("the same lie is detected on every lied round under the standard "
          "table") {
  NetworkConfig config =
      make_config(CenterStrategyKind::MislabelResult, OpSetVariant::Standard,
                  2000, 317, 2000);
  config.strategy = CenterStrategy::mislabel(
      {BellKind::PsiMinus, BellKind::PhiPlus, BellKind::PhiMinus,
       BellKind::PhiPlus});
  const NetworkReport report = run_network_session(config);
  int lied = 0;
  for (std::size_t i = 0; i < report.session.rounds.size(); ++i) {
    const bool lie_round =
        report.announcements[i].actual == BellKind::PsiPlus;
    if (lie_round) ++lied;
    CHECK(report.session.rounds[i].forbidden == lie_round);
  }
  CHECK(lied > 0);
  CHECK(report.session.detection_count == lied);
}

TEST_CASE("the relay recovers the key without ever being seen") {
  const NetworkConfig config = make_config(
      CenterStrategyKind::MitmRelay, OpSetVariant::Standard, 4000, 318, 0);
  const NetworkReport report = run_network_session(config);

  CHECK(report.session.detection_count == 0);
  CHECK(report.session.rounds.size() == 4000);
  CHECK(report.session.key_sender == report.session.key_receiver);
  CHECK(center_information(report) == 1.0);
  for (std::size_t i = 0; i < report.session.rounds.size(); ++i) {
    CHECK(report.center_guesses[i] == report.session.rounds[i].sender_bit);
  }
  CHECK(report.pairs_consumed.at("charley") == 8000);
  CHECK(report.pairs_consumed.at("alice") == 4000);
  CHECK(report.pairs_consumed.at("bob") == 4000);

  // From the users' side the outcome histogram looks honest: compare with
  // an honest run of the same size at 3 sigma.
  const NetworkReport honest = run_network_session(make_config(
      CenterStrategyKind::Honest, OpSetVariant::Standard, 4000, 319, 0));
  for (BellKind k : kAllBellKinds) {
    const double f1 = static_cast<double>(report.session.outcome_histogram
                                              [static_cast<int>(k)]) /
                      4000.0;
    const double f2 = static_cast<double>(honest.session.outcome_histogram
                                              [static_cast<int>(k)]) /
                      4000.0;
    const double pooled = (f1 + f2) / 2.0;
    const double sigma =
        std::sqrt(pooled * (1.0 - pooled) * (2.0 / 4000.0));
    CHECK(std::abs(f1 - f2) <= 3.0 * sigma);
  }
}

TEST_CASE("mislabeling reveals nothing extra to the center") {
  NetworkConfig config =
      make_config(CenterStrategyKind::MislabelResult,
                  OpSetVariant::SigmaXOnly, 10000, 320, 10000);
  config.strategy = CenterStrategy::mislabel(
      {BellKind::PhiMinus, BellKind::PhiPlus, BellKind::PsiMinus,
       BellKind::PsiPlus});
  const NetworkReport report = run_network_session(config);
  CHECK(std::abs(center_information(report) - 0.5) <= 0.02);
}

TEST_CASE("network sessions are deterministic in the config") {
  const NetworkConfig config = make_config(
      CenterStrategyKind::Honest, OpSetVariant::Standard, 300, 321, 0);
  const NetworkReport a = run_network_session(config);
  const NetworkReport b = run_network_session(config);
  REQUIRE(a.announcements.size() == b.announcements.size());
  for (std::size_t i = 0; i < a.announcements.size(); ++i) {
    CHECK(a.announcements[i].announced == b.announcements[i].announced);
    CHECK(a.announcements[i].actual == b.announcements[i].actual);
  }
  CHECK(a.session.key_sender == b.session.key_sender);
  CHECK(a.session.key_receiver == b.session.key_receiver);
}
