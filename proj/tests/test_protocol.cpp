#include <doctest.h>

#include <cmath>

#include "eprqkd/protocol.hpp"

using namespace eprqkd;

TEST_CASE("pauli_image agrees with apply_1q on both qubits") {
  for (BellKind kind : kAllBellKinds) {
    for (PauliCode op : {PauliCode::Id, PauliCode::X, PauliCode::IY}) {
      const BellKind image = pauli_image(kind, op);
      for (int qubit = 1; qubit <= 2; ++qubit) {
        CHECK(same_up_to_global_phase(apply_1q(bell_state(kind), qubit, op),
                                      bell_state(image)));
      }
    }
  }
}

TEST_CASE("code_table_for lays out the encoding rows") {
  const CodeTable psi_minus = code_table_for(BellKind::PsiMinus);
  CHECK(psi_minus.op_for_bit[0] == PauliCode::Id);
  CHECK(psi_minus.op_for_bit[1] == PauliCode::X);
  CHECK(psi_minus.outcome_for_bit[0] == BellKind::PsiMinus);
  CHECK(psi_minus.outcome_for_bit[1] == BellKind::PhiMinus);
  CHECK(psi_minus.is_forbidden(BellKind::PsiPlus));
  CHECK(psi_minus.is_forbidden(BellKind::PhiPlus));

  const CodeTable phi_plus = code_table_for(BellKind::PhiPlus);
  CHECK(phi_plus.op_for_bit[1] == PauliCode::IY);
  CHECK(phi_plus.outcome_for_bit[0] == BellKind::PhiPlus);
  CHECK(phi_plus.outcome_for_bit[1] == BellKind::PsiMinus);
  CHECK(phi_plus.is_forbidden(BellKind::PsiPlus));
  CHECK(phi_plus.is_forbidden(BellKind::PhiMinus));

  // The rejected variant swaps in sigma_x on the Phi rows.
  const CodeTable phi_minus_x =
      code_table_for(BellKind::PhiMinus, OpSetVariant::SigmaXOnly);
  CHECK(phi_minus_x.op_for_bit[1] == PauliCode::X);
  CHECK(phi_minus_x.outcome_for_bit[1] == BellKind::PsiMinus);

  // Legal outcomes and forbidden outcomes partition the four kinds.
  for (BellKind kind : kAllBellKinds) {
    for (OpSetVariant variant :
         {OpSetVariant::Standard, OpSetVariant::SigmaXOnly}) {
      const CodeTable table = code_table_for(kind, variant);
      for (BellKind outcome : kAllBellKinds) {
        const bool legal = table.decode(outcome).has_value();
        CHECK(legal != table.is_forbidden(outcome));
      }
      CHECK(table.outcome_for_bit[0] != table.outcome_for_bit[1]);
      CHECK(table.forbidden[0] != table.forbidden[1]);
    }
  }
}

TEST_CASE("encode and decode round-trip through an ideal measurement") {
  Rng rng(3);
  for (BellKind kind : kAllBellKinds) {
    for (OpSetVariant variant :
         {OpSetVariant::Standard, OpSetVariant::SigmaXOnly}) {
      const CodeTable table = code_table_for(kind, variant);
      for (int bit = 0; bit < 2; ++bit) {
        for (int sender_qubit = 1; sender_qubit <= 2; ++sender_qubit) {
          const PureState encoded =
              encode_round(bit, bell_state(kind), sender_qubit, table);
          const BellMeasurement m = bell_measure(encoded, 1, 2, rng);
          CHECK(m.outcome == table.outcome_for_bit[bit]);
          CHECK(decode_round(m.outcome, table) == bit);
        }
      }
    }
  }

  const CodeTable row = code_table_for(BellKind::PsiMinus);
  CHECK(decode_round(BellKind::PhiMinus, row) == 1);
  CHECK_FALSE(decode_round(BellKind::PsiPlus, row).has_value());
  CHECK(decode_round(BellKind::PhiPlus,
                     code_table_for(BellKind::PhiPlus)) == 0);
  CHECK_THROWS_AS(encode_round(2, bell_state(BellKind::PsiMinus), 2, row),
                  std::invalid_argument);
}

TEST_CASE("direction alternates batch by batch, starting Bob to Alice") {
  CHECK(direction_for_round(1, 3) == Direction::BobToAlice);
  CHECK(direction_for_round(3, 3) == Direction::BobToAlice);
  CHECK(direction_for_round(4, 3) == Direction::AliceToBob);
  CHECK(direction_for_round(6, 3) == Direction::AliceToBob);
  CHECK(direction_for_round(7, 3) == Direction::BobToAlice);

  SessionConfig config;
  config.rounds = 10;
  config.batch_size = 3;
  config.seed = 8;
  ChannelModel channel = ChannelModel::identity();
  const SessionReport report = run_session(config, channel);
  for (const RoundRecord& round : report.rounds) {
    CHECK(round.direction ==
          direction_for_round(round.round_index, config.batch_size));
  }
}

TEST_CASE("honest sessions complete with matching keys") {
  SessionConfig config;
  config.rounds = 1000;
  config.batch_size = 100;
  config.seed = 21;
  ChannelModel channel = ChannelModel::identity();
  const SessionReport report = run_session(config, channel);

  CHECK(report.detection_count == 0);
  CHECK_FALSE(report.aborted);
  CHECK(report.key_sender.size() == 1000);
  CHECK(report.key_sender == report.key_receiver);
  CHECK(report.outcome_histogram[static_cast<int>(BellKind::PsiPlus)] == 0);
  CHECK(report.outcome_histogram[static_cast<int>(BellKind::PhiPlus)] == 0);
  CHECK(report.key_agreement() == 1.0);

  // All four shared kinds work in both directions.
  for (BellKind kind : kAllBellKinds) {
    SessionConfig per_kind;
    per_kind.rounds = 100;
    per_kind.batch_size = 10;  // several batches each way
    per_kind.shared_kind = kind;
    per_kind.seed = 37;
    ChannelModel identity = ChannelModel::identity();
    const SessionReport r = run_session(per_kind, identity);
    CHECK(r.detection_count == 0);
    CHECK(r.key_sender == r.key_receiver);
    const CodeTable table = code_table_for(kind);
    CHECK(r.outcome_histogram[static_cast<int>(table.forbidden[0])] == 0);
    CHECK(r.outcome_histogram[static_cast<int>(table.forbidden[1])] == 0);
  }
}

TEST_CASE("sender bits are balanced over many rounds") {
  SessionConfig config;
  config.rounds = 10000;
  config.batch_size = 100;
  config.seed = 5;
  ChannelModel channel = ChannelModel::identity();
  const SessionReport report = run_session(config, channel);
  long ones = 0;
  for (int b : report.key_sender) ones += b;
  const double freq = static_cast<double>(ones) / 10000.0;
  CHECK(std::abs(freq - 0.5) <= 0.02);
}

TEST_CASE("identical configs give identical reports") {
  SessionConfig config;
  config.rounds = 500;
  config.batch_size = 50;
  config.seed = 77;
  ChannelModel c1 = ChannelModel::identity();
  ChannelModel c2 = ChannelModel::identity();
  const SessionReport a = run_session(config, c1);
  const SessionReport b = run_session(config, c2);
  CHECK(a.key_sender == b.key_sender);
  CHECK(a.key_receiver == b.key_receiver);
  CHECK(a.outcome_histogram == b.outcome_histogram);
  REQUIRE(a.rounds.size() == b.rounds.size());
  for (std::size_t i = 0; i < a.rounds.size(); ++i) {
    CHECK(a.rounds[i].outcome == b.rounds[i].outcome);
    CHECK(a.rounds[i].sender_bit == b.rounds[i].sender_bit);
  }

  config.seed = 78;
  ChannelModel c3 = ChannelModel::identity();
  const SessionReport other = run_session(config, c3);
  CHECK(a.key_sender != other.key_sender);
}

TEST_CASE("abort stops the session once the threshold is crossed") {
  SessionConfig config;
  config.rounds = 1000;
  config.batch_size = 100;
  config.seed = 11;
  config.abort_threshold = 0;
  ChannelModel channel =
      ChannelModel::intercept_resend(Complex{1.0, 0.0}, Complex{0.0, 0.0});
  const SessionReport report = run_session(config, channel);
  CHECK(report.aborted);
  CHECK(report.detection_count == 1);
  CHECK(report.rounds.size() < 1000);
  CHECK(report.rounds.back().forbidden);
  // Key bits collected before the abort agree in length.
  CHECK(report.key_sender.size() == report.key_receiver.size());
  CHECK(report.key_sender.size() == report.rounds.size() - 1);

  config.validate();
  config.rounds = 0;
  CHECK_THROWS_AS(config.validate(), std::invalid_argument);
  config.rounds = 10;
  config.batch_size = 0;
  CHECK_THROWS_AS(config.validate(), std::invalid_argument);
}
