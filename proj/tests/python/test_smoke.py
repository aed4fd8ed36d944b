"""Smoke tests for the python bindings."""

import math

import pytest

import eprqkd as q


R2 = 1.0 / math.sqrt(2.0)


def test_bell_state_amplitudes():
    psi_minus = q.bell_state(q.BellKind.PSI_MINUS)
    assert psi_minus.num_qubits == 2
    amps = psi_minus.amplitudes
    assert amps[0] == 0
    assert amps[1] == pytest.approx(R2)
    assert amps[2] == pytest.approx(-R2)
    assert psi_minus.norm() == pytest.approx(1.0)


def test_encoding_closure():
    for kind in (q.BellKind.PSI_MINUS, q.BellKind.PSI_PLUS):
        image = q.pauli_image(kind, q.PauliCode.X)
        got = q.apply_1q(q.bell_state(kind), 2, q.PauliCode.X)
        assert q.same_up_to_global_phase(got, q.bell_state(image))
    got = q.apply_1q(q.bell_state(q.BellKind.PHI_PLUS), 2, q.PauliCode.IY)
    assert q.same_up_to_global_phase(got, q.bell_state(q.BellKind.PSI_MINUS))


def test_bell_probabilities_and_partial_trace():
    pair = q.bell_state(q.BellKind.PSI_MINUS)
    probs = q.bell_probabilities(pair, 1, 2)
    assert probs[q.BellKind.PSI_MINUS] == pytest.approx(1.0)
    assert sum(probs.values()) == pytest.approx(1.0)

    rho = q.partial_trace(pair, [2])
    assert rho.entry(0, 0) == pytest.approx(0.5)
    assert rho.entry(1, 1) == pytest.approx(0.5)
    assert rho.entry(0, 1) == 0


def test_honest_session_shares_a_key():
    config = q.SessionConfig()
    config.rounds = 500
    config.batch_size = 50
    config.seed = 42
    channel = q.ChannelModel.identity()
    report = q.run_session(config, channel)
    assert report.detection_count == 0
    assert not report.aborted
    assert report.key_sender == report.key_receiver
    assert len(report.key_sender) == 500


def test_intercept_resend_is_detected():
    config = q.SessionConfig()
    config.rounds = 2000
    config.abort_threshold = 2000
    config.seed = 7
    channel = q.ChannelModel.intercept_resend(1.0, 0.0)
    report = q.run_session(config, channel)
    rate = report.detection_count / 2000.0
    assert abs(rate - 0.5) < 0.05
    accuracy = q.eve_key_guess_accuracy(report, channel)
    assert abs(accuracy - 0.5) < 0.05


def test_entanglement_swap_outcome_matches_shared_state():
    rng = q.Rng(3, "swap")
    for _ in range(16):
        outcome, shared = q.entanglement_swap(
            q.bell_state(q.BellKind.PSI_MINUS),
            q.bell_state(q.BellKind.PSI_MINUS),
            rng,
        )
        assert q.same_up_to_global_phase(shared, q.bell_state(outcome))


def test_mitm_relay_recovers_the_key():
    config = q.NetworkConfig()
    config.rounds = 400
    config.seed = 11
    config.strategy = q.CenterStrategy.mitm_relay("charley")
    report = q.run_network_session(config)
    assert report.session.detection_count == 0
    assert q.center_information(report) == 1.0


def test_transcripts_are_deterministic():
    config = q.parse_config("rounds = 100\nseed = 4\n")
    assert q.scenario_transcript(config) == q.scenario_transcript(config)


def test_config_errors_are_raised():
    with pytest.raises(Exception):
        q.parse_config("rounds = -3\n")
