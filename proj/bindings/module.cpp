#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "eprqkd/adversary.hpp"
#include "eprqkd/config.hpp"
#include "eprqkd/network.hpp"
#include "eprqkd/protocol.hpp"
#include "eprqkd/quantum.hpp"
#include "eprqkd/scenario.hpp"
#include "eprqkd/stats.hpp"
#include "eprqkd/verification.hpp"

namespace py = pybind11;
using namespace eprqkd;

namespace {

py::dict probabilities_to_dict(const BellProbabilities& probs) {
  py::dict out;
  for (BellKind k : kAllBellKinds) {
    out[py::cast(k)] = probs[k];
  }
  return out;
}

std::vector<std::vector<Complex>> matrix_to_rows(const DensityMatrix& rho) {
  std::vector<std::vector<Complex>> rows(rho.dim());
  for (std::size_t r = 0; r < rho.dim(); ++r) {
    rows[r].resize(rho.dim());
    for (std::size_t c = 0; c < rho.dim(); ++c) rows[r][c] = rho(r, c);
  }
  return rows;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() =
      "Deterministic simulator of an EPR-pair key distribution and "
      "authentication protocol, its entanglement-swapping network, and its "
      "eavesdropping strategies.";
  m.attr("__version__") = std::string(kVersion);

  py::enum_<BellKind>(m, "BellKind")
      .value("PSI_MINUS", BellKind::PsiMinus)
      .value("PSI_PLUS", BellKind::PsiPlus)
      .value("PHI_MINUS", BellKind::PhiMinus)
      .value("PHI_PLUS", BellKind::PhiPlus);

  py::enum_<PauliCode>(m, "PauliCode")
      .value("ID", PauliCode::Id)
      .value("X", PauliCode::X)
      .value("IY", PauliCode::IY);

  py::enum_<Direction>(m, "Direction")
      .value("BOB_TO_ALICE", Direction::BobToAlice)
      .value("ALICE_TO_BOB", Direction::AliceToBob);

  py::enum_<OpSetVariant>(m, "OpSetVariant")
      .value("STANDARD", OpSetVariant::Standard)
      .value("SIGMA_X_ONLY", OpSetVariant::SigmaXOnly);

  py::enum_<CenterStrategyKind>(m, "CenterStrategyKind")
      .value("HONEST", CenterStrategyKind::Honest)
      .value("MISLABEL_RESULT", CenterStrategyKind::MislabelResult)
      .value("MISPAIR", CenterStrategyKind::Mispair)
      .value("MITM_RELAY", CenterStrategyKind::MitmRelay);

  py::class_<Rng>(m, "Rng")
      .def(py::init<std::uint64_t>(), py::arg("seed"))
      .def(py::init<std::uint64_t, std::string_view>(), py::arg("seed"),
           py::arg("stream_label"))
      .def("next_real", &Rng::next_real)
      .def("next_bit", &Rng::next_bit);

  py::class_<PureState>(m, "PureState")
      .def(py::init<int, Amplitudes>(), py::arg("num_qubits"),
           py::arg("amplitudes"))
      .def_static("computational", &PureState::computational,
                  py::arg("num_qubits"), py::arg("basis_index"))
      .def_static("qubit", &PureState::qubit, py::arg("c"), py::arg("d"))
      .def_property_readonly("num_qubits", &PureState::num_qubits)
      .def_property_readonly("amplitudes",
                             [](const PureState& s) { return s.amplitudes(); })
      .def("norm", &PureState::norm);

  py::class_<DensityMatrix>(m, "DensityMatrix")
      .def_property_readonly("num_qubits", &DensityMatrix::num_qubits)
      .def_property_readonly("dim", &DensityMatrix::dim)
      .def("entry", [](const DensityMatrix& rho, std::size_t r,
                       std::size_t c) { return rho(r, c); })
      .def("rows", &matrix_to_rows)
      .def("trace", &DensityMatrix::trace);

  m.def("bell_state", &bell_state, py::arg("kind"));
  m.def("tensor", &tensor, py::arg("a"), py::arg("b"));
  m.def("apply_1q", &apply_1q, py::arg("state"), py::arg("qubit"),
        py::arg("op"));
  m.def("apply_cnot", &apply_cnot, py::arg("state"), py::arg("control"),
        py::arg("target"));
  m.def(
      "bell_probabilities",
      [](const PureState& s, int a, int b) {
        return probabilities_to_dict(bell_probabilities(s, a, b));
      },
      py::arg("state"), py::arg("qubit_a"), py::arg("qubit_b"));
  m.def(
      "bell_measure",
      [](const PureState& s, int a, int b, Rng& rng) {
        BellMeasurement result = bell_measure(s, a, b, rng);
        return py::make_tuple(result.outcome, result.residual);
      },
      py::arg("state"), py::arg("qubit_a"), py::arg("qubit_b"),
      py::arg("rng"));
  m.def(
      "measure_computational",
      [](const PureState& s, int qubit, Rng& rng) {
        BitMeasurement result = measure_computational(s, qubit, rng);
        return py::make_tuple(result.bit, result.residual);
      },
      py::arg("state"), py::arg("qubit"), py::arg("rng"));
  m.def(
      "partial_trace",
      [](const PureState& s, const std::vector<int>& keep) {
        return partial_trace(s, keep);
      },
      py::arg("state"), py::arg("keep"));
  m.def("same_up_to_global_phase", &same_up_to_global_phase, py::arg("a"),
        py::arg("b"), py::arg("tol") = kPhaseTol);
  m.def("pauli_image", &pauli_image, py::arg("kind"), py::arg("op"));

  py::class_<CodeTable>(m, "CodeTable")
      .def_readonly("shared", &CodeTable::shared)
      .def_readonly("op_for_bit", &CodeTable::op_for_bit)
      .def_readonly("outcome_for_bit", &CodeTable::outcome_for_bit)
      .def_readonly("forbidden", &CodeTable::forbidden)
      .def("decode", &CodeTable::decode)
      .def("is_forbidden", &CodeTable::is_forbidden);
  m.def("code_table_for", &code_table_for, py::arg("shared"),
        py::arg("variant") = OpSetVariant::Standard);
  m.def("encode_round", &encode_round, py::arg("bit"), py::arg("pair"),
        py::arg("sender_qubit"), py::arg("table"));
  m.def("decode_round", &decode_round, py::arg("outcome"), py::arg("table"));

  py::class_<RoundRecord>(m, "RoundRecord")
      .def_readonly("round_index", &RoundRecord::round_index)
      .def_readonly("direction", &RoundRecord::direction)
      .def_readonly("sender_bit", &RoundRecord::sender_bit)
      .def_readonly("sender_op", &RoundRecord::sender_op)
      .def_readonly("outcome", &RoundRecord::outcome)
      .def_readonly("decoded_bit", &RoundRecord::decoded_bit)
      .def_readonly("forbidden", &RoundRecord::forbidden);

  py::class_<SessionConfig>(m, "SessionConfig")
      .def(py::init<>())
      .def_readwrite("rounds", &SessionConfig::rounds)
      .def_readwrite("batch_size", &SessionConfig::batch_size)
      .def_readwrite("shared_kind", &SessionConfig::shared_kind)
      .def_readwrite("abort_threshold", &SessionConfig::abort_threshold)
      .def_readwrite("seed", &SessionConfig::seed);

  py::class_<SessionReport>(m, "SessionReport")
      .def_readonly("key_sender", &SessionReport::key_sender)
      .def_readonly("key_receiver", &SessionReport::key_receiver)
      .def_readonly("detection_count", &SessionReport::detection_count)
      .def_readonly("aborted", &SessionReport::aborted)
      .def_readonly("outcome_histogram", &SessionReport::outcome_histogram)
      .def_readonly("rounds", &SessionReport::rounds)
      .def("key_agreement", &SessionReport::key_agreement);

  py::class_<ChannelModel>(m, "ChannelModel")
      .def_static("identity", &ChannelModel::identity)
      .def_static("intercept_resend", &ChannelModel::intercept_resend,
                  py::arg("c"), py::arg("d"))
      .def_static("cnot_ancilla", &ChannelModel::cnot_ancilla)
      .def_property_readonly("strategy", &ChannelModel::strategy)
      .def("eve_reduced_state", &ChannelModel::eve_reduced_state);

  m.def("run_session", &run_session, py::arg("config"), py::arg("channel"));
  m.def("eve_key_guess_accuracy", &eve_key_guess_accuracy, py::arg("report"),
        py::arg("channel"));

  m.def(
      "entanglement_swap",
      [](const PureState& a, const PureState& b, Rng& rng) {
        SwapResult result = entanglement_swap(a, b, rng);
        return py::make_tuple(result.outcome, result.shared);
      },
      py::arg("pair_a"), py::arg("pair_b"), py::arg("rng"));

  py::class_<CenterStrategy>(m, "CenterStrategy")
      .def_static("honest", &CenterStrategy::honest)
      .def_static("mislabel", &CenterStrategy::mislabel, py::arg("lie_map"))
      .def_static("mispair", &CenterStrategy::mispair,
                  py::arg("substitute_user"))
      .def_static("mitm_relay", &CenterStrategy::mitm_relay,
                  py::arg("charley"));

  py::class_<SwapAnnouncement>(m, "SwapAnnouncement")
      .def_readonly("pair_index", &SwapAnnouncement::pair_index)
      .def_readonly("announced", &SwapAnnouncement::announced)
      .def_readonly("actual", &SwapAnnouncement::actual);

  py::class_<NetworkConfig>(m, "NetworkConfig")
      .def(py::init<>())
      .def_readwrite("rounds", &NetworkConfig::rounds)
      .def_readwrite("batch_size", &NetworkConfig::batch_size)
      .def_readwrite("abort_threshold", &NetworkConfig::abort_threshold)
      .def_readwrite("seed", &NetworkConfig::seed)
      .def_readwrite("strategy", &NetworkConfig::strategy)
      .def_readwrite("variant", &NetworkConfig::variant);

  py::class_<NetworkReport>(m, "NetworkReport")
      .def_readonly("session", &NetworkReport::session)
      .def_readonly("announcements", &NetworkReport::announcements)
      .def_readonly("center_guesses", &NetworkReport::center_guesses)
      .def_readonly("pairs_consumed", &NetworkReport::pairs_consumed);

  m.def("run_network_session", &run_network_session, py::arg("config"));
  m.def("center_information", &center_information, py::arg("report"));

  py::class_<FrequencyCheck>(m, "FrequencyCheck")
      .def_readonly("label", &FrequencyCheck::label)
      .def_readonly("expected", &FrequencyCheck::expected)
      .def_readonly("observed_count", &FrequencyCheck::observed_count)
      .def_readonly("trials", &FrequencyCheck::trials)
      .def_readonly("tolerance", &FrequencyCheck::tolerance)
      .def_readonly("passed", &FrequencyCheck::pass)
      .def("observed", &FrequencyCheck::observed);
  m.def(
      "check_frequency",
      [](std::string label, double expected, std::int64_t observed_count,
         std::int64_t trials, std::optional<double> tolerance) {
        return check_frequency(std::move(label), expected, observed_count,
                               trials, tolerance);
      },
      py::arg("label"), py::arg("expected"), py::arg("observed_count"),
      py::arg("trials"), py::arg("tolerance") = std::nullopt);

  py::enum_<Mode>(m, "Mode")
      .value("TWO_PARTY", Mode::TwoParty)
      .value("NETWORK", Mode::Network);

  py::class_<ScenarioConfig>(m, "ScenarioConfig")
      .def(py::init<>())
      .def_readwrite("mode", &ScenarioConfig::mode)
      .def_readwrite("rounds", &ScenarioConfig::rounds)
      .def_readwrite("batch_size", &ScenarioConfig::batch_size)
      .def_readwrite("seed", &ScenarioConfig::seed)
      .def_readwrite("abort_threshold", &ScenarioConfig::abort_threshold)
      .def_readwrite("channel", &ScenarioConfig::channel)
      .def_readwrite("fake_c", &ScenarioConfig::fake_c)
      .def_readwrite("fake_d", &ScenarioConfig::fake_d)
      .def_readwrite("center", &ScenarioConfig::center)
      .def_readwrite("lie_map", &ScenarioConfig::lie_map)
      .def_readwrite("substitute_user", &ScenarioConfig::substitute_user)
      .def_readwrite("variant", &ScenarioConfig::variant)
      .def_readwrite("output_path", &ScenarioConfig::output_path);

  py::enum_<ChannelModel::Strategy>(m, "ChannelStrategy")
      .value("IDENTITY", ChannelModel::Strategy::Identity)
      .value("INTERCEPT_RESEND", ChannelModel::Strategy::InterceptResend)
      .value("CNOT_ANCILLA", ChannelModel::Strategy::CnotAncilla);

  m.def("parse_config", &parse_config, py::arg("text"));
  m.def(
      "scenario_transcript",
      [](const ScenarioConfig& config) {
        return render_transcript(execute_scenario(config));
      },
      py::arg("config"),
      "Execute a scenario and return its transcript text.");
  m.def(
      "scenario_report",
      [](const ScenarioConfig& config) {
        return render_report(execute_scenario(config));
      },
      py::arg("config"),
      "Execute a scenario and return its report text.");
  m.def(
      "run_verification_suite",
      []() {
        py::list out;
        for (const CriterionResult& r : run_verification_suite()) {
          out.append(py::make_tuple(r.name, r.pass, r.detail));
        }
        return out;
      },
      "Run the release criteria; returns (name, passed, detail) tuples.");
}
