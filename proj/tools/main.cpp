#include <exception>
#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>

#include "eprqkd/config.hpp"
#include "eprqkd/scenario.hpp"
#include "eprqkd/verification.hpp"

namespace {

// Exit codes: 0 = predictions confirmed, 1 = a check failed, 2 = usage or
// configuration error.
constexpr int kExitPass = 0;
constexpr int kExitCheckFailure = 1;
constexpr int kExitUsage = 2;

const std::map<std::string, std::string>& scenario_explanations() {
  static const std::map<std::string, std::string> explanations = {
      {"encoding_algebra",
       "Encoding closure: each shared Bell state together with its two local\n"
       "operations ({I, X} for the Psi states, {I, iY} for the Phi states)\n"
       "reaches exactly two Bell outcomes, so a measurement decodes the bit\n"
       "and the other two outcomes are forbidden. Checked exactly, up to\n"
       "global phase, for all eight (state, operation) combinations."},
      {"honest_session",
       "Honest two-party run over an error-free channel: every round decodes,\n"
       "no forbidden outcome ever appears, and both parties end with\n"
       "identical keys. Outcome support stays within {psi_minus, phi_minus}.\n"
       "Legal outcomes double as mutual authentication: batches alternate\n"
       "direction so each side proves it holds the shared pairs."},
      {"intercept_resend",
       "Interception with a substitute qubit: measuring the transit qubit\n"
       "tells the interceptor nothing (its marginal is I/2), and whatever\n"
       "normalized fake qubit is forwarded, the receiver's Bell measurement\n"
       "is uniform over all four outcomes. Half of all rounds are flagged\n"
       "and the interceptor's guesses sit at chance."},
      {"cnot_attack",
       "Ancilla entangling attack: CNOT-copying the transit qubit onto a |0>\n"
       "ancilla splits each legal outcome 50/50 with a forbidden partner\n"
       "(psi_minus with psi_plus under I, phi_minus with phi_plus under X),\n"
       "while the ancilla marginal is I/2 for both encodings. The attacker\n"
       "is detected at rate 1/2 and learns nothing."},
      {"entanglement_swap",
       "Swapping at the center: Bell-measuring the two center-held halves of\n"
       "two singlet pairs leaves the user-held halves in the same Bell state\n"
       "as the measured outcome, each outcome with probability exactly 1/4."},
      {"cheating_center",
       "A center that announces the sigma_x-image of its true swap outcome:\n"
       "under {I, sigma_x} encoding on every row the lie is undetectable and\n"
       "the users end with bitwise-complementary keys; with {I, i*sigma_y}\n"
       "on the Phi rows, every lied round produces a forbidden outcome with\n"
       "certainty. This is why the Phi rows use i*sigma_y."},
      {"mispair",
       "Wrong-partner swap: if the center correlates a user with a third\n"
       "party's file, the two qubits the legitimate users measure never\n"
       "shared a pair, so outcomes are uniform over all four Bell states and\n"
       "half of all rounds are flagged."},
      {"mitm_relay",
       "Insider relay: a third user who shares pairs with both legitimate\n"
       "users can intercept each transit qubit, Bell-measure it against his\n"
       "own half, and re-encode the decoded bit onto his pair with the far\n"
       "party. No forbidden outcome ever appears and the relay recovers the\n"
       "entire key. Authentication therefore rests on the center."},
      {"properties",
       "Simulator invariants over 100 seeds: operations preserve the norm,\n"
       "X is an exact involution and iY squares to a global sign, Born\n"
       "probabilities sum to one, impossible outcomes never appear, and\n"
       "identical configurations give byte-identical transcripts."},
  };
  return explanations;
}

int run_command(const std::string& config_path) {
  eprqkd::ScenarioConfig config = eprqkd::load_config(config_path);
  return eprqkd::run_scenario(config, std::cout) == 0 ? kExitPass
                                                      : kExitCheckFailure;
}

int verify_command(bool sweep) {
  auto results = eprqkd::run_verification_suite();
  if (sweep) {
    auto sweep_results = eprqkd::run_seed_sweep();
    results.insert(results.end(), sweep_results.begin(), sweep_results.end());
  }
  eprqkd::print_results(results, std::cout);
  return eprqkd::all_passed(results) ? kExitPass : kExitCheckFailure;
}

int explain_command(const std::string& name) {
  const auto& explanations = scenario_explanations();
  const auto it = explanations.find(name);
  if (it == explanations.end()) {
    std::cerr << "unknown scenario '" << name << "'. Known scenarios:\n";
    for (const auto& [key, text] : explanations) {
      std::cerr << "  " << key << '\n';
    }
    return kExitUsage;
  }
  std::cout << it->second << '\n';
  return kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "eprqkd: deterministic simulator of an EPR-pair key distribution and\n"
      "authentication protocol, its swapping network, and its attack models"};
  app.require_subcommand(1);

  std::string config_path;
  auto* run = app.add_subcommand("run", "run a scenario from a config file");
  run->add_option("config", config_path, "path to a key = value config file")
      ->required();

  bool sweep = false;
  auto* verify =
      app.add_subcommand("verify", "run the release criteria suite");
  verify->add_flag("--sweep", sweep,
                   "also sweep the sampled checks over 100 seeds");

  std::string scenario_name;
  auto* explain =
      app.add_subcommand("explain", "describe the claim a scenario tests");
  explain->add_option("scenario", scenario_name, "scenario name")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (run->parsed()) return run_command(config_path);
    if (verify->parsed()) return verify_command(sweep);
    if (explain->parsed()) return explain_command(scenario_name);
  } catch (const eprqkd::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}
