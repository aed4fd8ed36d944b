#pragma once

#include <deque>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "eprqkd/protocol.hpp"
#include "eprqkd/quantum.hpp"

namespace eprqkd {

// A user's deposit at the center: EPR pairs with qubit 1 user-held and
// qubit 2 center-held. Pairs stay unmeasured until a swap consumes them.
struct QuantumFile {
  std::string owner;
  std::deque<PureState> pairs;
  int consumed = 0;

  static QuantumFile deposit(std::string owner, int count);

  int remaining() const { return static_cast<int>(pairs.size()); }
  PureState take();  // consumes the oldest pair; throws when empty
};

enum class CenterStrategyKind {
  Honest = 0,
  MislabelResult = 1,  // announces lie_map(actual) instead of actual
  Mispair = 2,         // swaps user_a with substitute_user's file
  MitmRelay = 3,       // pairs both users with charley, who relays rounds
};

std::string_view to_string(CenterStrategyKind kind);

struct CenterStrategy {
  CenterStrategyKind kind = CenterStrategyKind::Honest;
  // Announced kind per actual kind, BellKind enum order (MislabelResult).
  std::array<BellKind, 4> lie_map = {BellKind::PsiMinus, BellKind::PsiPlus,
                                     BellKind::PhiMinus, BellKind::PhiPlus};
  std::string substitute_user = "charley";  // Mispair
  std::string charley = "charley";          // MitmRelay

  static CenterStrategy honest();
  static CenterStrategy mislabel(std::array<BellKind, 4> lie_map);
  static CenterStrategy mispair(std::string substitute_user);
  static CenterStrategy mitm_relay(std::string charley);

  BellKind announce(BellKind actual) const;
};

struct SwapAnnouncement {
  int pair_index = 0;  // 1-based
  BellKind announced = BellKind::PsiMinus;
  BellKind actual = BellKind::PsiMinus;  // analysis-only; hidden from users
};

struct SwapResult {
  BellKind outcome;
  PureState shared;  // 2-qubit state of the user-held halves
};

// Bell-measures the two center-held halves (qubit 2 of each pair); the
// user-held halves come out entangled in the outcome's Bell state.
SwapResult entanglement_swap(const PureState& pair_a, const PureState& pair_b,
                             Rng& rng);

class Center {
public:
  void deposit(QuantumFile file);
  QuantumFile& file(const std::string& owner);  // throws if unknown
  const std::map<std::string, QuantumFile>& files() const { return files_; }

private:
  std::map<std::string, QuantumFile> files_;
};

// One round's worth of distributed state, as the strategy arranged it.
struct Correlation {
  SwapAnnouncement announcement;
  // The pair user_a ends up sharing; qubit 1 = user_a's half. The partner is
  // user_b when honest, the substitute/charley otherwise.
  PureState primary;
  // Mispair: user_b's untouched file pair. MitmRelay: the charley-user_b
  // shared pair (qubit 1 = charley's half).
  std::optional<PureState> secondary;
  // MitmRelay: actual kind of the secondary pair (known to the center side).
  std::optional<BellKind> secondary_kind;
};

// Performs `count` swaps between the two users' files per the strategy and
// returns the per-pair correlations with their announcements.
std::vector<Correlation> request_correlation(Center& center,
                                             const std::string& user_a,
                                             const std::string& user_b,
                                             int count,
                                             const CenterStrategy& strategy,
                                             Rng& rng);

struct NetworkConfig {
  int rounds = 10000;
  int batch_size = 100;
  int abort_threshold = 0;
  std::uint64_t seed = 0;
  CenterStrategy strategy;
  OpSetVariant variant = OpSetVariant::Standard;

  void validate() const;
};

struct NetworkReport {
  SessionReport session;  // the users' view of the rounds
  std::vector<SwapAnnouncement> announcements;
  // Center-side bit guess per executed round: charley's decoded bit under
  // MitmRelay, a fixed rule on the actual swap outcome otherwise.
  std::vector<int> center_guesses;
  std::map<std::string, int> pairs_consumed;
  CenterStrategyKind strategy_kind = CenterStrategyKind::Honest;
  OpSetVariant variant = OpSetVariant::Standard;
};

// Runs the swapping-network session: the center correlates the users' files
// (per its strategy), announces a Bell kind per pair, and the users run the
// two-party rounds against the announced kind's code table.
NetworkReport run_network_session(const NetworkConfig& config);

GuessStats center_guess_stats(const NetworkReport& report);

// Accuracy of the center side's bit guesses against the sender's key bits.
// 0.5 by convention when no key bits were produced.
double center_information(const NetworkReport& report);

}  // namespace eprqkd
