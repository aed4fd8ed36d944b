#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>

#include "eprqkd/adversary.hpp"
#include "eprqkd/network.hpp"
#include "eprqkd/protocol.hpp"

namespace eprqkd {

enum class Mode { TwoParty = 0, Network = 1 };

std::string_view to_string(Mode mode);

struct ScenarioConfig {
  Mode mode = Mode::TwoParty;
  int rounds = 10000;
  int batch_size = 100;
  std::uint64_t seed = 0;
  int abort_threshold = 0;

  ChannelModel::Strategy channel = ChannelModel::Strategy::Identity;
  Complex fake_c{1.0, 0.0};
  Complex fake_d{0.0, 0.0};

  CenterStrategyKind center = CenterStrategyKind::Honest;
  std::array<BellKind, 4> lie_map = {BellKind::PsiMinus, BellKind::PsiPlus,
                                     BellKind::PhiMinus, BellKind::PhiPlus};
  std::string substitute_user = "charley";
  OpSetVariant variant = OpSetVariant::Standard;

  std::string output_path = "scenario";

  ChannelModel make_channel() const;
  CenterStrategy make_center_strategy() const;
};

struct ConfigError : std::runtime_error {
  ConfigError(int line, const std::string& message)
      : std::runtime_error("line " + std::to_string(line) + ": " + message),
        line(line) {}
  int line;
};

// Line-oriented `key = value` text; '#' starts a comment; unknown keys are
// rejected. Omitted keys keep their documented defaults.
ScenarioConfig parse_config(std::string_view text);

ScenarioConfig load_config(const std::filesystem::path& path);

// Canonical key = value serialization (parse_config round-trips it).
std::string echo_config(const ScenarioConfig& config);

}  // namespace eprqkd
