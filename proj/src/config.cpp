#include "eprqkd/config.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

namespace eprqkd {

namespace {

std::string trim(std::string_view s) {
  std::size_t begin = 0;
  std::size_t end = s.size();
  while (begin < end && std::isspace(static_cast<unsigned char>(s[begin]))) {
    ++begin;
  }
  while (end > begin && std::isspace(static_cast<unsigned char>(s[end - 1]))) {
    --end;
  }
  return std::string(s.substr(begin, end - begin));
}

long long parse_int(const std::string& value, int line) {
  long long out = 0;
  const auto [ptr, ec] =
      std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc{} || ptr != value.data() + value.size()) {
    throw ConfigError(line, "expected an integer, got '" + value + "'");
  }
  return out;
}

std::uint64_t parse_u64(const std::string& value, int line) {
  std::uint64_t out = 0;
  const auto [ptr, ec] =
      std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc{} || ptr != value.data() + value.size()) {
    throw ConfigError(line, "expected an unsigned integer, got '" + value +
                                "'");
  }
  return out;
}

Complex parse_complex_pair(const std::string& value, int line) {
  std::istringstream in(value);
  double re = 0.0;
  double im = 0.0;
  if (!(in >> re >> im)) {
    throw ConfigError(line, "expected two reals (re im), got '" + value + "'");
  }
  std::string leftover;
  if (in >> leftover) {
    throw ConfigError(line, "trailing input after 're im': '" + value + "'");
  }
  return Complex{re, im};
}

BellKind parse_bell_kind(const std::string& value, int line) {
  const auto kind = bell_kind_from_name(value);
  if (!kind.has_value()) {
    throw ConfigError(line, "unknown Bell state '" + value + "'");
  }
  return *kind;
}

std::string format_real(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

std::string_view to_string(Mode mode) {
  return mode == Mode::TwoParty ? "two_party" : "network";
}

ChannelModel ScenarioConfig::make_channel() const {
  switch (channel) {
    case ChannelModel::Strategy::Identity: return ChannelModel::identity();
    case ChannelModel::Strategy::InterceptResend:
      return ChannelModel::intercept_resend(fake_c, fake_d);
    case ChannelModel::Strategy::CnotAncilla:
      return ChannelModel::cnot_ancilla();
  }
  throw std::logic_error("unknown channel strategy");
}

CenterStrategy ScenarioConfig::make_center_strategy() const {
  switch (center) {
    case CenterStrategyKind::Honest: return CenterStrategy::honest();
    case CenterStrategyKind::MislabelResult:
      return CenterStrategy::mislabel(lie_map);
    case CenterStrategyKind::Mispair:
      return CenterStrategy::mispair(substitute_user);
    case CenterStrategyKind::MitmRelay:
      return CenterStrategy::mitm_relay(substitute_user);
  }
  throw std::logic_error("unknown center strategy");
}

ScenarioConfig parse_config(std::string_view text) {
  ScenarioConfig config;
  int fake_line = 0;

  std::vector<std::string> lines;
  {
    std::string current;
    for (char c : text) {
      if (c == '\n') {
        lines.push_back(current);
        current.clear();
      } else {
        current.push_back(c);
      }
    }
    if (!current.empty()) lines.push_back(current);
  }

  for (std::size_t idx = 0; idx < lines.size(); ++idx) {
    const int line = static_cast<int>(idx) + 1;
    std::string_view raw = lines[idx];
    if (const auto hash = raw.find('#'); hash != std::string_view::npos) {
      raw = raw.substr(0, hash);
    }
    const std::string stripped = trim(raw);
    if (stripped.empty()) continue;

    const auto eq = stripped.find('=');
    if (eq == std::string::npos) {
      throw ConfigError(line, "expected 'key = value'");
    }
    const std::string key = trim(std::string_view(stripped).substr(0, eq));
    const std::string value =
        trim(std::string_view(stripped).substr(eq + 1));
    if (key.empty()) throw ConfigError(line, "missing key");
    if (value.empty()) throw ConfigError(line, "missing value for " + key);

    if (key == "mode") {
      if (value == "two_party") {
        config.mode = Mode::TwoParty;
      } else if (value == "network") {
        config.mode = Mode::Network;
      } else {
        throw ConfigError(line, "mode must be two_party or network");
      }
    } else if (key == "rounds") {
      const long long v = parse_int(value, line);
      if (v <= 0 || v > 1000000) {
        throw ConfigError(line, "rounds must be in 1..=1e6");
      }
      config.rounds = static_cast<int>(v);
    } else if (key == "batch_size") {
      const long long v = parse_int(value, line);
      if (v <= 0 || v > 1000000) {
        throw ConfigError(line, "batch_size must be in 1..=1e6");
      }
      config.batch_size = static_cast<int>(v);
    } else if (key == "seed") {
      config.seed = parse_u64(value, line);
    } else if (key == "abort_threshold") {
      const long long v = parse_int(value, line);
      if (v < 0) throw ConfigError(line, "abort_threshold must be >= 0");
      config.abort_threshold = static_cast<int>(v);
    } else if (key == "channel") {
      if (value == "identity") {
        config.channel = ChannelModel::Strategy::Identity;
      } else if (value == "intercept_resend") {
        config.channel = ChannelModel::Strategy::InterceptResend;
      } else if (value == "cnot_ancilla") {
        config.channel = ChannelModel::Strategy::CnotAncilla;
      } else {
        throw ConfigError(line,
                          "channel must be identity, intercept_resend or "
                          "cnot_ancilla");
      }
    } else if (key == "fake_c") {
      config.fake_c = parse_complex_pair(value, line);
      fake_line = line;
    } else if (key == "fake_d") {
      config.fake_d = parse_complex_pair(value, line);
      fake_line = line;
    } else if (key == "center") {
      if (value == "honest") {
        config.center = CenterStrategyKind::Honest;
      } else if (value == "mislabel") {
        config.center = CenterStrategyKind::MislabelResult;
      } else if (value == "mispair") {
        config.center = CenterStrategyKind::Mispair;
      } else if (value == "mitm_relay") {
        config.center = CenterStrategyKind::MitmRelay;
      } else {
        throw ConfigError(
            line, "center must be honest, mislabel, mispair or mitm_relay");
      }
    } else if (key == "lie_psi_minus") {
      config.lie_map[static_cast<int>(BellKind::PsiMinus)] =
          parse_bell_kind(value, line);
    } else if (key == "lie_psi_plus") {
      config.lie_map[static_cast<int>(BellKind::PsiPlus)] =
          parse_bell_kind(value, line);
    } else if (key == "lie_phi_minus") {
      config.lie_map[static_cast<int>(BellKind::PhiMinus)] =
          parse_bell_kind(value, line);
    } else if (key == "lie_phi_plus") {
      config.lie_map[static_cast<int>(BellKind::PhiPlus)] =
          parse_bell_kind(value, line);
    } else if (key == "substitute_user") {
      if (value == "alice" || value == "bob") {
        throw ConfigError(line, "substitute_user must be a third user");
      }
      config.substitute_user = value;
    } else if (key == "op_set_variant") {
      if (value == "paper_table_1") {
        config.variant = OpSetVariant::Standard;
      } else if (value == "sigma_x_only") {
        config.variant = OpSetVariant::SigmaXOnly;
      } else {
        throw ConfigError(
            line, "op_set_variant must be paper_table_1 or sigma_x_only");
      }
    } else if (key == "output_path") {
      config.output_path = value;
    } else {
      throw ConfigError(line, "unknown key '" + key + "'");
    }
  }

  const double fake_norm =
      std::norm(config.fake_c) + std::norm(config.fake_d);
  if (std::abs(fake_norm - 1.0) > 1e-9) {
    throw ConfigError(fake_line,
                      "fake state is not normalized: |c|^2 + |d|^2 = " +
                          format_real(fake_norm));
  }
  return config;
}

ScenarioConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw std::runtime_error("cannot open config file " + path.string());
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_config(buffer.str());
}

std::string echo_config(const ScenarioConfig& config) {
  std::ostringstream out;
  out << "mode = " << to_string(config.mode) << '\n'
      << "rounds = " << config.rounds << '\n'
      << "batch_size = " << config.batch_size << '\n'
      << "seed = " << config.seed << '\n'
      << "abort_threshold = " << config.abort_threshold << '\n';
  if (config.mode == Mode::TwoParty) {
    out << "channel = " << to_string(config.channel) << '\n';
    if (config.channel == ChannelModel::Strategy::InterceptResend) {
      out << "fake_c = " << format_real(config.fake_c.real()) << ' '
          << format_real(config.fake_c.imag()) << '\n'
          << "fake_d = " << format_real(config.fake_d.real()) << ' '
          << format_real(config.fake_d.imag()) << '\n';
    }
  } else {
    out << "center = " << to_string(config.center) << '\n';
    if (config.center == CenterStrategyKind::MislabelResult) {
      for (BellKind k : kAllBellKinds) {
        out << "lie_" << to_string(k) << " = "
            << to_string(config.lie_map[static_cast<int>(k)]) << '\n';
      }
    }
    if (config.center == CenterStrategyKind::Mispair ||
        config.center == CenterStrategyKind::MitmRelay) {
      out << "substitute_user = " << config.substitute_user << '\n';
    }
    out << "op_set_variant = " << to_string(config.variant) << '\n';
  }
  out << "output_path = " << config.output_path << '\n';
  return out.str();
}

}  // namespace eprqkd
