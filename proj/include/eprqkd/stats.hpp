#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "eprqkd/quantum.hpp"

namespace eprqkd {

// One empirical-frequency-vs-expectation comparison. The default tolerance
// is the 3-sigma binomial bound, which collapses to 0 for expected 0 or 1:
// an impossible outcome observed even once is a fail.
struct FrequencyCheck {
  std::string label;
  double expected = 0.0;
  std::int64_t observed_count = 0;
  std::int64_t trials = 0;
  double tolerance = 0.0;
  bool pass = false;

  double observed() const {
    return static_cast<double>(observed_count) / static_cast<double>(trials);
  }
};

double binomial_three_sigma(double p, std::int64_t trials);

FrequencyCheck check_frequency(std::string label, double expected,
                               std::int64_t observed_count,
                               std::int64_t trials,
                               std::optional<double> tolerance = std::nullopt);

FrequencyCheck check_frequency(std::string label, double expected,
                               const std::vector<bool>& outcomes,
                               std::optional<double> tolerance = std::nullopt);

// One check per Bell kind against the exact Born probabilities. Counts must
// sum to trials.
std::vector<FrequencyCheck> compare_to_oracle(
    const std::array<std::int64_t, 4>& empirical,
    const BellProbabilities& exact, std::int64_t trials,
    const std::string& label_prefix);

}  // namespace eprqkd
