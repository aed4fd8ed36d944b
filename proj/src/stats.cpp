#include "eprqkd/stats.hpp"

#include <cmath>
#include <stdexcept>

namespace eprqkd {

double binomial_three_sigma(double p, std::int64_t trials) {
  return 3.0 * std::sqrt(p * (1.0 - p) / static_cast<double>(trials));
}

FrequencyCheck check_frequency(std::string label, double expected,
                               std::int64_t observed_count,
                               std::int64_t trials,
                               std::optional<double> tolerance) {
  if (trials <= 0) {
    throw std::invalid_argument("check_frequency: trials must be positive");
  }
  FrequencyCheck check;
  check.label = std::move(label);
  check.expected = expected;
  check.observed_count = observed_count;
  check.trials = trials;
  check.tolerance =
      tolerance.has_value() ? *tolerance : binomial_three_sigma(expected,
                                                                trials);
  check.pass = std::abs(check.observed() - expected) <= check.tolerance;
  return check;
}

FrequencyCheck check_frequency(std::string label, double expected,
                               const std::vector<bool>& outcomes,
                               std::optional<double> tolerance) {
  std::int64_t hits = 0;
  for (bool b : outcomes) {
    if (b) ++hits;
  }
  return check_frequency(std::move(label), expected, hits,
                         static_cast<std::int64_t>(outcomes.size()),
                         tolerance);
}

std::vector<FrequencyCheck> compare_to_oracle(
    const std::array<std::int64_t, 4>& empirical,
    const BellProbabilities& exact, std::int64_t trials,
    const std::string& label_prefix) {
  std::int64_t sum = 0;
  for (std::int64_t c : empirical) sum += c;
  if (sum != trials) {
    throw std::invalid_argument(
        "compare_to_oracle: counts do not sum to trials");
  }
  std::vector<FrequencyCheck> checks;
  checks.reserve(4);
  for (BellKind k : kAllBellKinds) {
    checks.push_back(check_frequency(
        label_prefix + std::string(to_string(k)), exact[k],
        empirical[static_cast<int>(k)], trials));
  }
  return checks;
}

}  // namespace eprqkd
