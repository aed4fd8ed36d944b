#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace eprqkd {

// Deterministic pseudorandom stream. Identical seed (and label) gives an
// identical stream on every platform; independent parties get independent
// streams by sub-seeding with a label, e.g. Rng(seed, "alice").
class Rng {
public:
  explicit Rng(std::uint64_t seed);
  Rng(std::uint64_t seed, std::string_view stream_label);

  std::uint64_t next_u64();

  // Uniform in [0, 1) with 53-bit resolution.
  double next_real();

  // Fair bit, derived from one real draw.
  int next_bit();

private:
  std::mt19937_64 engine_;
};

}  // namespace eprqkd
