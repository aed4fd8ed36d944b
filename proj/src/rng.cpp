#include "eprqkd/rng.hpp"

namespace eprqkd {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t fnv1a64(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (char c : s) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace

Rng::Rng(std::uint64_t seed) : engine_(splitmix64(seed)) {}

Rng::Rng(std::uint64_t seed, std::string_view stream_label)
    : engine_(splitmix64(seed ^ fnv1a64(stream_label))) {}

std::uint64_t Rng::next_u64() { return engine_(); }

double Rng::next_real() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

int Rng::next_bit() { return next_real() < 0.5 ? 0 : 1; }

}  // namespace eprqkd
