#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace mcplan {

std::uint64_t splitmix64(std::uint64_t x);
std::uint64_t hash_combine(std::uint64_t seed, std::uint64_t v);
std::uint64_t hash_str(std::string_view s);

// Seeded random stream. Identical seeds reproduce identical draw sequences;
// child sources derived from (seed, label) are independent per label.
// Single-writer: one owner per instance, no internal synchronization.
class RandomSource {
 public:
  explicit RandomSource(std::uint64_t seed) : seed_(seed), engine_(seed) {}

  std::uint64_t seed() const { return seed_; }

  std::uint64_t next_u64() { return engine_(); }

  // Uniform in [0, 1).
  double next_real01() { return (next_u64() >> 11) * 0x1.0p-53; }

  // Uniform in [0, n); n must be > 0.
  std::uint64_t next_index(std::uint64_t n) {
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(next_u64()) * n) >> 64);
  }

  bool next_bernoulli(double p) { return next_real01() < p; }

  RandomSource child(std::string_view label) const {
    return RandomSource(hash_combine(seed_, hash_str(label)));
  }
  RandomSource child(std::string_view label, std::uint64_t a) const {
    return RandomSource(hash_combine(hash_combine(seed_, hash_str(label)), a));
  }
  RandomSource child(std::string_view label, std::uint64_t a,
                     std::uint64_t b) const {
    return RandomSource(
        hash_combine(hash_combine(hash_combine(seed_, hash_str(label)), a), b));
  }

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

}  // namespace mcplan
