#pragma once

// Deterministic, splittable random streams.
//
// Every generated instance owns one stream derived from the triple
// (master_seed, stream_id, index). Derivation and generation both use the
// SplitMix64 finalizer (Steele, Lea & Flood, "Fast splittable pseudorandom
// number generators", 2014):
//
//   mix64(z):  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9
//              z = (z ^ (z >> 27)) * 0x94d049bb133111eb
//              return z ^ (z >> 31)
//
//   state0 = mix64( mix64( mix64(master_seed) ^ fnv1a64(stream_id) )
//                   + (index + 1) * 0x9e3779b97f4a7c15 )
//
// The generator then advances state += 0x9e3779b97f4a7c15 and returns
// mix64(state). Bounded integers use rejection sampling on the top of a
// 64x64->128 multiply (Lemire), so results never depend on the standard
// library's distribution implementations.

#include <cstdint>
#include <limits>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "nonsense/errors.hpp"

namespace nonsense {

__extension__ using uint128 = unsigned __int128;

inline constexpr std::uint64_t kGoldenGamma = 0x9e3779b97f4a7c15ULL;

constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// 64-bit FNV-1a.
constexpr std::uint64_t fnv1a64(std::string_view bytes) noexcept {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

struct StreamKey {
  std::uint64_t master_seed = 0;
  std::string_view stream_id;
  std::uint64_t index = 0;
};

constexpr std::uint64_t derive_state(const StreamKey& key) noexcept {
  const std::uint64_t base = mix64(mix64(key.master_seed) ^ fnv1a64(key.stream_id));
  return mix64(base + (key.index + 1) * kGoldenGamma);
}

class Rng {
 public:
  using result_type = std::uint64_t;

  constexpr explicit Rng(std::uint64_t state) noexcept : state_(state) {}

  static constexpr Rng derive(std::uint64_t master_seed, std::string_view stream_id,
                              std::uint64_t index) noexcept {
    return Rng(derive_state({master_seed, stream_id, index}));
  }

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

  constexpr result_type operator()() noexcept {
    state_ += kGoldenGamma;
    return mix64(state_);
  }

  // Uniform over [0, bound). bound must be nonzero.
  std::uint64_t below(std::uint64_t bound) {
    if (bound == 0) throw InvalidInput("Rng::below: bound must be positive");
    uint128 m = static_cast<uint128>((*this)()) * bound;
    auto low = static_cast<std::uint64_t>(m);
    if (low < bound) {
      const std::uint64_t threshold = (0 - bound) % bound;
      while (low < threshold) {
        m = static_cast<uint128>((*this)()) * bound;
        low = static_cast<std::uint64_t>(m);
      }
    }
    return static_cast<std::uint64_t>(m >> 64);
  }

  // Uniform over the closed range [lo, hi].
  std::int64_t between(std::int64_t lo, std::int64_t hi) {
    if (lo > hi) throw InvalidInput("Rng::between: empty range");
    const std::uint64_t span = static_cast<std::uint64_t>(hi) - static_cast<std::uint64_t>(lo);
    if (span == std::numeric_limits<std::uint64_t>::max()) return static_cast<std::int64_t>((*this)());
    return static_cast<std::int64_t>(static_cast<std::uint64_t>(lo) + below(span + 1));
  }

  std::size_t index(std::size_t size) { return static_cast<std::size_t>(below(size)); }

  // 53-bit uniform double in [0, 1).
  double unit() noexcept { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

  bool bernoulli(double p) noexcept { return unit() < p; }

  template <typename T>
  void shuffle(std::span<T> items) {
    for (std::size_t i = items.size(); i > 1; --i) {
      std::swap(items[i - 1], items[index(i)]);
    }
  }

  template <typename T>
  void shuffle(std::vector<T>& items) {
    shuffle(std::span<T>(items));
  }

  // k distinct indices from [0, n), in sampled order.
  std::vector<std::size_t> sample_without_replacement(std::size_t n, std::size_t k) {
    if (k > n) throw InvalidInput("Rng::sample_without_replacement: k exceeds population");
    std::vector<std::size_t> pool(n);
    for (std::size_t i = 0; i < n; ++i) pool[i] = i;
    for (std::size_t i = 0; i < k; ++i) std::swap(pool[i], pool[i + index(n - i)]);
    pool.resize(k);
    return pool;
  }

  constexpr std::uint64_t state() const noexcept { return state_; }

 private:
  std::uint64_t state_;
};

}  // namespace nonsense
