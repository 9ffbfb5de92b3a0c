#pragma once

#include <array>
#include <cstdint>

namespace futurity {

// xoshiro256++ 1.0 (Blackman & Vigna), seeded through SplitMix64. Fixed
// choice: every simulation in the library draws from this generator, and
// replication streams are derived with jump() (2^128 steps apart), never by
// reseeding with consecutive integers.
class Xoshiro256pp {
 public:
  explicit Xoshiro256pp(std::uint64_t seed) {
    // SplitMix64 expansion of the seed into the 256-bit state.
    std::uint64_t x = seed;
    for (auto& word : s_) {
      x += 0x9e3779b97f4a7c15ULL;
      std::uint64_t z = x;
      z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
      z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
      word = z ^ (z >> 31);
    }
  }

  std::uint64_t next() {
    const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
  }

  // Uniform on [0,1): the top 53 bits scaled; strictly below 1.
  double uniform01() { return (next() >> 11) * 0x1.0p-53; }

  // Uniform integer in [0, n) by the multiply-high method (deterministic and
  // fine for test-sized n; not used on hot paths).
  std::uint64_t below(std::uint64_t n) {
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(next()) * n) >> 64);
  }

  // Advances 2^128 steps; used to carve independent replication streams.
  void jump() {
    static constexpr std::array<std::uint64_t, 4> kJump = {
        0x180ec6d33cfd0abaULL, 0xd5a61266f0c9392cULL, 0xa9582618e03fc9aaULL,
        0x39abdc4529b1661cULL};
    std::uint64_t t0 = 0, t1 = 0, t2 = 0, t3 = 0;
    for (std::uint64_t word : kJump)
      for (int b = 0; b < 64; ++b) {
        if (word & (1ULL << b)) {
          t0 ^= s_[0];
          t1 ^= s_[1];
          t2 ^= s_[2];
          t3 ^= s_[3];
        }
        next();
      }
    s_ = {t0, t1, t2, t3};
  }

 private:
  static std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
  }

  std::array<std::uint64_t, 4> s_{};
};

}  // namespace futurity
