#pragma once

#include <cmath>
#include <cstdint>

namespace randpoly {

// Philox4x32-10 counter-based generator (Salmon et al., "Parallel random
// numbers: as easy as 1, 2, 3").
//
// Every (seed, stream) pair indexes a statistically independent sequence, so
// parallel code can hand stream k to replication k and the pooled result does
// not depend on how replications were scheduled onto threads. Headers only;
// no global state.
class PhiloxRng {
 public:
  using result_type = std::uint64_t;

  explicit PhiloxRng(std::uint64_t seed, std::uint64_t stream = 0) noexcept
      : key_{static_cast<std::uint32_t>(seed),
             static_cast<std::uint32_t>(seed >> 32)},
        stream_(stream) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return ~result_type{0}; }

  result_type operator()() {
    if (word_ >= 4) refill();
    const std::uint64_t lo = out_[word_];
    const std::uint64_t hi = out_[word_ + 1];
    word_ += 2;
    return lo | (hi << 32);
  }

  // Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

  double uniform(double a, double b) { return a + (b - a) * uniform(); }

  // Standard normal via Box-Muller; pairs are cached.
  double normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    // First factor needs (0, 1] so the logarithm stays finite.
    const double u = (static_cast<double>((*this)() >> 11) + 1.0) * 0x1.0p-53;
    const double v = uniform();
    const double r = std::sqrt(-2.0 * std::log(u));
    const double a = 2.0 * 3.14159265358979323846 * v;
    spare_ = r * std::sin(a);
    have_spare_ = true;
    return r * std::cos(a);
  }

 private:
  static void round_once(std::uint32_t c[4], const std::uint32_t k[2]) {
    const std::uint64_t p0 = std::uint64_t{0xD2511F53u} * c[0];
    const std::uint64_t p1 = std::uint64_t{0xCD9E8D57u} * c[2];
    const std::uint32_t r0 = static_cast<std::uint32_t>(p1 >> 32) ^ c[1] ^ k[0];
    const std::uint32_t r1 = static_cast<std::uint32_t>(p1);
    const std::uint32_t r2 = static_cast<std::uint32_t>(p0 >> 32) ^ c[3] ^ k[1];
    const std::uint32_t r3 = static_cast<std::uint32_t>(p0);
    c[0] = r0;
    c[1] = r1;
    c[2] = r2;
    c[3] = r3;
  }

  void refill() {
    std::uint32_t c[4] = {static_cast<std::uint32_t>(block_),
                          static_cast<std::uint32_t>(block_ >> 32),
                          static_cast<std::uint32_t>(stream_),
                          static_cast<std::uint32_t>(stream_ >> 32)};
    std::uint32_t k[2] = {key_[0], key_[1]};
    for (int r = 0; r < 10; ++r) {
      round_once(c, k);
      if (r < 9) {
        k[0] += 0x9E3779B9u;
        k[1] += 0xBB67AE85u;
      }
    }
    out_[0] = c[0];
    out_[1] = c[1];
    out_[2] = c[2];
    out_[3] = c[3];
    word_ = 0;
    ++block_;
  }

  std::uint32_t key_[2];
  std::uint64_t stream_ = 0;
  std::uint64_t block_ = 0;
  std::uint32_t out_[4] = {0, 0, 0, 0};
  int word_ = 4;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

}  // namespace randpoly
