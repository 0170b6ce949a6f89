#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <limits>

namespace levylab {

// Philox4x32-10 counter-based generator (Salmon, Moraes, Dror, Shaw 2011).
// A stream is addressed by (key = master seed, stream = trajectory index);
// consecutive blocks walk the low counter words.  Streams are independent of
// execution order, which is what makes trajectory-parallel Monte Carlo
// reproducible at any worker count.
class Philox4x32 {
 public:
  using result_type = std::uint64_t;

  Philox4x32() : Philox4x32(0, 0) {}
  Philox4x32(std::uint64_t key, std::uint64_t stream) {
    key_ = {lo32(key), hi32(key)};
    ctr_ = {0, 0, lo32(stream), hi32(stream)};
  }

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()() {
    if (have_ == 0) refill();
    --have_;
    return buf_[static_cast<std::size_t>(1 - have_)];
  }

  // One keyed block, exposed for known-answer tests.
  static std::array<std::uint32_t, 4> block(std::array<std::uint32_t, 4> ctr,
                                            std::array<std::uint32_t, 2> key) {
    for (int round = 0; round < 10; ++round) {
      ctr = single_round(ctr, key);
      key[0] += 0x9E3779B9u;
      key[1] += 0xBB67AE85u;
    }
    return ctr;
  }

 private:
  static constexpr std::uint32_t lo32(std::uint64_t x) { return static_cast<std::uint32_t>(x); }
  static constexpr std::uint32_t hi32(std::uint64_t x) { return static_cast<std::uint32_t>(x >> 32); }

  static std::array<std::uint32_t, 4> single_round(const std::array<std::uint32_t, 4>& c,
                                                   const std::array<std::uint32_t, 2>& k) {
    const std::uint64_t p0 = 0xD2511F53ull * c[0];
    const std::uint64_t p1 = 0xCD9E8D57ull * c[2];
    return {hi32(p1) ^ c[1] ^ k[0], lo32(p1), hi32(p0) ^ c[3] ^ k[1], lo32(p0)};
  }

  void refill() {
    const auto out = block(ctr_, key_);
    buf_[0] = (static_cast<std::uint64_t>(out[1]) << 32) | out[0];
    buf_[1] = (static_cast<std::uint64_t>(out[3]) << 32) | out[2];
    have_ = 2;
    if (++ctr_[0] == 0) ++ctr_[1];
  }

  std::array<std::uint32_t, 2> key_{};
  std::array<std::uint32_t, 4> ctr_{};
  std::array<std::uint64_t, 2> buf_{};
  int have_ = 0;
};

// Uniform double in [0, 1) with 53 random bits.
inline double uniform01(Philox4x32& g) {
  return static_cast<double>(g() >> 11) * 0x1.0p-53;
}

// Uniform double in (0, 1]; safe to feed into log().
inline double uniform01_open_left(Philox4x32& g) { return 1.0 - uniform01(g); }

inline double exponential_draw(Philox4x32& g) { return -std::log(uniform01_open_left(g)); }

}  // namespace levylab
