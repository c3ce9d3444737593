#pragma once

#include <cstdint>

namespace lpp::rng {

// splitmix64 step; also used as a finalizer when absorbing words into a key.
inline uint64_t splitmix64(uint64_t& state) {
  uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Derive an independent stream seed from (master seed, replica index, tag).
// Pure function of its arguments, so replicas can be generated in any order
// and across any number of threads with identical results.
inline uint64_t derive_stream(uint64_t master, uint64_t replica, uint64_t tag) {
  uint64_t s = master;
  uint64_t h = splitmix64(s);
  s ^= replica * 0xda942042e4dd58b5ULL;
  h ^= splitmix64(s);
  s ^= tag * 0xe7037ed1a0b428dbULL;
  h ^= splitmix64(s);
  return h;
}

// Counter-based per-site bits: a stateless hash of (stream, x, y).
inline uint64_t site_bits(uint64_t stream, int64_t x, int64_t y) {
  uint64_t s = stream;
  (void)splitmix64(s);
  s ^= static_cast<uint64_t>(x) * 0xa0761d6478bd642fULL;
  (void)splitmix64(s);
  s ^= static_cast<uint64_t>(y) * 0x8ebc6af09c88c6e3ULL;
  return splitmix64(s);
}

// Uniform on the open interval (0,1); never returns 0 or 1.
inline double u01(uint64_t bits) {
  return (static_cast<double>(bits >> 11) + 0.5) * 0x1.0p-53;
}

// xoshiro256++ for sequential streams (boundary rows, queueing arrays).
class Xoshiro256 {
 public:
  explicit Xoshiro256(uint64_t seed) {
    for (auto& w : s_) w = splitmix64(seed);
  }
  uint64_t next() {
    const uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
    const uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
  }
  double uniform01() { return u01(next()); }

 private:
  static uint64_t rotl(uint64_t v, int k) { return (v << k) | (v >> (64 - k)); }
  uint64_t s_[4];
};

}  // namespace lpp::rng
