#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace plab {

// splitmix64 step; used to derive independent child seeds so that results
// do not depend on how work is split across workers.
inline uint64_t splitmix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

inline uint64_t derive_seed(uint64_t seed, uint64_t salt) {
  return splitmix64(seed ^ splitmix64(salt + 0x12fad5c9u));
}

inline uint64_t derive_seed(uint64_t seed, std::string_view tag, uint64_t salt = 0) {
  uint64_t h = 1469598103934665603ull;
  for (char c : tag) {
    h ^= static_cast<unsigned char>(c);
    h *= 1099511628211ull;
  }
  return derive_seed(seed ^ h, salt);
}

inline std::mt19937_64 make_rng(uint64_t seed) { return std::mt19937_64(splitmix64(seed)); }

// +/-1 with equal probability, keyed deterministically.
inline int hash_sign(uint64_t seed, uint64_t a, uint64_t b, uint64_t c) {
  uint64_t h = splitmix64(seed ^ splitmix64(a ^ splitmix64(b ^ splitmix64(c))));
  return (h & 1) ? 1 : -1;
}

}  // namespace plab
