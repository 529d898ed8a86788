#ifndef AMUSE_RNG_HPP_
#define AMUSE_RNG_HPP_

#include <cstdint>
#include <random>
#include <string_view>

namespace amuse {

// splitmix64 finalizer; used to derive independent stream seeds from a
// master seed without correlation between streams.
inline std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d4d2f55cbbf7a7ULL;
  return z ^ (z >> 31);
}

// Derives a child seed from (master, tag, index). Each component of the
// experiment (drift, covariates, labels, policy sampling, per-run splits)
// gets its own tag so streams stay independently reproducible.
inline std::uint64_t derive_seed(std::uint64_t master, std::string_view tag,
                                 std::uint64_t index = 0) {
  std::uint64_t h = mix64(master);
  for (char c : tag) h = mix64(h ^ static_cast<std::uint64_t>(static_cast<unsigned char>(c)));
  return mix64(h ^ index);
}

using Rng = std::mt19937_64;

inline Rng make_rng(std::uint64_t master, std::string_view tag,
                    std::uint64_t index = 0) {
  return Rng(derive_seed(master, tag, index));
}

}  // namespace amuse

#endif  // AMUSE_RNG_HPP_
