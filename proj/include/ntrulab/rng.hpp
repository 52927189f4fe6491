#pragma once

#include <cstdint>
#include <random>

namespace ntrulab {

using Rng = std::mt19937_64;

// SplitMix64 finalizer. Used to derive independent child seeds from a master
// seed so that every random draw in an experiment is a pure function of it.
constexpr std::uint64_t mix_seed(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

constexpr std::uint64_t derive_seed(std::uint64_t parent, std::uint64_t stream) {
  return mix_seed(mix_seed(parent) ^ mix_seed(stream + 0x632be59bd9b4e019ULL));
}

// Stream labels for derive_seed.
namespace seed_stream {
inline constexpr std::uint64_t keygen = 1;
inline constexpr std::uint64_t message = 2;
inline constexpr std::uint64_t nonce = 3;
inline constexpr std::uint64_t oracle = 4;
inline constexpr std::uint64_t a_vector = 5;
inline constexpr std::uint64_t trial = 6;
}  // namespace seed_stream

}  // namespace ntrulab
