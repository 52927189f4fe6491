#pragma once

// Parameter sets of the published examples, and the rule for shrinking them to
// desk scale.

#include <array>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>

#include "ntrulab/attack.hpp"
#include "ntrulab/ntru.hpp"

namespace ntrulab::harness {

struct Preset {
  int example = 0;
  std::size_t n = 0;
  std::size_t d = 0;
  std::int64_t p = 3;
  std::int64_t q = 0;
  double y = 0;
  std::int64_t R = 0;  // the radius at which the published run recovered the message
  attack::AStrategy strategy = attack::AStrategy::algorithm1;
};

// r_N = 0 throughout, so the oracle's first half is the zero guess.
inline constexpr std::array<Preset, 7> kPresets{{
    {1, 239, 71, 3, 256, 2.3, 9, attack::AStrategy::algorithm1},
    {2, 257, 91, 3, 256, 2.3, 9, attack::AStrategy::algorithm1},
    {3, 283, 99, 3, 1024, 2.3, 16, attack::AStrategy::algorithm1},
    {4, 307, 15, 3, 1024, 2.5, 18, attack::AStrategy::algorithm1},
    {5, 509, 10, 3, 2048, 2.5, 26, attack::AStrategy::pm2_shuffled},
    {6, 677, 20, 3, 2048, 2.5, 17, attack::AStrategy::structured},
    {7, 557, 40, 3, 8192, 2.5, 38, attack::AStrategy::structured},
}};

// Ring degrees offered for desk-scale runs of any example.
inline constexpr std::array<std::size_t, 3> kDeskScales{61, 107, 131};
inline constexpr std::size_t kDefaultDeskScale = 61;

inline const Preset& preset(int example) {
  if (example < 1 || example > static_cast<int>(kPresets.size()))
    throw ParameterError("example must be between 1 and " + std::to_string(kPresets.size()));
  return kPresets[static_cast<std::size_t>(example - 1)];
}

// Same p, q, y, R and a-strategy at ring degree n_new; d scales in proportion,
// rounded, then clamped to 1 <= d and 2d + 1 <= n_new.
inline Preset scaled(const Preset& base, std::size_t n_new) {
  if (n_new < 3) throw ParameterError("scaled N must be at least 3");
  Preset out = base;
  out.n = n_new;
  auto d = static_cast<std::size_t>(std::llround(static_cast<double>(base.d) * static_cast<double>(n_new) /
                                                 static_cast<double>(base.n)));
  d = std::max<std::size_t>(d, 1);
  d = std::min(d, (n_new - 1) / 2);
  out.d = d;
  return out;
}

inline ntru::NtruParams params_of(const Preset& p) { return ntru::NtruParams::standard(p.n, p.p, p.q, p.d); }

}  // namespace ntrulab::harness
