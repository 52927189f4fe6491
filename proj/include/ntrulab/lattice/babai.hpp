#pragma once

// Babai's nearest plane algorithm.

#include <span>
#include <stdexcept>
#include <type_traits>

#include "ntrulab/floats.hpp"
#include "ntrulab/lattice/basis.hpp"
#include "ntrulab/lattice/gso.hpp"

namespace ntrulab::lattice {

struct BabaiResult {
  IntVector coeffs;  // w = sum coeffs[i] * b_i
  IntVector vector;
  Integer distance_squared;
};

namespace detail {

template <class S>
S scalar_from(const Integer& x) {
  if constexpr (std::is_same_v<S, Rational>) return Rational(x);
  else return to_float<S>(x);
}

}  // namespace detail

// Only gso.mu and gso.norms are used: <t, b*_i> follows from <t, b_i> by the
// recurrence <t, b*_i> = <t, b_i> - sum_{j<i} mu_ij <t, b*_j>.
// Rounding ties (fraction exactly 1/2) go toward zero.
template <class S>
BabaiResult babai_nearest_plane(const LatticeBasis& basis, const GsoData<S>& gso,
                                std::span<const Integer> target) {
  const std::size_t n = basis.rank();
  if (target.size() != basis.dim()) throw DimensionMismatch("Babai target length differs from basis dimension");
  if (gso.rank() != n) throw DimensionMismatch("GSO data does not match the basis");

  std::vector<S> y(n);
  for (std::size_t i = 0; i < n; ++i) {
    Integer tb = 0;
    auto bi = basis.row(i);
    for (std::size_t c = 0; c < target.size(); ++c) add_mul(tb, target[c], bi[c]);
    S acc = detail::scalar_from<S>(tb);
    for (std::size_t j = 0; j < i; ++j) acc -= gso.mu(i, j) * y[j];
    y[i] = acc;
  }
  for (std::size_t i = 0; i < n; ++i) y[i] /= gso.norms[i];

  IntVector coeffs(n, Integer(0));
  for (std::size_t i = n; i-- > 0;) {
    coeffs[i] = round_half_to_zero(y[i]);
    if (coeffs[i] == 0) continue;
    const S c = detail::scalar_from<S>(coeffs[i]);
    for (std::size_t j = 0; j < i; ++j) y[j] -= c * gso.mu(i, j);
  }

  BabaiResult out{coeffs, basis.combine(coeffs), 0};
  for (std::size_t c = 0; c < target.size(); ++c) {
    const Integer diff = out.vector[c] - target[c];
    add_mul(out.distance_squared, diff, diff);
  }

  // Nearest-plane guarantee: ||w - t||^2 <= (1/4) sum ||b*_i||^2.
  S quarter_sum = S(0);
  for (const auto& v : gso.norms) quarter_sum += v;
  quarter_sum /= S(4);
  if constexpr (std::is_same_v<S, Rational>) {
    if (Rational(out.distance_squared) > quarter_sum)
      throw std::logic_error("Babai nearest-plane distance bound violated");
  } else {
    using std::abs;
    const S dist = to_float<S>(out.distance_squared);
    if (dist > quarter_sum * (S(1) + S(1e-9)) + S(1e-9))
      throw std::logic_error("Babai nearest-plane distance bound violated");
  }
  return out;
}

inline BabaiResult babai_nearest_plane(const LatticeBasis& basis, const AnyGso& gso,
                                       std::span<const Integer> target) {
  return std::visit([&](const auto& g) { return babai_nearest_plane(basis, g, target); }, gso);
}

}  // namespace ntrulab::lattice
