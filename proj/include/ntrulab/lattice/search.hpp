#pragma once

// Schnorr-Euchner tree search over precomputed double-precision GSO data, shared
// by exact enumeration and the BKZ block solver.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

namespace ntrulab::lattice {

namespace detail {

// Nearest integer, halves toward zero (std::llround sends them away from zero).
inline long long round_centre(double c) {
  long long r = std::llround(c);
  if (std::fabs(static_cast<double>(r) - c) == 0.5) r = static_cast<long long>(std::trunc(c));
  return r;
}

// Depth-first search over coefficient vectors x with
// sum_i (x_i - c_i)^2 r_i <= bound, where r_i = ||b*_i||^2, mu is row-major n x n
// and c_i is the projected center. An empty `center` means SVP: the origin is the
// target, zero is skipped and only one of each +/- pair is visited.
// on_leaf(x, partial) returns the new bound (< 0 stops).
template <class Leaf>
void schnorr_euchner(const double* mu, const double* norms, std::size_t n, const std::vector<double>& center,
                     double bound, Leaf&& on_leaf) {
  const bool svp = center.empty();
  std::vector<long long> x(n, 0), step(n, 1);
  std::vector<double> c(n, 0.0), rho(n + 1, 0.0);
  // Row k of sigma holds the partial centres at level k: sigma[k*(n+1) + i] =
  // sum_{j >= i} x_j mu_jk. Both it and mu_t are laid out so that the inner
  // update walks memory contiguously.
  const std::size_t w = n + 1;
  std::vector<double> sigma(n * w, 0.0), mu_t(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < i; ++j) mu_t[j * n + i] = mu[i * n + j];
  // hi[k]: highest level whose coefficient changed since row k of sigma was refreshed.
  std::vector<std::size_t> hi(n, n - 1);
  auto centre_of = [&](std::size_t k) { return (svp ? 0.0 : center[k]) - sigma[k * w + k + 1]; };

  std::size_t k, last_nonzero = 0;
  if (svp) {
    k = 0;
    x[0] = 1;
  } else {
    k = n - 1;
    c[k] = centre_of(k);
    x[k] = round_centre(c[k]);
  }

  auto next_sibling = [&](std::size_t lvl) {
    if (svp && lvl >= last_nonzero) {
      last_nonzero = lvl;
      ++x[lvl];
    } else {
      if (static_cast<double>(x[lvl]) > c[lvl]) x[lvl] -= step[lvl];
      else x[lvl] += step[lvl];
      ++step[lvl];
    }
  };

  while (true) {
    const double diff = static_cast<double>(x[k]) - c[k];
    const double partial = rho[k + 1] + diff * diff * norms[k];
    if (partial <= bound) {
      if (k == 0) {
        bound = on_leaf(x, partial);
        if (bound < 0) return;
        next_sibling(0);
        continue;
      }
      rho[k] = partial;
      --k;
      if (k > 0) hi[k - 1] = std::max(hi[k - 1], hi[k]);
      double* row = sigma.data() + k * w;
      const double* mrow = mu_t.data() + k * n;
      for (std::size_t i = hi[k]; i > k; --i) row[i] = row[i + 1] + static_cast<double>(x[i]) * mrow[i];
      c[k] = centre_of(k);
      x[k] = round_centre(c[k]);
      step[k] = 1;
    } else {
      ++k;
      if (k == n) return;
      hi[k - 1] = k;
      next_sibling(k);
    }
  }
}

}  // namespace detail

}  // namespace ntrulab::lattice
