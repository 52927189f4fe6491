#pragma once

// Reference computations used only by the tests. Each one takes a different
// route from the library code it checks: schoolbook products instead of the
// cyclic loop, rational Gaussian elimination instead of LLL bookkeeping,
// coefficient-box enumeration instead of Schnorr-Euchner search.

#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "ntrulab/integer.hpp"
#include "ntrulab/matrix.hpp"

namespace ntrulab::testing {

// Full polynomial product (degree up to 2N-2), then fold x^j -> x^(j mod N).
inline std::vector<std::int64_t> schoolbook_fold(const std::vector<std::int64_t>& a,
                                                 const std::vector<std::int64_t>& b) {
  const std::size_t n = a.size();
  std::vector<std::int64_t> full(2 * n - 1, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) full[i + j] += a[i] * b[j];
  std::vector<std::int64_t> out(n, 0);
  for (std::size_t j = 0; j < full.size(); ++j) out[j % n] += full[j];
  return out;
}

// Solve x * basis = v over the rationals (basis square, nonsingular). Returns
// nullopt if the solution is not integral.
inline std::optional<IntVector> solve_integral(const IntMatrix& basis, const IntVector& v) {
  const std::size_t n = basis.rows();
  // Transpose system: basis^T x^T = v^T. Augmented matrix over Q.
  std::vector<std::vector<Rational>> m(n, std::vector<Rational>(n + 1));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) m[i][j] = Rational(basis(j, i));
    m[i][n] = Rational(v[i]);
  }
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && m[piv][col] == 0) ++piv;
    if (piv == n) return std::nullopt;
    std::swap(m[piv], m[col]);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || m[r][col] == 0) continue;
      const Rational f = m[r][col] / m[col][col];
      for (std::size_t c = col; c <= n; ++c) m[r][c] -= f * m[col][c];
    }
  }
  IntVector x(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Rational xi = m[i][n] / m[i][i];
    if (denominator(xi) != 1) return std::nullopt;
    x[i] = numerator(xi);
  }
  return x;
}

inline bool same_lattice(const IntMatrix& a, const IntMatrix& b) {
  for (std::size_t i = 0; i < b.rows(); ++i)
    if (!solve_integral(a, b.row_vector(i))) return false;
  for (std::size_t i = 0; i < a.rows(); ++i)
    if (!solve_integral(b, a.row_vector(i))) return false;
  return true;
}

// Inverse of a square nonsingular integer matrix over Q (double approximation).
inline std::vector<std::vector<double>> inverse_approx(const IntMatrix& b) {
  const std::size_t n = b.rows();
  std::vector<std::vector<Rational>> m(n, std::vector<Rational>(2 * n, Rational(0)));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) m[i][j] = Rational(b(i, j));
    m[i][n + i] = 1;
  }
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (m[piv][col] == 0) ++piv;
    std::swap(m[piv], m[col]);
    const Rational p = m[col][col];
    for (auto& x : m[col]) x /= p;
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || m[r][col] == 0) continue;
      const Rational f = m[r][col];
      for (std::size_t c = 0; c < 2 * n; ++c) m[r][c] -= f * m[col][c];
    }
  }
  std::vector<std::vector<double>> inv(n, std::vector<double>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv[i][j] = m[i][n + j].convert_to<double>();
  return inv;
}

// For x * B = v with ||v - t|| <= radius and t = x_t * B, |x_i - x_t,i| is
// bounded by radius * ||column i of B^{-1}||. Returns those per-coordinate bounds.
inline std::vector<std::int64_t> coefficient_box(const IntMatrix& b, double radius) {
  const auto inv = inverse_approx(b);
  const std::size_t n = b.rows();
  std::vector<std::int64_t> box(n);
  for (std::size_t i = 0; i < n; ++i) {
    double col = 0;
    for (std::size_t j = 0; j < n; ++j) col += inv[j][i] * inv[j][i];
    box[i] = static_cast<std::int64_t>(std::floor(radius * std::sqrt(col) * (1 + 1e-9) + 1e-9));
  }
  return box;
}

// Visit every integer vector x with |x_i - center_i| <= box_i.
inline void for_each_in_box(const std::vector<std::int64_t>& center,
                            const std::vector<std::int64_t>& box,
                            const std::function<void(const std::vector<std::int64_t>&)>& fn) {
  const std::size_t n = box.size();
  std::vector<std::int64_t> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = center[i] - box[i];
  while (true) {
    fn(x);
    std::size_t i = 0;
    while (i < n && x[i] == center[i] + box[i]) {
      x[i] = center[i] - box[i];
      ++i;
    }
    if (i == n) return;
    ++x[i];
  }
}

inline bool lex_less(const IntVector& a, const IntVector& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

struct BruteForceResult {
  IntVector coefficients;
  IntVector vector;
  Integer squared;
};

// Shortest nonzero vector by exhaustive search over the box implied by the
// shortest basis row. Ties resolve to the lexicographically smallest coefficient vector.
inline BruteForceResult brute_force_svp(const IntMatrix& b) {
  const std::size_t n = b.rows();
  Integer bound = -1;
  for (std::size_t i = 0; i < n; ++i) {
    Integer s = squared_norm(b.row_vector(i));
    if (bound < 0 || s < bound) bound = s;
  }
  const auto box = coefficient_box(b, std::sqrt(bound.convert_to<double>()));
  BruteForceResult best{{}, {}, Integer(-1)};
  for_each_in_box(std::vector<std::int64_t>(n, 0), box, [&](const std::vector<std::int64_t>& x) {
    if (std::all_of(x.begin(), x.end(), [](std::int64_t v) { return v == 0; })) return;
    IntVector xi = to_integers(x);
    IntVector v = xi * b;
    Integer s = squared_norm(v);
    if (best.squared < 0 || s < best.squared || (s == best.squared && lex_less(xi, best.coefficients)))
      best = {xi, v, s};
  });
  return best;
}

// Closest vector to `target` by exhaustive search around the rounded rational
// coordinates of the target, radius taken from the nearest rounded candidate.
inline BruteForceResult brute_force_cvp(const IntMatrix& b, const IntVector& target) {
  const std::size_t n = b.rows();
  const auto inv = inverse_approx(b);
  std::vector<std::int64_t> center(n);
  for (std::size_t i = 0; i < n; ++i) {
    double s = 0;
    for (std::size_t j = 0; j < n; ++j) s += target[j].convert_to<double>() * inv[j][i];
    center[i] = static_cast<std::int64_t>(std::llround(s));
  }
  IntVector c0 = to_integers(center);
  IntVector v0 = c0 * b;
  Integer d0 = 0;
  for (std::size_t i = 0; i < n; ++i) d0 += (v0[i] - target[i]) * (v0[i] - target[i]);
  // ||x B - t|| <= d0 and ||c0 B - t|| = d0 give ||(x - c0) B|| <= 2 d0.
  const auto box = coefficient_box(b, 2 * std::sqrt(d0.convert_to<double>()));
  BruteForceResult best{c0, v0, d0};
  for_each_in_box(center, box, [&](const std::vector<std::int64_t>& x) {
    IntVector xi = to_integers(x);
    IntVector v = xi * b;
    Integer s = 0;
    for (std::size_t i = 0; i < n; ++i) s += (v[i] - target[i]) * (v[i] - target[i]);
    if (s < best.squared || (s == best.squared && lex_less(xi, best.coefficients))) best = {xi, v, s};
  });
  return best;
}

struct ClassicalGso {
  std::vector<std::vector<Rational>> bstar;
  std::vector<std::vector<Rational>> mu;
  std::vector<Rational> norms;
};

// Textbook Gram-Schmidt by explicit projections onto the b*_j, over Q.
inline ClassicalGso classical_gram_schmidt(const IntMatrix& b) {
  const std::size_t n = b.rows(), m = b.cols();
  ClassicalGso g{std::vector<std::vector<Rational>>(n, std::vector<Rational>(m)),
                 std::vector<std::vector<Rational>>(n, std::vector<Rational>(n)), std::vector<Rational>(n)};
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t c = 0; c < m; ++c) g.bstar[i][c] = Rational(b(i, c));
    for (std::size_t j = 0; j < i; ++j) {
      Rational ip = 0;
      for (std::size_t c = 0; c < m; ++c) ip += Rational(b(i, c)) * g.bstar[j][c];
      g.mu[i][j] = ip / g.norms[j];
      for (std::size_t c = 0; c < m; ++c) g.bstar[i][c] -= g.mu[i][j] * g.bstar[j][c];
    }
    g.mu[i][i] = 1;
    for (std::size_t c = 0; c < m; ++c) g.norms[i] += g.bstar[i][c] * g.bstar[i][c];
  }
  return g;
}

// Checks |mu_ij| <= 1/2 and the Lovasz condition from a fresh textbook GSO.
inline bool is_lll_reduced(const IntMatrix& b, const Rational& delta) {
  const auto g = classical_gram_schmidt(b);
  const Rational half(1, 2);
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < i; ++j)
      if (abs(g.mu[i][j]) > half) return false;
  for (std::size_t i = 0; i + 1 < b.rows(); ++i) {
    const Rational& m = g.mu[i + 1][i];
    if (delta * g.norms[i] > g.norms[i + 1] + m * m * g.norms[i]) return false;
  }
  return true;
}

// Block basis [I_N | C(a); 0 | q I_N], written out entry by entry.
inline IntMatrix q_ary_block_basis(const std::vector<std::int64_t>& a, std::int64_t q) {
  const std::size_t n = a.size();
  IntMatrix m(2 * n, 2 * n, Integer(0));
  for (std::size_t i = 0; i < n; ++i) {
    m(i, i) = 1;
    for (std::size_t j = 0; j < n; ++j) m(i, n + j) = a[(j + n - i) % n];
    m(n + i, n + i) = q;
  }
  return m;
}

inline std::size_t box_volume(const std::vector<std::int64_t>& box, std::size_t cap) {
  std::size_t vol = 1;
  for (auto b : box) {
    vol *= static_cast<std::size_t>(2 * b + 1);
    if (vol > cap) return cap + 1;
  }
  return vol;
}

}  // namespace ntrulab::testing
