#pragma once

// Gram-Schmidt orthogonalization, exact (rational) and floating.
//
// The exact route works fraction-free: with d_k the Gram determinant of the
// first k rows and lambda_ij = d_{j+1} mu_ij, every intermediate is an integer
// and each division is exact.

#include <cmath>
#include <variant>

#include "ntrulab/floats.hpp"
#include "ntrulab/lattice/basis.hpp"

namespace ntrulab::lattice {

template <class S>
struct GsoData {
  Matrix<S> bstar;     // empty when vectors were not requested
  Matrix<S> mu;        // lower triangular, unit diagonal
  std::vector<S> norms;  // ||b*_i||^2

  std::size_t rank() const { return norms.size(); }
  bool has_vectors() const { return bstar.rows() == norms.size() && !norms.empty(); }
};

using ExactGso = GsoData<Rational>;

// Fraction-free Gram-Schmidt data: d[0] = 1, d[k] = Gram determinant of rows 0..k-1,
// lambda(i, j) = d[j+1] * mu_ij for j < i.
struct IntegralGso {
  std::vector<Integer> d;
  IntMatrix lambda;

  // Computes row k from the Gram entries <b_k, b_j>, j <= k. Rows < k must be done.
  template <class GramFn>
  void extend(std::size_t k, GramFn&& gram) {
    for (std::size_t j = 0; j <= k; ++j) {
      Integer u = gram(k, j);
      for (std::size_t i = 0; i < j; ++i) {
        u *= d[i + 1];
        sub_mul(u, lambda(k, i), lambda(j, i));
        mpz_divexact(u.backend().data(), u.backend().data(), d[i].backend().data());
      }
      if (j < k) {
        lambda(k, j) = std::move(u);
      } else {
        if (u == 0) throw DependentRows("basis rows are linearly dependent");
        d[k + 1] = std::move(u);
      }
    }
  }

  static IntegralGso compute(const IntMatrix& b) {
    const std::size_t n = b.rows();
    IntegralGso g{std::vector<Integer>(n + 1, Integer(0)), IntMatrix(n, n, Integer(0))};
    g.d[0] = 1;
    const IntMatrix gram = gram_matrix(b);
    for (std::size_t k = 0; k < n; ++k) g.extend(k, [&](std::size_t i, std::size_t j) { return gram(i, j); });
    return g;
  }
};

namespace detail {

template <class S>
Matrix<S> orthogonal_vectors(const IntMatrix& b, const Matrix<S>& mu) {
  const std::size_t n = b.rows(), m = b.cols();
  Matrix<S> bstar(n, m, S(0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t c = 0; c < m; ++c) {
      if constexpr (std::is_same_v<S, Rational>) bstar(i, c) = Rational(b(i, c));
      else bstar(i, c) = to_float<S>(b(i, c));
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (mu(i, j) == 0) continue;
      for (std::size_t c = 0; c < m; ++c) bstar(i, c) -= mu(i, j) * bstar(j, c);
    }
  }
  return bstar;
}

}  // namespace detail

inline ExactGso gram_schmidt_exact(const LatticeBasis& basis, bool with_vectors = true) {
  const std::size_t n = basis.rank();
  const IntegralGso ig = IntegralGso::compute(basis.matrix());
  ExactGso out{{}, Matrix<Rational>(n, n, Rational(0)), std::vector<Rational>(n)};
  for (std::size_t i = 0; i < n; ++i) {
    out.norms[i] = Rational(ig.d[i + 1]) / Rational(ig.d[i]);
    out.mu(i, i) = 1;
    for (std::size_t j = 0; j < i; ++j) out.mu(i, j) = Rational(ig.lambda(i, j)) / Rational(ig.d[j + 1]);
  }
  if (with_vectors) out.bstar = detail::orthogonal_vectors(basis.matrix(), out.mu);
  return out;
}

// Floating GSO from the exact Gram matrix (Cholesky-style recurrence).
template <class F>
GsoData<F> gram_schmidt_float(const LatticeBasis& basis, bool with_vectors = true) {
  const std::size_t n = basis.rank();
  const IntMatrix gram = gram_matrix(basis.matrix());
  GsoData<F> out{{}, Matrix<F>(n, n, F(0)), std::vector<F>(n)};
  Matrix<F> r(n, n, F(0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      F acc = to_float<F>(gram(i, j));
      for (std::size_t k = 0; k < j; ++k) acc -= out.mu(j, k) * r(i, k);
      r(i, j) = acc;
      if (j < i) out.mu(i, j) = acc / r(j, j);
    }
    out.mu(i, i) = 1;
    if (!(r(i, i) > F(0))) throw DependentRows("basis rows are linearly dependent (floating GSO)");
    out.norms[i] = r(i, i);
  }
  if (with_vectors) out.bstar = detail::orthogonal_vectors(basis.matrix(), out.mu);
  return out;
}

using AnyGso = std::variant<GsoData<Rational>, GsoData<double>, GsoData<Float128>, GsoData<Float200>,
                            GsoData<Float400>>;

inline AnyGso gram_schmidt(const LatticeBasis& basis, const ReductionParams& params,
                           bool with_vectors = true) {
  params.validate();
  if (params.mode == PrecisionMode::exact_rational) return gram_schmidt_exact(basis, with_vectors);
  return with_float_tier(params.mantissa_bits, [&]<class F>(std::type_identity<F>) -> AnyGso {
    return gram_schmidt_float<F>(basis, with_vectors);
  });
}

}  // namespace ntrulab::lattice
