#pragma once

// LLL reduction.
//
// Exact mode is the integral variant (Cohen, Alg. 2.6.7): all Gram-Schmidt data
// stays in the integers d_k, lambda_ij and the Lovasz test is an exact integer
// comparison against delta written as a fraction.
//
// Float mode keeps the exact integer Gram matrix and recomputes r_ij, mu_ij in
// floating point during each size-reduction pass (Schnorr-Euchner / L^2 style).
// With `certify` set, an exact integral pass follows, which on an already
// reduced basis costs one fraction-free GSO and at most a handful of swaps.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>

#include "ntrulab/floats.hpp"
#include "ntrulab/lattice/basis.hpp"
#include "ntrulab/lattice/gso.hpp"

namespace ntrulab::lattice {

struct LllResult {
  LatticeBasis basis;
  IntMatrix transform;  // reduced = transform * input; empty unless requested
  std::uint64_t swaps = 0;
};

namespace detail {

// Row operation b_k -= x * b_j, applied to the basis and (optionally) the transform.
inline void sub_row(IntMatrix& m, std::size_t k, std::size_t j, const Integer& x) {
  auto rk = m.row(k);
  auto rj = m.row(j);
  for (std::size_t c = 0; c < m.cols(); ++c) sub_mul(rk[c], x, rj[c]);
}

// delta as an exact fraction num/den (delta is a double, so this is exact).
inline std::pair<Integer, Integer> delta_fraction(double delta) {
  Rational r(delta);
  return {numerator(r), denominator(r)};
}

class IntegralLll {
 public:
  IntegralLll(IntMatrix b, double delta, bool track)
      : b_(std::move(b)), n_(b_.rows()), track_(track) {
    std::tie(num_, den_) = delta_fraction(delta);
    if (track_) u_ = IntMatrix::identity(n_);
    gso_.d.assign(n_ + 1, Integer(0));
    gso_.lambda = IntMatrix(n_, n_, Integer(0));
    gso_.d[0] = 1;
  }

  void run() {
    if (n_ == 0) return;
    auto gram = [&](std::size_t i, std::size_t j) { return dot_rows(i, j); };
    gso_.extend(0, gram);
    std::size_t k = 1, kmax = 0;
    while (k < n_) {
      if (k > kmax) {
        kmax = k;
        gso_.extend(k, gram);
      }
      reduce(k, k - 1);
      if (lovasz_fails(k)) {
        swap(k, kmax);
        k = std::max<std::size_t>(1, k - 1);
        continue;
      }
      for (std::size_t l = k - 1; l-- > 0;) reduce(k, l);
      ++k;
    }
  }

  LllResult result() && { return {LatticeBasis(std::move(b_)), std::move(u_), swaps_}; }

 private:
  Integer dot_rows(std::size_t i, std::size_t j) const {
    Integer acc = 0;
    auto ri = b_.row(i);
    auto rj = b_.row(j);
    for (std::size_t c = 0; c < b_.cols(); ++c) add_mul(acc, ri[c], rj[c]);
    return acc;
  }

  void reduce(std::size_t k, std::size_t l) {
    auto& lam = gso_.lambda;
    const Integer& dl = gso_.d[l + 1];
    if (2 * abs(lam(k, l)) <= dl) return;
    const Integer x = round_half_to_zero(lam(k, l), dl);
    sub_row(b_, k, l, x);
    if (track_) sub_row(u_, k, l, x);
    sub_mul(lam(k, l), x, dl);
    for (std::size_t i = 0; i < l; ++i) sub_mul(lam(k, i), x, lam(l, i));
  }

  // den * (d_{k+1} d_{k-1} + lambda^2) < num * d_k^2
  bool lovasz_fails(std::size_t k) const {
    const auto& d = gso_.d;
    const Integer& lam = gso_.lambda(k, k - 1);
    Integer lhs = d[k + 1] * d[k - 1];
    add_mul(lhs, lam, lam);
    lhs *= den_;
    return lhs < num_ * d[k] * d[k];
  }

  void swap(std::size_t k, std::size_t kmax) {
    auto& lam = gso_.lambda;
    auto& d = gso_.d;
    b_.swap_rows(k, k - 1);
    if (track_) u_.swap_rows(k, k - 1);
    for (std::size_t j = 0; j + 1 < k; ++j) std::swap(lam(k, j), lam(k - 1, j));
    const Integer l = lam(k, k - 1);
    Integer bb = d[k - 1] * d[k + 1];
    add_mul(bb, l, l);
    mpz_divexact(bb.backend().data(), bb.backend().data(), d[k].backend().data());
    for (std::size_t i = k + 1; i <= kmax; ++i) {
      const Integer t = lam(i, k);
      Integer nk = d[k + 1] * lam(i, k - 1);
      sub_mul(nk, l, t);
      mpz_divexact(nk.backend().data(), nk.backend().data(), d[k].backend().data());
      Integer nk1 = bb * t;
      add_mul(nk1, l, nk);
      mpz_divexact(nk1.backend().data(), nk1.backend().data(), d[k + 1].backend().data());
      lam(i, k) = std::move(nk);
      lam(i, k - 1) = std::move(nk1);
    }
    d[k] = std::move(bb);
    ++swaps_;
  }

  IntMatrix b_;
  std::size_t n_;
  bool track_;
  IntMatrix u_;
  IntegralGso gso_;
  Integer num_, den_;
  std::uint64_t swaps_ = 0;
};

template <class F>
class FloatLll {
 public:
  FloatLll(IntMatrix b, double delta, bool track)
      : b_(std::move(b)),
        n_(b_.rows()),
        track_(track),
        gram_(gram_matrix(b_)),
        r_(n_, n_, F(0)),
        mu_(n_, n_, F(0)),
        delta_(delta) {
    using std::ldexp;
    const int bits = static_cast<int>(mantissa_bits_of<F>());
    eta_ = F(0.5) + ldexp(F(1), -std::max(8, bits / 2 - 8));
    if (track_) u_ = IntMatrix::identity(n_);
  }

  void run() {
    if (n_ == 0) return;
    set_first();
    // Generous cap: LLL performs O(n^2 log B) swaps.
    const std::uint64_t swap_cap = 2000000 + 4000ULL * n_ * n_;
    std::size_t k = 1;
    while (k < n_) {
      const F s = size_reduce(k);
      if (delta_ * r_(k - 1, k - 1) <= s) {
        r_(k, k) = s - mu_(k, k - 1) * r_(k, k - 1);
        if (!(r_(k, k) > F(0))) throw DependentRows("basis rows are linearly dependent (floating LLL)");
        ++k;
        continue;
      }
      swap(k);
      if (++swaps_ > swap_cap) throw PrecisionFailure("floating LLL exceeded its swap budget");
      if (k == 1) set_first();
      else --k;
    }
  }

  LllResult result() && { return {LatticeBasis(std::move(b_)), std::move(u_), swaps_}; }

 private:
  void set_first() {
    r_(0, 0) = to_float<F>(gram_(0, 0));
    if (!(r_(0, 0) > F(0))) throw DependentRows("zero basis vector");
  }

  void compute_row(std::size_t k) {
    for (std::size_t j = 0; j < k; ++j) {
      F acc = to_float<F>(gram_(k, j));
      for (std::size_t i = 0; i < j; ++i) acc -= mu_(j, i) * r_(k, i);
      r_(k, j) = acc;
      mu_(k, j) = acc / r_(j, j);
    }
  }

  // Size-reduces row k; returns ||b_k||^2 - sum_{j<k-1} mu_kj r_kj, the Lovasz right-hand side.
  F size_reduce(std::size_t k) {
    using std::abs;
    for (int pass = 0;; ++pass) {
      if (pass > 100) throw PrecisionFailure("size reduction does not converge at this precision");
      compute_row(k);
      bool reduced = true;
      for (std::size_t j = 0; j < k; ++j)
        if (abs(mu_(k, j)) > eta_) reduced = false;
      if (reduced) break;
      xs_.assign(k, Integer(0));
      for (std::size_t j = k; j-- > 0;) {
        const Integer x = round_half_to_zero(mu_(k, j));
        if (x == 0) continue;
        const F xf = to_float<F>(x);
        for (std::size_t i = 0; i < j; ++i) mu_(k, i) -= xf * mu_(j, i);
        xs_[j] = x;
        sub_row(b_, k, j, x);
        if (track_) sub_row(u_, k, j, x);
      }
      refresh_gram_row(k);
    }
    F s = to_float<F>(gram_(k, k));
    for (std::size_t j = 0; j + 1 < k; ++j) s -= mu_(k, j) * r_(k, j);
    return s;
  }

  void refresh_gram_row(std::size_t k) {
    for (std::size_t i = 0; i < n_; ++i) {
      if (i == k) continue;
      for (std::size_t j = 0; j < xs_.size(); ++j)
        if (xs_[j] != 0) sub_mul(gram_(k, i), xs_[j], gram_(j, i));
      gram_(i, k) = gram_(k, i);
    }
    Integer nk = 0;
    for (const auto& c : b_.row(k)) add_mul(nk, c, c);
    gram_(k, k) = std::move(nk);
  }

  void swap(std::size_t k) {
    b_.swap_rows(k, k - 1);
    if (track_) u_.swap_rows(k, k - 1);
    gram_.swap_rows(k, k - 1);
    for (std::size_t i = 0; i < n_; ++i) std::swap(gram_(i, k), gram_(i, k - 1));
  }

  IntMatrix b_;
  std::size_t n_;
  bool track_;
  IntMatrix u_;
  IntMatrix gram_;
  Matrix<F> r_, mu_;
  F delta_;
  F eta_;
  IntVector xs_;
  std::uint64_t swaps_ = 0;
};

}  // namespace detail

inline LllResult lll_reduce_with_transform(const LatticeBasis& basis, const ReductionParams& params,
                                           bool track_transform = true) {
  params.validate();
  if (params.mode == PrecisionMode::exact_rational) {
    detail::IntegralLll lll(basis.matrix(), params.delta, track_transform);
    lll.run();
    return std::move(lll).result();
  }
  LllResult first = with_float_tier(params.mantissa_bits, [&]<class F>(std::type_identity<F>) {
    detail::FloatLll<F> lll(basis.matrix(), params.delta, track_transform);
    lll.run();
    return std::move(lll).result();
  });
  if (!params.certify) return first;
  detail::IntegralLll polish(first.basis.matrix(), params.delta, track_transform);
  polish.run();
  LllResult second = std::move(polish).result();
  if (track_transform) second.transform = second.transform * first.transform;
  second.swaps += first.swaps;
  return second;
}

inline LatticeBasis lll_reduce(const LatticeBasis& basis, const ReductionParams& params = {}) {
  return lll_reduce_with_transform(basis, params, false).basis;
}

}  // namespace ntrulab::lattice
