#pragma once

// BKZ reduction, used as preprocessing for exact enumeration at ranks where an
// LLL-reduced basis makes the search tree too large.
//
// Each step solves SVP in the projected block [k, k + beta) by Schnorr-Euchner
// search on a double GSO. A strictly shorter projected vector is inserted at
// position k without creating a dependency: Euclid steps on its coefficient
// vector, mirrored as unimodular row operations, leave the new vector as a
// single basis row, which is then rotated into place and the prefix is
// LLL-reduced again. Tours stop when one completes without an insertion.
// A final certified LLL pass makes the output exactly LLL-reduced.

#include <cstdint>
#include <cstdlib>
#include <vector>

#include "ntrulab/lattice/basis.hpp"
#include "ntrulab/lattice/lll.hpp"
#include "ntrulab/lattice/search.hpp"

namespace ntrulab::lattice {

struct BkzParams {
  std::size_t block_size = 20;
  double delta = 0.99;
  unsigned max_tours = 16;

  void validate() const {
    if (block_size < 2) throw ParameterError("BKZ block size must be at least 2");
    if (!(delta > 0.25 && delta < 1.0)) throw ParameterError("BKZ delta must lie in (1/4, 1)");
    if (max_tours == 0) throw ParameterError("BKZ needs at least one tour");
  }
};

struct BkzResult {
  LatticeBasis basis;
  IntMatrix transform;  // reduced = transform * input; empty unless requested
  unsigned tours = 0;
  std::uint64_t insertions = 0;
};

namespace detail {

class Bkz {
 public:
  Bkz(IntMatrix b, const BkzParams& params, bool track)
      : b_(std::move(b)), n_(b_.rows()), params_(params), track_(track) {
    if (track_) u_ = IntMatrix::identity(n_);
  }

  void run() {
    lll_prefix(n_);
    if (n_ < 2) return;
    for (tours_ = 1; tours_ <= params_.max_tours; ++tours_) {
      bool clean = true;
      for (std::size_t k = 0; k + 1 < n_; ++k)
        if (block_step(k)) clean = false;
      if (clean) break;
    }
    tours_ = std::min(tours_, params_.max_tours);
    ReductionParams exact{params_.delta, PrecisionMode::exact_rational};
    apply_lll(n_, exact);
  }

  BkzResult result() && { return {LatticeBasis(std::move(b_)), std::move(u_), tours_, insertions_}; }

 private:
  // Full double GSO from long double arithmetic on the rows.
  void compute_gso() {
    const std::size_t dim = b_.cols();
    std::vector<long double> rows(n_ * dim);
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t c = 0; c < dim; ++c) rows[i * dim + c] = b_(i, c).convert_to<long double>();
    std::vector<long double> r(n_ * n_, 0.0L);
    mu_.assign(n_ * n_, 0.0);
    norms_.assign(n_, 0.0);
    for (std::size_t i = 0; i < n_; ++i) {
      for (std::size_t j = 0; j <= i; ++j) {
        long double g = 0;
        for (std::size_t c = 0; c < dim; ++c) g += rows[i * dim + c] * rows[j * dim + c];
        for (std::size_t l = 0; l < j; ++l) g -= static_cast<long double>(mu_[j * n_ + l]) * r[i * n_ + l];
        r[i * n_ + j] = g;
        if (j < i) mu_[i * n_ + j] = static_cast<double>(g / r[j * n_ + j]);
      }
      norms_[i] = static_cast<double>(r[i * n_ + i]);
    }
  }

  bool block_step(std::size_t k) {
    const std::size_t end = std::min(k + params_.block_size, n_);
    const std::size_t m = end - k;
    compute_gso();
    std::vector<double> mu(m * m, 0.0), norms(m);
    for (std::size_t i = 0; i < m; ++i) {
      norms[i] = norms_[k + i];
      for (std::size_t j = 0; j < i; ++j) mu[i * m + j] = mu_[(k + i) * n_ + k + j];
    }
    const double target = params_.delta * norms[0];
    double best = target;
    std::vector<long long> best_x;
    schnorr_euchner(mu.data(), norms.data(), m, {}, target, [&](const std::vector<long long>& x, double partial) {
      if (partial < best) {
        best = partial;
        best_x = x;
      }
      return best;
    });
    if (best_x.empty()) return false;
    insert(k, best_x);
    lll_prefix(end);
    ++insertions_;
    return true;
  }

  void add_row(std::size_t i, std::size_t j, long long q) {
    const Integer qi = q;
    for (std::size_t c = 0; c < b_.cols(); ++c) add_mul(b_(i, c), qi, b_(j, c));
    if (track_)
      for (std::size_t c = 0; c < n_; ++c) add_mul(u_(i, c), qi, u_(j, c));
  }

  void negate_row(std::size_t i) {
    for (std::size_t c = 0; c < b_.cols(); ++c) b_(i, c) = -b_(i, c);
    if (track_)
      for (std::size_t c = 0; c < n_; ++c) u_(i, c) = -u_(i, c);
  }

  // Makes sum_i x_i b_{k+i} a basis row and moves it to position k.
  void insert(std::size_t k, std::vector<long long> x) {
    const std::size_t m = x.size();
    while (true) {
      std::size_t piv = m;
      std::size_t nonzero = 0;
      for (std::size_t i = 0; i < m; ++i) {
        if (x[i] == 0) continue;
        ++nonzero;
        if (piv == m || std::llabs(x[i]) < std::llabs(x[piv])) piv = i;
      }
      if (nonzero <= 1) {
        if (x[piv] < 0) negate_row(k + piv);
        for (std::size_t i = piv; i > 0; --i) {
          b_.swap_rows(k + i, k + i - 1);
          if (track_) u_.swap_rows(k + i, k + i - 1);
        }
        return;
      }
      // x_j b_j + x_p b_p == (x_j - t x_p) b_j + x_p (b_p + t b_j)
      for (std::size_t j = 0; j < m; ++j) {
        if (j == piv || x[j] == 0) continue;
        const long long t = x[j] / x[piv];
        if (t == 0) continue;
        x[j] -= t * x[piv];
        add_row(k + piv, k + j, t);
      }
    }
  }

  void lll_prefix(std::size_t end) {
    ReductionParams fast{params_.delta, PrecisionMode::high_precision_float, 53, false};
    try {
      apply_lll(end, fast);
    } catch (const PrecisionFailure&) {
      apply_lll(end, ReductionParams{params_.delta, PrecisionMode::exact_rational});
    }
  }

  void apply_lll(std::size_t end, const ReductionParams& rp) {
    IntMatrix sub(end, b_.cols());
    for (std::size_t i = 0; i < end; ++i)
      for (std::size_t c = 0; c < b_.cols(); ++c) sub(i, c) = b_(i, c);
    LllResult red = lll_reduce_with_transform(LatticeBasis(std::move(sub)), rp, track_);
    for (std::size_t i = 0; i < end; ++i)
      for (std::size_t c = 0; c < b_.cols(); ++c) b_(i, c) = red.basis.matrix()(i, c);
    if (!track_) return;
    IntMatrix top(end, n_);
    for (std::size_t i = 0; i < end; ++i)
      for (std::size_t c = 0; c < n_; ++c) top(i, c) = u_(i, c);
    top = red.transform * top;
    for (std::size_t i = 0; i < end; ++i)
      for (std::size_t c = 0; c < n_; ++c) u_(i, c) = top(i, c);
  }

  IntMatrix b_;
  std::size_t n_;
  BkzParams params_;
  bool track_;
  IntMatrix u_;
  std::vector<double> mu_, norms_;
  unsigned tours_ = 0;
  std::uint64_t insertions_ = 0;
};

}  // namespace detail

inline BkzResult bkz_reduce_with_transform(const LatticeBasis& basis, const BkzParams& params = {},
                                           bool track_transform = true) {
  params.validate();
  detail::Bkz bkz(basis.matrix(), params, track_transform);
  bkz.run();
  return std::move(bkz).result();
}

inline LatticeBasis bkz_reduce(const LatticeBasis& basis, const BkzParams& params = {}) {
  return bkz_reduce_with_transform(basis, params, false).basis;
}

}  // namespace ntrulab::lattice
