#pragma once

// Exact SVP / CVP by depth-first enumeration (Fincke-Pohst bound, Schnorr-Euchner
// zig-zag order) on an LLL-reduced copy of the basis, BKZ-reduced as well at
// larger ranks.
//
// The tree search runs in double precision on GSO data computed at higher
// precision. The pruning radius carries a small relative slack, and every leaf
// is re-evaluated exactly in integers, so the reported optimum is exact.
//
// Ties are broken deterministically: among equally short (or equally close)
// vectors the one whose coefficient vector, in the coordinates of the basis
// given by the caller, is lexicographically smallest wins. For SVP the sign is
// normalized first (v and -v are the same candidate).

#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>

#include "ntrulab/floats.hpp"
#include "ntrulab/lattice/babai.hpp"
#include "ntrulab/lattice/basis.hpp"
#include "ntrulab/lattice/bkz.hpp"
#include "ntrulab/lattice/gso.hpp"
#include "ntrulab/lattice/lll.hpp"
#include "ntrulab/lattice/search.hpp"

namespace ntrulab::lattice {

inline constexpr std::size_t kDefaultEnumerationCap = 60;

struct EnumerationOptions {
  std::size_t rank_cap = kDefaultEnumerationCap;
  ReductionParams reduction{};
  // BKZ preprocessing with this block size kicks in above bkz_min_rank; 0 disables it.
  std::size_t bkz_block_size = 28;
  std::size_t bkz_min_rank = 32;
};

struct ShortestVector {
  IntVector coeffs;  // in the caller's basis
  IntVector vector;
  Integer norm_squared;
  double length() const { return std::sqrt(norm_squared.convert_to<double>()); }
};

struct ClosestVector {
  IntVector coeffs;
  IntVector vector;
  Integer distance_squared;
};

// Lexicographic comparison of integer vectors.
inline bool lex_less(const IntVector& a, const IntVector& b) {
  for (std::size_t i = 0; i < a.size() && i < b.size(); ++i) {
    if (a[i] < b[i]) return true;
    if (b[i] < a[i]) return false;
  }
  return a.size() < b.size();
}

// Of v and -v, the lexicographically smaller.
inline IntVector sign_normalized(IntVector v) {
  IntVector neg(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) neg[i] = -v[i];
  return lex_less(neg, v) ? neg : v;
}

class Enumerator {
 public:
  using Visitor = std::function<bool(const IntVector& coeffs, const IntVector& vector)>;

  explicit Enumerator(const LatticeBasis& basis, const EnumerationOptions& options = {})
      : input_(basis), n_(basis.rank()) {
    if (n_ > options.rank_cap)
      throw RankTooLarge("enumeration rank " + std::to_string(n_) + " exceeds the cap of " +
                         std::to_string(options.rank_cap));
    if (n_ == 0) throw ParameterError("enumeration on an empty basis");
    LllResult red = lll_reduce_with_transform(basis, options.reduction, true);
    reduced_ = std::move(red.basis);
    transform_ = std::move(red.transform);
    if (options.bkz_block_size >= 2 && n_ >= options.bkz_min_rank) {
      BkzResult bkz = bkz_reduce_with_transform(reduced_, {std::min(options.bkz_block_size, n_), options.reduction.delta});
      reduced_ = std::move(bkz.basis);
      transform_ = bkz.transform * transform_;
    }
    const auto gso = gram_schmidt_float<Float128>(reduced_, false);
    mu_.assign(n_ * n_, 0.0);
    norms_.resize(n_);
    for (std::size_t i = 0; i < n_; ++i) {
      norms_[i] = to_double(gso.norms[i]);
      for (std::size_t j = 0; j < i; ++j) mu_[i * n_ + j] = to_double(gso.mu(i, j));
    }
    gso_ = gso;
  }

  const LatticeBasis& basis() const { return input_; }
  const LatticeBasis& reduced() const { return reduced_; }
  std::size_t rank() const { return n_; }

  ShortestVector shortest() const {
    // Start from the first reduced vector.
    ShortestVector best{transform_.row_vector(0), reduced_.row_vector(0), 0};
    best.norm_squared = squared_norm(best.vector);
    if (IntVector cn = sign_normalized(best.coeffs); cn != best.coeffs) {
      best.coeffs = std::move(cn);
      negate(best.vector);
    }
    search({}, slack(best.norm_squared), [&](const std::vector<long long>& x, double) -> double {
      IntVector v = combine_reduced(x);
      const Integer nn = squared_norm(v);
      if (nn > best.norm_squared) return slack(best.norm_squared);
      IntVector c = input_coeffs(x);
      IntVector cn = sign_normalized(c);
      if (nn == best.norm_squared && !lex_less(cn, best.coeffs)) return slack(best.norm_squared);
      if (cn != c) negate(v);
      best = {std::move(cn), std::move(v), nn};
      return slack(best.norm_squared);
    });
    return best;
  }

  ClosestVector closest(std::span<const Integer> target) const {
    if (target.size() != input_.dim()) throw DimensionMismatch("CVP target length differs from basis dimension");
    const BabaiResult start = babai_nearest_plane(reduced_, gso_, target);
    ClosestVector best{start.coeffs * transform_, start.vector, start.distance_squared};
    search(projections(target), slack(best.distance_squared), [&](const std::vector<long long>& x, double) -> double {
      IntVector v = combine_reduced(x);
      Integer dist = 0;
      for (std::size_t c = 0; c < v.size(); ++c) {
        const Integer diff = v[c] - target[c];
        add_mul(dist, diff, diff);
      }
      if (dist > best.distance_squared) return slack(best.distance_squared);
      IntVector c = input_coeffs(x);
      if (dist == best.distance_squared && !lex_less(c, best.coeffs)) return slack(best.distance_squared);
      best = {std::move(c), std::move(v), dist};
      return slack(best.distance_squared);
    });
    return best;
  }

  // Calls visit(coeffs, vector) for every nonzero lattice vector with squared norm
  // <= radius_squared, once per +/- pair. Stops early when visit returns false.
  // Returns the number of vectors visited.
  std::uint64_t for_each_within(const Integer& radius_squared, const Visitor& visit) const {
    std::uint64_t count = 0;
    search({}, slack(radius_squared), [&](const std::vector<long long>& x, double) -> double {
      IntVector v = combine_reduced(x);
      if (squared_norm(v) > radius_squared) return slack(radius_squared);
      ++count;
      if (!visit(input_coeffs(x), v)) return -1.0;
      return slack(radius_squared);
    });
    return count;
  }

 private:
  static void negate(IntVector& v) {
    for (auto& c : v) c = -c;
  }

  static double slack(const Integer& bound) { return bound.convert_to<double>() * (1.0 + 1e-9) + 1e-9; }

  IntVector to_int(const std::vector<long long>& x) const {
    IntVector out(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) out[i] = x[i];
    return out;
  }

  IntVector combine_reduced(const std::vector<long long>& x) const { return to_int(x) * reduced_.matrix(); }
  IntVector input_coeffs(const std::vector<long long>& x) const { return to_int(x) * transform_; }

  // Coordinates of the target's projection on each b*_i, in units of b*_i.
  std::vector<double> projections(std::span<const Integer> target) const {
    std::vector<Float128> y(n_);
    for (std::size_t i = 0; i < n_; ++i) {
      Integer tb = 0;
      auto bi = reduced_.row(i);
      for (std::size_t c = 0; c < target.size(); ++c) add_mul(tb, target[c], bi[c]);
      Float128 acc = to_float<Float128>(tb);
      for (std::size_t j = 0; j < i; ++j) acc -= gso_.mu(i, j) * y[j];
      y[i] = acc;
    }
    std::vector<double> out(n_);
    for (std::size_t i = 0; i < n_; ++i) out[i] = to_double(Float128(y[i] / gso_.norms[i]));
    return out;
  }

  template <class Leaf>
  void search(const std::vector<double>& center, double bound, Leaf&& on_leaf) const {
    detail::schnorr_euchner(mu_.data(), norms_.data(), n_, center, bound, std::forward<Leaf>(on_leaf));
  }

  LatticeBasis input_;
  std::size_t n_;
  LatticeBasis reduced_;
  IntMatrix transform_;
  GsoData<Float128> gso_;
  std::vector<double> mu_;
  std::vector<double> norms_;
};

inline ShortestVector svp_exact(const LatticeBasis& basis, const EnumerationOptions& options = {}) {
  return Enumerator(basis, options).shortest();
}

inline ClosestVector cvp_exact(const LatticeBasis& basis, std::span<const Integer> target,
                               const EnumerationOptions& options = {}) {
  return Enumerator(basis, options).closest(target);
}

}  // namespace ntrulab::lattice
