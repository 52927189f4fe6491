#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <utility>

#include "ntrulab/error.hpp"
#include "ntrulab/matrix.hpp"

namespace ntrulab::lattice {

// Integer lattice basis, one basis vector per row.
class LatticeBasis {
 public:
  LatticeBasis() = default;
  explicit LatticeBasis(IntMatrix rows) : rows_(std::move(rows)) {}

  static LatticeBasis from_rows(const std::vector<IntVector>& rows) {
    return LatticeBasis(IntMatrix::from_rows(rows));
  }

  std::size_t rank() const { return rows_.rows(); }
  std::size_t dim() const { return rows_.cols(); }
  std::span<const Integer> row(std::size_t i) const { return rows_.row(i); }
  IntVector row_vector(std::size_t i) const { return rows_.row_vector(i); }
  const IntMatrix& matrix() const { return rows_; }
  IntMatrix& matrix() { return rows_; }

  // Lattice vector sum_i coeffs[i] * b_i.
  IntVector combine(const IntVector& coeffs) const {
    if (coeffs.size() != rank()) throw DimensionMismatch("coefficient count differs from rank");
    return coeffs * rows_;
  }

  friend bool operator==(const LatticeBasis&, const LatticeBasis&) = default;

 private:
  IntMatrix rows_;
};

enum class PrecisionMode { exact_rational, high_precision_float };

struct ReductionParams {
  double delta = 0.99;
  PrecisionMode mode = PrecisionMode::high_precision_float;
  unsigned mantissa_bits = 200;
  // Float mode only: finish with an exact integral pass so that size reduction and
  // the Lovasz condition hold exactly rather than up to rounding.
  bool certify = true;

  void validate() const {
    if (!(delta > 0.25 && delta < 1.0))
      throw ParameterError("LLL delta must lie in (1/4, 1), got " + std::to_string(delta));
    if (mode == PrecisionMode::high_precision_float && mantissa_bits < 24)
      throw ParameterError("mantissa precision below 24 bits");
  }
};

}  // namespace ntrulab::lattice
