#include "ntrulab/analysis.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "support/oracles.hpp"

namespace {

using namespace ntrulab;
using namespace ntrulab::analysis;
using ntrulab::testing::solve_integral;

TEST(GaussianHeuristic, MatchesDirectEvaluation) {
  for (std::size_t n : {1u, 7u, 21u, 509u}) {
    for (long q : {32L, 2048L, 1L << 20}) {
      const auto gh = gaussian_heuristic_estimate(n, Integer(q));
      const long double oracle = std::sqrt(static_cast<long double>(q) * n / (std::numbers::pi_v<long double> * std::numbers::e_v<long double>));
      EXPECT_NEAR(to_double(gh.gh), static_cast<double>(oracle), 1e-9 * static_cast<double>(oracle));
      // adjusted / gh == 1 / sqrt(n)
      EXPECT_NEAR(to_double(Float200(gh.adjusted / gh.gh * sqrt(Float200(static_cast<double>(n))))), 1.0, 1e-40);
    }
  }
  EXPECT_NEAR(to_double(gaussian_heuristic_estimate(21, Integer(32)).gh), 8.87, 0.005);
  EXPECT_NEAR(to_double(gaussian_heuristic_estimate(5, Integer(2048)).adjusted), 15.5, 0.05);
  EXPECT_THROW(gaussian_heuristic_estimate(0, Integer(32)), ParameterError);
}

TEST(HeuristicInequality, Examples) {
  EXPECT_FALSE(check_heuristic_inequality(Integer(2048), 2.5));
  EXPECT_TRUE(check_heuristic_inequality(Integer(2048), 10.0));
  for (double y : {1.0, 10.0, 1e3, 1e6}) EXPECT_FALSE(check_heuristic_inequality(Integer(4), y));
  // The tuples the random-a experiments quote; 0.35 sqrt(32) is about 1.98.
  EXPECT_FALSE(check_heuristic_inequality(Integer(32), 1.5));
  EXPECT_FALSE(check_heuristic_inequality(Integer(32), 2.0));
  EXPECT_THROW(check_heuristic_inequality(Integer(1), 2.0), ParameterError);
  EXPECT_THROW(check_heuristic_inequality(Integer(32), 0.5), ParameterError);
}

TEST(HeuristicInequality, MonotoneInY) {
  for (long q : {2L, 5L, 32L, 128L, 2048L, 8192L, 1L << 20}) {
    bool seen_true = false;
    for (int i = 0; i <= 400; ++i) {
      const double y = 1.0 + 0.05 * i;
      const bool now = check_heuristic_inequality(Integer(q), y);
      if (seen_true) EXPECT_TRUE(now) << "q=" << q << " y=" << y;
      seen_true = seen_true || now;
    }
  }
}

TEST(HeuristicInequality, ConstantRoundingIsVisible) {
  // 1/sqrt(pi e) ~ 0.3422 < 0.35, so the literal form can hold where the exact one fails.
  int literal_only = 0;
  for (int i = 0; i <= 2000; ++i) {
    const double y = 1.0 + 0.005 * i;
    const bool literal = check_heuristic_inequality(Integer(2048), y);
    const bool exact = check_heuristic_inequality_exact_constant(Integer(2048), y);
    if (exact) EXPECT_TRUE(literal);
    if (literal && !exact) ++literal_only;
  }
  EXPECT_GT(literal_only, 0);
}

TEST(Assumption, ZeroPolynomialHasUnitVector) {
  const auto r = check_assumption_exact(ConvPoly(6), Integer(64), 2.0);
  ASSERT_TRUE(r.shortest.has_value());
  EXPECT_EQ(r.shortest->norm_squared, 1);
  EXPECT_EQ(r.holds, Tri::no);
}

TEST(Assumption, NotEvaluatedAboveCap) {
  Rng rng(1);
  const ConvPoly a = random_uniform_a(31, Integer(64), rng);
  EXPECT_EQ(check_assumption_exact(a, Integer(64), 2.0).holds, Tri::not_evaluated);
}

TEST(Assumption, RandomTupleLambdaIsVerifiedAndUnbeaten) {
  const std::size_t n = 21;
  const Integer q = 32;
  Rng rng(derive_seed(7, seed_stream::a_vector));
  const ConvPoly a = random_uniform_a(n, q, rng);
  for (const auto& c : a.coeffs()) {
    EXPECT_GE(c, 0);
    EXPECT_LT(c, q);
  }
  const auto r = check_assumption_exact(a, q, 1.5);
  ASSERT_TRUE(r.shortest.has_value());
  const IntMatrix m = attack::build_M_a(a, q).matrix();
  const auto coeffs = solve_integral(m, r.shortest->vector);
  ASSERT_TRUE(coeffs.has_value());
  EXPECT_EQ(r.shortest->norm_squared, squared_norm(r.shortest->vector));
  EXPECT_EQ(r.holds, tri(r.shortest->norm_squared.convert_to<double>() > std::pow(32.0, 2.0 / 1.5)));

  // 10^5 random small combinations in plain int64 arithmetic.
  std::vector<std::int64_t> rows(4 * n * n);
  for (std::size_t i = 0; i < 2 * n; ++i)
    for (std::size_t j = 0; j < 2 * n; ++j) rows[i * 2 * n + j] = m(i, j).convert_to<std::int64_t>();
  const std::int64_t best = r.shortest->norm_squared.convert_to<std::int64_t>();
  std::uniform_int_distribution<int> small(-1, 1), pick(0, static_cast<int>(2 * n - 1));
  for (int t = 0; t < 100000; ++t) {
    std::vector<std::int64_t> v(2 * n, 0);
    for (int s = 0; s < 4; ++s) {
      const int i = pick(rng), c = small(rng);
      for (std::size_t j = 0; j < 2 * n; ++j) v[j] += c * rows[static_cast<std::size_t>(i) * 2 * n + j];
    }
    std::int64_t nn = 0;
    for (auto x : v) nn += x * x;
    if (nn != 0) ASSERT_GE(nn, best);
  }
}

TEST(StructuredInequality, SmallExampleFails) {
  EXPECT_EQ(appendixA_left_side(11, Integer(32), 1.0), 124719);
  EXPECT_EQ(to_double(appendixA_right_side(11, Integer(32), 1.0)), 0.0);
  EXPECT_FALSE(check_appendixA_inequality(11, Integer(32), 1.0));
  EXPECT_THROW(check_appendixA_inequality(10, Integer(32), 2.0), ParameterError);
}

TEST(StructuredInequality, LargeModulusByDirectArithmetic) {
  const Integer q = pow(Integer(2), 40);
  // q^(1/8) = 32 exactly, so a_{N-1} = 11 * 32 + 1.
  EXPECT_EQ(appendixA_left_side(11, q, 8.0), 110 + 353 * 353);
  const long double qd = std::ldexp(1.0L, 40);
  const long double right = (qd - 32) * (qd - 32) / (11.0L * 32 * 32);
  EXPECT_NEAR(to_double(appendixA_right_side(11, q, 8.0)) / static_cast<double>(right), 1.0, 1e-15);
  EXPECT_TRUE(check_appendixA_inequality(11, q, 8.0));
}

TEST(StructuredInequality, RightSideGrowsWithY) {
  for (long q : {32L, 2048L, 1L << 20}) {
    Float200 prev = appendixA_right_side(11, Integer(q), 1.0);
    for (int i = 1; i <= 60; ++i) {
      const Float200 now = appendixA_right_side(11, Integer(q), 1.0 + 0.1 * i);
      EXPECT_GT(now, prev);
      prev = now;
    }
  }
}

TEST(StructuredInequality, LeftSideIsSquaredNormOfStructuredA) {
  Rng rng(3);
  for (std::size_t n : {5u, 11u, 31u, 101u}) {
    const Integer q = 2048;
    const ConvPoly a = attack::choose_a(attack::AStrategy::structured, n, q, 2.5, rng);
    EXPECT_EQ(appendixA_left_side(n, q, 2.5), a.squared_norm());
  }
}

TEST(RadiusBound, Examples) {
  EXPECT_FALSE(check_remark3_bound(509, 26, Integer(2048), 2.5));
  EXPECT_NEAR(remark3_y_bound(509, 26, Integer(2048)), 22.0 / (2.0 + std::log2(509.0 * 677.0)), 1e-12);
  EXPECT_NEAR(remark3_y_bound(509, 26, Integer(2048)), 1.08, 0.005);
  EXPECT_TRUE(check_remark3_bound(7, 0, pow(Integer(2), 20), 2.0));
  EXPECT_NEAR(remark3_y_bound(7, 0, pow(Integer(2), 20)), 40.0 / (2.0 + std::log2(7.0)), 1e-12);
  EXPECT_NEAR(remark3_y_bound(1, 0, Integer(2048)), 11.0, 1e-12);
  EXPECT_TRUE(check_remark3_bound(1, 0, Integer(2048), 10.9));
  EXPECT_FALSE(check_remark3_bound(1, 0, Integer(2048), 11.1));
}

TEST(RadiusBound, BothFormsAgreeOverGrid) {
  for (std::size_t n : {1u, 5u, 61u, 239u, 509u}) {
    for (std::int64_t R : {0, 1, 3, 9, 26, 100}) {
      for (long q : {32L, 256L, 2048L, 8192L, 1L << 20}) {
        for (int i = 0; i <= 40; ++i) {
          const double y = 1.0 + 0.25 * i;
          bool holds = false;
          ASSERT_NO_THROW(holds = check_remark3_bound(n, R, Integer(q), y));
          const long double lhs = 4.0L * n * (1.0L + static_cast<long double>(R) * R);
          const long double rhs = std::pow(static_cast<long double>(q), 2.0L / y);
          if (std::fabs(lhs - rhs) > 1e-9L * rhs) EXPECT_EQ(holds, lhs < rhs) << n << " " << R << " " << q << " " << y;
        }
      }
    }
  }
}

TEST(ShortVectors, TopSublatticeMembership) {
  const ConvPoly a{1, 2, -1, 3, 7};
  const ConvPoly u{2, 0, -1, 1, 0};
  IntVector v = u.coeffs();
  const ConvPoly ua = ring::star_multiply(u, a);
  for (const auto& c : ua.coeffs()) v.push_back(c);
  EXPECT_TRUE(in_top_sublattice(a, v));
  IntVector qv(10, Integer(0));
  qv[6] = 64;
  EXPECT_FALSE(in_top_sublattice(a, qv));
}

// All lattice vectors of norm <= q^(1/y) are (u, u*a mod q, centered); walk the
// ball of u in Z^N directly and classify each.
struct BallCount {
  std::uint64_t total = 0;
  std::uint64_t outside_top = 0;
};

BallCount short_vectors_by_ball(const std::vector<std::int64_t>& a, std::int64_t q, std::int64_t radius2) {
  const std::size_t n = a.size();
  BallCount out;
  std::vector<std::int64_t> u(n);
  const auto r = static_cast<std::int64_t>(std::sqrt(static_cast<double>(radius2)));
  std::function<void(std::size_t, std::int64_t)> rec = [&](std::size_t i, std::int64_t used) {
    if (i == n) {
      std::int64_t total = used;
      bool top = true;
      for (std::size_t j = 0; j < n && total <= radius2; ++j) {
        std::int64_t raw = 0;
        for (std::size_t k = 0; k < n; ++k) raw += u[k] * a[(j + n - k) % n];
        std::int64_t c = ((raw % q) + q) % q;
        if (2 * c > q) c -= q;
        if (c != raw) top = false;
        total += c * c;
      }
      if (total == 0 || total > radius2) return;
      ++out.total;
      if (!top) ++out.outside_top;
      return;
    }
    for (std::int64_t x = -r; x <= r; ++x)
      if (used + x * x <= radius2) {
        u[i] = x;
        rec(i + 1, used + x * x);
      }
  };
  rec(0, 0);
  return out;
}

TEST(ShortVectors, ExactCheckAgreesWithBallWalk) {
  const Integer q = pow(Integer(2), 20);
  const double y = 5.0;  // q^(1/y) = 16
  const std::vector<std::int64_t> raw{1, 2, -1, 3, 100};
  const ConvPoly a(IntVector(raw.begin(), raw.end()));
  Rng rng(4);
  const ShortVectorCheck r = appendixA_shortvector_check(a, q, y, 0, rng);
  EXPECT_TRUE(r.precondition);
  EXPECT_TRUE(r.exact);
  EXPECT_EQ(r.holds, Tri::yes);
  const BallCount oracle = short_vectors_by_ball(raw, 1 << 20, 256);
  EXPECT_EQ(oracle.outside_top, 0u);
  EXPECT_EQ(2 * r.vectors_checked, oracle.total);
}

TEST(ShortVectors, SampledVariant) {
  const Integer q = pow(Integer(2), 20);
  const ConvPoly a{1, 2, -1, 3, 100};
  Rng rng(5);
  const ShortVectorCheck r = appendixA_shortvector_check(a, q, 5.0, 2000, rng, lattice::kDefaultEnumerationCap, true);
  EXPECT_FALSE(r.exact);
  EXPECT_EQ(r.holds, Tri::yes);
  EXPECT_EQ(r.vectors_checked, 2000u);
  // A counterexample is found when the precondition is ignored: with a large a,
  // centered vectors of small norm have a wrapped second half.
  Rng rng2(5);
  const ConvPoly big{1000, 30000, 70000, 123456, 400000};
  bool wrapped = false;
  for (int t = 0; t < 200 && !wrapped; ++t) {
    IntVector v{0, 0, 0, 0, 0};
    v[static_cast<std::size_t>(t % 5)] = 1 + t / 5;
    const ConvPoly head(IntVector(v.begin(), v.end()));
    const ConvPoly prod = ring::star_multiply(head, big);
    for (std::size_t i = 0; i < 5; ++i) {
      Integer c = prod[i] % q;
      if (c > q / 2) c -= q;
      v.push_back(c);
    }
    wrapped = !in_top_sublattice(big, v);
  }
  EXPECT_TRUE(wrapped);
}

TEST(ShortVectors, PreconditionFailureSkips) {
  Rng rng(6);
  const ConvPoly a = attack::choose_a(attack::AStrategy::structured, 11, Integer(32), 1.0, rng);
  const ShortVectorCheck r = appendixA_shortvector_check(a, Integer(32), 1.0, 100, rng);
  EXPECT_FALSE(r.precondition);
  EXPECT_EQ(r.holds, Tri::not_evaluated);
  EXPECT_EQ(r.vectors_checked, 0u);
}

TEST(ShortVectors, ZeroPolynomialHoldsTrivially) {
  // Every short vector has zero second half, which is 0 * u.
  Rng rng(7);
  const ShortVectorCheck r = appendixA_shortvector_check(ConvPoly(4), Integer(256), 2.0, 0, rng);
  EXPECT_TRUE(r.precondition);
  EXPECT_EQ(r.holds, Tri::yes);
  EXPECT_GT(r.vectors_checked, 0u);
}

TEST(ParamCheck, LargeExampleReport) {
  const ParamCheckReport rep = check_params(509, Integer(2048), 2.5, 26, ConvPoly());
  EXPECT_EQ(rep.heuristic_ok, Tri::no);
  EXPECT_EQ(rep.remark3_ok, Tri::no);
  EXPECT_EQ(rep.assumption_ok, Tri::not_evaluated);
  EXPECT_FALSE(rep.lambda1.has_value());
  EXPECT_FALSE(rep.heuristic_disagrees_with_exact);
  EXPECT_NEAR(rep.q_root, std::pow(2048.0, 0.4), 1e-9);
  EXPECT_NE(rep.appendixA_ok, Tri::not_evaluated);
}

TEST(ParamCheck, AssumptionNotEvaluatedAboveCapEvenWithA) {
  Rng rng(8);
  const ConvPoly a = random_uniform_a(61, Integer(256), rng);
  const ParamCheckReport rep = check_params(61, Integer(256), 2.3, 0, a);
  EXPECT_EQ(rep.assumption_ok, Tri::not_evaluated);
  EXPECT_EQ(rep.appendixA_ok == Tri::not_evaluated, false);
}

TEST(ParamCheck, DisagreementFlagFollowsBooleans) {
  Rng rng(derive_seed(9, seed_stream::a_vector));
  const ConvPoly a = random_uniform_a(11, Integer(32), rng);
  const ParamCheckReport rep = check_params(11, Integer(32), 1.5, 0, a);
  ASSERT_TRUE(rep.lambda1.has_value());
  ASSERT_NE(rep.assumption_ok, Tri::not_evaluated);
  EXPECT_EQ(rep.heuristic_ok, Tri::no);
  EXPECT_EQ(rep.heuristic_disagrees_with_exact, rep.assumption_ok == Tri::yes);
  EXPECT_EQ(rep.appendixA_ok, tri(check_appendixA_inequality(11, Integer(32), 1.5)));
  EXPECT_THROW(check_params(11, Integer(32), 1.5, 0, ConvPoly(7)), DimensionMismatch);
  EXPECT_THROW(check_params(11, Integer(32), 0.5, 0, a), ParameterError);
}

TEST(Tri, Names) {
  EXPECT_EQ(to_string(Tri::yes), "true");
  EXPECT_EQ(to_string(Tri::no), "false");
  EXPECT_EQ(to_string(Tri::not_evaluated), "not-evaluated");
}

}  // namespace
