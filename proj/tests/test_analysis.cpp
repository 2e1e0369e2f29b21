#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "mcoac/analysis.hpp"
#include "mcoac/errors.hpp"
#include "mcoac/rng.hpp"
#include "oracles.hpp"

using namespace mcoac;

TEST(ExpDiff, PdfIntegratesToOne) {
  const ExpDiffDist d{2.0, 0.7};
  // Trapezoid over [-40, 60] with a fine step; tails beyond are < 1e-12.
  const double h = 1e-4;
  double total = 0.0;
  for (double x = -40.0; x < 60.0; x += h) total += 0.5 * h * (expdiff_pdf(x, d) + expdiff_pdf(x + h, d));
  EXPECT_NEAR(total, 1.0, 1e-6);
}

TEST(ExpDiff, PositiveProbability) {
  EXPECT_DOUBLE_EQ(expdiff_positive_prob({1.5, 1.5}), 0.5);
  EXPECT_DOUBLE_EQ(expdiff_positive_prob({2.0, 1.0}), 2.0 / 3.0);
  const auto mc = mc_expdiff_positive({2.0, 1.0}, 1000000, 17);
  EXPECT_NEAR(mc.mean, 2.0 / 3.0, 3.0 * mc.std_error);
}

TEST(ExpDiff, InvalidMeansRejected) { EXPECT_THROW(expdiff_positive_prob({0.0, 1.0}), InvalidArgument); }

TEST(EsSuccess, Corners) {
  EXPECT_DOUBLE_EQ(es_success_prob(1.0, {6, 3, 2.0, 0.0, 0.0}), 1.0);
  for (double s2 : {0.0, 0.01, 0.3}) EXPECT_DOUBLE_EQ(es_success_prob(0.5, {6, 3, 2.0, s2, 0.0}), 0.5);
}

TEST(EsSuccess, ClosedFormEqualsBinomialSum) {
  for (int k : {1, 3, 6, 11}) {
    for (double p : {0.1, 0.5, 0.77, 1.0}) {
      for (double s2 : {0.0, 0.01, 0.1}) {
        const ConnectivityParams cp{k, 1, 2.0, s2, 0.0};
        const double oracle = oracle::es_success(p, k, 2.0, s2);
        EXPECT_NEAR(es_success_prob(p, cp), oracle, 1e-12);
        EXPECT_NEAR(es_success_prob_sum(p, cp, Support::kComplete), oracle, 1e-12);
      }
    }
  }
}

TEST(EsSuccess, NestedMonteCarlo) {
  const ConnectivityParams cp{6, 1, 2.0, 0.01, 0.0};
  const auto mc = mc_es_success(0.9, cp, 1000000, 5);
  EXPECT_NEAR(mc.mean, es_success_prob(0.9, cp), 1e-2);
}

TEST(EdError, Corners) {
  const ConnectivityParams cp{6, 3, 2.0, 0.01, 0.02};
  EXPECT_DOUBLE_EQ(ed_error_prob_sum(1.0, cp), 0.02 / (2.0 * 3 + 0.04));
  EXPECT_DOUBLE_EQ(ed_error_prob_sum(1.0, {6, 3, 2.0, 0.01, 0.0}), 0.0);
}

TEST(EdError, MatchesOracleSums) {
  for (int s : {1, 2, 3, 5}) {
    for (double p : {0.3, 0.7, 0.95}) {
      const ConnectivityParams cp{6, s, 2.0, 0.01, 0.01};
      EXPECT_NEAR(ed_error_prob_sum(p, cp, Support::kAsPrinted), oracle::ed_error(p, s, 2.0, 0.01, 1), 1e-12);
      EXPECT_NEAR(ed_error_prob_sum(p, cp, Support::kComplete), oracle::ed_error(p, s, 2.0, 0.01, 0), 1e-12);
    }
  }
}

TEST(EdError, SupportMatchedMonteCarlo) {
  const ConnectivityParams cp{6, 3, 2.0, 0.01, 0.01};
  const auto mc = mc_ed_error(0.95, cp, 1000000, 9);
  EXPECT_NEAR(mc.mean, ed_error_prob_sum(0.95, cp), 1e-2);
}

TEST(Bound, NoiselessInfiniteSnrVanishes) {
  const ConnectivityParams cp{6, 3, 2.0, 0.0, 0.0};
  EXPECT_NEAR(ed_error_prob_bound(cp, 1e12), 0.0, 1e-11);
}

TEST(Bound, DominatesAsPrintedSumOnGrid) {
  for (int k : {3, 6}) {
    for (int s : {1, 3}) {
      for (double s2 : {0.0, 0.01, 0.1}) {
        for (double snr : {0.5, 1.0, 3.0, 10.0, 100.0}) {
          const ConnectivityParams cp{k, s, 2.0, s2, s2};
          const double p_y = es_success_prob(correct_sign_prob(snr), cp);
          EXPECT_GE(ed_error_prob_bound(cp, snr) + 1e-12, ed_error_prob_sum(p_y, cp));
        }
      }
    }
  }
}

TEST(Bound, HandEvaluatedInstance) {
  // E_s = 2, K_c = 6, S_c = 3, both variances 0.01, snr = 10:
  // p_i = 1 - sqrt2/30, p_y = (12 p_i + 0.01)/12.02, bound = (0.01 + 6 (1 - p_y)) / 6.02.
  const ConnectivityParams cp{6, 3, 2.0, 0.01, 0.01};
  const double p_i = 1.0 - std::sqrt(2.0) / 30.0;
  const double p_y = (12.0 * p_i + 0.01) / 12.02;
  const double hand = (0.01 + 6.0 * (1.0 - p_y)) / 6.02;
  EXPECT_NEAR(ed_error_prob_bound(cp, 10.0), hand, 1e-12);
  EXPECT_NEAR(ed_error_prob_bound(cp, 10.0), oracle::ed_error_bound(6, 3, 2.0, 0.01, 0.01, 10.0), 1e-12);
}

TEST(Snr, TwoConventions) {
  EXPECT_DOUBLE_EQ(gradient_snr_as_printed(0.5, 0.5, 16.0), 0.5 / (0.25 / 4.0));
  EXPECT_DOUBLE_EQ(gradient_snr_variance_bound(0.5, 0.5, 16.0), 0.5 / (0.5 / 4.0));
}

TEST(AB, NoiselessCancels) {
  const auto ab = compute_ab({6, 3, 2.0, 0.0, 0.0});
  EXPECT_EQ(ab.a, 0.0);
  EXPECT_EQ(ab.b, 1.0);
}

TEST(AB, FactoredFormAgrees) {
  const auto ab = compute_ab({6, 3, 2.0, 0.01, 0.01});
  const auto o = oracle::ab(6, 3, 2.0, 0.01, 0.01);
  EXPECT_NEAR(ab.b, o.b, 1e-12);
  EXPECT_NEAR(ab.a, o.a, 1e-12);
  for (int k = 1; k < 10; ++k)
    for (double s2 : {0.0, 0.5, 3.0}) EXPECT_GT(compute_ab({k, 2, 0.7, s2, s2}).b, 0.0);
}

TEST(ConvergenceBound, OnlyGapTerm) {
  const auto r = convergence_bound({1.0, 0.0, 0.0, 1, 100, 10}, {6, 3, 2.0, 0.0, 0.0});
  EXPECT_DOUBLE_EQ(r.value, 0.01);
  EXPECT_TRUE(r.warnings.empty());
}

TEST(ConvergenceBound, SqrtTScaling) {
  const ConnectivityParams cp{6, 3, 2.0, 0.01, 0.01};
  const auto a = convergence_bound({2.0, 3.0, 4.0, 2, 100, 12}, cp);
  const auto b = convergence_bound({2.0, 3.0, 4.0, 2, 200, 12}, cp);
  EXPECT_NEAR(b.value / a.value, 1.0 / std::sqrt(2.0), 1e-12);
}

TEST(ConvergenceBound, PaperScaleInstance) {
  const double s2 = std::pow(10.0, -2.0);
  const ConnectivityParams cp{6, 3, 2.0, s2, s2};
  const BoundInputs in{1.0, 1.0, 1.0, 1, 200, 120};
  const auto r = convergence_bound(in, cp);
  const auto o = oracle::ab(6, 3, 2.0, s2, s2);
  EXPECT_NEAR(r.value, oracle::convergence_bound(1.0, 1.0, 1.0, 1, 200, 120, o), 1e-12);
}

TEST(ConvergenceBound, WarnsWhenANegative) {
  // Noisy ESs with low symbol energy push B above 1/(1 + s2_ed).
  const auto r = convergence_bound({1.0, 1.0, 1.0, 1, 10, 1}, {1, 3, 0.1, 2.0, 0.01});
  EXPECT_LT(r.a, 0.0);
  EXPECT_FALSE(r.warnings.empty());
}

TEST(MonteCarlo, NoiselessPerfectVotersNeverErr) {
  const auto mc = mc_two_hop_error({5, 3, 2.0, 0.0, 0.0}, 1.0, 200000, 3);
  EXPECT_EQ(mc.hits, 0u);
}

TEST(MonteCarlo, TwoHopBelowBound) {
  for (double p_i : {0.6, 0.8, 0.95}) {
    const ConnectivityParams cp{6, 3, 2.0, 0.01, 0.01};
    const double snr = std::numbers::sqrt2 / (3.0 * (1.0 - p_i));
    const auto mc = mc_two_hop_error(cp, p_i, 400000, 21);
    EXPECT_LE(mc.mean, ed_error_prob_bound(cp, snr) + 3.0 * mc.std_error);
  }
}

TEST(MonteCarlo, SameSeedSameFrequency) {
  const ConnectivityParams cp{3, 3, 2.0, 0.1, 0.1};
  EXPECT_EQ(mc_two_hop_error(cp, 0.7, 100000, 8).hits, mc_two_hop_error(cp, 0.7, 100000, 8).hits);
  EXPECT_NE(mc_two_hop_error(cp, 0.7, 100000, 8).hits, mc_two_hop_error(cp, 0.7, 100000, 9).hits);
}
