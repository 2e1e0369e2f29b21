#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <vector>

#include "mcoac/channel.hpp"
#include "mcoac/errors.hpp"
#include "stats.hpp"

using namespace mcoac;

TEST(Fading, EpaTableIsNormalised) {
  const auto epa = FadingModel::epa();
  ASSERT_EQ(epa.taps.size(), 7u);
  double total = 0.0;
  for (const auto& t : epa.taps) total += t.mean_power;
  EXPECT_NEAR(total, 1.0, 1e-12);
  EXPECT_DOUBLE_EQ(epa.taps.back().delay_s, 410e-9);
  EXPECT_NO_THROW(epa.validate());
}

TEST(Fading, BadProfileRejected) {
  auto model = FadingModel::epa();
  model.taps[0].mean_power = 5.0;
  EXPECT_THROW(model.validate(), InvalidArgument);
}

TEST(Fading, SingleTapIsFlatAcrossSubcarriers) {
  FadingModel model = FadingModel::epa();
  model.taps = {{0.0, 1.0}};
  const auto ch = make_channel(model, 5, 0, Purpose::kChannelUl);
  for (std::size_t n = 0; n < 3; ++n) {
    const cplx first = ch.at(4, 0, n);
    for (std::size_t m = 1; m < 64; ++m) EXPECT_EQ(ch.at(4, m, n), first);
  }
}

TEST(Fading, PerRoundHoldsAcrossSymbols) {
  const auto ch = make_channel(FadingModel::epa(FadingGranularity::kPerRound), 5, 0, Purpose::kChannelUl);
  EXPECT_EQ(ch.at(1, 7, 0), ch.at(1, 7, 9));
  const auto sym = make_channel(FadingModel::epa(FadingGranularity::kPerSymbol), 5, 0, Purpose::kChannelUl);
  EXPECT_NE(sym.at(1, 7, 0), sym.at(1, 7, 9));
}

TEST(Fading, EpaUnitMeanPower) {
  const auto model = FadingModel::epa();
  const auto ch = make_channel(model, 11, 0, Purpose::kChannelUl);
  double sum = 0.0;
  const std::size_t draws = 1000000;
  for (std::size_t i = 0; i < draws; ++i) sum += std::norm(ch.at(i / 1000, 37, i % 1000));
  EXPECT_NEAR(sum / draws, 1.0, 0.01);
}

TEST(Fading, FlatIidResourcesUncorrelated) {
  const auto ch = make_channel(FadingModel::flat_iid(), 3, 0, Purpose::kChannelDl);
  const std::size_t draws = 1000000;
  cplx cross{0.0, 0.0};
  double p0 = 0.0;
  double p1 = 0.0;
  for (std::size_t l = 0; l < draws; ++l) {
    const cplx a = ch.at(l, 0, 0);
    const cplx b = ch.at(l, 1, 0);
    cross += a * std::conj(b);
    p0 += std::norm(a);
    p1 += std::norm(b);
  }
  EXPECT_LT(std::abs(cross) / std::sqrt(p0 * p1), 0.01);
  EXPECT_NEAR(p0 / draws, 1.0, 0.01);
}

TEST(Fading, UnitModelIsOne) {
  const auto ch = make_channel(FadingModel::unit(), 3, 0, Purpose::kChannelUl);
  EXPECT_EQ(ch.at(9, 5, 2), cplx(1.0, 0.0));
}

TEST(Fading, DenseDrawMatchesPointwise) {
  const std::vector<std::uint64_t> links{0, 5, 9};
  const std::vector<ResourceElement> res{{0, 0}, {3, 1}, {1199, 4}};
  const auto model = FadingModel::epa();
  const auto dense = draw_channel(model, links, res, 21, 2, Purpose::kChannelDl);
  const auto ch = make_channel(model, 21, 2, Purpose::kChannelDl);
  for (std::size_t l = 0; l < links.size(); ++l)
    for (std::size_t r = 0; r < res.size(); ++r) EXPECT_EQ(dense(l, r), ch.at(links[l], res[r].m, res[r].n));
}

TEST(Noise, ZeroVarianceIsZero) {
  for (const auto& w : draw_noise(0.0, 1000, 4)) EXPECT_EQ(w, cplx(0.0, 0.0));
}

TEST(Noise, NegativeVarianceRejected) { EXPECT_THROW(draw_noise(-1.0, 10, 4), InvalidArgument); }

TEST(Noise, SampleVariance) {
  const auto w = draw_noise(0.01, 1000000, 8);
  std::vector<double> power;
  power.reserve(w.size());
  for (const auto& v : w) power.push_back(std::norm(v));
  const auto est = stats::mean_se(power);
  EXPECT_NEAR(est.mean, 0.01, 3.0 * est.se);
}

TEST(Noise, PowerIsExponential) {
  const auto w = draw_noise(0.01, 100000, 12);
  std::vector<double> power;
  for (const auto& v : w) power.push_back(std::norm(v));
  const double d = stats::ks_statistic(power, [](double x) { return 1.0 - std::exp(-x / 0.01); });
  EXPECT_GT(stats::ks_pvalue(d, power.size()), 0.01);
}
