#include <gtest/gtest.h>

#include <algorithm>

#include "charmom/ensembles.hpp"
#include "charmom/montecarlo.hpp"

using namespace charmom;

namespace {
MCOptions small() {
  MCOptions o;
  o.samples = 100000;
  o.thin = 4;
  o.burn_in = 5000;
  return o;
}
}  // namespace

TEST(SplitMix, UniformRangeAndMoments) {
  SplitMix r(7);
  double s = 0, s2 = 0;
  const int N = 200000;
  for (int i = 0; i < N; ++i) {
    double u = r.uniform();
    ASSERT_GE(u, 0);
    ASSERT_LT(u, 1);
    s += u;
    s2 += u * u;
  }
  EXPECT_NEAR(s / N, 0.5, 0.005);
  EXPECT_NEAR(s2 / N, 1.0 / 3, 0.005);
  EXPECT_EQ(r.counter(), static_cast<std::uint64_t>(N));
}

TEST(Chain, FlatWeightIsUniform) {
  ChainConfig cfg;
  cfg.n = 1;
  cfg.weight = [](const std::vector<double>&) { return 1.0; };
  cfg.samples = 20000;
  cfg.thin = 20;
  cfg.burn_in = 2000;
  auto ch = sample_chain(cfg);
  std::vector<double> v;
  for (auto& s : ch.samples) v.push_back(s[0] / (2 * M_PI));
  std::sort(v.begin(), v.end());
  double ks = 0;
  for (std::size_t i = 0; i < v.size(); ++i)
    ks = std::max({ks, std::abs(v[i] - double(i) / v.size()), std::abs(v[i] - double(i + 1) / v.size())});
  // 1.63/sqrt(N) is the 1% point for independent draws; thinning keeps us close to that
  EXPECT_LT(ks, 3 * 1.63 / std::sqrt(double(v.size())));
  // nothing is ever rejected, so the step saturates
  EXPECT_EQ(ch.acceptance, 1);
  EXPECT_NEAR(ch.sigma, M_PI, 1e-12);
}

TEST(Chain, AdaptsTowardTargetAcceptance) {
  auto ch = ensemble_chain(make_ensemble("CBETA(4)"), 3, small());
  EXPECT_GT(ch.acceptance, 0.15);
  EXPECT_LT(ch.acceptance, 0.5);
}

TEST(Chain, Reproducible) {
  auto e = make_ensemble("CUE");
  MCOptions o = small();
  o.samples = 1000;
  auto a = ensemble_chain(e, 2, o), b = ensemble_chain(e, 2, o);
  EXPECT_EQ(a.samples, b.samples);
  o.seed = 2;
  auto c = ensemble_chain(e, 2, o);
  EXPECT_NE(a.samples, c.samples);
}

TEST(Chain, RejectsBadInput) {
  ChainConfig cfg;
  cfg.weight = [](const std::vector<double>&) { return 0.0; };
  EXPECT_THROW(sample_chain(cfg), std::runtime_error);
  cfg.weight = nullptr;
  EXPECT_THROW(sample_chain(cfg), std::invalid_argument);
  EXPECT_THROW(estimate_values(std::vector<double>(5, 1.0)), std::invalid_argument);
}

TEST(Estimate, ConstantStatisticHasZeroError) {
  auto e = estimate_values(std::vector<double>(1000, 2.5));
  EXPECT_DOUBLE_EQ(e.mean, 2.5);
  EXPECT_EQ(e.se, 0);
}

TEST(MonteCarlo, CUESecondMoment) {
  auto e = make_ensemble("CUE");
  Statistic f = typeA_statistic(1, 1, {Q(1), Q(1)});
  auto r = oracle_average(e, 2, f, OracleMethod::montecarlo, small());
  EXPECT_LE(std::abs(r.value.value() - 3), 3 * r.value.error()) << r.value.value() << " +- " << r.value.error();
}

TEST(MonteCarlo, SymplecticFirstMoment) {
  auto e = make_ensemble("C");
  auto r = oracle_average(e, 1, bc_statistic(e, {Q(1)}), OracleMethod::montecarlo, small());
  EXPECT_LE(std::abs(r.value.value() - 2), 3 * r.value.error()) << r.value.value() << " +- " << r.value.error();
}
