#include <gtest/gtest.h>

#include <random>

#include "biopt/gen.hpp"
#include "biopt/hepopta.hpp"
#include "biopt/htpopta.hpp"
#include "biopt/metrics.hpp"
#include "biopt/oracle.hpp"
#include "test_util.hpp"

using namespace biopt;
using biopt::testing::make_profile;
using biopt::testing::worked4;

TEST(Metrics, PerfImprovement) {
  EXPECT_DOUBLE_EQ(metrics::perf_improvement(3, 2), 50.0);
  EXPECT_DOUBLE_EQ(metrics::perf_improvement(2, 2), 0.0);
  EXPECT_THROW(metrics::perf_improvement(2, 0), std::invalid_argument);
}

TEST(Metrics, EnergySaving) {
  // The one in-text arithmetic check: 604 J vs 167 J rounds to ~260%.
  EXPECT_NEAR(metrics::energy_saving(604, 167), 261.7, 0.1);
  EXPECT_DOUBLE_EQ(metrics::energy_saving(7, 7), 0.0);
}

TEST(Metrics, BaselineComparisonOnWorkedExample) {
  ProfileSet set = worked4();
  auto lb = oracle::load_balanced(set, 4);
  auto front = solve_hepopt(set, 4);
  ASSERT_TRUE(lb && front);
  const double t_opt = front->back().time;
  const double e_opt = front->front().energy;
  // The balanced baseline happens to be the makespan optimum here.
  EXPECT_DOUBLE_EQ(metrics::perf_improvement(lb->time, t_opt), 0.0);
  EXPECT_DOUBLE_EQ(metrics::energy_saving(lb->energy, e_opt), 150.0);
}

TEST(Metrics, ScaleInvariance) {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 100; ++i) {
    const double a = 1 + double(rng() % 1000) / 7.0;
    const double b = 1 + double(rng() % 1000) / 11.0;
    const double k = 0.001 + double(rng() % 10000) / 13.0;
    EXPECT_TRUE(nearly_equal(metrics::perf_improvement(k * a, k * b),
                             metrics::perf_improvement(a, b), 1e-9));
    EXPECT_TRUE(nearly_equal(metrics::energy_saving(k * a, k * b), metrics::energy_saving(a, b),
                             1e-9));
  }
}

TEST(Metrics, TradeoffBandOnWorkedExample) {
  ProfileSet set = worked4();
  auto front = solve_hepopt(set, 4);
  ASSERT_TRUE(front.has_value());

  auto r5 = metrics::tradeoff_within_band(*front, 0.05);
  EXPECT_DOUBLE_EQ(r5.perf_gain_percent, 0.0);
  EXPECT_DOUBLE_EQ(r5.energy_saving_percent, 0.0);

  auto r0 = metrics::tradeoff_within_band(*front, 0.0);
  EXPECT_DOUBLE_EQ(r0.perf_gain_percent, 0.0);
  EXPECT_DOUBLE_EQ(r0.energy_saving_percent, 0.0);

  // band 1.5: the energy threshold 2.5*2=5 admits the whole front on the perf
  // side ((6-2)/2*100), while the time threshold 2.5*2=5 admits only the two
  // fastest solutions on the energy side ((5-4)/4*100).
  auto r150 = metrics::tradeoff_within_band(*front, 1.50);
  EXPECT_DOUBLE_EQ(r150.perf_gain_percent, 200.0);
  EXPECT_DOUBLE_EQ(r150.energy_saving_percent, 25.0);

  // band 2.0 admits the slowest solution too: (5-2)/2*100 on the energy side.
  auto r200 = metrics::tradeoff_within_band(*front, 2.0);
  EXPECT_DOUBLE_EQ(r200.energy_saving_percent, 150.0);
}

TEST(Metrics, TradeoffSinglePointFrontIsZero) {
  ParetoFront single{{3.0, 2.0, {1, 0}}};
  auto r = metrics::tradeoff_within_band(single, 0.5);
  EXPECT_DOUBLE_EQ(r.perf_gain_percent, 0.0);
  EXPECT_DOUBLE_EQ(r.energy_saving_percent, 0.0);
}

TEST(Metrics, TradeoffMonotoneInBand) {
  std::mt19937_64 seeds(11);
  for (int trial = 0; trial < 20; ++trial) {
    ProfileSet set = gen::synthetic(gen::Shape::jagged, 3, 6, seeds());
    const std::uint64_t n = 3 + seeds() % 10;
    auto front = solve_hepopt(set, n);
    if (!front) continue;
    double prev_perf = -1, prev_energy = -1;
    for (double band : {0.0, 0.05, 0.1, 0.25, 0.5, 1.0, 2.0}) {
      auto r = metrics::tradeoff_within_band(*front, band);
      EXPECT_GE(r.perf_gain_percent, prev_perf);
      EXPECT_GE(r.energy_saving_percent, prev_energy);
      EXPECT_GE(r.perf_gain_percent, 0.0);
      EXPECT_GE(r.energy_saving_percent, 0.0);
      prev_perf = r.perf_gain_percent;
      prev_energy = r.energy_saving_percent;
    }
  }
}

TEST(Metrics, TotalSavingOverDynamicOptimal) {
  ProfileSet set = worked4();
  auto ep = solve_hepopt(set, 4);
  auto tp = solve_htpopt(set, 4, 1.0);
  ASSERT_TRUE(ep && tp);
  EXPECT_NEAR(metrics::total_energy_saving_over_dynamic_optimal(*ep, *tp, 1.0), 14.3, 0.1);

  auto tp0 = solve_htpopt(set, 4, 0.0);
  EXPECT_DOUBLE_EQ(metrics::total_energy_saving_over_dynamic_optimal(*ep, *tp0, 0.0), 0.0);
}

TEST(Metrics, TotalSavingNonNegativeOnRandomInstances) {
  std::mt19937_64 seeds(77);
  for (int trial = 0; trial < 25; ++trial) {
    ProfileSet set = gen::synthetic(gen::Shape::jagged, 3, 5, seeds());
    const std::uint64_t n = 2 + seeds() % 8;
    const double base = double(seeds() % 50) / 7.0;
    auto ep = solve_hepopt(set, n);
    if (!ep) continue;
    auto tp = solve_htpopt(set, n, base);
    ASSERT_TRUE(tp.has_value());
    EXPECT_GE(metrics::total_energy_saving_over_dynamic_optimal(*ep, *tp, base), -1e-12);
  }
}

TEST(Metrics, AdditiveCheckExactSum) {
  auto c1 = make_profile("c1", {{1, 1, 2}, {2, 1, 3}});
  auto c2 = make_profile("c2", {{1, 1, 5}, {2, 1, 7}});
  auto parallel = make_profile("par", {{1, 1, 7}, {2, 1, 10}});
  auto rep = metrics::additive_check({c1, c2}, parallel);
  EXPECT_DOUBLE_EQ(rep.min_percent, 0.0);
  EXPECT_DOUBLE_EQ(rep.max_percent, 0.0);
  EXPECT_DOUBLE_EQ(rep.mean_percent, 0.0);
}

TEST(Metrics, AdditiveCheckUniformOvershoot) {
  auto c1 = make_profile("c1", {{1, 1, 2}, {2, 1, 3}});
  auto c2 = make_profile("c2", {{1, 1, 5}, {2, 1, 7}});
  auto parallel = make_profile("par", {{1, 1, 7.7}, {2, 1, 11}});
  auto rep = metrics::additive_check({c1, c2}, parallel);
  EXPECT_NEAR(rep.mean_percent, 10.0, 1e-9);
  EXPECT_NEAR(rep.min_percent, 10.0, 1e-9);
  EXPECT_NEAR(rep.max_percent, 10.0, 1e-9);
}

TEST(Metrics, AdditiveCheckSeededNoiseWithinBounds) {
  // Three components plus a parallel profile 1 + noise times the sum, noise in
  // [0, 0.2]; the summary must sit inside the noise band and match the mean
  // recomputed from the same seed.
  std::mt19937_64 rng(321);
  std::vector<DiscreteProfile> comps;
  for (int c = 0; c < 3; ++c) {
    std::vector<ProfilePoint> pts;
    for (std::uint64_t s = 1; s <= 12; ++s)
      pts.push_back({s, 1.0, 1.0 + double(rng() % 500) / 100.0});
    comps.emplace_back("c" + std::to_string(c), std::move(pts));
  }
  std::vector<ProfilePoint> par;
  std::mt19937_64 rng2(654);
  auto noise2 = [&rng2] { return double(rng2() % 1000) / 5000.0; };
  std::vector<double> expected_pct;
  for (std::uint64_t s = 1; s <= 12; ++s) {
    double combined = 0;
    for (const auto& c : comps) combined += *c.lookup_energy(s);
    const double f = noise2();
    par.push_back({s, 1.0, combined * (1.0 + f)});
    expected_pct.push_back(f * 100.0);
  }
  auto rep = metrics::additive_check(comps, DiscreteProfile("par", par));
  ASSERT_EQ(rep.points.size(), expected_pct.size());
  double mean = 0;
  for (std::size_t i = 0; i < expected_pct.size(); ++i) {
    EXPECT_NEAR(rep.points[i].percent_difference, expected_pct[i], 1e-9);
    mean += expected_pct[i];
  }
  EXPECT_NEAR(rep.mean_percent, mean / double(expected_pct.size()), 1e-9);
  EXPECT_LE(rep.max_percent, 20.0 + 1e-9);
}

TEST(Metrics, AdditiveCheckGridMismatch) {
  auto c1 = make_profile("c1", {{1, 1, 2}, {2, 1, 3}});
  auto bad = make_profile("par", {{1, 1, 2}, {3, 1, 3}});
  EXPECT_THROW(metrics::additive_check({c1}, bad), metrics::GridMismatch);
  auto shorter = make_profile("par", {{1, 1, 2}});
  EXPECT_THROW(metrics::additive_check({c1}, shorter), metrics::GridMismatch);
}
