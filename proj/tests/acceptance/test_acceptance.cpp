// Acceptance suite: each test covers one numbered criterion and prints one
// pass/fail line. Tolerances are pinned in code, not configurable.

#include <gtest/gtest.h>

#include <chrono>
#include <cmath>
#include <iostream>
#include <random>

#include "biopt/gen.hpp"
#include "biopt/hepopta.hpp"
#include "biopt/htpopta.hpp"
#include "biopt/metrics.hpp"
#include "biopt/oracle.hpp"
#include "biopt/stats.hpp"
#include "biopt/timeopt.hpp"
#include "test_util.hpp"

using namespace biopt;
using Clock = std::chrono::steady_clock;

namespace {

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

class Acceptance : public ::testing::Test {
 protected:
  void label(int criterion, std::string description) {
    criterion_ = criterion;
    description_ = std::move(description);
  }
  void TearDown() override {
    std::cout << "[criterion " << criterion_ << "] " << description_ << ": "
              << (HasFailure() ? "FAIL" : "PASS") << std::endl;
  }

 private:
  int criterion_ = 0;
  std::string description_;
};

struct Instance {
  ProfileSet set;
  std::uint64_t n;
  std::size_t m;
};

/// Seeded random instance: p in [2,5], m in [2,8], smooth or jagged, n chosen
/// as the sum of one random pick per processor (grids are 1..m, so any such n
/// is feasible).
Instance make_instance(std::uint64_t seed) {
  std::mt19937_64 rng(seed * 2654435761u + 17);
  const std::size_t p = 2 + rng() % 4;
  const std::size_t m = 2 + rng() % 7;
  const gen::Shape shape = rng() % 2 ? gen::Shape::smooth : gen::Shape::jagged;
  ProfileSet set = gen::synthetic(shape, p, m, rng());
  std::uint64_t n = 0;
  for (std::size_t i = 0; i < p; ++i) {
    const std::size_t pick = rng() % (m + 1);
    if (pick) n += pick;
  }
  if (!n) n = 1;
  return {std::move(set), n, m};
}

/// Two-processor linear instance whose balanced split lies on the grid, which
/// is the regime where the discrete front is exactly collinear.
gen::LinearSpec seeded_balanced_pair(std::uint64_t seed, std::uint64_t n) {
  std::mt19937_64 rng(seed);
  const std::uint64_t split = 1 + rng() % (n - 1);
  const double scale = 0.01 + 0.001 * double(rng() % 500);
  const double b0 = 0.5 + 0.001 * double(rng() % 1000);
  const double gap = 0.3 + 0.001 * double(rng() % 1200);
  gen::LinearSpec spec;
  spec.time_slopes = {scale * double(n - split), scale * double(split)};
  spec.energy_slopes = rng() % 2 ? std::vector<double>{b0, b0 + gap}
                                 : std::vector<double>{b0 + gap, b0};
  for (std::uint64_t s = 1; s <= n; ++s) spec.grid.push_back(s);
  return spec;
}

}  // namespace

TEST_F(Acceptance, Criterion1_GoldenWorkedExample) {
  label(1, "golden worked example reproduced exactly");
  const auto start = Clock::now();

  ProfileSet set = biopt::testing::worked4();
  auto run = solve_hepopt_detailed(set, 4);
  ASSERT_TRUE(run.has_value());

  EXPECT_EQ(run->time_opt.distribution, (Distribution{2, 0, 2, 0}));
  EXPECT_DOUBLE_EQ(run->time_opt.makespan, 2.0);
  EXPECT_DOUBLE_EQ(run->thresholds.epsilon, 5.0);
  EXPECT_EQ(run->thresholds.sigma, (std::vector<std::uint64_t>{8, 5, 3, 1}));

  const auto& cell22 = run->memo.cell(2, 2).entries();
  ASSERT_EQ(cell22.size(), 2u);
  EXPECT_TRUE(cell22[0].energy == 4 && cell22[0].time == 2 && cell22[0].part == 2 &&
              cell22[0].active_count == 1 && cell22[0].child_index == kNoChild);
  EXPECT_TRUE(cell22[1].energy == 6 && cell22[1].time == 1 && cell22[1].part == 1 &&
              cell22[1].active_count == 2 && cell22[1].child_index == kNoChild);

  const auto& cell14 = run->memo.cell(1, 4).entries();
  ASSERT_EQ(cell14.size(), 2u);
  EXPECT_TRUE(cell14[0].energy == 5 && cell14[0].time == 6 && cell14[0].part == 2 &&
              cell14[0].active_count == 2);
  EXPECT_TRUE(cell14[1].energy == 7 && cell14[1].time == 3 && cell14[1].part == 1 &&
              cell14[1].active_count == 3);
  // child references resolve to the partial solutions with energies 4 and 5
  EXPECT_EQ(run->memo.cell(2, 2).entries()[cell14[0].child_index].energy, 4.0);
  EXPECT_EQ(run->memo.cell(2, 3).entries()[cell14[1].child_index].energy, 5.0);

  ASSERT_EQ(run->front.size(), 3u);
  EXPECT_TRUE(run->front[0].energy == 2 && run->front[0].time == 6 &&
              run->front[0].distribution == Distribution({2, 2, 0, 0}));
  EXPECT_TRUE(run->front[1].energy == 4 && run->front[1].time == 3 &&
              run->front[1].distribution == Distribution({2, 1, 0, 1}));
  EXPECT_TRUE(run->front[2].energy == 5 && run->front[2].time == 2 &&
              run->front[2].distribution == Distribution({2, 0, 2, 0}));
  EXPECT_LE(run->front.size(), 4u * 4u);

  EXPECT_LT(seconds_since(start), 1.0);
}

TEST_F(Acceptance, Criterion2_OracleEquivalenceDynamic) {
  label(2, "1000 seeded instances match brute force on the dynamic objective");
  const auto start = Clock::now();
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    Instance inst = make_instance(seed);
    auto front = solve_hepopt(inst.set, inst.n);
    ASSERT_TRUE(front.has_value()) << "seed " << seed;
    ParetoFront expected = oracle::brute_pareto(inst.set, inst.n);
    ASSERT_EQ(front->size(), expected.size()) << "seed " << seed;
    for (std::size_t i = 0; i < expected.size(); ++i) {
      EXPECT_TRUE(nearly_equal((*front)[i].energy, expected[i].energy)) << "seed " << seed;
      EXPECT_TRUE(nearly_equal((*front)[i].time, expected[i].time)) << "seed " << seed;
      EXPECT_EQ((*front)[i].distribution, expected[i].distribution) << "seed " << seed;
    }
    EXPECT_LE(front->size(), inst.m * inst.set.size()) << "seed " << seed;
  }
  EXPECT_LT(seconds_since(start), 300.0);
}

TEST_F(Acceptance, Criterion3_OracleEquivalenceTotal) {
  label(3, "same instances match brute force on the total objective; subset property holds");
  const auto start = Clock::now();
  const double base_powers[] = {0.0, 1.0, 10.0, 1e6};
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    Instance inst = make_instance(seed);
    auto ep = solve_hepopt(inst.set, inst.n);
    ASSERT_TRUE(ep.has_value()) << "seed " << seed;
    auto enumerated = oracle::enumerate_to_vector(inst.set, inst.n);
    for (double base : base_powers) {
      auto tp = solve_htpopt(inst.set, inst.n, base);
      ASSERT_TRUE(tp.has_value()) << "seed " << seed;
      TotalFront expected = oracle::total_pareto_filter(enumerated, base);
      ASSERT_EQ(tp->size(), expected.size()) << "seed " << seed << " base " << base;
      for (std::size_t i = 0; i < expected.size(); ++i) {
        EXPECT_TRUE(nearly_equal((*tp)[i].total_energy, expected[i].total_energy))
            << "seed " << seed;
        EXPECT_TRUE(nearly_equal((*tp)[i].time, expected[i].time)) << "seed " << seed;
        EXPECT_EQ((*tp)[i].distribution, expected[i].distribution) << "seed " << seed;
      }
      EXPECT_LE(tp->size(), inst.m * inst.set.size());
      for (const auto& sol : *tp) {
        bool in_ep = false;
        for (const auto& e : *ep)
          if (e.distribution == sol.distribution) {
            in_ep = true;
            break;
          }
        EXPECT_TRUE(in_ep) << "seed " << seed << ": total-front distribution not in dynamic front";
      }
    }
  }
  EXPECT_LT(seconds_since(start), 600.0);
}

TEST_F(Acceptance, Criterion4_CardinalityBound) {
  label(4, "front cardinality never exceeds m*p across the criteria 1-3 workloads");
  ProfileSet worked = biopt::testing::worked4();
  auto worked_front = solve_hepopt(worked, 4);
  ASSERT_TRUE(worked_front.has_value());
  EXPECT_LE(worked_front->size(), 16u);

  std::size_t violations = 0;
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    Instance inst = make_instance(seed);
    auto ep = solve_hepopt(inst.set, inst.n);
    ASSERT_TRUE(ep.has_value());
    const std::size_t bound = inst.m * inst.set.size();
    if (ep->size() > bound) ++violations;
    for (double base : {0.0, 1.0, 10.0, 1e6}) {
      TotalFront tp = total_front_from_pareto(*ep, base);
      if (tp.size() > bound) ++violations;
    }
  }
  EXPECT_EQ(violations, 0u);
}

TEST_F(Acceptance, Criterion5_LinearPropositions) {
  label(5, "linear-profile fronts are collinear with matching endpoints");
  const auto start = Clock::now();
  const std::uint64_t n = 200;

  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    gen::LinearSpec spec = seeded_balanced_pair(seed, n);
    ProfileSet set = gen::linear(spec);
    auto front = solve_hepopt(set, n);
    ASSERT_TRUE(front.has_value()) << "seed " << seed;
    ASSERT_GE(front->size(), 2u) << "seed " << seed;

    auto topt = solve_time_optimal(set, n);
    ASSERT_TRUE(topt.has_value());

    // brute-force energy optimum over the full solution space
    double best_energy = std::numeric_limits<double>::infinity();
    Distribution best_x;
    oracle::enumerate_all(set, n, [&](const oracle::EnumeratedSolution& s) {
      if (s.energy < best_energy) {
        best_energy = s.energy;
        best_x = s.distribution;
      }
    });

    auto rep = gen::verify_linear_front(*front, *topt, best_energy);
    const double range = front->back().energy - front->front().energy;
    EXPECT_LT(rep.max_residual, 1e-6 * std::fabs(range)) << "seed " << seed;
    EXPECT_TRUE(rep.endpoints_match) << "seed " << seed;
    EXPECT_EQ(front->front().distribution, best_x) << "seed " << seed;
    EXPECT_EQ(front->back().distribution, topt->distribution) << "seed " << seed;
  }

  // p=4 instance: balanced split on-grid and equal donor energy slopes, the
  // regime where the multi-processor front stays on a single line.
  {
    gen::LinearSpec spec;
    const std::uint64_t shares[4] = {80, 50, 40, 30};  // sums to 200
    const double c = 2.0;
    for (double share : {80.0, 50.0, 40.0, 30.0}) spec.time_slopes.push_back(c / share);
    spec.energy_slopes = {0.6, 1.4, 1.4, 1.4};
    for (std::uint64_t s = 1; s <= n; ++s) spec.grid.push_back(s);
    (void)shares;
    ProfileSet set = gen::linear(spec);
    auto front = solve_hepopt(set, n);
    ASSERT_TRUE(front.has_value());
    ASSERT_GE(front->size(), 2u);
    auto topt = solve_time_optimal(set, n);
    auto rep = gen::verify_linear_front(*front, *topt, front->front().energy);
    const double range = front->back().energy - front->front().energy;
    EXPECT_LT(rep.max_residual, 1e-6 * std::fabs(range));
  }

  EXPECT_LT(seconds_since(start), 30.0);
}

TEST_F(Acceptance, Criterion6_EpsilonRobustnessAndScaling) {
  label(6, "doubled epsilon and scaled energies leave fronts consistent");
  const auto start = Clock::now();
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    Instance inst = make_instance(seed + 5000);
    auto base = solve_hepopt_detailed(inst.set, inst.n);
    ASSERT_TRUE(base.has_value());

    HepoptaOptions opts;
    opts.epsilon_override = base->thresholds.epsilon * 2;
    auto doubled = solve_hepopt_detailed(inst.set, inst.n, opts);
    ASSERT_TRUE(doubled.has_value());
    ASSERT_EQ(doubled->front.size(), base->front.size()) << "seed " << seed;
    for (std::size_t i = 0; i < base->front.size(); ++i) {
      EXPECT_EQ(doubled->front[i].distribution, base->front[i].distribution);
      EXPECT_DOUBLE_EQ(doubled->front[i].energy, base->front[i].energy);
      EXPECT_DOUBLE_EQ(doubled->front[i].time, base->front[i].time);
    }

    const double k = 3.5;
    std::vector<DiscreteProfile> scaled_profiles;
    for (const auto& pr : inst.set) {
      std::vector<ProfilePoint> pts = pr.points();
      for (auto& pt : pts) pt.energy *= k;
      scaled_profiles.emplace_back(pr.id(), std::move(pts));
    }
    auto scaled = solve_hepopt(ProfileSet(std::move(scaled_profiles)), inst.n);
    ASSERT_TRUE(scaled.has_value());
    ASSERT_EQ(scaled->size(), base->front.size()) << "seed " << seed;
    for (std::size_t i = 0; i < base->front.size(); ++i) {
      EXPECT_TRUE(nearly_equal((*scaled)[i].energy, k * base->front[i].energy)) << "seed " << seed;
      EXPECT_DOUBLE_EQ((*scaled)[i].time, base->front[i].time);
      EXPECT_EQ((*scaled)[i].distribution, base->front[i].distribution);
    }
  }
  EXPECT_LT(seconds_since(start), 60.0);
}

TEST_F(Acceptance, Criterion7_TtestHarness) {
  label(7, "t-test harness converges near the truth and honors the repetition cap");
  const auto start = Clock::now();

  stats::TtestConfig cfg;
  cfg.min_reps = 5;
  cfg.max_reps = 1000;
  cfg.confidence = 0.95;
  cfg.precision = 0.1;
  int good = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    auto out = stats::mean_with_ttest(stats::gaussian_sampler(100, 5, seed), cfg);
    EXPECT_LE(out.reps_used, cfg.max_reps);
    if (out.stop_reason == stats::StopReason::converged && std::fabs(out.means[0] - 100) < 5)
      ++good;
  }
  EXPECT_GE(good, 95);

  stats::TtestConfig strict = cfg;
  strict.precision = 1e-9;
  strict.max_reps = 10;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    auto out = stats::mean_with_ttest(stats::gaussian_sampler(100, 5, seed), strict);
    EXPECT_EQ(out.stop_reason, stats::StopReason::max_reps) << "seed " << seed;
    EXPECT_EQ(out.reps_used, 10u);
  }

  EXPECT_LT(seconds_since(start), 10.0);
}

TEST_F(Acceptance, Criterion8_PerformanceSmoke) {
  label(8, "desk-scale performance: m=1000 under 30 s, doubling m costs at most 12x");

  ProfileSet small = gen::synthetic(gen::Shape::smooth, 5, 1000, 7);
  const auto t0 = Clock::now();
  auto front_small = solve_hepopt(small, 1000);
  const double small_seconds = seconds_since(t0);
  ASSERT_TRUE(front_small.has_value());
  EXPECT_LT(small_seconds, 30.0);

  ProfileSet big = gen::synthetic(gen::Shape::smooth, 5, 2000, 7);
  const auto t1 = Clock::now();
  auto front_big = solve_hepopt(big, 2000);
  const double big_seconds = seconds_since(t1);
  ASSERT_TRUE(front_big.has_value());
  EXPECT_LE(big_seconds, 12.0 * small_seconds)
      << "m=1000 took " << small_seconds << " s, m=2000 took " << big_seconds << " s";

  std::cout << "  perf smoke: m=1000 " << small_seconds << " s, m=2000 " << big_seconds << " s\n";
}

TEST_F(Acceptance, Criterion9_MetricFormulasAgainstOracleBaselines) {
  label(9, "metric formulas verified on oracle baselines; hardware study figures not reproduced");

  // In-text arithmetic check: 604 J vs 167 J endpoints round to ~260%.
  EXPECT_NEAR(metrics::energy_saving(604, 167), 261.7, 0.1);

  // Worked-example baseline comparison, all inputs from the enumeration oracle.
  ProfileSet set = biopt::testing::worked4();
  auto lb = oracle::load_balanced(set, 4);
  auto ep = solve_hepopt(set, 4);
  auto tp = solve_htpopt(set, 4, 1.0);
  ASSERT_TRUE(lb && ep && tp);
  EXPECT_EQ(lb->distribution, (Distribution{2, 0, 2, 0}));
  EXPECT_DOUBLE_EQ(metrics::perf_improvement(lb->time, ep->back().time), 0.0);
  EXPECT_DOUBLE_EQ(metrics::energy_saving(lb->energy, ep->front().energy), 150.0);

  auto band = metrics::tradeoff_within_band(*ep, 0.05);
  EXPECT_DOUBLE_EQ(band.perf_gain_percent, 0.0);
  EXPECT_DOUBLE_EQ(band.energy_saving_percent, 0.0);
  EXPECT_NEAR(metrics::total_energy_saving_over_dynamic_optimal(*ep, *tp, 1.0), 14.3, 0.1);

  // Percentages from hardware-measured studies (average/maximum improvements,
  // additive-difference tables) depend on physical servers and meters and are
  // intentionally not asserted anywhere in this suite; the formulas that
  // compute them are what is verified here.
  SUCCEED();
}
