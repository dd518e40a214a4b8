#include <gtest/gtest.h>

#include <random>

#include "biopt/gen.hpp"
#include "biopt/htpopta.hpp"
#include "biopt/oracle.hpp"
#include "test_util.hpp"

using namespace biopt;
using biopt::testing::worked4;

TEST(TotalEnergy, Formula) {
  EXPECT_DOUBLE_EQ(total_energy(2, 6, 1), 8.0);
  EXPECT_DOUBLE_EQ(total_energy(3.25, 9, 0), 3.25);
  EXPECT_DOUBLE_EQ(total_energy(5, 2, 30), 65.0);
}

TEST(Htpopta, WorkedExampleBasePowerOne) {
  auto front = solve_htpopt(worked4(), 4, 1.0);
  ASSERT_TRUE(front.has_value());
  ASSERT_EQ(front->size(), 1u);
  EXPECT_DOUBLE_EQ((*front)[0].total_energy, 7.0);
  EXPECT_DOUBLE_EQ((*front)[0].time, 2.0);
  EXPECT_EQ((*front)[0].distribution, (Distribution{2, 0, 2, 0}));
}

TEST(Htpopta, ZeroBasePowerEqualsDynamicFront) {
  ProfileSet set = worked4();
  auto ep = solve_hepopt(set, 4);
  auto tp = solve_htpopt(set, 4, 0.0);
  ASSERT_TRUE(ep && tp);
  ASSERT_EQ(tp->size(), ep->size());
  for (std::size_t i = 0; i < ep->size(); ++i) {
    EXPECT_DOUBLE_EQ((*tp)[i].total_energy, (*ep)[i].energy);
    EXPECT_DOUBLE_EQ((*tp)[i].time, (*ep)[i].time);
    EXPECT_EQ((*tp)[i].distribution, (*ep)[i].distribution);
  }
}

TEST(Htpopta, HugeBasePowerLeavesOnlyMakespanOptimum) {
  ProfileSet set = worked4();
  auto tp = solve_htpopt(set, 4, 1e6);
  ASSERT_TRUE(tp.has_value());
  ASSERT_EQ(tp->size(), 1u);
  EXPECT_DOUBLE_EQ((*tp)[0].time, 2.0);
  EXPECT_EQ((*tp)[0].distribution, (Distribution{2, 0, 2, 0}));
  TotalFront expected = oracle::brute_total_pareto(set, 4, 1e6);
  ASSERT_EQ(expected.size(), 1u);
  EXPECT_TRUE(nearly_equal((*tp)[0].total_energy, expected[0].total_energy));
}

TEST(Htpopta, InfeasiblePropagates) {
  EXPECT_FALSE(solve_htpopt(worked4(), 17, 1.0).has_value());
}

TEST(Htpopta, RejectsNegativeBasePower) {
  EXPECT_THROW(solve_htpopt(worked4(), 4, -1.0), std::invalid_argument);
}

TEST(Htpopta, OracleEquivalenceAndSubsetProperty) {
  std::mt19937_64 seeds(31337);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t p = 2 + seeds() % 4;
    const std::size_t m = 2 + seeds() % 6;
    ProfileSet set = gen::synthetic(trial % 2 ? gen::Shape::jagged : gen::Shape::smooth, p, m,
                                    seeds());
    std::uint64_t n = 0;
    for (const auto& pr : set) {
      const std::size_t pick = seeds() % (pr.cardinality() + 1);
      if (pick) n += pr.points()[pick - 1].size;
    }
    if (!n) n = 1;
    const double base_power = std::vector<double>{0.0, 0.37, 5.0, 1e5}[seeds() % 4];

    auto tp = solve_htpopt(set, n, base_power);
    ASSERT_TRUE(tp.has_value());
    TotalFront expected = oracle::brute_total_pareto(set, n, base_power);
    ASSERT_EQ(tp->size(), expected.size()) << "trial " << trial;
    for (std::size_t i = 0; i < expected.size(); ++i) {
      EXPECT_TRUE(nearly_equal((*tp)[i].total_energy, expected[i].total_energy));
      EXPECT_DOUBLE_EQ((*tp)[i].time, expected[i].time);
      EXPECT_EQ((*tp)[i].distribution, expected[i].distribution);
    }

    // Subset property: every total-front distribution appears in the dynamic
    // front.
    auto ep = solve_hepopt(set, n);
    ASSERT_TRUE(ep.has_value());
    for (const auto& sol : *tp) {
      bool found = false;
      for (const auto& e : *ep)
        if (e.distribution == sol.distribution) {
          found = true;
          break;
        }
      EXPECT_TRUE(found);
    }
    EXPECT_TRUE(front_strictly_ordered(*tp));
  }
}

TEST(Htpopta, TotalOptimumMatchesBruteMinimum) {
  std::mt19937_64 seeds(424242);
  for (int trial = 0; trial < 30; ++trial) {
    ProfileSet set = gen::synthetic(gen::Shape::jagged, 3, 5, seeds());
    std::uint64_t n = 1 + seeds() % 10;
    auto tp = solve_htpopt(set, n, 2.5);
    if (!tp) continue;  // infeasible n is fine here
    double best = std::numeric_limits<double>::infinity();
    oracle::enumerate_all(set, n, [&](const oracle::EnumeratedSolution& s) {
      best = std::min(best, s.energy + 2.5 * s.time);
    });
    EXPECT_TRUE(nearly_equal(tp->front().total_energy, best));
  }
}
