#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <vector>

#include "biopt/pareto.hpp"
#include "biopt/profile.hpp"

namespace biopt::metrics {

/// Component and parallel profiles do not share a size grid.
struct GridMismatch : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Percentage speedup of the optimum over a load-balanced baseline.
inline double perf_improvement(double t_balance, double t_opt) {
  if (!(t_opt > 0)) throw std::invalid_argument("t_opt must be > 0");
  return (t_balance - t_opt) / t_opt * 100.0;
}

/// Percentage energy saving of the optimum over a load-balanced baseline.
inline double energy_saving(double e_balance, double e_opt) {
  if (!(e_opt > 0)) throw std::invalid_argument("e_opt must be > 0");
  return (e_balance - e_opt) / e_opt * 100.0;
}

/// What each endpoint of the front gains by giving up `band` (e.g. 0.05) of
/// the other objective.
struct TradeoffBandResult {
  double band = 0;
  double perf_gain_percent = 0;
  double energy_saving_percent = 0;
};

/// perf side: minimum time among solutions whose energy stays within
/// (1+band) of the front's minimum energy, compared against the energy-optimal
/// endpoint's time. energy side: symmetric with the roles swapped. Band
/// membership is inclusive.
inline TradeoffBandResult tradeoff_within_band(const ParetoFront& front, double band) {
  if (front.empty()) throw std::invalid_argument("front is empty");
  TradeoffBandResult res;
  res.band = band;

  const double e_min = front.front().energy;   // fronts are energy-ascending
  const double t_at_e_opt = front.front().time;
  const double t_min = front.back().time;
  const double e_at_t_opt = front.back().energy;

  double t_band = t_at_e_opt;
  for (const auto& s : front)
    if (s.energy <= (1.0 + band) * e_min) t_band = std::min(t_band, s.time);
  double e_band = e_at_t_opt;
  for (const auto& s : front)
    if (s.time <= (1.0 + band) * t_min) e_band = std::min(e_band, s.energy);

  res.perf_gain_percent = t_band > 0 ? (t_at_e_opt - t_band) / t_band * 100.0 : 0.0;
  res.energy_saving_percent = e_band > 0 ? (e_at_t_opt - e_band) / e_band * 100.0 : 0.0;
  return res;
}

/// Extra total energy paid by the dynamic-energy-optimal distribution,
/// relative to the optimal total energy. Zero when one distribution optimizes
/// both objectives.
inline double total_energy_saving_over_dynamic_optimal(const ParetoFront& ep_front,
                                                       const TotalFront& tp_front,
                                                       double base_power) {
  if (ep_front.empty() || tp_front.empty()) throw std::invalid_argument("fronts must be non-empty");
  const auto& e_opt = ep_front.front();  // minimum dynamic energy
  const double te_of_e_opt = e_opt.energy + base_power * e_opt.time;
  const double te_opt = tp_front.front().total_energy;  // minimum total energy
  if (!(te_opt > 0)) throw std::invalid_argument("optimal total energy must be > 0");
  return (te_of_e_opt - te_opt) / te_opt * 100.0;
}

/// Per-size-point divergence between a measured parallel energy profile and
/// the sum of its component profiles.
struct AdditiveReport {
  struct Point {
    std::uint64_t size = 0;
    double combined = 0;
    double parallel = 0;
    double percent_difference = 0;
  };
  std::vector<Point> points;
  double min_percent = 0;
  double max_percent = 0;
  double mean_percent = 0;
};

inline AdditiveReport additive_check(const std::vector<DiscreteProfile>& components,
                                     const DiscreteProfile& parallel) {
  if (components.empty()) throw std::invalid_argument("need at least one component profile");
  for (const auto& c : components) {
    if (c.cardinality() != parallel.cardinality())
      throw GridMismatch("component and parallel profiles have different cardinality");
    for (std::size_t i = 0; i < c.points().size(); ++i)
      if (c.points()[i].size != parallel.points()[i].size)
        throw GridMismatch("component grid differs from parallel grid");
  }
  AdditiveReport rep;
  rep.min_percent = std::numeric_limits<double>::infinity();
  double sum = 0;
  for (const auto& pt : parallel.points()) {
    double combined = 0;
    for (const auto& c : components) combined += *c.lookup_energy(pt.size);
    const double pct = std::fabs(pt.energy - combined) / combined * 100.0;
    rep.points.push_back({pt.size, combined, pt.energy, pct});
    rep.min_percent = std::min(rep.min_percent, pct);
    rep.max_percent = std::max(rep.max_percent, pct);
    sum += pct;
  }
  rep.mean_percent = sum / static_cast<double>(rep.points.size());
  return rep;
}

}  // namespace biopt::metrics
