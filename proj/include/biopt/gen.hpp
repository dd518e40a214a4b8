#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "biopt/pareto.hpp"
#include "biopt/profile.hpp"
#include "biopt/timeopt.hpp"

namespace biopt::gen {

/// Fewer than two front points: a fitted line is undefined.
struct DegenerateFront : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Linear instance: per-processor time slope a_i and energy slope b_i over a
/// common size grid, t_i(x) = a_i * x and e_i(x) = b_i * x.
struct LinearSpec {
  std::vector<double> time_slopes;
  std::vector<double> energy_slopes;
  std::vector<std::uint64_t> grid;
};

inline ProfileSet linear(const LinearSpec& spec) {
  if (spec.time_slopes.empty() || spec.time_slopes.size() != spec.energy_slopes.size())
    throw ValidationError("slope vectors must be non-empty and the same length");
  for (double a : spec.time_slopes)
    if (!(a > 0)) throw ValidationError("time slopes must be > 0");
  for (double b : spec.energy_slopes)
    if (!(b > 0)) throw ValidationError("energy slopes must be > 0");
  if (spec.grid.empty()) throw ValidationError("grid must be non-empty");
  for (std::size_t i = 1; i < spec.grid.size(); ++i)
    if (spec.grid[i] <= spec.grid[i - 1]) throw ValidationError("grid must be strictly increasing");
  if (spec.grid.front() < 1) throw ValidationError("grid sizes must be >= 1");

  std::vector<DiscreteProfile> profiles;
  for (std::size_t i = 0; i < spec.time_slopes.size(); ++i) {
    std::vector<ProfilePoint> pts;
    pts.reserve(spec.grid.size());
    for (auto s : spec.grid)
      pts.push_back({s, spec.time_slopes[i] * static_cast<double>(s),
                     spec.energy_slopes[i] * static_cast<double>(s)});
    profiles.emplace_back("P" + std::to_string(i), std::move(pts));
  }
  return ProfileSet(std::move(profiles));
}

enum class Shape { smooth, jagged };

namespace detail {

/// Platform-stable uniform in [0,1); std distributions are not pinned across
/// library versions.
inline double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline double uniform(std::mt19937_64& rng, double lo, double hi) {
  return lo + (hi - lo) * uniform01(rng);
}

}  // namespace detail

/// Deterministic synthetic profiles with sizes 1..m. Smooth: monotone-ish
/// low-noise power curves. Jagged: multiplicative noise in [0.5, 1.5] over a
/// monotone base.
inline ProfileSet synthetic(Shape shape, std::size_t p, std::size_t m, std::uint64_t seed) {
  if (p < 1 || m < 1) throw ValidationError("need p >= 1 and m >= 1");
  std::mt19937_64 rng(seed);
  std::vector<DiscreteProfile> profiles;
  for (std::size_t i = 0; i < p; ++i) {
    const double time_scale = detail::uniform(rng, 0.5, 2.0);
    const double energy_scale = detail::uniform(rng, 0.5, 2.0);
    const double time_exp = detail::uniform(rng, 0.9, 1.2);
    const double energy_exp = detail::uniform(rng, 0.9, 1.2);
    std::vector<ProfilePoint> pts;
    pts.reserve(m);
    for (std::size_t s = 1; s <= m; ++s) {
      const double x = static_cast<double>(s);
      double t = time_scale * std::pow(x, time_exp);
      double e = energy_scale * std::pow(x, energy_exp);
      if (shape == Shape::smooth) {
        t *= detail::uniform(rng, 0.99, 1.01);
        e *= detail::uniform(rng, 0.99, 1.01);
      } else {
        t *= detail::uniform(rng, 0.5, 1.5);
        e *= detail::uniform(rng, 0.5, 1.5);
      }
      pts.push_back({s, t, e});
    }
    profiles.emplace_back("P" + std::to_string(i), std::move(pts));
  }
  return ProfileSet(std::move(profiles));
}

/// Least-squares line through the front's (time, energy) points plus endpoint
/// coincidence with the single-objective optima.
struct CollinearityReport {
  double slope = 0;          // joules per second
  double intercept = 0;      // joules
  double max_residual = 0;   // joules
  bool endpoints_match = false;
};

/// Fits e = slope * t + intercept over the front and reports the worst
/// residual. endpoints_match is true when the front's fastest solution attains
/// the optimal makespan and its cheapest solution attains the optimal energy.
inline CollinearityReport verify_linear_front(const ParetoFront& front,
                                              const TimeOptResult& time_opt,
                                              double optimal_energy) {
  if (front.size() < 2) throw DegenerateFront("need at least two front points to fit a line");
  double st = 0, se = 0, stt = 0, ste = 0;
  const double inv_n = 1.0 / static_cast<double>(front.size());
  for (const auto& s : front) {
    st += s.time;
    se += s.energy;
    stt += s.time * s.time;
    ste += s.time * s.energy;
  }
  const double denom = stt - st * st * inv_n;
  if (denom == 0) throw DegenerateFront("front times are all equal");
  CollinearityReport rep;
  rep.slope = (ste - st * se * inv_n) / denom;
  rep.intercept = (se - rep.slope * st) * inv_n;
  for (const auto& s : front)
    rep.max_residual = std::max(rep.max_residual, std::fabs(s.energy - (rep.slope * s.time + rep.intercept)));
  // Fronts are energy-ascending: front() is the energy end, back() the time end.
  rep.endpoints_match = nearly_equal(front.back().time, time_opt.makespan) &&
                        nearly_equal(front.front().energy, optimal_energy);
  return rep;
}

}  // namespace biopt::gen
