#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

#include "biopt/hepopta.hpp"
#include "biopt/pareto.hpp"
#include "biopt/profile.hpp"

namespace biopt {

/// Total platform energy: dynamic energy plus base power drawn for the whole
/// execution time.
inline double total_energy(double dynamic_energy, double time, double base_power) {
  return dynamic_energy + base_power * time;
}

/// Derives the (execution time, total energy) front from an already-computed
/// dynamic-energy front. Every total-energy solution reuses a dynamic-energy
/// Pareto distribution.
inline TotalFront total_front_from_pareto(const ParetoFront& ep_front, double base_power) {
  // Keyed by total energy (within tolerance): keep the smaller time, then
  // fewer active processors, then the lexicographically smaller distribution.
  TotalFront merged;
  for (const auto& sol : ep_front) {
    TotalSolution cand{total_energy(sol.energy, sol.time, base_power), sol.time, sol.distribution};
    auto it = std::lower_bound(merged.begin(), merged.end(), cand.total_energy,
                               [](const TotalSolution& s, double v) { return s.total_energy < v; });
    auto slot = merged.end();
    if (it != merged.end() && nearly_equal(it->total_energy, cand.total_energy))
      slot = it;
    else if (it != merged.begin() && nearly_equal(std::prev(it)->total_energy, cand.total_energy))
      slot = std::prev(it);
    if (slot != merged.end()) {
      if (cand.time < slot->time)
        *slot = std::move(cand);
      else if (cand.time == slot->time) {
        const std::size_t ca = active_count(cand.distribution);
        const std::size_t sa = active_count(slot->distribution);
        if (ca < sa || (ca == sa && cand.distribution < slot->distribution)) *slot = std::move(cand);
      }
    } else {
      merged.insert(it, std::move(cand));
    }
  }

  // Sweep in increasing total energy, dropping entries that do not strictly
  // improve time.
  TotalFront front;
  double min_time = std::numeric_limits<double>::infinity();
  for (auto& sol : merged) {
    if (sol.time >= min_time) continue;
    min_time = sol.time;
    front.push_back(std::move(sol));
  }
  return front;
}

/// The globally Pareto-optimal front for (execution time, total energy).
inline std::optional<TotalFront> solve_htpopt(const ProfileSet& set, std::uint64_t n,
                                              double base_power) {
  if (!(base_power >= 0)) throw std::invalid_argument("base power must be >= 0");
  auto ep = solve_hepopt(set, n);
  if (!ep) return std::nullopt;
  return total_front_from_pareto(*ep, base_power);
}

}  // namespace biopt
