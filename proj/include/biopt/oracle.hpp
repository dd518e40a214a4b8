#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <stdexcept>
#include <vector>

#include "biopt/pareto.hpp"
#include "biopt/profile.hpp"

namespace biopt::oracle {

/// The instance's enumeration bound exceeds the configured limit.
struct LimitExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

constexpr double kDefaultEnumerationLimit = 1e7;

/// One enumerated distribution with its objective values.
struct EnumeratedSolution {
  Distribution distribution;
  double energy = 0;
  double time = 0;
};

/// Upper bound on the number of candidate share vectors, prod(m_i + 1).
inline double enumeration_bound(const ProfileSet& set) {
  double b = 1;
  for (const auto& pr : set) b *= static_cast<double>(pr.cardinality() + 1);
  return b;
}

namespace detail {

template <typename Fn>
void enumerate_rec(const ProfileSet& set, std::size_t level, std::uint64_t remaining,
                   const std::vector<std::uint64_t>& suffix_max, Distribution& shares,
                   double energy, double time, Fn&& yield) {
  if (remaining > suffix_max[level]) return;
  const auto& profile = set[level];
  if (level == set.size() - 1) {
    auto e = profile.lookup_energy(remaining);
    if (!e) return;
    shares[level] = remaining;
    const double t = remaining ? *profile.lookup_time(remaining) : 0.0;
    yield(EnumeratedSolution{shares, energy + *e, std::max(time, t)});
    return;
  }
  shares[level] = 0;
  enumerate_rec(set, level + 1, remaining, suffix_max, shares, energy, time, yield);
  for (const auto& pt : profile.points()) {
    if (pt.size > remaining) continue;
    shares[level] = pt.size;
    enumerate_rec(set, level + 1, remaining - pt.size, suffix_max, shares, energy + pt.energy,
                  std::max(time, pt.time), yield);
  }
  shares[level] = 0;
}

}  // namespace detail

/// Yields every distribution summing to n exactly once, in lexicographic
/// order of the share vector.
template <typename Fn>
void enumerate_all(const ProfileSet& set, std::uint64_t n, Fn&& yield,
                   double limit = kDefaultEnumerationLimit) {
  if (enumeration_bound(set) > limit)
    throw LimitExceeded("enumeration bound exceeds limit");
  const std::size_t p = set.size();
  std::vector<std::uint64_t> suffix_max(p + 1, 0);
  for (std::size_t i = p; i-- > 0;) suffix_max[i] = suffix_max[i + 1] + set[i].max_size();
  Distribution shares(p, 0);
  detail::enumerate_rec(set, 0, n, suffix_max, shares, 0.0, 0.0, yield);
}

/// Number of feasible distributions, by a reachable-sums count independent of
/// the enumerator (used to cross-check it).
inline std::uint64_t feasible_count(const ProfileSet& set, std::uint64_t n) {
  std::vector<std::uint64_t> ways(n + 1, 0);
  ways[0] = 1;
  for (const auto& pr : set) {
    std::vector<std::uint64_t> next(n + 1, 0);
    for (std::uint64_t r = 0; r <= n; ++r) {
      if (!ways[r]) continue;
      next[r] += ways[r];
      for (const auto& pt : pr.points())
        if (pt.size <= n - r) next[r + pt.size] += ways[r];
    }
    ways = std::move(next);
  }
  return ways[n];
}

namespace detail {

struct FrontCandidate {
  double energy;  // filtering objective (dynamic or total energy)
  double time;
  std::size_t active;
  const Distribution* distribution;
};

/// Streaming dominance filter with the solver's tie-break ladder: on an equal
/// objective pair keep fewer active processors, then the lexicographically
/// smaller distribution (candidates arrive in lexicographic order, so the
/// first seen wins unless strictly better arrives).
class FrontBuilder {
 public:
  void insert(const FrontCandidate& cand) {
    auto it = std::lower_bound(entries_.begin(), entries_.end(), cand.energy,
                               [](const FrontCandidate& e, double v) { return e.energy < v; });
    auto slot = entries_.end();
    if (it != entries_.end() && nearly_equal(it->energy, cand.energy))
      slot = it;
    else if (it != entries_.begin() && nearly_equal(std::prev(it)->energy, cand.energy))
      slot = std::prev(it);
    if (slot != entries_.end()) {
      if (cand.time < slot->time) {
        *slot = cand;
        purge_after(slot);
      } else if (cand.time == slot->time && cand.active < slot->active) {
        *slot = cand;
      }
      return;
    }
    if (it != entries_.begin() && std::prev(it)->time <= cand.time) return;
    it = entries_.insert(it, cand);
    purge_after(it);
  }

  const std::vector<FrontCandidate>& entries() const { return entries_; }

 private:
  void purge_after(std::vector<FrontCandidate>::iterator it) {
    auto first = std::next(it);
    auto last = first;
    while (last != entries_.end() && last->time >= it->time) ++last;
    entries_.erase(first, last);
  }

  std::vector<FrontCandidate> entries_;
};

}  // namespace detail

/// Dominance filter over an already-enumerated solution list, with dynamic
/// energy as the filtering objective.
inline ParetoFront pareto_filter(const std::vector<EnumeratedSolution>& solutions) {
  detail::FrontBuilder builder;
  for (const auto& s : solutions)
    builder.insert({s.energy, s.time, active_count(s.distribution), &s.distribution});
  ParetoFront front;
  front.reserve(builder.entries().size());
  for (const auto& e : builder.entries()) front.push_back({e.energy, e.time, *e.distribution});
  return front;
}

/// Dominance filter with total energy (dynamic + base power x time) as the
/// filtering objective.
inline TotalFront total_pareto_filter(const std::vector<EnumeratedSolution>& solutions,
                                      double base_power) {
  detail::FrontBuilder builder;
  for (const auto& s : solutions)
    builder.insert(
        {s.energy + base_power * s.time, s.time, active_count(s.distribution), &s.distribution});
  TotalFront front;
  front.reserve(builder.entries().size());
  for (const auto& e : builder.entries()) front.push_back({e.energy, e.time, *e.distribution});
  return front;
}

inline std::vector<EnumeratedSolution> enumerate_to_vector(const ProfileSet& set, std::uint64_t n,
                                                           double limit = kDefaultEnumerationLimit) {
  std::vector<EnumeratedSolution> all;
  enumerate_all(set, n, [&](const EnumeratedSolution& s) { all.push_back(s); }, limit);
  return all;
}

/// Reference front for (execution time, dynamic energy) by full enumeration.
inline ParetoFront brute_pareto(const ProfileSet& set, std::uint64_t n,
                                double limit = kDefaultEnumerationLimit) {
  return pareto_filter(enumerate_to_vector(set, n, limit));
}

/// Reference front for (execution time, total energy) by full enumeration.
inline TotalFront brute_total_pareto(const ProfileSet& set, std::uint64_t n, double base_power,
                                     double limit = kDefaultEnumerationLimit) {
  return total_pareto_filter(enumerate_to_vector(set, n, limit), base_power);
}

/// The load-balanced baseline: a feasible distribution minimizing the spread
/// (max - min) of execution times over active processors. Ties resolve toward
/// the smaller makespan, then smaller energy, then the lexicographically
/// smallest distribution. Empty result means the workload is infeasible.
inline std::optional<EnumeratedSolution> load_balanced(const ProfileSet& set, std::uint64_t n,
                                                       double limit = kDefaultEnumerationLimit) {
  std::optional<EnumeratedSolution> best;
  double best_spread = std::numeric_limits<double>::infinity();
  enumerate_all(
      set, n,
      [&](const EnumeratedSolution& s) {
        double lo = std::numeric_limits<double>::infinity(), hi = 0;
        for (std::size_t i = 0; i < s.distribution.size(); ++i) {
          if (!s.distribution[i]) continue;
          const double t = *set[i].lookup_time(s.distribution[i]);
          lo = std::min(lo, t);
          hi = std::max(hi, t);
        }
        const double spread = hi > lo ? hi - lo : 0.0;  // no active processors -> 0
        // Candidates arrive in lexicographic order; replace on strict improvement.
        if (!best || spread < best_spread ||
            (spread == best_spread &&
             (s.time < best->time || (s.time == best->time && s.energy < best->energy)))) {
          best = s;
          best_spread = spread;
        }
      },
      limit);
  return best;
}

}  // namespace biopt::oracle
