#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

#include "biopt/pareto.hpp"
#include "biopt/profile.hpp"

namespace biopt {

/// A makespan-optimal workload distribution.
struct TimeOptResult {
  Distribution distribution;
  double makespan = 0;
};

namespace detail {

/// Fixed-width bitset over workload sums 0..n.
class SumSet {
 public:
  explicit SumSet(std::uint64_t n) : n_(n), words_((n + 64) / 64, 0) {}

  void set(std::uint64_t i) { words_[i >> 6] |= std::uint64_t{1} << (i & 63); }
  bool test(std::uint64_t i) const { return (words_[i >> 6] >> (i & 63)) & 1; }

  /// this |= other << shift
  void or_shifted(const SumSet& other, std::uint64_t shift) {
    const std::uint64_t word_shift = shift >> 6;
    const unsigned bit_shift = shift & 63;
    for (std::size_t i = words_.size(); i-- > word_shift;) {
      std::uint64_t v = other.words_[i - word_shift] << bit_shift;
      if (bit_shift && i > word_shift) v |= other.words_[i - word_shift - 1] >> (64 - bit_shift);
      words_[i] |= v;
    }
    // mask bits beyond n
    const unsigned tail = static_cast<unsigned>((n_ + 1) & 63);
    if (tail) words_.back() &= (std::uint64_t{1} << tail) - 1;
  }

 private:
  std::uint64_t n_;
  std::vector<std::uint64_t> words_;
};

/// Suffix reachability: layer i holds the sums processors i..p-1 can execute
/// using only sizes whose time is <= bound (0 always allowed).
inline std::vector<SumSet> suffix_reachable(const ProfileSet& set, std::uint64_t n, double bound) {
  const std::size_t p = set.size();
  std::vector<SumSet> layers(p + 1, SumSet(n));
  layers[p].set(0);
  for (std::size_t i = p; i-- > 0;) {
    layers[i] = layers[i + 1];  // share 0
    for (const auto& pt : set[i].points()) {
      if (pt.time > bound || pt.size > n) continue;
      layers[i].or_shifted(layers[i + 1], pt.size);
    }
  }
  return layers;
}

}  // namespace detail

/// Exact single-objective makespan minimizer. Among equal-makespan
/// distributions the lexicographically smallest share vector is returned.
/// Empty result means no distribution sums to n.
inline std::optional<TimeOptResult> solve_time_optimal(const ProfileSet& set, std::uint64_t n) {
  const std::size_t p = set.size();
  if (n == 0) return TimeOptResult{Distribution(p, 0), 0.0};

  // Candidate makespans are the tabulated times; the optimum is one of them.
  std::vector<double> candidates;
  for (const auto& pr : set)
    for (const auto& pt : pr.points())
      if (pt.size <= n) candidates.push_back(pt.time);
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
  if (candidates.empty()) return std::nullopt;

  auto feasible = [&](double bound) {
    return detail::suffix_reachable(set, n, bound)[0].test(n);
  };
  if (!feasible(candidates.back())) return std::nullopt;

  std::size_t lo = 0, hi = candidates.size() - 1;
  while (lo < hi) {
    std::size_t mid = (lo + hi) / 2;
    if (feasible(candidates[mid]))
      hi = mid;
    else
      lo = mid + 1;
  }
  const double opt = candidates[lo];

  // Reconstruct the lexicographically smallest share vector: at each level
  // take the smallest allowed share that keeps the remainder reachable.
  auto layers = detail::suffix_reachable(set, n, opt);
  Distribution x(p, 0);
  std::uint64_t remaining = n;
  double makespan = 0;
  for (std::size_t i = 0; i < p; ++i) {
    std::uint64_t chosen = 0;
    bool found = layers[i + 1].test(remaining);  // share 0
    if (!found) {
      for (const auto& pt : set[i].points()) {
        if (pt.time > opt || pt.size > remaining) continue;
        if (layers[i + 1].test(remaining - pt.size)) {
          chosen = pt.size;
          found = true;
          break;
        }
      }
    }
    if (!found) return std::nullopt;  // unreachable given layers[0].test(n)
    x[i] = chosen;
    remaining -= chosen;
    if (chosen) makespan = std::max(makespan, *set[i].lookup_time(chosen));
  }
  return TimeOptResult{std::move(x), makespan};
}

/// Among distributions attaining the optimal makespan, returns one minimizing
/// total dynamic energy (ties: lexicographically smallest). Used to tighten
/// the energy threshold before the bi-objective search.
inline Distribution min_energy_among_time_optimal(const ProfileSet& set, std::uint64_t n,
                                                  double makespan) {
  const std::size_t p = set.size();
  if (n == 0) return Distribution(p, 0);

  constexpr double kInf = std::numeric_limits<double>::infinity();
  // best[i][r] = minimal suffix energy distributing r over processors i..p-1
  // with every share's time <= makespan.
  std::vector<std::vector<double>> best(p + 1, std::vector<double>(n + 1, kInf));
  best[p][0] = 0;
  for (std::size_t i = p; i-- > 0;) {
    for (std::uint64_t r = 0; r <= n; ++r) {
      double b = best[i + 1][r];  // share 0
      for (const auto& pt : set[i].points()) {
        if (pt.time > makespan || pt.size > r) continue;
        double cand = best[i + 1][r - pt.size];
        if (cand == kInf) continue;
        cand += pt.energy;
        if (cand < b) b = cand;
      }
      best[i][r] = b;
    }
  }
  if (best[0][n] == kInf)
    throw std::invalid_argument("makespan is not attainable for this workload");

  Distribution x(p, 0);
  std::uint64_t remaining = n;
  for (std::size_t i = 0; i < p; ++i) {
    const double target = best[i][remaining];
    std::uint64_t chosen = 0;
    bool found = best[i + 1][remaining] != kInf && nearly_equal(best[i + 1][remaining], target);
    if (!found) {
      for (const auto& pt : set[i].points()) {
        if (pt.time > makespan || pt.size > remaining) continue;
        double cand = best[i + 1][remaining - pt.size];
        if (cand == kInf) continue;
        if (nearly_equal(cand + pt.energy, target)) {
          chosen = pt.size;
          found = true;
          break;
        }
      }
    }
    if (!found) throw std::logic_error("energy reconstruction lost the optimum");
    x[i] = chosen;
    remaining -= chosen;
  }
  return x;
}

}  // namespace biopt
