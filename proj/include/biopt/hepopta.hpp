#pragma once

#include <algorithm>
#include <cassert>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <vector>

#include "biopt/pareto.hpp"
#include "biopt/profile.hpp"
#include "biopt/timeopt.hpp"

namespace biopt {

/// A memo child reference resolved to nothing; always an implementation bug,
/// never a valid solver outcome.
struct BrokenChain : std::logic_error {
  using std::logic_error::logic_error;
};

/// Pruning thresholds: epsilon is the dynamic energy of the time-optimal
/// distribution; sigma[i] bounds the workload processors i..p-1 can execute
/// with every per-processor energy <= epsilon.
struct Thresholds {
  double epsilon = 0;
  std::vector<std::uint64_t> sigma;
};

inline double compute_energy_threshold(const ProfileSet& set, const Distribution& time_opt) {
  return distribution_energy(set, time_opt);
}

inline std::vector<std::uint64_t> compute_size_thresholds(const ProfileSet& set, double epsilon) {
  const std::size_t p = set.size();
  std::vector<std::uint64_t> sigma(p, 0);
  sigma[p - 1] = set[p - 1].max_size_with_energy_at_most(epsilon);
  for (std::size_t i = p - 1; i-- > 0;)
    sigma[i] = sigma[i + 1] + set[i].max_size_with_energy_at_most(epsilon);
  return sigma;
}

/// True when a node's remaining workload cannot fit under the size threshold
/// of its level; the subtree is pruned.
inline bool cut(std::uint64_t remaining, std::uint64_t sigma_level) {
  return remaining > sigma_level;
}

constexpr std::int32_t kNoChild = -1;

/// One memoized partial solution: objective pair for the suffix of processors
/// at and below a level, the share given to the level's processor, number of
/// active processors, and the index of the partial solution in the next
/// level's cell (kNoChild at the deepest memo level).
struct ParetoEntry {
  double energy = 0;
  double time = 0;
  std::uint64_t part = 0;
  std::uint32_t active_count = 0;
  std::int32_t child_index = kNoChild;
};

/// A memo cell: the partial Pareto set for one (level, remaining workload)
/// pair. Entries stay sorted by strictly increasing energy and strictly
/// decreasing time. Once finalized a cell never changes.
class ParetoCell {
 public:
  const std::vector<ParetoEntry>& entries() const { return entries_; }
  bool finalized() const { return finalized_; }
  bool no_solution() const { return no_solution_; }
  bool empty() const { return entries_.empty(); }

  /// Inserts a merged candidate, keeping the set non-dominated. Ties on the
  /// objective pair resolve toward fewer active processors, then the smaller
  /// part (which yields the lexicographically smallest distribution).
  void insert_merged(const ParetoEntry& cand) {
    assert(!finalized_);
    auto it = std::lower_bound(
        entries_.begin(), entries_.end(), cand.energy,
        [](const ParetoEntry& e, double v) { return e.energy < v; });

    // Energies within tolerance occupy one slot.
    auto slot = entries_.end();
    if (it != entries_.end() && nearly_equal(it->energy, cand.energy))
      slot = it;
    else if (it != entries_.begin() && nearly_equal(std::prev(it)->energy, cand.energy))
      slot = std::prev(it);
    if (slot != entries_.end()) {
      if (cand.time < slot->time) {
        *slot = cand;
        purge_dominated_after(slot);
      } else if (cand.time == slot->time &&
                 (cand.active_count < slot->active_count ||
                  (cand.active_count == slot->active_count && cand.part < slot->part))) {
        *slot = cand;
      }
      return;
    }

    if (it != entries_.begin() && std::prev(it)->time <= cand.time) return;  // dominated
    it = entries_.insert(it, cand);
    purge_dominated_after(it);
  }

  /// Empty cells become explicit no-solution markers; any cell becomes
  /// immutable. Idempotent.
  void make_final() {
    if (finalized_) return;
    if (entries_.empty()) no_solution_ = true;
    finalized_ = true;
  }

 private:
  void purge_dominated_after(std::vector<ParetoEntry>::iterator it) {
    auto first = std::next(it);
    auto last = first;
    while (last != entries_.end() && last->time >= it->time) ++last;
    entries_.erase(first, last);
  }

  std::vector<ParetoEntry> entries_;
  bool finalized_ = false;
  bool no_solution_ = false;
};

inline void make_pareto_final(ParetoCell& cell) { cell.make_final(); }

enum class CellStatus { dummy, not_solution, solution };

/// Memo retrieval outcome: dummy for an unvisited cell, not_solution when the
/// cell is a no-solution marker or its cheapest entry exceeds epsilon,
/// solution otherwise.
inline CellStatus read_pareto_mem(const ParetoCell& cell, double epsilon) {
  if (!cell.finalized() && cell.empty()) return CellStatus::dummy;
  if (cell.no_solution() || cell.entries().front().energy > epsilon)
    return CellStatus::not_solution;
  return CellStatus::solution;
}

/// Memoization table: one cell per (level, remaining workload) with levels
/// 1..p-2. Cells move empty -> populated -> finalized exactly once.
class Memo {
 public:
  Memo(std::size_t p, std::uint64_t n)
      : n_(n), levels_(p >= 3 ? p - 2 : 0, std::vector<ParetoCell>(n + 1)) {}

  ParetoCell& cell(std::size_t level, std::uint64_t remaining) {
    return levels_.at(level - 1).at(remaining);
  }
  const ParetoCell& cell(std::size_t level, std::uint64_t remaining) const {
    return levels_.at(level - 1).at(remaining);
  }

  std::size_t level_count() const { return levels_.size(); }
  std::uint64_t workload() const { return n_; }
  std::size_t cell_count() const { return levels_.size() * (n_ + 1); }

 private:
  std::uint64_t n_;
  std::vector<std::vector<ParetoCell>> levels_;
};

/// Builds a node's partial Pareto set by merging each surviving part with the
/// Pareto set of the corresponding child. At the deepest merge level the
/// child pair is read directly from the last processor's profile. Iteration
/// over a child's entries stops once the child's time no longer exceeds the
/// part's own time: further entries only add energy at the same merged time.
inline void merge_partial_paretoes(const ProfileSet& set, std::size_t level,
                                   std::uint64_t cell_workload,
                                   const std::vector<std::uint64_t>& parts, const Memo& memo,
                                   ParetoCell& target) {
  const std::size_t p = set.size();
  for (std::uint64_t x : parts) {
    const double part_time = x ? *set[level].lookup_time(x) : 0.0;
    const double part_energy = x ? *set[level].lookup_energy(x) : 0.0;
    const std::uint32_t part_active = x ? 1u : 0u;
    if (level + 2 < p) {
      const ParetoCell& child = memo.cell(level + 1, cell_workload - x);
      assert(child.finalized() && !child.no_solution());
      const auto& tuples = child.entries();
      for (std::size_t ci = 0; ci < tuples.size(); ++ci) {
        const ParetoEntry& tup = tuples[ci];
        target.insert_merged({part_energy + tup.energy, std::max(part_time, tup.time), x,
                              part_active + tup.active_count, static_cast<std::int32_t>(ci)});
        if (tup.time <= part_time) break;
      }
    } else {
      const std::uint64_t rest = cell_workload - x;
      const double rest_energy = rest ? *set[p - 1].lookup_energy(rest) : 0.0;
      const double rest_time = rest ? *set[p - 1].lookup_time(rest) : 0.0;
      target.insert_merged({part_energy + rest_energy, std::max(part_time, rest_time), x,
                            part_active + (rest ? 1u : 0u), kNoChild});
    }
  }
}

/// Recursive kernel: explores shares of processor `level` in non-decreasing
/// energy order, pruning by the size threshold, reusing memoized cells, then
/// merging children into this node's cell. Returns whether any solution
/// exists under this node.
inline bool hepopta_kernel(const ProfileSet& set, std::uint64_t remaining, std::size_t level,
                           const Thresholds& th, Memo& memo, ParetoCell& root) {
  const std::size_t p = set.size();
  if (cut(remaining, th.sigma[level])) return false;

  if (level == p - 1) {
    auto e = set[level].lookup_energy(remaining);
    return e.has_value() && *e <= th.epsilon;
  }

  if (level >= 1) {
    ParetoCell& cell = memo.cell(level, remaining);
    if (remaining != 0) {
      switch (read_pareto_mem(cell, th.epsilon)) {
        case CellStatus::not_solution: return false;
        case CellStatus::solution: return true;
        case CellStatus::dummy: break;
      }
    } else {
      // A zero workload has the single all-zero suffix. Memoize the whole
      // chain of zero entries down to the deepest memo level so that child
      // references resolve during reconstruction.
      for (std::size_t lvl = level; lvl + 1 < p; ++lvl) {
        ParetoCell& zero_cell = memo.cell(lvl, 0);
        if (zero_cell.finalized()) continue;
        zero_cell.insert_merged({0.0, 0.0, 0, 0, lvl + 2 < p ? 0 : kNoChild});
        zero_cell.make_final();
      }
      return true;
    }
  }

  std::vector<std::uint64_t> parts;
  bool found = false;
  const auto& profile = set[level];
  // Share 0 first, then tabulated sizes while their energy stays under the
  // threshold.
  if (hepopta_kernel(set, remaining, level + 1, th, memo, root)) {
    found = true;
    parts.push_back(0);
  }
  if (remaining != 0) {
    for (std::size_t k = 0; k < profile.cardinality(); ++k) {
      const ProfilePoint& pt = profile.points()[profile.by_energy()[k]];
      if (pt.energy > th.epsilon) break;
      if (pt.size > remaining) continue;
      if (hepopta_kernel(set, remaining - pt.size, level + 1, th, memo, root)) {
        found = true;
        parts.push_back(pt.size);
      }
    }
  }

  ParetoCell& target = level == 0 ? root : memo.cell(level, remaining);
  merge_partial_paretoes(set, level, remaining, parts, memo, target);
  target.make_final();
  return found;
}

/// Reconstructs full distributions from the root cell by following child
/// references level by level; the last processor receives the leftover.
inline ParetoFront build_pareto_sols(const ProfileSet& set, const Memo& memo,
                                     const ParetoCell& root, std::uint64_t n) {
  const std::size_t p = set.size();
  ParetoFront front;
  front.reserve(root.entries().size());
  for (const ParetoEntry& top : root.entries()) {
    Distribution x(p, 0);
    x[0] = top.part;
    std::uint64_t remaining = n - top.part;
    std::int32_t child = top.child_index;
    for (std::size_t level = 1; level + 1 < p; ++level) {
      const ParetoCell& cell = memo.cell(level, remaining);
      if (child < 0 || static_cast<std::size_t>(child) >= cell.entries().size())
        throw BrokenChain("child reference does not resolve at level " + std::to_string(level));
      const ParetoEntry& entry = cell.entries()[static_cast<std::size_t>(child)];
      x[level] = entry.part;
      remaining -= entry.part;
      child = entry.child_index;
    }
    x[p - 1] = remaining;
    front.push_back({top.energy, top.time, std::move(x)});
  }
  return front;
}

/// Everything a solve produced, for inspection by tests and verbose tooling.
struct HepoptaRun {
  TimeOptResult time_opt;          // makespan-optimal (energy-tightened) seed
  Thresholds thresholds;
  Memo memo;
  ParetoCell root;
  ParetoFront front;
};

struct HepoptaOptions {
  /// Replaces the computed energy threshold. Any value at or above the
  /// computed one yields the identical front.
  std::optional<double> epsilon_override;
};

/// Full solve with intermediate state. Empty result means the workload is not
/// expressible as a sum of tabulated sizes.
inline std::optional<HepoptaRun> solve_hepopt_detailed(const ProfileSet& set, std::uint64_t n,
                                                       const HepoptaOptions& options = {}) {
  const std::size_t p = set.size();

  if (n == 0) {
    HepoptaRun run{TimeOptResult{Distribution(p, 0), 0.0},
                   Thresholds{0.0, std::vector<std::uint64_t>(p, 0)}, Memo(p, 0), ParetoCell{},
                   {}};
    run.root.insert_merged({0.0, 0.0, 0, 0, kNoChild});
    run.root.make_final();
    run.front = {{0.0, 0.0, Distribution(p, 0)}};
    return run;
  }

  if (p == 1) {
    auto e = set[0].lookup_energy(n);
    if (!e) return std::nullopt;
    const double t = *set[0].lookup_time(n);
    HepoptaRun run{TimeOptResult{Distribution{n}, t}, Thresholds{*e, {set[0].max_size_with_energy_at_most(*e)}},
                   Memo(p, n), ParetoCell{}, {}};
    run.root.insert_merged({*e, t, n, 1, kNoChild});
    run.root.make_final();
    run.front = {{*e, t, Distribution{n}}};
    return run;
  }

  auto time_opt = solve_time_optimal(set, n);
  if (!time_opt) return std::nullopt;
  Distribution seed = min_energy_among_time_optimal(set, n, time_opt->makespan);
  const double epsilon_computed = compute_energy_threshold(set, seed);
  const double epsilon = options.epsilon_override ? *options.epsilon_override : epsilon_computed;

  Thresholds th{epsilon, compute_size_thresholds(set, epsilon)};
  HepoptaRun run{TimeOptResult{std::move(seed), time_opt->makespan}, std::move(th), Memo(p, n),
                 ParetoCell{}, {}};

  const bool found = hepopta_kernel(set, n, 0, run.thresholds, run.memo, run.root);
  if (!found) throw BrokenChain("kernel found no solution for a feasible workload");
  run.front = build_pareto_sols(set, run.memo, run.root, n);
  return run;
}

/// The globally Pareto-optimal front for (execution time, dynamic energy).
inline std::optional<ParetoFront> solve_hepopt(const ProfileSet& set, std::uint64_t n) {
  auto run = solve_hepopt_detailed(set, n);
  if (!run) return std::nullopt;
  return std::move(run->front);
}

}  // namespace biopt
