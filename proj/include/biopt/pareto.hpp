#pragma once

#include <cmath>
#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include "biopt/profile.hpp"

namespace biopt {

/// Relative-tolerance equality for accumulated float quantities. Sums of the
/// same table values can differ in the last bits across summation orders, so
/// tie-break equality uses this; ordering stays exact.
inline bool nearly_equal(double a, double b, double rel = 1e-9) {
  if (a == b) return true;
  return std::fabs(a - b) <= rel * std::max(std::fabs(a), std::fabs(b));
}

/// One Pareto-optimal solution for (dynamic energy, execution time).
struct ParetoSolution {
  double energy = 0;
  double time = 0;
  Distribution distribution;
};

/// Front sorted by strictly increasing energy / strictly decreasing time.
using ParetoFront = std::vector<ParetoSolution>;

/// One Pareto-optimal solution for (total energy, execution time).
struct TotalSolution {
  double total_energy = 0;
  double time = 0;
  Distribution distribution;
};

using TotalFront = std::vector<TotalSolution>;

inline double objective_energy(const ParetoSolution& s) { return s.energy; }
inline double objective_energy(const TotalSolution& s) { return s.total_energy; }

/// Checks the front-shape invariant: energies strictly increase, times
/// strictly decrease (which together imply no pair dominates another).
template <typename Front>
bool front_strictly_ordered(const Front& front) {
  for (std::size_t i = 1; i < front.size(); ++i) {
    double e_prev = objective_energy(front[i - 1]);
    double e_cur = objective_energy(front[i]);
    if (!(e_prev < e_cur) || !(front[i].time < front[i - 1].time)) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Front serialization: `energy,time,x_0,...,x_{p-1}` (or `total_energy,...`),
// reals printed with 17 significant digits.
// ---------------------------------------------------------------------------

inline void write_front(std::ostream& out, const ParetoFront& front, std::size_t p) {
  out << "energy,time";
  for (std::size_t i = 0; i < p; ++i) out << ",x_" << i;
  out << '\n';
  for (const auto& s : front) {
    out << detail::fmt_g17(s.energy) << ',' << detail::fmt_g17(s.time);
    for (auto x : s.distribution) out << ',' << x;
    out << '\n';
  }
}

inline void write_front(std::ostream& out, const TotalFront& front, std::size_t p) {
  out << "total_energy,time";
  for (std::size_t i = 0; i < p; ++i) out << ",x_" << i;
  out << '\n';
  for (const auto& s : front) {
    out << detail::fmt_g17(s.total_energy) << ',' << detail::fmt_g17(s.time);
    for (auto x : s.distribution) out << ',' << x;
    out << '\n';
  }
}

struct ParsedFront {
  bool total = false;  // header carried total_energy instead of energy
  ParetoFront solutions;
};

inline ParsedFront read_front(std::istream& in) {
  ParsedFront result;
  std::string line;
  std::size_t lineno = 0;
  bool header_seen = false;
  std::size_t p = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string_view sv = detail::trim(line);
    if (sv.empty() || sv.front() == '#') continue;
    std::vector<std::string_view> fields;
    while (true) {
      auto pos = sv.find(',');
      fields.push_back(detail::trim(sv.substr(0, pos)));
      if (pos == std::string_view::npos) break;
      sv.remove_prefix(pos + 1);
    }
    if (!header_seen) {
      if (fields.size() < 2 || (fields[0] != "energy" && fields[0] != "total_energy") || fields[1] != "time")
        throw ParseError("line " + std::to_string(lineno) + ": expected front header");
      result.total = fields[0] == "total_energy";
      p = fields.size() - 2;
      header_seen = true;
      continue;
    }
    if (fields.size() != p + 2)
      throw ParseError("line " + std::to_string(lineno) + ": expected " + std::to_string(p + 2) + " fields");
    ParetoSolution s;
    auto e = detail::parse_double(fields[0]);
    auto t = detail::parse_double(fields[1]);
    if (!e || !t) throw ParseError("line " + std::to_string(lineno) + ": malformed objective values");
    s.energy = *e;
    s.time = *t;
    for (std::size_t i = 0; i < p; ++i) {
      auto x = detail::parse_u64(fields[2 + i]);
      if (!x) throw ParseError("line " + std::to_string(lineno) + ": malformed share");
      s.distribution.push_back(*x);
    }
    result.solutions.push_back(std::move(s));
  }
  if (!header_seen) throw ParseError("empty front file");
  return result;
}

}  // namespace biopt
