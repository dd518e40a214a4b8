#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <charconv>
#include <fstream>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace biopt {

/// A row of a profile file was syntactically unusable.
struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Ingested data violated a model invariant (non-positive value, duplicate
/// size, empty set, ...).
struct ValidationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

namespace detail {

/// Serializes a double with 17 significant digits, enough to round-trip
/// bit-exactly through text.
inline std::string fmt_g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

inline std::optional<double> parse_double(std::string_view s) {
  double v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

inline std::optional<std::uint64_t> parse_u64(std::string_view s) {
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

}  // namespace detail

/// One tabulated data point: running `size` work units costs `time` seconds
/// and `energy` joules of dynamic energy.
struct ProfilePoint {
  std::uint64_t size = 0;
  double time = 0;
  double energy = 0;
};

enum class Channel { time, energy };

/// A processor's discrete time/energy profile. Points are kept sorted by
/// size; `by_energy` / `by_time` are index permutations giving the points in
/// non-decreasing energy / time order (ties broken by size).
class DiscreteProfile {
 public:
  DiscreteProfile(std::string processor_id, std::vector<ProfilePoint> points)
      : id_(std::move(processor_id)), points_(std::move(points)) {
    if (points_.empty()) throw ValidationError("profile '" + id_ + "' has no points");
    std::sort(points_.begin(), points_.end(),
              [](const ProfilePoint& a, const ProfilePoint& b) { return a.size < b.size; });
    for (std::size_t i = 0; i < points_.size(); ++i) {
      const auto& pt = points_[i];
      if (pt.size < 1) throw ValidationError("profile '" + id_ + "': size must be >= 1");
      if (!(pt.time > 0)) throw ValidationError("profile '" + id_ + "': time must be > 0");
      if (!(pt.energy > 0)) throw ValidationError("profile '" + id_ + "': energy must be > 0");
      if (i > 0 && points_[i - 1].size == pt.size)
        throw ValidationError("profile '" + id_ + "': duplicate size " + std::to_string(pt.size));
    }
    by_energy_.resize(points_.size());
    by_time_.resize(points_.size());
    for (std::size_t i = 0; i < points_.size(); ++i) by_energy_[i] = by_time_[i] = i;
    std::sort(by_energy_.begin(), by_energy_.end(), [&](std::size_t a, std::size_t b) {
      if (points_[a].energy != points_[b].energy) return points_[a].energy < points_[b].energy;
      return points_[a].size < points_[b].size;
    });
    std::sort(by_time_.begin(), by_time_.end(), [&](std::size_t a, std::size_t b) {
      if (points_[a].time != points_[b].time) return points_[a].time < points_[b].time;
      return points_[a].size < points_[b].size;
    });
  }

  const std::string& id() const { return id_; }
  const std::vector<ProfilePoint>& points() const { return points_; }
  const std::vector<std::size_t>& by_energy() const { return by_energy_; }
  const std::vector<std::size_t>& by_time() const { return by_time_; }

  /// Cardinality m of the profile.
  std::size_t cardinality() const { return points_.size(); }

  const ProfilePoint* find(std::uint64_t size) const {
    auto it = std::lower_bound(points_.begin(), points_.end(), size,
                               [](const ProfilePoint& p, std::uint64_t s) { return p.size < s; });
    if (it == points_.end() || it->size != size) return nullptr;
    return &*it;
  }

  /// Table read: 0 for a zero size, the stored value for a tabulated size,
  /// nothing otherwise.
  std::optional<double> lookup(std::uint64_t size, Channel ch) const {
    if (size == 0) return 0.0;
    const ProfilePoint* pt = find(size);
    if (!pt) return std::nullopt;
    return ch == Channel::time ? pt->time : pt->energy;
  }
  std::optional<double> lookup_time(std::uint64_t size) const { return lookup(size, Channel::time); }
  std::optional<double> lookup_energy(std::uint64_t size) const { return lookup(size, Channel::energy); }

  std::uint64_t max_size() const { return points_.back().size; }

  /// Largest tabulated size whose energy is <= bound; 0 if none qualifies.
  std::uint64_t max_size_with_energy_at_most(double bound) const {
    std::uint64_t best = 0;
    for (const auto& pt : points_)
      if (pt.energy <= bound && pt.size > best) best = pt.size;
    return best;
  }

 private:
  std::string id_;
  std::vector<ProfilePoint> points_;
  std::vector<std::size_t> by_energy_;
  std::vector<std::size_t> by_time_;
};

/// The p profiles of a platform plus optional base (static) power in watts.
/// Immutable after construction; safe to share across concurrent solves.
class ProfileSet {
 public:
  explicit ProfileSet(std::vector<DiscreteProfile> profiles,
                      std::optional<double> base_power = std::nullopt)
      : profiles_(std::move(profiles)), base_power_(base_power) {
    if (profiles_.empty()) throw ValidationError("profile set is empty");
    if (base_power_ && !(*base_power_ >= 0)) throw ValidationError("base power must be >= 0");
    for (std::size_t i = 0; i < profiles_.size(); ++i)
      for (std::size_t j = i + 1; j < profiles_.size(); ++j)
        if (profiles_[i].id() == profiles_[j].id())
          throw ValidationError("duplicate processor id '" + profiles_[i].id() + "'");
  }

  std::size_t size() const { return profiles_.size(); }
  const DiscreteProfile& operator[](std::size_t i) const { return profiles_[i]; }
  auto begin() const { return profiles_.begin(); }
  auto end() const { return profiles_.end(); }
  std::optional<double> base_power() const { return base_power_; }

  /// Maximum cardinality m over the profiles.
  std::size_t max_cardinality() const {
    std::size_t m = 0;
    for (const auto& pr : profiles_) m = std::max(m, pr.cardinality());
    return m;
  }

  /// Sum of per-processor maximum sizes; any workload above it is infeasible.
  std::uint64_t total_max_size() const {
    std::uint64_t s = 0;
    for (const auto& pr : profiles_) s += pr.max_size();
    return s;
  }

 private:
  std::vector<DiscreteProfile> profiles_;
  std::optional<double> base_power_;
};

/// Per-processor shares of a workload; each entry is 0 or a tabulated size.
using Distribution = std::vector<std::uint64_t>;

inline std::uint64_t distribution_total(const Distribution& x) {
  std::uint64_t s = 0;
  for (auto v : x) s += v;
  return s;
}

inline std::size_t active_count(const Distribution& x) {
  std::size_t c = 0;
  for (auto v : x) c += (v != 0);
  return c;
}

/// Total dynamic energy of a distribution; throws if a share is untabulated.
inline double distribution_energy(const ProfileSet& set, const Distribution& x) {
  double e = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    auto v = set[i].lookup_energy(x[i]);
    if (!v) throw std::invalid_argument("share not tabulated for processor " + set[i].id());
    e += *v;
  }
  return e;
}

/// Parallel execution time (makespan) of a distribution.
inline double distribution_time(const ProfileSet& set, const Distribution& x) {
  double t = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    auto v = set[i].lookup_time(x[i]);
    if (!v) throw std::invalid_argument("share not tabulated for processor " + set[i].id());
    t = std::max(t, *v);
  }
  return t;
}

// ---------------------------------------------------------------------------
// File ingestion. Two equivalent formats:
//   delimited:   header `processor,size,time,energy`, one point per row
//   structured:  `processor <id>` block lines followed by `size time energy`
//                rows; `#` starts a comment
// ---------------------------------------------------------------------------

enum class ProfileFormat { delimited, structured };

namespace detail {

struct RawRow {
  std::string proc;
  std::uint64_t size;
  double time, energy;
};

inline ProfileSet build_profile_set(const std::vector<RawRow>& rows) {
  if (rows.empty()) throw ValidationError("no profile rows");
  std::vector<std::string> order;
  std::vector<std::vector<ProfilePoint>> points;
  for (const auto& r : rows) {
    std::size_t idx = order.size();
    for (std::size_t i = 0; i < order.size(); ++i)
      if (order[i] == r.proc) { idx = i; break; }
    if (idx == order.size()) {
      order.push_back(r.proc);
      points.emplace_back();
    }
    for (const auto& pt : points[idx])
      if (pt.size == r.size)
        throw ValidationError("duplicate size " + std::to_string(r.size) + " for processor " + r.proc);
    points[idx].push_back({r.size, r.time, r.energy});
  }
  std::vector<DiscreteProfile> profiles;
  profiles.reserve(order.size());
  for (std::size_t i = 0; i < order.size(); ++i)
    profiles.emplace_back(order[i], std::move(points[i]));
  return ProfileSet(std::move(profiles));
}

}  // namespace detail

inline ProfileSet read_profiles(std::istream& in, ProfileFormat format) {
  std::vector<detail::RawRow> rows;
  std::string line;
  std::size_t lineno = 0;
  if (format == ProfileFormat::delimited) {
    bool header_seen = false;
    while (std::getline(in, line)) {
      ++lineno;
      std::string_view sv = detail::trim(line);
      if (sv.empty() || sv.front() == '#') continue;
      if (!header_seen) {
        if (sv != "processor,size,time,energy")
          throw ParseError("line " + std::to_string(lineno) + ": expected header 'processor,size,time,energy'");
        header_seen = true;
        continue;
      }
      std::string_view fields[4];
      std::size_t n = 0;
      while (n < 4) {
        auto pos = sv.find(',');
        fields[n++] = detail::trim(sv.substr(0, pos));
        if (pos == std::string_view::npos) break;
        sv.remove_prefix(pos + 1);
      }
      if (n != 4 || sv.find(',') != std::string_view::npos)
        throw ParseError("line " + std::to_string(lineno) + ": expected 4 comma-separated fields");
      auto size = detail::parse_u64(fields[1]);
      auto time = detail::parse_double(fields[2]);
      auto energy = detail::parse_double(fields[3]);
      if (fields[0].empty() || !size || !time || !energy)
        throw ParseError("line " + std::to_string(lineno) + ": malformed row");
      rows.push_back({std::string(fields[0]), *size, *time, *energy});
    }
  } else {
    std::string current;
    while (std::getline(in, line)) {
      ++lineno;
      std::string_view sv = detail::trim(line);
      if (sv.empty() || sv.front() == '#') continue;
      if (sv.starts_with("processor")) {
        std::string_view id = detail::trim(sv.substr(9));
        if (id.empty()) throw ParseError("line " + std::to_string(lineno) + ": missing processor id");
        current = std::string(id);
        continue;
      }
      if (current.empty())
        throw ParseError("line " + std::to_string(lineno) + ": point before any 'processor' line");
      std::istringstream iss{std::string(sv)};
      std::string f1, f2, f3, rest;
      iss >> f1 >> f2 >> f3;
      if (!iss || (iss >> rest))
        throw ParseError("line " + std::to_string(lineno) + ": expected 'size time energy'");
      auto size = detail::parse_u64(f1);
      auto time = detail::parse_double(f2);
      auto energy = detail::parse_double(f3);
      if (!size || !time || !energy)
        throw ParseError("line " + std::to_string(lineno) + ": malformed point");
      rows.push_back({current, *size, *time, *energy});
    }
  }
  return detail::build_profile_set(rows);
}

/// Sniffs the format from the first non-comment line.
inline ProfileFormat detect_profile_format(std::istream& in) {
  auto pos = in.tellg();
  std::string line;
  ProfileFormat fmt = ProfileFormat::delimited;
  while (std::getline(in, line)) {
    std::string_view sv = detail::trim(line);
    if (sv.empty() || sv.front() == '#') continue;
    fmt = (sv.find(',') != std::string_view::npos) ? ProfileFormat::delimited
                                                   : ProfileFormat::structured;
    break;
  }
  in.clear();
  in.seekg(pos);
  return fmt;
}

inline ProfileSet load_profiles(const std::string& path, std::optional<ProfileFormat> format = std::nullopt) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open profile file: " + path);
  ProfileFormat fmt = format ? *format : detect_profile_format(in);
  return read_profiles(in, fmt);
}

inline void write_profiles(std::ostream& out, const ProfileSet& set,
                           ProfileFormat format = ProfileFormat::delimited) {
  if (format == ProfileFormat::delimited) {
    out << "processor,size,time,energy\n";
    for (const auto& pr : set)
      for (const auto& pt : pr.points())
        out << pr.id() << ',' << pt.size << ',' << detail::fmt_g17(pt.time) << ','
            << detail::fmt_g17(pt.energy) << '\n';
  } else {
    for (const auto& pr : set) {
      out << "processor " << pr.id() << '\n';
      for (const auto& pt : pr.points())
        out << pt.size << ' ' << detail::fmt_g17(pt.time) << ' ' << detail::fmt_g17(pt.energy) << '\n';
    }
  }
}

}  // namespace biopt
