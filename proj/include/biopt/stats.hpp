#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <random>
#include <span>
#include <stdexcept>
#include <vector>

namespace biopt::stats {

/// The relative half-width criterion is undefined for a zero sample mean.
struct ZeroMean : std::domain_error {
  using std::domain_error::domain_error;
};

namespace detail {

/// Regularized incomplete beta I_x(a, b) by the standard continued fraction
/// (modified Lentz), accurate to ~1e-14 for the arguments used here.
inline double incomplete_beta_cf(double a, double b, double x) {
  constexpr double tiny = 1e-300;
  constexpr double eps = 1e-15;
  const double qab = a + b, qap = a + 1, qam = a - 1;
  double c = 1, d = 1 - qab * x / qap;
  if (std::fabs(d) < tiny) d = tiny;
  d = 1 / d;
  double h = d;
  for (int m = 1; m <= 500; ++m) {
    const int m2 = 2 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1 + aa * d;
    if (std::fabs(d) < tiny) d = tiny;
    c = 1 + aa / c;
    if (std::fabs(c) < tiny) c = tiny;
    d = 1 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1 + aa * d;
    if (std::fabs(d) < tiny) d = tiny;
    c = 1 + aa / c;
    if (std::fabs(c) < tiny) c = tiny;
    d = 1 / d;
    const double del = d * c;
    h *= del;
    if (std::fabs(del - 1) < eps) break;
  }
  return h;
}

inline double incomplete_beta(double a, double b, double x) {
  if (x <= 0) return 0;
  if (x >= 1) return 1;
  const double ln_bt = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                       a * std::log(x) + b * std::log1p(-x);
  const double bt = std::exp(ln_bt);
  if (x < (a + 1) / (a + b + 2)) return bt * incomplete_beta_cf(a, b, x) / a;
  return 1 - bt * incomplete_beta_cf(b, a, 1 - x) / b;
}

/// CDF of Student's t with df degrees of freedom.
inline double t_cdf(double t, double df) {
  const double ib = incomplete_beta(df / 2, 0.5, df / (df + t * t));
  return t >= 0 ? 1 - 0.5 * ib : 0.5 * ib;
}

}  // namespace detail

/// Inverse CDF of Student's t distribution, by bisection on the monotone CDF.
inline double student_t_quantile(double prob, double df) {
  if (!(prob > 0 && prob < 1)) throw std::invalid_argument("probability must be in (0,1)");
  if (!(df > 0)) throw std::invalid_argument("degrees of freedom must be > 0");
  if (prob == 0.5) return 0;
  if (prob < 0.5) return -student_t_quantile(1 - prob, df);
  double lo = 0, hi = 1;
  while (detail::t_cdf(hi, df) < prob) {
    hi *= 2;
    if (hi > 1e300) return std::numeric_limits<double>::infinity();
  }
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (detail::t_cdf(mid, df) < prob)
      lo = mid;
    else
      hi = mid;
    if (hi - lo <= 1e-14 * hi) break;
  }
  return 0.5 * (lo + hi);
}

/// Half-width-to-mean convergence test: true when
///   t(confidence, reps-1) * sd / sqrt(reps) / mean < precision.
inline bool cal_accuracy(double confidence, std::size_t reps, std::span<const double> samples,
                         double precision) {
  if (reps < 2) throw std::invalid_argument("need at least two repetitions");
  if (samples.size() < reps) throw std::invalid_argument("fewer samples than repetitions");
  double sum = 0;
  for (std::size_t i = 0; i < reps; ++i) sum += samples[i];
  if (sum == 0) throw ZeroMean("sample mean is zero");
  const double mean = sum / static_cast<double>(reps);
  double ss = 0;
  for (std::size_t i = 0; i < reps; ++i) {
    const double d = samples[i] - mean;
    ss += d * d;
  }
  const double sd = std::sqrt(ss / static_cast<double>(reps - 1));
  const double half_width = std::fabs(student_t_quantile(confidence, static_cast<double>(reps - 1))) *
                            sd / std::sqrt(static_cast<double>(reps));
  return half_width / mean < precision;
}

struct TtestConfig {
  std::size_t min_reps = 5;
  std::size_t max_reps = 50;
  double max_elapsed = 3600;  // seconds of accumulated observation
  double confidence = 0.95;
  double precision = 0.1;
};

enum class StopReason { converged, max_reps, max_elapsed };

struct TtestOutcome {
  std::size_t reps_used = 0;
  double elapsed = 0;                // max over channels of accumulated sums
  std::vector<double> means;         // one per channel
  StopReason stop_reason = StopReason::max_reps;
};

/// A sampler yields one multi-channel observation per invocation; the channel
/// count must stay constant across calls.
using Sampler = std::function<std::vector<double>()>;

/// Repeats the sampler until every channel passes cal_accuracy, the repetition
/// budget runs out, or the accumulated elapsed maximum exceeds the budget.
inline TtestOutcome mean_with_ttest(const Sampler& sampler, const TtestConfig& config) {
  if (config.min_reps < 1 || config.min_reps > config.max_reps)
    throw std::invalid_argument("need 1 <= min_reps <= max_reps");
  if (!(config.precision > 0)) throw std::invalid_argument("precision must be > 0");
  if (!(config.confidence > 0 && config.confidence < 1))
    throw std::invalid_argument("confidence must be in (0,1)");

  std::vector<std::vector<double>> history;  // per channel
  std::vector<double> sums;
  std::size_t reps = 0;
  bool stop = false;
  StopReason reason = StopReason::max_reps;

  while (reps < config.max_reps && !stop) {
    std::vector<double> obs = sampler();
    if (history.empty()) {
      history.resize(obs.size());
      sums.assign(obs.size(), 0.0);
    }
    if (obs.size() != history.size()) throw std::invalid_argument("sampler changed channel count");
    for (std::size_t c = 0; c < obs.size(); ++c) {
      history[c].push_back(obs[c]);
      sums[c] += obs[c];
    }
    if (reps >= config.min_reps) {
      bool all = true;
      for (std::size_t c = 0; c < history.size() && all; ++c)
        all = cal_accuracy(config.confidence, reps + 1, history[c], config.precision);
      if (all) {
        stop = true;
        reason = StopReason::converged;
      }
      double elapsed = 0;
      for (double s : sums) elapsed = std::max(elapsed, s);
      if (!stop && elapsed > config.max_elapsed) {
        stop = true;
        reason = StopReason::max_elapsed;
      }
    }
    ++reps;
  }

  TtestOutcome out;
  out.reps_used = reps;
  for (double s : sums) out.elapsed = std::max(out.elapsed, s);
  out.means.resize(sums.size());
  for (std::size_t c = 0; c < sums.size(); ++c) out.means[c] = sums[c] / static_cast<double>(reps);
  out.stop_reason = stop ? reason : StopReason::max_reps;
  return out;
}

// ---------------------------------------------------------------------------
// Deterministic sampler presets for simulation and tests.
// ---------------------------------------------------------------------------

namespace detail {

inline double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace detail

inline Sampler constant_sampler(double value, std::size_t channels = 1) {
  return [=] { return std::vector<double>(channels, value); };
}

/// Box-Muller normal deviates from a seeded engine.
inline Sampler gaussian_sampler(double mean, double sd, std::uint64_t seed,
                                std::size_t channels = 1) {
  auto rng = std::make_shared<std::mt19937_64>(seed);
  return [=] {
    std::vector<double> obs(channels);
    for (auto& v : obs) {
      double u1 = detail::uniform01(*rng);
      while (u1 == 0) u1 = detail::uniform01(*rng);
      const double u2 = detail::uniform01(*rng);
      v = mean + sd * std::sqrt(-2 * std::log(u1)) * std::cos(2 * 3.14159265358979323846 * u2);
    }
    return obs;
  };
}

/// Mixture of two normals with equal weight.
inline Sampler bimodal_sampler(double mean_lo, double mean_hi, double sd, std::uint64_t seed,
                               std::size_t channels = 1) {
  auto rng = std::make_shared<std::mt19937_64>(seed);
  return [=] {
    std::vector<double> obs(channels);
    for (auto& v : obs) {
      const double mean = (*rng)() & 1 ? mean_hi : mean_lo;
      double u1 = detail::uniform01(*rng);
      while (u1 == 0) u1 = detail::uniform01(*rng);
      const double u2 = detail::uniform01(*rng);
      v = mean + sd * std::sqrt(-2 * std::log(u1)) * std::cos(2 * 3.14159265358979323846 * u2);
    }
    return obs;
  };
}

}  // namespace biopt::stats
