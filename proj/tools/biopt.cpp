// Command-line front end: profile ingestion, exact bi-objective solving,
// brute-force verification, synthetic generation, comparison metrics, and a
// measurement-convergence simulator.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "biopt/gen.hpp"
#include "biopt/hepopta.hpp"
#include "biopt/htpopta.hpp"
#include "biopt/metrics.hpp"
#include "biopt/oracle.hpp"
#include "biopt/pareto.hpp"
#include "biopt/profile.hpp"
#include "biopt/stats.hpp"
#include "biopt/timeopt.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitMismatch = 1;
constexpr int kExitUsage = 2;
constexpr int kExitInfeasible = 3;
constexpr int kExitIo = 4;
constexpr int kExitLimit = 5;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct InfeasibleError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string fnv1a_digest(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open input for hashing: " + path);
  std::uint64_t h = 1469598103934665603ull;
  char buf[4096];
  while (in.read(buf, sizeof(buf)) || in.gcount()) {
    for (std::streamsize i = 0; i < in.gcount(); ++i) {
      h ^= static_cast<unsigned char>(buf[i]);
      h *= 1099511628211ull;
    }
  }
  char hex[24];
  std::snprintf(hex, sizeof(hex), "fnv1a:%016llx", static_cast<unsigned long long>(h));
  return hex;
}

/// Tracks one run's provenance; written as `<stem>.manifest.json` next to the
/// primary output (or `biopt_<command>.manifest.json` in the working
/// directory when the run only prints).
class Manifest {
 public:
  Manifest(std::string command) : command_(std::move(command)) {}

  void flag(const std::string& key, const std::string& value) { flags_[key] = value; }
  void flag(const std::string& key, double value) { flags_[key] = biopt::detail::fmt_g17(value); }
  void flag(const std::string& key, std::uint64_t value) { flags_[key] = std::to_string(value); }
  void input(const std::string& path) { inputs_[path] = fnv1a_digest(path); }
  void output(const std::string& path) { outputs_.push_back(path); }

  void write(const std::string& primary_output) const {
    namespace fs = std::filesystem;
    fs::path manifest_path;
    if (!primary_output.empty()) {
      manifest_path = fs::path(primary_output);
      manifest_path.replace_extension(".manifest.json");
    } else {
      manifest_path = "biopt_" + command_ + ".manifest.json";
    }
    nlohmann::json j;
    j["command"] = command_;
    j["flags"] = flags_;
    j["inputs"] = inputs_;
    j["outputs"] = outputs_;
    std::ofstream out(manifest_path);
    if (!out) throw IoError("cannot write manifest: " + manifest_path.string());
    out << j.dump(2) << '\n';
  }

 private:
  std::string command_;
  std::map<std::string, std::string> flags_;
  std::map<std::string, std::string> inputs_;
  std::vector<std::string> outputs_;
};

biopt::ProfileSet load_or_die(const std::string& path) {
  try {
    return biopt::load_profiles(path);
  } catch (const biopt::ParseError& e) {
    throw IoError(std::string("profile file: ") + e.what());
  }
}

template <typename Front>
void write_front_file(const std::string& path, const Front& front, std::size_t p) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path);
  biopt::write_front(out, front, p);
}

void write_plot_script(const std::string& front_path, const std::string& script_path,
                       const std::string& ylabel) {
  std::ofstream out(script_path);
  if (!out) throw IoError("cannot write " + script_path);
  out << "set datafile separator ','\n"
      << "set xlabel 'execution time (s)'\n"
      << "set ylabel '" << ylabel << "'\n"
      << "set key off\n"
      << "plot '" << front_path << "' every ::1 using 2:1 with linespoints pt 7\n"
      << "pause -1\n";
}

void enforce_cell_budget(std::size_t p, std::uint64_t n, std::uint64_t max_cells) {
  const std::uint64_t levels = p >= 3 ? p - 2 : 1;
  if (n > max_cells || levels * (n + 1) > max_cells)
    throw UsageError("workload needs more than --max-cells memo cells; raise the limit");
}

// --- solve ------------------------------------------------------------------

struct SolveArgs {
  std::string profiles;
  std::uint64_t n = 0;
  std::string objective = "dynamic";
  double base_power = -1;
  std::string out = "front.csv";
  bool emit_plot = false;
  std::uint64_t max_cells = 10000000;
};

int run_solve(const SolveArgs& args) {
  if (args.objective == "total" && args.base_power < 0)
    throw UsageError("--objective total requires --base-power");
  biopt::ProfileSet set = load_or_die(args.profiles);
  enforce_cell_budget(set.size(), args.n, args.max_cells);

  Manifest manifest("solve");
  manifest.flag("profiles", args.profiles);
  manifest.flag("n", args.n);
  manifest.flag("objective", args.objective);
  if (args.base_power >= 0) manifest.flag("base_power", args.base_power);
  manifest.input(args.profiles);

  std::size_t rows = 0;
  if (args.objective == "dynamic") {
    auto front = biopt::solve_hepopt(set, args.n);
    if (!front) throw InfeasibleError("workload is not expressible with these profiles");
    write_front_file(args.out, *front, set.size());
    rows = front->size();
  } else {
    auto front = biopt::solve_htpopt(set, args.n, args.base_power);
    if (!front) throw InfeasibleError("workload is not expressible with these profiles");
    write_front_file(args.out, *front, set.size());
    rows = front->size();
  }
  manifest.output(args.out);
  if (args.emit_plot) {
    std::filesystem::path script(args.out);
    script.replace_extension(".gp");
    write_plot_script(args.out, script.string(),
                      args.objective == "dynamic" ? "dynamic energy (J)" : "total energy (J)");
    manifest.output(script.string());
  }
  manifest.write(args.out);
  std::cout << rows << " front solution(s) written to " << args.out << '\n';
  return kExitOk;
}

// --- timeopt ----------------------------------------------------------------

struct TimeoptArgs {
  std::string profiles;
  std::uint64_t n = 0;
  std::string out = "timeopt.csv";
  std::uint64_t max_cells = 10000000;
};

int run_timeopt(const TimeoptArgs& args) {
  biopt::ProfileSet set = load_or_die(args.profiles);
  enforce_cell_budget(set.size(), args.n, args.max_cells);
  auto res = biopt::solve_time_optimal(set, args.n);
  if (!res) throw InfeasibleError("workload is not expressible with these profiles");

  Manifest manifest("timeopt");
  manifest.flag("profiles", args.profiles);
  manifest.flag("n", args.n);
  manifest.input(args.profiles);

  std::ofstream out(args.out);
  if (!out) throw IoError("cannot write " + args.out);
  out << "makespan";
  for (std::size_t i = 0; i < set.size(); ++i) out << ",x_" << i;
  out << '\n' << biopt::detail::fmt_g17(res->makespan);
  for (auto x : res->distribution) out << ',' << x;
  out << '\n';
  manifest.output(args.out);
  manifest.write(args.out);

  std::cout << "makespan " << biopt::detail::fmt_g17(res->makespan) << " distribution";
  for (auto x : res->distribution) std::cout << ' ' << x;
  std::cout << '\n';
  return kExitOk;
}

// --- oracle -----------------------------------------------------------------

struct OracleArgs {
  std::string profiles;
  std::uint64_t n = 0;
  std::string objective = "dynamic";
  double base_power = -1;
  double limit = biopt::oracle::kDefaultEnumerationLimit;
  std::string out = "oracle_front.csv";
  std::uint64_t max_cells = 10000000;
};

template <typename Front>
bool fronts_match(const Front& a, const Front& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!biopt::nearly_equal(biopt::objective_energy(a[i]), biopt::objective_energy(b[i])))
      return false;
    if (!biopt::nearly_equal(a[i].time, b[i].time)) return false;
    if (a[i].distribution != b[i].distribution) return false;
  }
  return true;
}

template <typename Front>
void print_front(const std::string& label, const Front& front, std::size_t p) {
  std::cout << label << ":\n";
  biopt::write_front(std::cout, front, p);
}

int run_oracle(const OracleArgs& args) {
  if (args.objective == "total" && args.base_power < 0)
    throw UsageError("--objective total requires --base-power");
  biopt::ProfileSet set = load_or_die(args.profiles);
  enforce_cell_budget(set.size(), args.n, args.max_cells);

  Manifest manifest("oracle");
  manifest.flag("profiles", args.profiles);
  manifest.flag("n", args.n);
  manifest.flag("objective", args.objective);
  manifest.flag("limit", args.limit);
  if (args.base_power >= 0) manifest.flag("base_power", args.base_power);
  manifest.input(args.profiles);

  bool match = false;
  if (args.objective == "dynamic") {
    auto solver = biopt::solve_hepopt(set, args.n);
    auto brute = biopt::oracle::brute_pareto(set, args.n, args.limit);
    if (!solver) {
      if (!brute.empty()) {
        std::cout << "MISMATCH (solver infeasible, oracle found solutions)\n";
        return kExitMismatch;
      }
      throw InfeasibleError("workload is not expressible with these profiles");
    }
    match = fronts_match(*solver, brute);
    print_front("solver front", *solver, set.size());
    print_front("oracle front", brute, set.size());
    write_front_file(args.out, *solver, set.size());
  } else {
    auto solver = biopt::solve_htpopt(set, args.n, args.base_power);
    auto brute = biopt::oracle::brute_total_pareto(set, args.n, args.base_power, args.limit);
    if (!solver) {
      if (!brute.empty()) {
        std::cout << "MISMATCH (solver infeasible, oracle found solutions)\n";
        return kExitMismatch;
      }
      throw InfeasibleError("workload is not expressible with these profiles");
    }
    match = fronts_match(*solver, brute);
    print_front("solver front", *solver, set.size());
    print_front("oracle front", brute, set.size());
    write_front_file(args.out, *solver, set.size());
  }
  manifest.output(args.out);
  manifest.write(args.out);
  std::cout << (match ? "MATCH" : "MISMATCH") << '\n';
  return match ? kExitOk : kExitMismatch;
}

// --- gen --------------------------------------------------------------------

struct GenCommonArgs {
  std::string out = "profiles.csv";
  std::string format = "delimited";
};

void write_generated(const biopt::ProfileSet& set, const GenCommonArgs& common, Manifest& manifest) {
  std::ofstream out(common.out);
  if (!out) throw IoError("cannot write " + common.out);
  biopt::write_profiles(out, set,
                        common.format == "structured" ? biopt::ProfileFormat::structured
                                                      : biopt::ProfileFormat::delimited);
  manifest.flag("format", common.format);
  manifest.output(common.out);
  manifest.write(common.out);
  std::cout << set.size() << " profile(s) written to " << common.out << '\n';
}

std::vector<double> parse_double_list(const std::string& csv) {
  std::vector<double> vals;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto v = biopt::detail::parse_double(biopt::detail::trim(item));
    if (!v) throw UsageError("malformed number list: " + csv);
    vals.push_back(*v);
  }
  if (vals.empty()) throw UsageError("empty number list");
  return vals;
}

std::vector<std::uint64_t> parse_grid(const std::string& text) {
  // lo:hi[:step]
  std::vector<std::uint64_t> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ':')) {
    auto v = biopt::detail::parse_u64(biopt::detail::trim(item));
    if (!v) throw UsageError("malformed grid spec: " + text);
    parts.push_back(*v);
  }
  if (parts.size() < 2 || parts.size() > 3) throw UsageError("grid spec must be lo:hi[:step]");
  const std::uint64_t lo = parts[0], hi = parts[1], step = parts.size() == 3 ? parts[2] : 1;
  if (!step || lo > hi) throw UsageError("grid spec must satisfy lo <= hi and step >= 1");
  std::vector<std::uint64_t> grid;
  for (std::uint64_t s = lo; s <= hi; s += step) grid.push_back(s);
  return grid;
}

// --- metrics ----------------------------------------------------------------

biopt::ParsedFront read_front_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open front file: " + path);
  return biopt::read_front(in);
}

// --- main -------------------------------------------------------------------

int dispatch(int argc, char** argv) {
  CLI::App app{"Exact bi-objective (time, energy) workload partitioning over discrete profiles"};
  app.require_subcommand(1);

  SolveArgs solve_args;
  auto* solve = app.add_subcommand("solve", "Compute a Pareto-optimal front");
  solve->add_option("--profiles", solve_args.profiles, "profile file")->required();
  solve->add_option("--n", solve_args.n, "workload size")->required();
  solve->add_option("--objective", solve_args.objective, "dynamic or total")
      ->check(CLI::IsMember({"dynamic", "total"}));
  solve->add_option("--base-power", solve_args.base_power, "base power in watts (total objective)");
  solve->add_option("--out", solve_args.out, "front table path");
  solve->add_flag("--emit-plot", solve_args.emit_plot, "also write a gnuplot script");
  solve->add_option("--max-cells", solve_args.max_cells, "memo cell budget");

  TimeoptArgs timeopt_args;
  auto* timeopt = app.add_subcommand("timeopt", "Compute a makespan-optimal distribution");
  timeopt->add_option("--profiles", timeopt_args.profiles)->required();
  timeopt->add_option("--n", timeopt_args.n)->required();
  timeopt->add_option("--out", timeopt_args.out);
  timeopt->add_option("--max-cells", timeopt_args.max_cells);

  OracleArgs oracle_args;
  auto* oracle_cmd = app.add_subcommand("oracle", "Cross-check the solver against enumeration");
  oracle_cmd->add_option("--profiles", oracle_args.profiles)->required();
  oracle_cmd->add_option("--n", oracle_args.n)->required();
  oracle_cmd->add_option("--objective", oracle_args.objective)
      ->check(CLI::IsMember({"dynamic", "total"}));
  oracle_cmd->add_option("--base-power", oracle_args.base_power);
  oracle_cmd->add_option("--limit", oracle_args.limit, "enumeration bound");
  oracle_cmd->add_option("--out", oracle_args.out);
  oracle_cmd->add_option("--max-cells", oracle_args.max_cells);

  auto* gen_cmd = app.add_subcommand("gen", "Generate profile files");
  gen_cmd->require_subcommand(1);
  GenCommonArgs gen_linear_common, gen_synth_common;
  std::string lin_a, lin_b, lin_grid;
  auto* gen_linear = gen_cmd->add_subcommand("linear", "Linear time/energy profiles");
  gen_linear->add_option("--a", lin_a, "time slopes, comma separated")->required();
  gen_linear->add_option("--b", lin_b, "energy slopes, comma separated")->required();
  gen_linear->add_option("--grid", lin_grid, "size grid lo:hi[:step]")->required();
  gen_linear->add_option("--out", gen_linear_common.out);
  gen_linear->add_option("--format", gen_linear_common.format)
      ->check(CLI::IsMember({"delimited", "structured"}));

  std::string synth_shape = "smooth";
  std::uint64_t synth_p = 2, synth_m = 8, synth_seed = 0;
  auto* gen_synth = gen_cmd->add_subcommand("synthetic", "Seeded smooth/jagged profiles");
  gen_synth->add_option("--shape", synth_shape)->check(CLI::IsMember({"smooth", "jagged"}));
  gen_synth->add_option("--p", synth_p, "processor count")->required();
  gen_synth->add_option("--m", synth_m, "points per profile")->required();
  gen_synth->add_option("--seed", synth_seed)->required();
  gen_synth->add_option("--out", gen_synth_common.out);
  gen_synth->add_option("--format", gen_synth_common.format)
      ->check(CLI::IsMember({"delimited", "structured"}));

  auto* metrics_cmd = app.add_subcommand("metrics", "Comparison metrics over saved fronts");
  metrics_cmd->require_subcommand(1);

  std::string tr_front, tr_out;
  double tr_band = 0.05;
  auto* m_tradeoff = metrics_cmd->add_subcommand("tradeoff", "Band trade-off of a front");
  m_tradeoff->add_option("--front", tr_front)->required();
  m_tradeoff->add_option("--band", tr_band);
  m_tradeoff->add_option("--out", tr_out);

  std::string imp_front, imp_baseline, imp_out;
  auto* m_improvement =
      metrics_cmd->add_subcommand("improvement", "Front endpoints vs a baseline solution");
  m_improvement->add_option("--front", imp_front)->required();
  m_improvement->add_option("--baseline", imp_baseline)->required();
  m_improvement->add_option("--out", imp_out);

  std::string base_profiles, base_out = "baseline.csv";
  std::uint64_t base_n = 0;
  double base_limit = biopt::oracle::kDefaultEnumerationLimit;
  auto* m_baseline = metrics_cmd->add_subcommand("baseline", "Load-balanced baseline solution");
  m_baseline->add_option("--profiles", base_profiles)->required();
  m_baseline->add_option("--n", base_n)->required();
  m_baseline->add_option("--limit", base_limit);
  m_baseline->add_option("--out", base_out);

  std::string ts_ep, ts_tp, ts_out;
  double ts_power = 0;
  auto* m_totalsave = metrics_cmd->add_subcommand(
      "totalsave", "Total-energy cost of optimizing dynamic energy only");
  m_totalsave->add_option("--ep-front", ts_ep)->required();
  m_totalsave->add_option("--tp-front", ts_tp)->required();
  m_totalsave->add_option("--base-power", ts_power)->required();
  m_totalsave->add_option("--out", ts_out);

  std::string add_components, add_parallel, add_out;
  auto* m_additive =
      metrics_cmd->add_subcommand("additive", "Parallel vs summed component energies");
  m_additive->add_option("--components", add_components)->required();
  m_additive->add_option("--parallel", add_parallel)->required();
  m_additive->add_option("--out", add_out);

  std::string tt_preset = "gaussian", tt_out;
  std::uint64_t tt_seed = 0, tt_channels = 1;
  double tt_mean = 100, tt_sd = 5, tt_value = 1, tt_mean_lo = 80, tt_mean_hi = 120;
  biopt::stats::TtestConfig tt_cfg;
  tt_cfg.min_reps = 5;
  tt_cfg.max_reps = 1000;
  auto* ttest = app.add_subcommand("ttest-sim", "Measurement-convergence harness on simulated samplers");
  ttest->add_option("--preset", tt_preset)->check(CLI::IsMember({"gaussian", "constant", "bimodal"}));
  ttest->add_option("--seed", tt_seed);
  ttest->add_option("--mean", tt_mean);
  ttest->add_option("--sd", tt_sd);
  ttest->add_option("--value", tt_value, "constant preset value");
  ttest->add_option("--mean-lo", tt_mean_lo);
  ttest->add_option("--mean-hi", tt_mean_hi);
  ttest->add_option("--channels", tt_channels);
  ttest->add_option("--cl", tt_cfg.confidence);
  ttest->add_option("--precision", tt_cfg.precision);
  ttest->add_option("--min-reps", tt_cfg.min_reps);
  ttest->add_option("--max-reps", tt_cfg.max_reps);
  ttest->add_option("--max-elapsed", tt_cfg.max_elapsed);
  ttest->add_option("--out", tt_out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  if (solve->parsed()) return run_solve(solve_args);
  if (timeopt->parsed()) return run_timeopt(timeopt_args);
  if (oracle_cmd->parsed()) return run_oracle(oracle_args);

  if (gen_cmd->parsed()) {
    if (gen_linear->parsed()) {
      biopt::gen::LinearSpec spec{parse_double_list(lin_a), parse_double_list(lin_b),
                                  parse_grid(lin_grid)};
      if (spec.time_slopes.size() != spec.energy_slopes.size())
        throw UsageError("--a and --b must list the same number of slopes");
      Manifest manifest("gen-linear");
      manifest.flag("a", lin_a);
      manifest.flag("b", lin_b);
      manifest.flag("grid", lin_grid);
      write_generated(biopt::gen::linear(spec), gen_linear_common, manifest);
      return kExitOk;
    }
    Manifest manifest("gen-synthetic");
    manifest.flag("shape", synth_shape);
    manifest.flag("p", synth_p);
    manifest.flag("m", synth_m);
    manifest.flag("seed", synth_seed);
    write_generated(biopt::gen::synthetic(synth_shape == "jagged" ? biopt::gen::Shape::jagged
                                                                  : biopt::gen::Shape::smooth,
                                          synth_p, synth_m, synth_seed),
                    gen_synth_common, manifest);
    return kExitOk;
  }

  if (metrics_cmd->parsed()) {
    auto emit = [&](const std::string& command, const std::string& out_path,
                    const std::vector<std::pair<std::string, double>>& values,
                    Manifest& manifest) {
      std::ostringstream text;
      for (const auto& [k, v] : values) text << k << '=' << biopt::detail::fmt_g17(v) << '\n';
      std::cout << text.str();
      if (!out_path.empty()) {
        std::ofstream out(out_path);
        if (!out) throw IoError("cannot write " + out_path);
        out << text.str();
        manifest.output(out_path);
      }
      manifest.write(out_path);
      (void)command;
    };

    if (m_tradeoff->parsed()) {
      auto front = read_front_file(tr_front);
      if (front.total) throw UsageError("tradeoff expects a dynamic-energy front");
      auto r = biopt::metrics::tradeoff_within_band(front.solutions, tr_band);
      Manifest manifest("metrics-tradeoff");
      manifest.flag("front", tr_front);
      manifest.flag("band", tr_band);
      manifest.input(tr_front);
      emit("metrics-tradeoff", tr_out,
           {{"perf_gain_percent", r.perf_gain_percent},
            {"energy_saving_percent", r.energy_saving_percent}},
           manifest);
      return kExitOk;
    }
    if (m_improvement->parsed()) {
      auto front = read_front_file(imp_front);
      auto baseline = read_front_file(imp_baseline);
      if (front.solutions.empty() || baseline.solutions.empty())
        throw UsageError("front and baseline files must be non-empty");
      double t_opt = front.solutions.front().time, e_opt = front.solutions.front().energy;
      for (const auto& s : front.solutions) {
        t_opt = std::min(t_opt, s.time);
        e_opt = std::min(e_opt, s.energy);
      }
      const auto& b = baseline.solutions.front();
      Manifest manifest("metrics-improvement");
      manifest.flag("front", imp_front);
      manifest.flag("baseline", imp_baseline);
      manifest.input(imp_front);
      manifest.input(imp_baseline);
      emit("metrics-improvement", imp_out,
           {{"perf_improvement_percent", biopt::metrics::perf_improvement(b.time, t_opt)},
            {"energy_saving_percent", biopt::metrics::energy_saving(b.energy, e_opt)}},
           manifest);
      return kExitOk;
    }
    if (m_baseline->parsed()) {
      biopt::ProfileSet set = load_or_die(base_profiles);
      auto lb = biopt::oracle::load_balanced(set, base_n, base_limit);
      if (!lb) throw InfeasibleError("workload is not expressible with these profiles");
      Manifest manifest("metrics-baseline");
      manifest.flag("profiles", base_profiles);
      manifest.flag("n", base_n);
      manifest.input(base_profiles);
      biopt::ParetoFront one{{lb->energy, lb->time, lb->distribution}};
      write_front_file(base_out, one, set.size());
      manifest.output(base_out);
      manifest.write(base_out);
      std::cout << "baseline written to " << base_out << '\n';
      return kExitOk;
    }
    if (m_totalsave->parsed()) {
      auto ep = read_front_file(ts_ep);
      auto tp = read_front_file(ts_tp);
      if (ep.total || !tp.total)
        throw UsageError("--ep-front must be a dynamic front and --tp-front a total front");
      biopt::TotalFront total;
      for (const auto& s : tp.solutions) total.push_back({s.energy, s.time, s.distribution});
      Manifest manifest("metrics-totalsave");
      manifest.flag("ep_front", ts_ep);
      manifest.flag("tp_front", ts_tp);
      manifest.flag("base_power", ts_power);
      manifest.input(ts_ep);
      manifest.input(ts_tp);
      emit("metrics-totalsave", ts_out,
           {{"total_energy_saving_percent", biopt::metrics::total_energy_saving_over_dynamic_optimal(
                                                ep.solutions, total, ts_power)}},
           manifest);
      return kExitOk;
    }
    // additive
    biopt::ProfileSet comps = load_or_die(add_components);
    biopt::ProfileSet par = load_or_die(add_parallel);
    if (par.size() != 1) throw UsageError("--parallel must contain exactly one profile");
    std::vector<biopt::DiscreteProfile> comp_list(comps.begin(), comps.end());
    auto rep = biopt::metrics::additive_check(comp_list, par[0]);
    Manifest manifest("metrics-additive");
    manifest.flag("components", add_components);
    manifest.flag("parallel", add_parallel);
    manifest.input(add_components);
    manifest.input(add_parallel);
    for (const auto& pt : rep.points)
      std::cout << "size " << pt.size << ": parallel " << biopt::detail::fmt_g17(pt.parallel)
                << " combined " << biopt::detail::fmt_g17(pt.combined) << " diff "
                << biopt::detail::fmt_g17(pt.percent_difference) << "%\n";
    emit("metrics-additive", add_out,
         {{"min_percent", rep.min_percent},
          {"max_percent", rep.max_percent},
          {"mean_percent", rep.mean_percent}},
         manifest);
    return kExitOk;
  }

  // ttest-sim
  biopt::stats::Sampler sampler;
  if (tt_preset == "gaussian")
    sampler = biopt::stats::gaussian_sampler(tt_mean, tt_sd, tt_seed, tt_channels);
  else if (tt_preset == "constant")
    sampler = biopt::stats::constant_sampler(tt_value, tt_channels);
  else
    sampler = biopt::stats::bimodal_sampler(tt_mean_lo, tt_mean_hi, tt_sd, tt_seed, tt_channels);
  auto outcome = biopt::stats::mean_with_ttest(sampler, tt_cfg);

  Manifest manifest("ttest-sim");
  manifest.flag("preset", tt_preset);
  manifest.flag("seed", tt_seed);
  manifest.flag("cl", tt_cfg.confidence);
  manifest.flag("precision", tt_cfg.precision);

  std::ostringstream text;
  const char* reason = outcome.stop_reason == biopt::stats::StopReason::converged ? "converged"
                       : outcome.stop_reason == biopt::stats::StopReason::max_reps ? "max_reps"
                                                                                   : "max_elapsed";
  text << "stop_reason=" << reason << '\n'
       << "reps_used=" << outcome.reps_used << '\n'
       << "elapsed=" << biopt::detail::fmt_g17(outcome.elapsed) << '\n';
  for (std::size_t c = 0; c < outcome.means.size(); ++c)
    text << "mean_" << c << '=' << biopt::detail::fmt_g17(outcome.means[c]) << '\n';
  std::cout << text.str();
  if (!tt_out.empty()) {
    std::ofstream out(tt_out);
    if (!out) throw IoError("cannot write " + tt_out);
    out << text.str();
    manifest.output(tt_out);
  }
  manifest.write(tt_out);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return dispatch(argc, argv);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const biopt::ValidationError& e) {
    std::cerr << "validation error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const InfeasibleError& e) {
    std::cerr << "infeasible: " << e.what() << '\n';
    return kExitInfeasible;
  } catch (const biopt::oracle::LimitExceeded& e) {
    std::cerr << "limit exceeded: " << e.what() << '\n';
    return kExitLimit;
  } catch (const IoError& e) {
    std::cerr << "i/o error: " << e.what() << '\n';
    return kExitIo;
  } catch (const biopt::ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return kExitIo;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
}
