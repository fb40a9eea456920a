#include "dimertrap/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <thread>

#include "dimertrap/fock.hpp"
#include "dimertrap/gpe.hpp"
#include "dimertrap/semiclassics.hpp"
#include "dimertrap/version.hpp"

namespace dimertrap {

namespace {

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string join_doubles(std::span<const double> values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i > 0) out += ',';
    out += fmt(values[i]);
  }
  return out;
}

std::string join_ints(std::span<const int> values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i > 0) out += ',';
    out += std::to_string(values[i]);
  }
  return out;
}

std::string scrub(std::string s) {
  for (char& c : s)
    if (c == ',' || c == '\n' || c == '\r') c = ';';
  return s;
}

std::string timestamp_utc() {
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

void parallel_for(std::size_t count, unsigned threads,
                  const std::function<void(std::size_t)>& fn) {
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(count)));
  if (threads == 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (unsigned t = 0; t < threads; ++t)
    pool.emplace_back([&] {
      for (std::size_t i = next.fetch_add(1); i < count; i = next.fetch_add(1))
        fn(i);
    });
  for (auto& th : pool) th.join();
}

DimerParams cell_params(const SweepConfig& cfg, double lambda, int n) {
  if (n == 1) {
    if (lambda != 0.0)
      throw ValidationError({"lambda != 0 needs N >= 2 (lambda = U(N-1)/J)"});
    DimerParams p;
    p.j = cfg.j;
    p.hbar = cfg.hbar;
    p.n_particles = 1;
    return p;
  }
  DimerParams p = DimerParams::from_lambda(lambda, n, cfg.j);
  p.hbar = cfg.hbar;
  return p;
}

SweepCell compute_cell(const SweepConfig& cfg, double lambda, int n,
                       Method method, std::uint64_t seed) {
  SweepCell cell;
  cell.lambda = lambda;
  cell.n_particles = n;
  cell.method = method;
  try {
    switch (method) {
      case Method::meanfield_numeric: {
        DimerParams p = DimerParams::from_lambda(lambda, 2, cfg.j);
        p.hbar = cfg.hbar;
        const double t0 = p.t0();
        IntegratorConfig icfg;
        icfg.dt = cfg.gpe_dt_t0 * t0;
        icfg.t_end = cfg.window_end_t0 * t0;
        icfg.sample_every = std::max(
            1, static_cast<int>(std::lround(cfg.sample_dt_t0 / cfg.gpe_dt_t0)));
        cell.zbar = meanfield_zbar(p, cfg.window_start_t0 * t0,
                                   cfg.window_end_t0 * t0, icfg);
        break;
      }
      case Method::meanfield_closed:
        cell.zbar = zbar_meanfield_closed(lambda);
        break;
      case Method::exact_quantum: {
        const DimerParams p = cell_params(cfg, lambda, n);
        const double t0 = p.t0();
        cell.zbar = exact_zbar(p, cfg.window_start_t0 * t0,
                               cfg.window_end_t0 * t0, cfg.sample_dt_t0 * t0);
        break;
      }
      case Method::semiclassical_closed:
        cell.zbar = zbar_closed_form(lambda, n);
        break;
      case Method::semiclassical_mc: {
        const McEstimate est = zbar_mc_average(lambda, n, cfg.mc_samples, seed);
        cell.zbar = est.mean;
        cell.err = est.std_error;
        break;
      }
    }
    if (!(cell.zbar >= -1.0 - 1e-12 && cell.zbar <= 1.0 + 1e-12))
      throw std::runtime_error("imbalance " + fmt(cell.zbar) +
                               " outside [-1, 1]");
    cell.ok = true;
  } catch (const std::exception& e) {
    cell.ok = false;
    cell.detail = e.what();
  }
  return cell;
}

std::ofstream open_for_write(const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  return out;
}

const char* point_style(Method m) {
  return (m == Method::meanfield_closed || m == Method::semiclassical_closed)
             ? "with lines lw 2"
             : "with points pt 6 ps 0.7";
}

}  // namespace

std::string to_string(Method m) {
  switch (m) {
    case Method::meanfield_numeric: return "meanfield-numeric";
    case Method::meanfield_closed: return "meanfield-closed";
    case Method::exact_quantum: return "exact-quantum";
    case Method::semiclassical_closed: return "semiclassical-closed";
    case Method::semiclassical_mc: return "semiclassical-mc";
  }
  return "unknown";
}

Method method_from_string(const std::string& name) {
  for (Method m : all_methods())
    if (to_string(m) == name) return m;
  throw ValidationError({"unknown method '" + name + "'"});
}

const std::vector<Method>& all_methods() {
  static const std::vector<Method> methods = {
      Method::meanfield_numeric, Method::meanfield_closed,
      Method::exact_quantum, Method::semiclassical_closed,
      Method::semiclassical_mc};
  return methods;
}

bool method_needs_n(Method m) {
  return m == Method::exact_quantum || m == Method::semiclassical_closed ||
         m == Method::semiclassical_mc;
}

void SweepConfig::validate() const {
  std::vector<std::string> issues;
  if (lambda_grid.empty()) issues.push_back("lambda grid must not be empty");
  for (std::size_t i = 0; i + 1 < lambda_grid.size(); ++i)
    if (!(lambda_grid[i] < lambda_grid[i + 1])) {
      issues.push_back("lambda grid must be strictly increasing");
      break;
    }
  if (methods.empty()) issues.push_back("at least one method is required");
  const bool needs_n =
      std::any_of(methods.begin(), methods.end(), method_needs_n);
  if (needs_n && n_list.empty())
    issues.push_back("quantum/semiclassical methods need a particle-number list");
  for (int n : n_list)
    if (n < 1) {
      issues.push_back("particle numbers must be >= 1");
      break;
    }
  if (window_start_t0 < 0.0) issues.push_back("window start must be >= 0");
  if (!(window_end_t0 > window_start_t0))
    issues.push_back("window end must exceed window start");
  if (!(sample_dt_t0 > 0.0)) issues.push_back("sample step must be positive");
  if (!(gpe_dt_t0 > 0.0)) issues.push_back("integrator step must be positive");
  if (std::find(methods.begin(), methods.end(), Method::semiclassical_mc) !=
          methods.end() &&
      mc_samples < 10000)
    issues.push_back("Monte-Carlo average needs >= 1e4 samples");
  if (!(j > 0.0)) issues.push_back("J must be positive");
  if (!(hbar > 0.0)) issues.push_back("hbar must be positive");
  if (!issues.empty()) throw ValidationError(std::move(issues));
}

std::size_t SweepResult::failed_cells() const {
  return static_cast<std::size_t>(
      std::count_if(cells.begin(), cells.end(),
                    [](const SweepCell& c) { return !c.ok; }));
}

SweepResult run_sweep(const SweepConfig& config) {
  config.validate();

  struct Spec {
    double lambda;
    int n;
    Method method;
  };
  std::vector<Spec> specs;
  for (double lambda : config.lambda_grid)
    for (Method m : config.methods) {
      if (method_needs_n(m))
        for (int n : config.n_list) specs.push_back({lambda, n, m});
      else
        specs.push_back({lambda, 0, m});
    }

  SweepResult result;
  result.config = config;
  result.cells.resize(specs.size());
  parallel_for(specs.size(), sweep_thread_count(), [&](std::size_t i) {
    const Spec& s = specs[i];
    result.cells[i] = compute_cell(config, s.lambda, s.n, s.method,
                                   mix_seed(config.seed, i));
  });
  return result;
}

TrajectoryRecord run_trajectory(const DimerParams& params, double t_end_t0,
                                Method method, double sample_dt_t0) {
  params.validate();
  if (method != Method::meanfield_numeric && method != Method::exact_quantum)
    throw ValidationError({"trajectories support meanfield-numeric and "
                           "exact-quantum only"});
  if (!(t_end_t0 > 0.0)) throw ValidationError({"t_end must be positive"});
  if (!(sample_dt_t0 > 0.0))
    throw ValidationError({"sample step must be positive"});
  const double t0 = params.t0();

  TrajectoryRecord record;
  record.params = params;
  record.method = method;
  record.t_end_t0 = t_end_t0;
  record.sample_dt_t0 = sample_dt_t0;

  if (method == Method::meanfield_numeric) {
    IntegratorConfig cfg;
    cfg.t_end = t_end_t0 * t0;
    cfg.dt = 1e-3 * t0;
    cfg.sample_every =
        std::max(1, static_cast<int>(std::lround(sample_dt_t0 / 1e-3)));
    const GpeTrajectory traj =
        integrate_gpe(MeanFieldState::all_left(), params, cfg);
    record.z = traj.z;
    record.dt_used = traj.dt_used;
    record.halvings = traj.halvings;
    record.norm_drift = traj.norm_drift;
    record.energy_drift = traj.energy_drift;
    return record;
  }

  const auto steps =
      static_cast<std::size_t>(std::ceil(t_end_t0 / sample_dt_t0 - 1e-9));
  const double dt = t_end_t0 * t0 / static_cast<double>(steps);
  std::vector<double> times(steps + 1);
  for (std::size_t i = 0; i <= steps; ++i)
    times[i] = dt * static_cast<double>(i);
  const SpectralPropagator propagator(build_hamiltonian(params));
  record.z.t_start = 0.0;
  record.z.dt = dt;
  record.z.values = propagator.imbalance_trajectory(
      FockVector::all_left(params.n_particles), times);
  return record;
}

std::vector<CriticalCurveRow> run_lambda_critical_curve(
    std::span<const int> n_grid, double alpha) {
  if (!(alpha > 0.0 && alpha < 0.5))
    throw ValidationError({"alpha must lie in (0, 1/2)"});
  std::vector<CriticalCurveRow> rows;
  rows.reserve(n_grid.size());
  for (int n : n_grid) {
    CriticalCurveRow row;
    row.n_particles = n;
    try {
      if (n < 1) throw std::invalid_argument("N must be >= 1");
      const CriticalInteraction crit = lambda_critical(n, alpha);
      row.lambda_full = crit.full;
      row.lambda_asymptotic = crit.asymptotic;

      // Cross-check: locate the empirical crossing of the closed form.
      double lo = 0.02;
      double hi = 2.0;
      const auto f = [&](double lambda) {
        return zbar_closed_form(lambda, n) - alpha;
      };
      while (f(hi) < 0.0 && hi < 64.0) hi *= 1.5;
      if (!(f(lo) < 0.0 && f(hi) > 0.0))
        throw std::runtime_error("no bisection bracket for the crossing");
      for (int it = 0; it < 100; ++it) {
        const double mid = 0.5 * (lo + hi);
        (f(mid) < 0.0 ? lo : hi) = mid;
      }
      row.lambda_empirical = 0.5 * (lo + hi);
      row.empirical_ok = true;
    } catch (const std::exception& e) {
      row.empirical_ok = false;
      row.detail = e.what();
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

ComparisonReport compare(const SweepResult& result, Method baseline,
                         Method test, double band_halfwidth) {
  ComparisonReport report;
  report.baseline = baseline;
  report.test = test;
  report.band_halfwidth = band_halfwidth;

  std::map<std::pair<double, int>, double> base_cells;
  for (const SweepCell& c : result.cells)
    if (c.ok && c.method == baseline)
      base_cells[{c.lambda, c.n_particles}] = c.zbar;

  double sum = 0.0;
  for (const SweepCell& c : result.cells) {
    if (!c.ok || c.method != test) continue;
    // Mean-field methods carry n = 0; quantum/semiclassical carry the real
    // N. A baseline without N compares against every N of the test method.
    auto it = base_cells.find({c.lambda, c.n_particles});
    if (it == base_cells.end() && !method_needs_n(baseline))
      it = base_cells.find({c.lambda, 0});
    if (it == base_cells.end()) continue;
    const double diff = std::abs(it->second - c.zbar);
    report.cells.push_back({c.lambda, c.n_particles, it->second, c.zbar, diff});
    sum += diff;
    report.max_abs = std::max(report.max_abs, diff);
    if (std::abs(c.lambda - report.band_center) >= band_halfwidth)
      report.max_abs_outside_band = std::max(report.max_abs_outside_band, diff);
  }
  if (report.cells.empty())
    throw ValidationError({"methods share no successful grid cells"});
  report.mean_abs = sum / static_cast<double>(report.cells.size());
  return report;
}

// ---- persistence -------------------------------------------------------

void write_sweep_csv(const SweepResult& result, std::ostream& out) {
  const SweepConfig& cfg = result.config;
  out << "# dimer-trap sweep\n";
  out << "# version=" << version << "\n";
  out << "# created=" << timestamp_utc() << "\n";
  out << "# basis_ordering=n_right_0_to_N\n";
  out << "# lambda_grid=" << join_doubles(cfg.lambda_grid) << "\n";
  if (!cfg.n_list.empty()) out << "# n_list=" << join_ints(cfg.n_list) << "\n";
  out << "# methods=";
  for (std::size_t i = 0; i < cfg.methods.size(); ++i)
    out << (i ? "," : "") << to_string(cfg.methods[i]);
  out << "\n";
  out << "# window_start_t0=" << fmt(cfg.window_start_t0) << "\n";
  out << "# window_end_t0=" << fmt(cfg.window_end_t0) << "\n";
  out << "# sample_dt_t0=" << fmt(cfg.sample_dt_t0) << "\n";
  out << "# gpe_dt_t0=" << fmt(cfg.gpe_dt_t0) << "\n";
  out << "# mc_samples=" << cfg.mc_samples << "\n";
  out << "# seed=" << cfg.seed << "\n";
  out << "# j=" << fmt(cfg.j) << "\n";
  out << "# hbar=" << fmt(cfg.hbar) << "\n";
  out << "# columns=lambda,N,method,zbar,err,status,detail\n";
  for (const SweepCell& c : result.cells) {
    out << fmt(c.lambda) << ',' << c.n_particles << ',' << to_string(c.method)
        << ',';
    if (c.ok) {
      out << fmt(c.zbar) << ',';
      if (c.err > 0.0) out << fmt(c.err);
      out << ",ok,";
    } else {
      out << ",,error," << scrub(c.detail);
    }
    out << "\n";
  }
}

std::vector<std::filesystem::path> write_sweep_files(
    const SweepResult& result, const std::filesystem::path& dir,
    const std::string& stem) {
  std::filesystem::create_directories(dir);
  const auto csv = dir / (stem + ".csv");
  const auto plt = dir / (stem + ".plt");
  {
    auto out = open_for_write(csv);
    write_sweep_csv(result, out);
  }
  {
    auto out = open_for_write(plt);
    out << "# gnuplot script for " << stem << ".csv\n";
    out << "set datafile separator ','\n";
    out << "set xlabel 'Lambda = U(N-1)/J'\n";
    out << "set ylabel 'time-averaged imbalance'\n";
    out << "set key top left\n";
    out << "set yrange [-0.1:1.1]\n";
    // one curve per (method, N) pair actually present
    std::vector<std::pair<Method, int>> curves;
    for (const SweepCell& c : result.cells) {
      const auto key = std::make_pair(c.method, c.n_particles);
      if (std::find(curves.begin(), curves.end(), key) == curves.end())
        curves.push_back(key);
    }
    out << "plot \\\n";
    for (std::size_t i = 0; i < curves.size(); ++i) {
      const auto& [method, n] = curves[i];
      std::string title = to_string(method);
      if (n > 0) title += " N=" + std::to_string(n);
      out << "  '" << stem << ".csv' using 1:(strcol(3) eq '"
          << to_string(method) << "' && $2 == " << n
          << " ? $4 : 1/0) " << point_style(method) << " title '" << title
          << "'";
      out << (i + 1 < curves.size() ? ", \\\n" : "\n");
    }
  }
  return {csv, plt};
}

void write_trajectory_csv(const TrajectoryRecord& record, std::ostream& out) {
  const DimerParams& p = record.params;
  const double t0 = p.t0();
  out << "# dimer-trap trajectory\n";
  out << "# version=" << version << "\n";
  out << "# created=" << timestamp_utc() << "\n";
  out << "# basis_ordering=n_right_0_to_N\n";
  out << "# method=" << to_string(record.method) << "\n";
  out << "# lambda=" << fmt(p.lambda()) << "\n";
  out << "# u=" << fmt(p.u) << "\n";
  out << "# n=" << p.n_particles << "\n";
  out << "# j=" << fmt(p.j) << "\n";
  out << "# hbar=" << fmt(p.hbar) << "\n";
  out << "# eps_left=" << fmt(p.eps_left) << "\n";
  out << "# eps_right=" << fmt(p.eps_right) << "\n";
  out << "# t_end_t0=" << fmt(record.t_end_t0) << "\n";
  out << "# sample_dt_t0=" << fmt(record.sample_dt_t0) << "\n";
  if (record.method == Method::meanfield_numeric) {
    out << "# integrator_dt=" << fmt(record.dt_used) << " after "
        << record.halvings << " halvings\n";
    out << "# norm_drift=" << fmt(record.norm_drift)
        << " energy_drift=" << fmt(record.energy_drift) << "\n";
  }
  out << "# columns=t_t0,z\n";
  for (std::size_t i = 0; i < record.z.size(); ++i)
    out << fmt(record.z.time_at(i) / t0) << ',' << fmt(record.z.values[i])
        << "\n";
}

std::vector<std::filesystem::path> write_trajectory_files(
    const TrajectoryRecord& record, const std::filesystem::path& dir,
    const std::string& stem) {
  std::filesystem::create_directories(dir);
  const auto csv = dir / (stem + ".csv");
  const auto plt = dir / (stem + ".plt");
  {
    auto out = open_for_write(csv);
    write_trajectory_csv(record, out);
  }
  {
    auto out = open_for_write(plt);
    out << "# gnuplot script for " << stem << ".csv\n";
    out << "set datafile separator ','\n";
    out << "set xlabel 't / t0'\n";
    out << "set ylabel 'population imbalance z(t)'\n";
    out << "set yrange [-1.1:1.1]\n";
    out << "plot '" << stem << ".csv' using 1:2 with lines title '"
        << to_string(record.method) << "'\n";
  }
  return {csv, plt};
}

void write_critical_csv(std::span<const CriticalCurveRow> rows, double alpha,
                        std::ostream& out) {
  out << "# dimer-trap critical interaction strength\n";
  out << "# version=" << version << "\n";
  out << "# created=" << timestamp_utc() << "\n";
  out << "# alpha=" << fmt(alpha) << "\n";
  out << "# n_grid=";
  for (std::size_t i = 0; i < rows.size(); ++i)
    out << (i ? "," : "") << rows[i].n_particles;
  out << "\n";
  out << "# columns=n,lambda_alpha,asymptote,empirical,status,detail\n";
  for (const CriticalCurveRow& r : rows) {
    out << r.n_particles << ',' << fmt(r.lambda_full) << ','
        << fmt(r.lambda_asymptotic) << ',';
    if (r.empirical_ok)
      out << fmt(r.lambda_empirical) << ",ok,";
    else
      out << ",error," << scrub(r.detail);
    out << "\n";
  }
}

std::vector<std::filesystem::path> write_critical_files(
    std::span<const CriticalCurveRow> rows, double alpha,
    const std::filesystem::path& dir, const std::string& stem) {
  std::filesystem::create_directories(dir);
  const auto csv = dir / (stem + ".csv");
  const auto plt = dir / (stem + ".plt");
  {
    auto out = open_for_write(csv);
    write_critical_csv(rows, alpha, out);
  }
  {
    auto out = open_for_write(plt);
    out << "# gnuplot script for " << stem << ".csv\n";
    out << "set datafile separator ','\n";
    out << "set logscale x\n";
    out << "set xlabel 'particle number N'\n";
    out << "set ylabel 'critical interaction strength'\n";
    out << "set key bottom right\n";
    out << "plot '" << stem << ".csv' using 1:2 with linespoints title "
        << "'threshold crossing', \\\n"
        << "  '" << stem << ".csv' using 1:3 with lines dt 2 title "
        << "'large-N asymptote'\n";
  }
  return {csv, plt};
}

// ---- figure presets ----------------------------------------------------

std::vector<double> lambda_range(double lo, double hi, double step) {
  if (!(step > 0.0) || !(hi >= lo))
    throw ValidationError({"bad grid range"});
  const auto count = static_cast<std::size_t>(std::floor((hi - lo) / step + 1e-9));
  std::vector<double> grid(count + 1);
  for (std::size_t k = 0; k <= count; ++k)
    grid[k] = lo + step * static_cast<double>(k);
  return grid;
}

std::vector<double> merge_grids(std::vector<double> a,
                                const std::vector<double>& b) {
  a.insert(a.end(), b.begin(), b.end());
  std::sort(a.begin(), a.end());
  a.erase(std::unique(a.begin(), a.end(),
                      [](double x, double y) { return std::abs(x - y) < 1e-9; }),
          a.end());
  return a;
}

SweepConfig fig1_preset() {
  SweepConfig cfg;
  cfg.lambda_grid =
      merge_grids(lambda_range(0.0, 10.0, 0.1), lambda_range(1.5, 2.5, 0.02));
  cfg.methods = {Method::meanfield_numeric, Method::meanfield_closed};
  return cfg;
}

SweepConfig fig3_preset(std::vector<int> n_list) {
  SweepConfig cfg;
  cfg.lambda_grid =
      merge_grids(lambda_range(0.5, 6.0, 0.1), lambda_range(1.5, 2.5, 0.02));
  cfg.methods = {Method::exact_quantum, Method::semiclassical_closed};
  cfg.n_list = std::move(n_list);
  return cfg;
}

std::vector<int> fig4_n_grid() {
  std::vector<int> grid;
  for (int k = 0;; ++k) {
    const double n = 50.0 * std::pow(10.0, k / 8.0);
    if (n > 1e6) break;
    const int rounded = static_cast<int>(std::lround(n));
    if (grid.empty() || grid.back() != rounded) grid.push_back(rounded);
  }
  if (grid.back() != 1000000) grid.push_back(1000000);
  return grid;
}

ReproduceOutcome reproduce_figure(const std::string& name,
                                  const std::filesystem::path& dir) {
  ReproduceOutcome outcome;
  if (name == "fig1" || name == "fig3") {
    const SweepConfig cfg = name == "fig1" ? fig1_preset() : fig3_preset();
    const SweepResult result = run_sweep(cfg);
    outcome.failed_cells = result.failed_cells();
    outcome.files = write_sweep_files(result, dir, name);
  } else if (name == "fig2") {
    const DimerParams params = DimerParams::from_lambda(2.0, 100);
    for (const auto& [stem, t_end_t0] :
         {std::pair<const char*, double>{"fig2_short", 30.0},
          std::pair<const char*, double>{"fig2_long", 1000.0}}) {
      const TrajectoryRecord record =
          run_trajectory(params, t_end_t0, Method::exact_quantum, 0.01);
      auto files = write_trajectory_files(record, dir, stem);
      outcome.files.insert(outcome.files.end(), files.begin(), files.end());
    }
  } else if (name == "fig4") {
    const auto rows = run_lambda_critical_curve(fig4_n_grid(), fig4_alpha);
    for (const auto& row : rows)
      if (!row.empirical_ok) ++outcome.failed_cells;
    outcome.files = write_critical_files(rows, fig4_alpha, dir, "fig4");
  } else {
    throw ValidationError(
        {"unknown figure '" + name + "' (expected fig1, fig2, fig3 or fig4)"});
  }
  return outcome;
}

unsigned sweep_thread_count() {
  if (const char* env = std::getenv("DIMER_TRAP_THREADS")) {
    char* end = nullptr;
    const unsigned long v = std::strtoul(env, &end, 10);
    if (end != env && *end == '\0' && v >= 1)
      return static_cast<unsigned>(std::min<unsigned long>(v, 512));
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? hw : 1;
}

}  // namespace dimertrap
