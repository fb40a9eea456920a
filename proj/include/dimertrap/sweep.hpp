#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "dimertrap/dimer.hpp"
#include "dimertrap/timeseries.hpp"

namespace dimertrap {

enum class Method {
  meanfield_numeric,
  meanfield_closed,
  exact_quantum,
  semiclassical_closed,
  semiclassical_mc,
};

std::string to_string(Method m);
Method method_from_string(const std::string& name);
const std::vector<Method>& all_methods();
bool method_needs_n(Method m);

/// One grid run over lambda (and particle numbers, for the quantum and
/// semiclassical engines). Windows and steps are in units of t0.
struct SweepConfig {
  std::vector<double> lambda_grid;  // strictly increasing
  std::vector<int> n_list;          // empty: mean-field methods only
  std::vector<Method> methods;
  double window_start_t0 = 0.0;
  double window_end_t0 = 100.0;
  double sample_dt_t0 = 0.01;
  double gpe_dt_t0 = 1e-3;
  std::size_t mc_samples = 100000;
  std::uint64_t seed = 1;
  double j = 1.0;
  double hbar = 1.0;

  void validate() const;  // throws ValidationError listing all problems
};

struct SweepCell {
  double lambda = 0.0;
  int n_particles = 0;  // 0 marks N-independent mean-field methods
  Method method = Method::meanfield_closed;
  double zbar = 0.0;
  double err = 0.0;  // standard error where the method has one
  bool ok = false;
  std::string detail;  // failure message when !ok
};

struct SweepResult {
  SweepConfig config;
  std::vector<SweepCell> cells;

  std::size_t failed_cells() const;
};

/// Computes every (lambda, N, method) cell. Failures are recorded in the
/// cell, never aborting the sweep. Deterministic for a given config; cells
/// run in parallel (pool capped by DIMER_TRAP_THREADS).
SweepResult run_sweep(const SweepConfig& config);

struct TrajectoryRecord {
  DimerParams params;
  Method method = Method::meanfield_numeric;
  TimeSeries z;  // absolute time
  // the request, in units of t0, echoed verbatim into output headers so a
  // header fed back as a config reproduces the identical grid
  double t_end_t0 = 0.0;
  double sample_dt_t0 = 0.0;
  // integrator diagnostics, mean-field runs only
  double dt_used = 0.0;
  int halvings = 0;
  double norm_drift = 0.0;
  double energy_drift = 0.0;
};

/// z(t) over [0, t_end_t0 * t0] for the all-left start, using the
/// mean-field integrator or the exact propagator.
TrajectoryRecord run_trajectory(const DimerParams& params, double t_end_t0,
                                Method method, double sample_dt_t0 = 0.01);

struct CriticalCurveRow {
  int n_particles = 0;
  double lambda_full = 0.0;
  double lambda_asymptotic = 0.0;
  double lambda_empirical = 0.0;  // bisection of the closed form against alpha
  bool empirical_ok = false;
  std::string detail;
};

std::vector<CriticalCurveRow> run_lambda_critical_curve(
    std::span<const int> n_grid, double alpha);

struct ComparisonReport {
  Method baseline;
  Method test;
  struct Cell {
    double lambda;
    int n_particles;
    double baseline_zbar;
    double test_zbar;
    double abs_diff;
  };
  std::vector<Cell> cells;
  double max_abs = 0.0;
  double mean_abs = 0.0;
  double max_abs_outside_band = 0.0;
  double band_center = 2.0;
  double band_halfwidth = 0.0;
};

/// Per-cell |baseline - test| over the shared (lambda, N) cells, with the
/// maximum also reported excluding a band around the transition.
ComparisonReport compare(const SweepResult& result, Method baseline,
                         Method test, double band_halfwidth = 0.5);

// ---- persistence ------------------------------------------------------

/// CSV writers put one `# key=value` line per resolved setting in the
/// header (timestamp on its own line), so an output file can be fed back
/// to the CLI as a config file. The *_files variants also emit a gnuplot
/// script beside the CSV and return both paths.
void write_sweep_csv(const SweepResult& result, std::ostream& out);
std::vector<std::filesystem::path> write_sweep_files(
    const SweepResult& result, const std::filesystem::path& dir,
    const std::string& stem);

void write_trajectory_csv(const TrajectoryRecord& record, std::ostream& out);
std::vector<std::filesystem::path> write_trajectory_files(
    const TrajectoryRecord& record, const std::filesystem::path& dir,
    const std::string& stem);

void write_critical_csv(std::span<const CriticalCurveRow> rows, double alpha,
                        std::ostream& out);
std::vector<std::filesystem::path> write_critical_files(
    std::span<const CriticalCurveRow> rows, double alpha,
    const std::filesystem::path& dir, const std::string& stem);

// ---- figure presets ----------------------------------------------------

/// Inclusive uniform grid; merge_grids unions two grids (1e-9 tolerance).
std::vector<double> lambda_range(double lo, double hi, double step);
std::vector<double> merge_grids(std::vector<double> a,
                                const std::vector<double>& b);

SweepConfig fig1_preset();
SweepConfig fig3_preset(std::vector<int> n_list = {50, 100, 200, 400});
std::vector<int> fig4_n_grid();
inline constexpr double fig4_alpha = 0.001;

struct ReproduceOutcome {
  std::vector<std::filesystem::path> files;
  std::size_t failed_cells = 0;
};

/// Runs one of the bundled presets (fig1..fig4) and writes its CSV and
/// gnuplot script into `dir`.
ReproduceOutcome reproduce_figure(const std::string& name,
                                  const std::filesystem::path& dir);

/// Pool size for sweep cells: DIMER_TRAP_THREADS if set, else the hardware
/// concurrency.
unsigned sweep_thread_count();

}  // namespace dimertrap
