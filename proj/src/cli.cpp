#include "dimertrap/cli.hpp"

#include <CLI11.hpp>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>

#include "dimertrap/dimer.hpp"
#include "dimertrap/fock.hpp"
#include "dimertrap/gpe.hpp"
#include "dimertrap/semiclassics.hpp"
#include "dimertrap/sweep.hpp"
#include "dimertrap/version.hpp"

namespace dimertrap::cli {

namespace {

namespace fs = std::filesystem;

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string token;
  std::istringstream stream(s);
  while (std::getline(stream, token, sep)) parts.push_back(token);
  return parts;
}

std::string trim(const std::string& s) {
  const auto from = s.find_first_not_of(" \t");
  if (from == std::string::npos) return "";
  const auto to = s.find_last_not_of(" \t");
  return s.substr(from, to - from + 1);
}

bool valid_key(const std::string& key) {
  if (key.empty()) return false;
  for (char c : key)
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_'))
      return false;
  return true;
}

std::optional<double> parse_double(const std::string& s) {
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (end == s.c_str() || *end != '\0' || !std::isfinite(v)) return std::nullopt;
  return v;
}

std::optional<long long> parse_int(const std::string& s) {
  char* end = nullptr;
  const long long v = std::strtoll(s.c_str(), &end, 10);
  if (end == s.c_str() || *end != '\0') return std::nullopt;
  return v;
}

/// Flat key=value configuration. Lines starting with '#' are comments,
/// except that '# key=value' with a recognized key is honored — this is
/// what lets the metadata header of an output file act as a config file.
/// Bare lines without '=' are ignored (CSV data rows), bare unknown keys
/// are reported.
class ConfigFile {
 public:
  static ConfigFile load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError({"cannot read config file '" + path + "'"});
    ConfigFile cfg;
    std::string line;
    while (std::getline(in, line)) {
      if (!line.empty() && line.back() == '\r') line.pop_back();
      std::string body = trim(line);
      bool commented = false;
      if (!body.empty() && body.front() == '#') {
        commented = true;
        body = trim(body.substr(1));
      }
      const auto eq = body.find('=');
      if (eq == std::string::npos) continue;
      const std::string key = trim(body.substr(0, eq));
      if (!valid_key(key)) {
        if (!commented) cfg.malformed_.push_back(line);
        continue;
      }
      cfg.entries_[key] = {trim(body.substr(eq + 1)), commented, false};
    }
    return cfg;
  }

  const std::string* find(const std::string& key) {
    auto it = entries_.find(key);
    if (it == entries_.end()) return nullptr;
    it->second.used = true;
    return &it->second.value;
  }

  void report_unknown(std::vector<std::string>& issues) const {
    for (const auto& [key, entry] : entries_)
      if (!entry.commented && !entry.used)
        issues.push_back("unknown config key '" + key + "'");
    for (const auto& line : malformed_)
      issues.push_back("malformed config line '" + line + "'");
  }

 private:
  struct Entry {
    std::string value;
    bool commented;
    bool used;
  };
  std::map<std::string, Entry> entries_;
  std::vector<std::string> malformed_;
};

/// Merges command-line flags (which win), config-file values and defaults,
/// collecting every problem instead of stopping at the first.
class Resolver {
 public:
  Resolver(ConfigFile* config, std::vector<std::string>& issues)
      : config_(config), issues_(issues) {}

  // The config key is consumed even when the flag wins, so a header line
  // round-tripped from an output file never reads as an unknown key.
  double number(const CLI::Option* opt, double cli_value,
                const std::string& key, double fallback) {
    const std::string* raw = lookup(key);
    if (opt->count() > 0) return cli_value;
    if (raw) {
      if (auto v = parse_double(*raw)) return *v;
      issues_.push_back("config key '" + key + "' is not a number: " + *raw);
    }
    return fallback;
  }

  std::optional<double> optional_number(const CLI::Option* opt,
                                        double cli_value,
                                        const std::string& key) {
    const std::string* raw = lookup(key);
    if (opt->count() > 0) return cli_value;
    if (raw) {
      if (auto v = parse_double(*raw)) return *v;
      issues_.push_back("config key '" + key + "' is not a number: " + *raw);
    }
    return std::nullopt;
  }

  std::optional<long long> optional_integer(const CLI::Option* opt,
                                            long long cli_value,
                                            const std::string& key) {
    const std::string* raw = lookup(key);
    if (opt->count() > 0) return cli_value;
    if (raw) {
      if (auto v = parse_int(*raw)) return *v;
      issues_.push_back("config key '" + key + "' is not an integer: " + *raw);
    }
    return std::nullopt;
  }

  std::uint64_t unsigned_integer(const CLI::Option* opt, std::uint64_t cli_value,
                                 const std::string& key, std::uint64_t fallback) {
    const std::string* raw = lookup(key);
    if (opt->count() > 0) return cli_value;
    if (raw) {
      if (auto v = parse_int(*raw); v && *v >= 0)
        return static_cast<std::uint64_t>(*v);
      issues_.push_back("config key '" + key + "' is not a count: " + *raw);
    }
    return fallback;
  }

  std::string text(const CLI::Option* opt, const std::string& cli_value,
                   const std::string& key, const std::string& fallback) {
    const std::string* raw = lookup(key);
    if (opt->count() > 0) return cli_value;
    if (raw) return *raw;
    return fallback;
  }

 private:
  const std::string* lookup(const std::string& key) {
    return config_ ? config_->find(key) : nullptr;
  }

  ConfigFile* config_;
  std::vector<std::string>& issues_;
};

struct ParamInput {
  std::optional<double> lambda;
  std::optional<double> u;
  std::optional<long long> n;
  double j = 1.0;
  double hbar = 1.0;
  double eps_l = 0.0;
  double eps_r = 0.0;
};

/// Reconciles lambda against (U, N, J). Quantum engines need an explicit N;
/// pure mean-field only needs the product U(N-1), so N defaults to 2 there.
std::optional<DimerParams> resolve_params(const ParamInput& in, bool needs_n,
                                          std::vector<std::string>& issues) {
  const std::size_t before = issues.size();
  if (!(in.j > 0.0)) issues.push_back("J must be positive");
  if (!(in.hbar > 0.0)) issues.push_back("hbar must be positive");
  if (in.n && *in.n < 1) issues.push_back("N must be at least 1");
  if (needs_n && !in.n) issues.push_back("this command needs --n");

  std::optional<double> u = in.u;
  if (in.lambda && in.u) {
    if (!in.n) {
      issues.push_back("given both lambda and U, N is required to check them");
    } else if (in.j > 0.0) {
      const double implied = *in.u * static_cast<double>(*in.n - 1) / in.j;
      if (std::abs(implied - *in.lambda) >
          1e-9 * std::max(1.0, std::abs(*in.lambda)))
        issues.push_back("inconsistent parameters: lambda = " +
                         std::to_string(*in.lambda) + " but U(N-1)/J = " +
                         std::to_string(implied));
    }
  } else if (in.lambda) {
    const long long n = in.n.value_or(2);
    if (n == 1 && *in.lambda != 0.0)
      issues.push_back("lambda != 0 needs N >= 2 (lambda = U(N-1)/J)");
    else if (n >= 2)
      u = *in.lambda * in.j / static_cast<double>(n - 1);
    else
      u = 0.0;
  } else if (in.u && !in.n && !needs_n) {
    issues.push_back("U alone is ambiguous in the mean-field limit; give N "
                     "as well, or lambda directly");
  }

  if (issues.size() != before) return std::nullopt;

  DimerParams params;
  params.j = in.j;
  params.hbar = in.hbar;
  params.u = u.value_or(0.0);
  params.n_particles = static_cast<int>(in.n.value_or(needs_n ? 1 : 2));
  params.eps_left = in.eps_l;
  params.eps_right = in.eps_r;
  try {
    params.validate();
  } catch (const ValidationError& e) {
    for (const auto& issue : e.issues()) issues.push_back(issue);
    return std::nullopt;
  }
  return params;
}

std::vector<double> parse_grid_spec(const std::string& spec,
                                    std::vector<std::string>& issues) {
  std::vector<double> grid;
  for (const std::string& raw : split(spec, ',')) {
    const std::string token = trim(raw);
    if (token.empty()) continue;
    const auto parts = split(token, ':');
    if (parts.size() == 3) {
      const auto lo = parse_double(parts[0]);
      const auto step = parse_double(parts[1]);
      const auto hi = parse_double(parts[2]);
      if (!lo || !step || !hi || !(*step > 0.0) || !(*hi >= *lo)) {
        issues.push_back("bad grid range '" + token + "' (want lo:step:hi)");
        continue;
      }
      grid = merge_grids(std::move(grid), lambda_range(*lo, *hi, *step));
    } else if (parts.size() == 1) {
      if (auto v = parse_double(token))
        grid = merge_grids(std::move(grid), {*v});
      else
        issues.push_back("bad grid value '" + token + "'");
    } else {
      issues.push_back("bad grid token '" + token + "'");
    }
  }
  return grid;
}

int report_issues(const std::vector<std::string>& issues, std::ostream& err) {
  for (const auto& issue : issues) err << "error: " << issue << "\n";
  return 1;
}

// Shared flag block. Every option keeps the config-file key it mirrors.
struct CommonFlags {
  double lambda = 0.0, u = 0.0, j = 1.0, hbar = 1.0, eps_l = 0.0, eps_r = 0.0;
  long long n = 0;
  std::string config_path;
  CLI::Option* lambda_opt = nullptr;
  CLI::Option* u_opt = nullptr;
  CLI::Option* n_opt = nullptr;
  CLI::Option* j_opt = nullptr;
  CLI::Option* hbar_opt = nullptr;
  CLI::Option* eps_l_opt = nullptr;
  CLI::Option* eps_r_opt = nullptr;
  CLI::Option* config_opt = nullptr;

  void attach(CLI::App* cmd, bool with_physics = true) {
    config_opt = cmd->add_option("--config", config_path,
                                 "key=value config file; flags win on conflict");
    if (!with_physics) return;
    lambda_opt = cmd->add_option("--lambda", lambda,
                                 "scaled interaction U(N-1)/J");
    u_opt = cmd->add_option("--u", u, "on-site interaction U");
    n_opt = cmd->add_option("--n", n, "particle number N");
    j_opt = cmd->add_option("--j", j, "tunneling rate J (default 1)");
    hbar_opt = cmd->add_option("--hbar", hbar, "hbar (default 1)");
    eps_l_opt = cmd->add_option("--eps-l", eps_l, "left on-site energy");
    eps_r_opt = cmd->add_option("--eps-r", eps_r, "right on-site energy");
  }

  ParamInput resolve(Resolver& r) const {
    ParamInput in;
    in.lambda = r.optional_number(lambda_opt, lambda, "lambda");
    in.u = r.optional_number(u_opt, u, "u");
    in.n = r.optional_integer(n_opt, n, "n");
    in.j = r.number(j_opt, j, "j", 1.0);
    in.hbar = r.number(hbar_opt, hbar, "hbar", 1.0);
    in.eps_l = r.number(eps_l_opt, eps_l, "eps_left", 0.0);
    in.eps_r = r.number(eps_r_opt, eps_r, "eps_right", 0.0);
    return in;
  }
};

struct WindowFlags {
  double start = 0.0, end = 100.0, sample_dt = 0.01, gpe_dt = 1e-3;
  CLI::Option* start_opt = nullptr;
  CLI::Option* end_opt = nullptr;
  CLI::Option* sample_opt = nullptr;
  CLI::Option* gpe_opt = nullptr;

  void attach(CLI::App* cmd) {
    start_opt = cmd->add_option("--window-start", start,
                                "averaging window start, units of t0");
    end_opt = cmd->add_option("--window-end", end,
                              "averaging window end, units of t0 (default 100)");
    sample_opt = cmd->add_option("--sample-dt", sample_dt,
                                 "observable sampling step, units of t0");
    gpe_opt = cmd->add_option("--gpe-dt", gpe_dt,
                              "initial integrator step, units of t0");
  }
};

void echo(std::ostream& out, const char* key, double v) {
  out << key << " = " << v << "\n";
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"double-well condensate self-trapping toolkit"};
  app.set_version_flag("--version", std::string(version));
  app.require_subcommand(1);

  // meanfield ------------------------------------------------------------
  auto* meanfield_cmd = app.add_subcommand(
      "meanfield", "time-averaged imbalance from the two-mode equations");
  CommonFlags mf_common;
  WindowFlags mf_window;
  mf_common.attach(meanfield_cmd);
  mf_window.attach(meanfield_cmd);

  // exact ----------------------------------------------------------------
  auto* exact_cmd = app.add_subcommand(
      "exact", "time-averaged imbalance from the exact N-particle dynamics");
  CommonFlags ex_common;
  WindowFlags ex_window;
  ex_common.attach(exact_cmd);
  ex_window.attach(exact_cmd);

  // heuristic --------------------------------------------------------------
  auto* heuristic_cmd = app.add_subcommand(
      "heuristic", "closed-form imbalance estimates");
  CommonFlags he_common;
  he_common.attach(heuristic_cmd);
  bool he_mc = false;
  std::uint64_t he_samples = 1000000;
  std::uint64_t he_seed = 1;
  auto* he_mc_opt = heuristic_cmd->add_flag(
      "--mc", he_mc, "also average fluctuation realizations by Monte Carlo");
  auto* he_samples_opt = heuristic_cmd->add_option(
      "--samples", he_samples, "Monte-Carlo sample count (>= 1e4)");
  auto* he_seed_opt =
      heuristic_cmd->add_option("--seed", he_seed, "Monte-Carlo seed");

  // crit -------------------------------------------------------------------
  auto* crit_cmd = app.add_subcommand(
      "crit", "critical interaction strength for a threshold imbalance");
  CommonFlags cr_common;
  cr_common.attach(crit_cmd);
  double cr_alpha = 0.001;
  std::string cr_n_grid;
  std::string cr_out;
  auto* cr_alpha_opt = crit_cmd->add_option(
      "--alpha", cr_alpha, "threshold imbalance, in (0, 1/2) (default 0.001)");
  auto* cr_grid_opt = crit_cmd->add_option(
      "--n-grid", cr_n_grid, "comma list of particle numbers for a table");
  auto* cr_out_opt =
      crit_cmd->add_option("--out", cr_out, "directory for CSV/plt output");

  // sweep ------------------------------------------------------------------
  auto* sweep_cmd = app.add_subcommand(
      "sweep", "grid run over lambda (and N) across selected methods");
  CommonFlags sw_common;
  WindowFlags sw_window;
  sw_common.attach(sweep_cmd, /*with_physics=*/false);
  sw_window.attach(sweep_cmd);
  std::string sw_grid, sw_nlist, sw_methods, sw_out = ".", sw_stem = "sweep";
  std::uint64_t sw_seed = 1, sw_samples = 100000;
  double sw_j = 1.0, sw_hbar = 1.0;
  auto* sw_grid_opt = sweep_cmd->add_option(
      "--lambda-grid", sw_grid, "comma list and/or lo:step:hi ranges");
  auto* sw_nlist_opt = sweep_cmd->add_option(
      "--n-list", sw_nlist, "comma list of particle numbers");
  auto* sw_methods_opt = sweep_cmd->add_option(
      "--methods", sw_methods,
      "comma list: meanfield-numeric, meanfield-closed, exact-quantum, "
      "semiclassical-closed, semiclassical-mc");
  auto* sw_seed_opt = sweep_cmd->add_option("--seed", sw_seed, "sweep seed");
  auto* sw_samples_opt = sweep_cmd->add_option(
      "--samples", sw_samples, "Monte-Carlo samples per cell");
  auto* sw_j_opt = sweep_cmd->add_option("--j", sw_j, "tunneling rate J");
  auto* sw_hbar_opt = sweep_cmd->add_option("--hbar", sw_hbar, "hbar");
  auto* sw_out_opt =
      sweep_cmd->add_option("--out", sw_out, "output directory (default .)");
  auto* sw_stem_opt =
      sweep_cmd->add_option("--stem", sw_stem, "output file stem");

  // trajectory ---------------------------------------------------------------
  auto* traj_cmd = app.add_subcommand(
      "trajectory", "z(t) for one parameter set, written as CSV");
  CommonFlags tr_common;
  tr_common.attach(traj_cmd);
  std::string tr_method = "meanfield-numeric", tr_out = ".", tr_stem = "trajectory";
  double tr_t_end = 100.0, tr_sample_dt = 0.01;
  auto* tr_method_opt = traj_cmd->add_option(
      "--method", tr_method, "meanfield-numeric or exact-quantum");
  auto* tr_t_end_opt = traj_cmd->add_option(
      "--t-end", tr_t_end, "trajectory length, units of t0 (default 100)");
  auto* tr_sample_opt = traj_cmd->add_option(
      "--sample-dt", tr_sample_dt, "sampling step, units of t0");
  auto* tr_out_opt =
      traj_cmd->add_option("--out", tr_out, "output directory (default .)");
  auto* tr_stem_opt =
      traj_cmd->add_option("--stem", tr_stem, "output file stem");

  // reproduce -----------------------------------------------------------------
  auto* repro_cmd = app.add_subcommand(
      "reproduce", "run a bundled figure preset (fig1..fig4)");
  std::string repro_name;
  std::string repro_out = ".";
  repro_cmd->add_option("figure", repro_name, "fig1, fig2, fig3 or fig4")
      ->required();
  repro_cmd->add_option("--out", repro_out, "output directory (default .)");

  // ---- parse ---------------------------------------------------------------
  std::vector<const char*> argv;
  argv.reserve(args.size() + 1);
  argv.push_back("dimer-trap");
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForVersion&) {
    out << version << "\n";
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    err << "run 'dimer-trap --help' for usage\n";
    return 1;
  }

  out << std::setprecision(12);

  try {
    std::vector<std::string> issues;
    std::optional<ConfigFile> config;
    const auto load_config = [&](const CommonFlags& common) -> ConfigFile* {
      if (common.config_opt->count() == 0) return nullptr;
      config = ConfigFile::load(common.config_path);
      return &*config;
    };

    if (app.got_subcommand(meanfield_cmd)) {
      Resolver r(load_config(mf_common), issues);
      const ParamInput in = mf_common.resolve(r);
      const double a = r.number(mf_window.start_opt, mf_window.start, "window_start_t0", 0.0);
      const double b = r.number(mf_window.end_opt, mf_window.end, "window_end_t0", 100.0);
      const double sample_dt = r.number(mf_window.sample_opt, mf_window.sample_dt, "sample_dt_t0", 0.01);
      const double gpe_dt = r.number(mf_window.gpe_opt, mf_window.gpe_dt, "gpe_dt_t0", 1e-3);
      const auto params = resolve_params(in, false, issues);
      if (config) config->report_unknown(issues);
      if (!(b > a) || a < 0.0) issues.push_back("window must satisfy 0 <= start < end");
      if (!issues.empty()) return report_issues(issues, err);

      const double t0 = params->t0();
      IntegratorConfig icfg;
      icfg.dt = gpe_dt * t0;
      icfg.t_end = b * t0;
      icfg.sample_every = std::max(1, static_cast<int>(std::lround(sample_dt / gpe_dt)));
      const double zbar = meanfield_zbar(*params, a * t0, b * t0, icfg);
      echo(out, "lambda", params->lambda());
      echo(out, "j", params->j);
      echo(out, "hbar", params->hbar);
      echo(out, "window_start_t0", a);
      echo(out, "window_end_t0", b);
      echo(out, "zbar_numeric", zbar);
      return 0;
    }

    if (app.got_subcommand(exact_cmd)) {
      Resolver r(load_config(ex_common), issues);
      const ParamInput in = ex_common.resolve(r);
      const double a = r.number(ex_window.start_opt, ex_window.start, "window_start_t0", 0.0);
      const double b = r.number(ex_window.end_opt, ex_window.end, "window_end_t0", 100.0);
      const double sample_dt = r.number(ex_window.sample_opt, ex_window.sample_dt, "sample_dt_t0", 0.01);
      const auto params = resolve_params(in, true, issues);
      if (config) config->report_unknown(issues);
      if (!(b > a) || a < 0.0) issues.push_back("window must satisfy 0 <= start < end");
      if (!issues.empty()) return report_issues(issues, err);

      const double t0 = params->t0();
      const double zbar = exact_zbar(*params, a * t0, b * t0, sample_dt * t0);
      echo(out, "lambda", params->lambda());
      out << "n = " << params->n_particles << "\n";
      echo(out, "u", params->u);
      echo(out, "window_start_t0", a);
      echo(out, "window_end_t0", b);
      echo(out, "zbar_exact", zbar);
      return 0;
    }

    if (app.got_subcommand(heuristic_cmd)) {
      Resolver r(load_config(he_common), issues);
      const ParamInput in = he_common.resolve(r);
      const bool mc = he_mc_opt->count() > 0;
      const std::uint64_t samples = r.unsigned_integer(he_samples_opt, he_samples, "mc_samples", 1000000);
      const std::uint64_t seed = r.unsigned_integer(he_seed_opt, he_seed, "seed", 1);
      if (!in.lambda) issues.push_back("heuristic needs --lambda");
      if (mc && !in.n) issues.push_back("--mc needs --n");
      if (config) config->report_unknown(issues);
      if (!issues.empty()) return report_issues(issues, err);

      echo(out, "lambda", *in.lambda);
      echo(out, "zbar_meanfield_closed", zbar_meanfield_closed(*in.lambda));
      if (in.n) {
        const int n = static_cast<int>(*in.n);
        out << "n = " << n << "\n";
        echo(out, "sigma_n", FluctuationModel{n}.sigma());
        echo(out, "zbar_semiclassical", zbar_closed_form(*in.lambda, n));
        echo(out, "zbar_semiclassical_corrected",
             zbar_closed_form_corrected(*in.lambda, n));
        echo(out, "dropped_term_magnitude",
             zbar_closed_form_dropped_term(*in.lambda, n));
        if (mc) {
          const McEstimate est = zbar_mc_average(*in.lambda, n, samples, seed);
          echo(out, "zbar_mc_mean", est.mean);
          echo(out, "zbar_mc_stderr", est.std_error);
          out << "mc_samples = " << est.samples << "\n";
          out << "seed = " << seed << "\n";
        }
      }
      return 0;
    }

    if (app.got_subcommand(crit_cmd)) {
      Resolver r(load_config(cr_common), issues);
      const double alpha = r.number(cr_alpha_opt, cr_alpha, "alpha", 0.001);
      const auto n_single = r.optional_integer(cr_common.n_opt, cr_common.n, "n");
      const std::string n_grid_spec = r.text(cr_grid_opt, cr_n_grid, "n_grid", "");
      const std::string out_dir = r.text(cr_out_opt, cr_out, "out", "");
      if (!(alpha > 0.0 && alpha < 0.5))
        issues.push_back("alpha must lie in (0, 1/2)");
      if (!n_single && n_grid_spec.empty())
        issues.push_back("crit needs --n or --n-grid");
      std::vector<int> n_grid;
      for (const std::string& token : split(n_grid_spec, ',')) {
        if (trim(token).empty()) continue;
        if (auto v = parse_int(trim(token)); v && *v >= 1)
          n_grid.push_back(static_cast<int>(*v));
        else
          issues.push_back("bad particle number '" + token + "'");
      }
      if (config) config->report_unknown(issues);
      if (!issues.empty()) return report_issues(issues, err);

      echo(out, "alpha", alpha);
      if (n_single) {
        const CriticalInteraction crit =
            lambda_critical(static_cast<int>(*n_single), alpha);
        out << "n = " << *n_single << "\n";
        echo(out, "lambda_alpha", crit.full);
        echo(out, "lambda_alpha_asymptote", crit.asymptotic);
      }
      if (!n_grid.empty()) {
        const auto rows = run_lambda_critical_curve(n_grid, alpha);
        if (!out_dir.empty()) {
          for (const auto& path :
               write_critical_files(rows, alpha, out_dir, "crit"))
            out << "wrote " << path.string() << "\n";
        } else {
          write_critical_csv(rows, alpha, out);
        }
      }
      return 0;
    }

    if (app.got_subcommand(sweep_cmd)) {
      Resolver r(load_config(sw_common), issues);
      SweepConfig cfg;
      const std::string grid_spec = r.text(sw_grid_opt, sw_grid, "lambda_grid", "");
      if (grid_spec.empty())
        issues.push_back("sweep needs --lambda-grid");
      else
        cfg.lambda_grid = parse_grid_spec(grid_spec, issues);
      const std::string methods_spec = r.text(sw_methods_opt, sw_methods, "methods", "");
      if (methods_spec.empty()) {
        issues.push_back("sweep needs --methods");
      } else {
        for (const std::string& token : split(methods_spec, ',')) {
          try {
            cfg.methods.push_back(method_from_string(trim(token)));
          } catch (const ValidationError& e) {
            for (const auto& issue : e.issues()) issues.push_back(issue);
          }
        }
      }
      for (const std::string& token :
           split(r.text(sw_nlist_opt, sw_nlist, "n_list", ""), ',')) {
        if (trim(token).empty()) continue;
        if (auto v = parse_int(trim(token)))
          cfg.n_list.push_back(static_cast<int>(*v));
        else
          issues.push_back("bad particle number '" + token + "'");
      }
      cfg.window_start_t0 = r.number(sw_window.start_opt, sw_window.start, "window_start_t0", 0.0);
      cfg.window_end_t0 = r.number(sw_window.end_opt, sw_window.end, "window_end_t0", 100.0);
      cfg.sample_dt_t0 = r.number(sw_window.sample_opt, sw_window.sample_dt, "sample_dt_t0", 0.01);
      cfg.gpe_dt_t0 = r.number(sw_window.gpe_opt, sw_window.gpe_dt, "gpe_dt_t0", 1e-3);
      cfg.mc_samples = r.unsigned_integer(sw_samples_opt, sw_samples, "mc_samples", 100000);
      cfg.seed = r.unsigned_integer(sw_seed_opt, sw_seed, "seed", 1);
      cfg.j = r.number(sw_j_opt, sw_j, "j", 1.0);
      cfg.hbar = r.number(sw_hbar_opt, sw_hbar, "hbar", 1.0);
      const std::string out_dir = r.text(sw_out_opt, sw_out, "out", ".");
      const std::string stem = r.text(sw_stem_opt, sw_stem, "stem", "sweep");
      if (config) config->report_unknown(issues);
      if (!issues.empty()) return report_issues(issues, err);
      try {
        cfg.validate();
      } catch (const ValidationError& e) {
        return report_issues(e.issues(), err);
      }

      const SweepResult result = run_sweep(cfg);
      for (const auto& path : write_sweep_files(result, out_dir, stem))
        out << "wrote " << path.string() << "\n";
      out << "cells = " << result.cells.size() << "\n";
      const std::size_t failed = result.failed_cells();
      out << "failed = " << failed << "\n";
      if (failed > 0) {
        for (const SweepCell& c : result.cells)
          if (!c.ok)
            err << "cell lambda=" << c.lambda << " n=" << c.n_particles
                << " method=" << to_string(c.method) << ": " << c.detail
                << "\n";
        err << "sweep finished with " << failed
            << " failed cells; rows are flagged in the CSV\n";
        return 2;
      }
      return 0;
    }

    if (app.got_subcommand(traj_cmd)) {
      Resolver r(load_config(tr_common), issues);
      const ParamInput in = tr_common.resolve(r);
      const std::string method_name = r.text(tr_method_opt, tr_method, "method", "meanfield-numeric");
      const double t_end_t0 = r.number(tr_t_end_opt, tr_t_end, "t_end_t0", 100.0);
      const double sample_dt = r.number(tr_sample_opt, tr_sample_dt, "sample_dt_t0", 0.01);
      const std::string out_dir = r.text(tr_out_opt, tr_out, "out", ".");
      const std::string stem = r.text(tr_stem_opt, tr_stem, "stem", "trajectory");
      Method method = Method::meanfield_numeric;
      try {
        method = method_from_string(method_name);
      } catch (const ValidationError& e) {
        for (const auto& issue : e.issues()) issues.push_back(issue);
      }
      const auto params =
          resolve_params(in, method == Method::exact_quantum, issues);
      if (!(t_end_t0 > 0.0)) issues.push_back("t-end must be positive");
      if (!(sample_dt > 0.0)) issues.push_back("sample-dt must be positive");
      if (config) config->report_unknown(issues);
      if (!issues.empty()) return report_issues(issues, err);

      const TrajectoryRecord record =
          run_trajectory(*params, t_end_t0, method, sample_dt);
      for (const auto& path : write_trajectory_files(record, out_dir, stem))
        out << "wrote " << path.string() << "\n";
      return 0;
    }

    if (app.got_subcommand(repro_cmd)) {
      const ReproduceOutcome outcome = reproduce_figure(repro_name, repro_out);
      for (const auto& path : outcome.files)
        out << "wrote " << path.string() << "\n";
      if (outcome.failed_cells > 0) {
        err << outcome.failed_cells
            << " cells failed; rows are flagged in the CSV\n";
        return 2;
      }
      return 0;
    }
  } catch (const ValidationError& e) {
    return report_issues(e.issues(), err);
  } catch (const IntegrationError& e) {
    err << "numerical failure: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "failure: " << e.what() << "\n";
    return 2;
  }

  err << "error: no subcommand given\n";
  return 1;
}

}  // namespace dimertrap::cli
