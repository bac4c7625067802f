#include "sphcontract/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "sphcontract/repmodels.hpp"
#include "sphcontract/specfun.hpp"
#include "sphcontract/spherical.hpp"

#include "CLI11.hpp"

namespace sphc {

namespace {

std::string js_num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string js_int_list(const std::vector<int>& v) {
  std::string out = "[";
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(v[i]);
  }
  return out + "]";
}

std::string js_num_list(const std::vector<double>& v) {
  std::string out = "[";
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) out += ",";
    out += js_num(v[i]);
  }
  return out + "]";
}

std::string js_partition(const Partition& p) { return js_int_list(p.entries()); }

double opnorm(const Eigen::MatrixXcd& m) {
  return Eigen::JacobiSVD<Eigen::MatrixXcd>(m).singularValues()(0);
}

void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn) {
  const unsigned hw = std::thread::hardware_concurrency();
  const unsigned nt = std::min<unsigned>(hw ? hw : 1, 8);
  if (nt <= 1 || count < 2 * nt) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> workers;
  for (unsigned t = 0; t < nt; ++t)
    workers.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) fn(i);
    });
  for (auto& w : workers) w.join();
}

std::optional<double> fit_log_slope(const std::vector<ReportRow>& rows) {
  std::vector<double> xs, ys;
  for (const auto& r : rows)
    if (r.ell > 0 && r.sup_error > 0.0) {
      xs.push_back(std::log(double(r.ell)));
      ys.push_back(std::log(r.sup_error));
    }
  if (xs.size() < 2) return std::nullopt;
  double mx = 0, my = 0;
  for (size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= xs.size();
  my /= ys.size();
  double sxx = 0, sxy = 0;
  for (size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
  }
  if (sxx == 0.0) return std::nullopt;
  return sxy / sxx;
}

void echo_grid(std::vector<std::pair<std::string, std::string>>& echo,
               const GridSpec& g) {
  echo.emplace_back("grid.rotations", std::to_string(g.rotations));
  echo.emplace_back("grid.radii", std::to_string(g.radii));
  echo.emplace_back("grid.max_radius", js_num(g.max_radius));
  echo.emplace_back("grid.directions", std::to_string(g.directions));
  echo.emplace_back("grid.seed", std::to_string(g.seed));
  // The compact-set hull of the sweep is the closed ball of this radius.
  echo.emplace_back("grid.hull_radius", js_num(g.max_radius));
}

struct StopWatch {
  std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
        .count();
  }
};

}  // namespace

std::vector<MotionElement> make_grid(int n, const GridSpec& spec) {
  if (n != 2 && n != 3) throw std::invalid_argument("make_grid: n must be 2 or 3");
  if (spec.rotations < 1 || spec.radii < 1 || spec.directions < 1 ||
      !(spec.max_radius > 0.0))
    throw std::invalid_argument("make_grid: invalid grid spec");
  std::mt19937_64 rng(spec.seed);
  std::vector<Rotation> rots;
  std::vector<Eigen::VectorXd> dirs;
  if (n == 2) {
    for (int i = 0; i < spec.rotations; ++i)
      rots.push_back(Rotation::from_angle(2.0 * M_PI * i / spec.rotations));
    for (int l = 0; l < spec.directions; ++l) {
      const double phi = 2.0 * M_PI * l / spec.directions + M_PI / 8.0;
      Eigen::VectorXd d(2);
      d << std::cos(phi), std::sin(phi);
      dirs.push_back(d);
    }
  } else {
    for (int i = 0; i < spec.rotations; ++i) rots.push_back(random_rotation(3, rng));
    std::normal_distribution<double> gauss(0.0, 1.0);
    for (int l = 0; l < spec.directions; ++l) {
      Eigen::VectorXd d(3);
      do {
        for (int i = 0; i < 3; ++i) d(i) = gauss(rng);
      } while (d.norm() < 1e-8);
      d.normalize();
      dirs.push_back(d);
    }
  }
  std::vector<MotionElement> grid;
  grid.reserve(rots.size() * spec.radii * dirs.size());
  for (const auto& k : rots)
    for (int j = 1; j <= spec.radii; ++j)
      for (const auto& d : dirs)
        grid.emplace_back(k, (spec.max_radius * j / spec.radii) * d);
  return grid;
}

ExperimentConfig ExperimentConfig::build(ContractionPair pair, int n,
                                         Partition tau, Partition sigma,
                                         double R, GridSpec gridspec,
                                         std::vector<int> ell_schedule) {
  ExperimentConfig cfg;
  cfg.pair = pair;
  cfg.n = n;
  cfg.tau = std::move(tau);
  cfg.sigma = std::move(sigma);
  cfg.R = R;
  cfg.grid_spec = gridspec;
  cfg.ell_schedule = std::move(ell_schedule);
  if (cfg.tau.group_size() != n)
    throw std::invalid_argument("ExperimentConfig: tau must label SO(n)");
  if (cfg.sigma.group_size() != n - 1)
    throw std::invalid_argument("ExperimentConfig: sigma must label SO(n-1)");
  if (!(R > 0.0)) throw std::invalid_argument("ExperimentConfig: R must be > 0");
  if (cfg.ell_schedule.empty())
    throw std::invalid_argument("ExperimentConfig: empty ell schedule");
  for (size_t i = 0; i + 1 < cfg.ell_schedule.size(); ++i)
    if (cfg.ell_schedule[i] >= cfg.ell_schedule[i + 1])
      throw std::invalid_argument(
          "ExperimentConfig: ell schedule must be strictly increasing");
  if (cfg.ell_schedule.front() < min_contracting_index(cfg.tau))
    throw std::invalid_argument(
        "ExperimentConfig: min(ell) < min_contracting_index(tau)");
  cfg.grid = make_grid(n, gridspec);
  if (cfg.grid.empty()) throw std::invalid_argument("ExperimentConfig: empty grid");
  return cfg;
}

bool ConvergenceReport::monotone_decreasing() const {
  for (size_t i = 0; i + 1 < rows.size(); ++i)
    if (!(rows[i + 1].sup_error < rows[i].sup_error)) return false;
  return true;
}

double ConvergenceReport::final_sup() const {
  if (rows.empty()) throw std::logic_error("ConvergenceReport: no rows");
  return rows.back().sup_error;
}

std::string report_to_json(const ConvergenceReport& report) {
  std::string out = "{\"config\":{";
  for (size_t i = 0; i < report.config_echo.size(); ++i) {
    if (i) out += ",";
    out += "\"" + report.config_echo[i].first + "\":" + report.config_echo[i].second;
  }
  out += "},\"rows\":[";
  for (size_t i = 0; i < report.rows.size(); ++i) {
    if (i) out += ",";
    out += "{\"ell\":" + std::to_string(report.rows[i].ell) +
           ",\"sup_error\":" + js_num(report.rows[i].sup_error) +
           ",\"mean_error\":" + js_num(report.rows[i].mean_error) + "}";
  }
  out += "],\"meta\":{\"version\":\"" + report.version +
         "\",\"seed\":" + std::to_string(report.seed);
  if (report.fit_rate) out += ",\"rate\":" + js_num(*report.fit_rate);
  out += "}}";
  return out;
}

std::string report_to_csv(const ConvergenceReport& report) {
  std::string out = "ell,sup_error,mean_error\n";
  for (const auto& r : report.rows)
    out += std::to_string(r.ell) + "," + js_num(r.sup_error) + "," +
           js_num(r.mean_error) + "\n";
  return out;
}

namespace {

ConvergenceReport sweep_run(const ExperimentConfig& cfg, bool dual) {
  StopWatch watch;
  const TauModel tau = TauModel::make(cfg.n, cfg.tau);
  const MotionRepParams mp(cfg.n, cfg.sigma, cfg.R);
  const MotionSpherical motion(mp, tau);

  std::vector<Eigen::MatrixXcd> motion_vals(cfg.grid.size());
  parallel_for(cfg.grid.size(), [&](std::size_t i) {
    motion_vals[i] = motion.value(cfg.grid[i]).mat;
  });

  ConvergenceReport report;
  for (int ell : cfg.ell_schedule) {
    std::vector<double> errs(cfg.grid.size());
    if (!dual) {
      const CompactRepLabel label{contracting_label(cfg.sigma, ell)};
      const CompactSpherical compact(label, tau);
      const double alpha = ell / cfg.R;  // D_{ell/R}
      parallel_for(cfg.grid.size(), [&](std::size_t i) {
        const SphericalValue v =
            compact.value(contract_compact(alpha, cfg.grid[i]));
        errs[i] = opnorm(v.mat - motion_vals[i]);
      });
    } else {
      const LorentzSpherical lorentz(PrincipalSeriesParams{ell * cfg.R}, tau);
      parallel_for(cfg.grid.size(), [&](std::size_t i) {
        const SphericalValue v =
            lorentz.value(contract_lorentz(double(ell), cfg.grid[i]));
        errs[i] = opnorm(v.mat - motion_vals[i]);
      });
    }
    double sup = 0.0, mean = 0.0;
    for (double e : errs) {
      sup = std::max(sup, e);
      mean += e;
    }
    mean /= errs.size();
    report.rows.push_back({ell, sup, mean});
  }

  report.config_echo.emplace_back(
      "pair", dual ? "\"lorentz->motion\"" : "\"compact->motion\"");
  report.config_echo.emplace_back("n", std::to_string(cfg.n));
  report.config_echo.emplace_back("tau", js_partition(cfg.tau));
  report.config_echo.emplace_back("sigma", js_partition(cfg.sigma));
  report.config_echo.emplace_back(dual ? "phi" : "R", js_num(cfg.R));
  report.config_echo.emplace_back("ell", js_int_list(cfg.ell_schedule));
  echo_grid(report.config_echo, cfg.grid_spec);
  report.seed = cfg.grid_spec.seed;
  report.fit_rate = fit_log_slope(report.rows);
  report.wall_time_s = watch.seconds();
  return report;
}

}  // namespace

ConvergenceReport convergence_run(const ExperimentConfig& cfg) {
  if (cfg.pair != ContractionPair::CompactToMotion)
    throw std::invalid_argument("convergence_run: config is for the dual pair");
  return sweep_run(cfg, /*dual=*/false);
}

ConvergenceReport dual_convergence_run(const ExperimentConfig& cfg) {
  if (cfg.pair != ContractionPair::LorentzToMotion)
    throw std::invalid_argument("dual_convergence_run: config is for the compact pair");
  if (cfg.n != 2)
    throw std::invalid_argument("dual_convergence_run: only n = 2 is supported");
  return sweep_run(cfg, /*dual=*/true);
}

ConvergenceReport mehler_heine_run(const std::vector<int>& degrees,
                                   double alpha, double beta,
                                   const std::vector<double>& z_grid) {
  if (degrees.empty() || z_grid.empty())
    throw std::invalid_argument("mehler_heine_run: empty inputs");
  StopWatch watch;
  ConvergenceReport report;
  for (int n : degrees) {
    const double sup = mehler_heine_error(n, alpha, beta, z_grid);
    double mean = 0.0;
    const double scale = std::pow(double(n), -alpha);
    for (double z : z_grid)
      mean += std::abs(jacobi_p(n, alpha, beta, std::cos(z / n)) * scale -
                       bessel_j_normalized(alpha, z));
    mean /= z_grid.size();
    report.rows.push_back({n, sup, mean});
  }
  report.config_echo.emplace_back("alpha", js_num(alpha));
  report.config_echo.emplace_back("beta", js_num(beta));
  report.config_echo.emplace_back("N", js_int_list(degrees));
  report.config_echo.emplace_back("z", js_num_list(z_grid));
  report.seed = 0;
  report.fit_rate = fit_log_slope(report.rows);
  report.wall_time_s = watch.seconds();
  return report;
}

ConvergenceReport axiom_run(const std::vector<double>& alphas, int n_pairs,
                            std::uint64_t seed, int n) {
  if (alphas.empty()) throw std::invalid_argument("axiom_run: empty alphas");
  for (size_t i = 0; i + 1 < alphas.size(); ++i)
    if (!(alphas[i] < alphas[i + 1]))
      throw std::invalid_argument("axiom_run: alphas must be increasing");
  if (n_pairs < 1) throw std::invalid_argument("axiom_run: n_pairs must be >= 1");
  StopWatch watch;

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::normal_distribution<double> gauss(0.0, 1.0);
  auto ball_point = [&]() {
    Eigen::VectorXd d(n);
    do {
      for (int i = 0; i < n; ++i) d(i) = gauss(rng);
    } while (d.norm() < 1e-8);
    d.normalize();
    return Eigen::VectorXd(std::pow(unit(rng), 1.0 / n) * d);
  };
  std::vector<std::pair<MotionElement, MotionElement>> pairs;
  pairs.reserve(n_pairs);
  for (int i = 0; i < n_pairs; ++i)
    pairs.emplace_back(MotionElement(random_rotation(n, rng), ball_point()),
                       MotionElement(random_rotation(n, rng), ball_point()));

  ConvergenceReport report;
  for (double alpha : alphas) {
    std::vector<double> defects(pairs.size());
    parallel_for(pairs.size(), [&](std::size_t i) {
      defects[i] = contraction_defect(alpha, pairs[i].first, pairs[i].second);
    });
    double sup = 0.0, mean = 0.0;
    for (double d : defects) {
      sup = std::max(sup, d);
      mean += d;
    }
    mean /= defects.size();
    report.rows.push_back({std::llround(alpha), sup, mean});
  }
  report.config_echo.emplace_back("n", std::to_string(n));
  std::vector<double> av(alphas.begin(), alphas.end());
  report.config_echo.emplace_back("alphas", js_num_list(av));
  report.config_echo.emplace_back("pairs", std::to_string(n_pairs));
  report.config_echo.emplace_back("seed", std::to_string(seed));
  report.seed = seed;
  report.fit_rate = fit_log_slope(report.rows);
  report.wall_time_s = watch.seconds();
  return report;
}

std::map<std::string, std::string> parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open config file: " + path);
  std::map<std::string, std::string> kv;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    auto trim = [](std::string s) {
      const auto b = s.find_first_not_of(" \t\r");
      const auto e = s.find_last_not_of(" \t\r");
      return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    const std::string t = trim(line);
    if (t.empty()) continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("config line " + std::to_string(lineno) +
                                  ": expected key = value");
    kv[trim(t.substr(0, eq))] = trim(t.substr(eq + 1));
  }
  return kv;
}

// ---------------------------------------------------------------------------
// CLI
// ---------------------------------------------------------------------------

namespace {

std::vector<int> parse_int_list(const std::string& s) {
  std::vector<int> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ','))
    if (!tok.empty()) out.push_back(std::stoi(tok));
  return out;
}

std::vector<double> parse_double_list(const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ','))
    if (!tok.empty()) out.push_back(std::stod(tok));
  return out;
}

Partition parse_partition(const std::string& s, int group_size) {
  if (s == "-" || s.empty()) return Partition({}, group_size);
  return Partition(parse_int_list(s), group_size);
}

void print_matrix(const Eigen::MatrixXcd& m) {
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    std::string line;
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (j) line += "  ";
      char buf[96];
      std::snprintf(buf, sizeof(buf), "%.17g%+.17gi", m(i, j).real(),
                    m(i, j).imag());
      line += buf;
    }
    std::cout << line << "\n";
  }
}

struct SweepCliOpts {
  std::string config_path;
  std::string n, tau, sigma, R, phi, ell;
  std::string grid_rotations, grid_radii, grid_max_radius, grid_directions,
      grid_seed;
  std::string require_monotone, require_final_sup;
  std::string out_json, out_csv;
};

void add_sweep_options(CLI::App* cmd, SweepCliOpts& o) {
  cmd->add_option("--config", o.config_path, "flat key = value config file");
  cmd->add_option("--n", o.n, "ambient dimension n");
  cmd->add_option("--tau", o.tau, "tau partition, comma separated (or '-')");
  cmd->add_option("--sigma", o.sigma, "sigma partition of SO(n-1) (or '-')");
  cmd->add_option("--R", o.R, "motion-representation radius R");
  cmd->add_option("--phi", o.phi, "principal-series parameter phi(H0)");
  cmd->add_option("--ell", o.ell, "ell schedule, comma separated");
  cmd->add_option("--grid-rotations", o.grid_rotations, "rotations in the grid");
  cmd->add_option("--grid-radii", o.grid_radii, "radii in the grid");
  cmd->add_option("--grid-max-radius", o.grid_max_radius, "grid hull radius");
  cmd->add_option("--grid-directions", o.grid_directions, "directions in the grid");
  cmd->add_option("--seed", o.grid_seed, "grid seed");
  cmd->add_option("--require-monotone", o.require_monotone,
                  "fail (exit 3) unless sup errors strictly decrease");
  cmd->add_option("--require-final-sup", o.require_final_sup,
                  "fail (exit 3) unless the final sup error is below this");
  cmd->add_option("--out", o.out_json, "JSON report path ('-' = stdout)");
  cmd->add_option("--csv", o.out_csv, "CSV table path");
}

std::string pick(const std::map<std::string, std::string>& file,
                 const std::string& key, const std::string& flag,
                 const std::string& fallback) {
  if (!flag.empty()) return flag;
  const auto it = file.find(key);
  if (it != file.end()) return it->second;
  return fallback;
}

int emit_report(const ConvergenceReport& report, const ExperimentConfig* cfg,
                const std::string& out_json, const std::string& out_csv) {
  const std::string json = report_to_json(report);
  if (out_json.empty() || out_json == "-") {
    std::cout << json << "\n";
  } else {
    std::ofstream f(out_json);
    if (!f) throw std::invalid_argument("cannot write " + out_json);
    f << json << "\n";
  }
  if (!out_csv.empty()) {
    std::ofstream f(out_csv);
    if (!f) throw std::invalid_argument("cannot write " + out_csv);
    f << report_to_csv(report);
  }
  std::cerr << "wall time: " << report.wall_time_s << " s\n";
  if (cfg) {
    if (cfg->require_monotone && !report.monotone_decreasing()) {
      std::cerr << "requirement violated: sup errors are not strictly decreasing\n";
      return 3;
    }
    if (cfg->require_final_sup &&
        !(report.final_sup() < *cfg->require_final_sup)) {
      std::cerr << "requirement violated: final sup error "
                << report.final_sup() << " >= " << *cfg->require_final_sup
                << "\n";
      return 3;
    }
  }
  return 0;
}

int run_sweep_command(const SweepCliOpts& o, bool dual) {
  std::map<std::string, std::string> file;
  if (!o.config_path.empty()) file = parse_config_file(o.config_path);
  const int n = std::stoi(pick(file, "n", o.n, "2"));
  const std::string sigma_default = (n == 2) ? "-" : "0";
  const Partition tau =
      parse_partition(pick(file, "tau", o.tau, "0"), n);
  const Partition sigma =
      parse_partition(pick(file, "sigma", o.sigma, sigma_default), n - 1);
  const std::string rkey = dual ? "phi" : "R";
  const double R =
      std::stod(pick(file, rkey, dual ? o.phi : o.R, "1.0"));
  const std::vector<int> ell =
      parse_int_list(pick(file, "ell", o.ell, "32,64,128,256"));
  GridSpec grid;
  grid.rotations = std::stoi(pick(file, "grid.rotations", o.grid_rotations, "8"));
  grid.radii = std::stoi(pick(file, "grid.radii", o.grid_radii, "8"));
  grid.max_radius =
      std::stod(pick(file, "grid.max_radius", o.grid_max_radius, "2.0"));
  grid.directions =
      std::stoi(pick(file, "grid.directions", o.grid_directions, "4"));
  grid.seed = std::stoull(pick(file, "grid.seed", o.grid_seed, "12345"));

  ExperimentConfig cfg = ExperimentConfig::build(
      dual ? ContractionPair::LorentzToMotion
           : ContractionPair::CompactToMotion,
      n, tau, sigma, R, grid, ell);
  const std::string mono = pick(file, "require.monotone", o.require_monotone, "");
  if (mono == "true" || mono == "1") cfg.require_monotone = true;
  const std::string fin = pick(file, "require.final_sup", o.require_final_sup, "");
  if (!fin.empty()) cfg.require_final_sup = std::stod(fin);

  const ConvergenceReport report =
      dual ? dual_convergence_run(cfg) : convergence_run(cfg);
  return emit_report(report, &cfg,
                     pick(file, "out.json", o.out_json, ""),
                     pick(file, "out.csv", o.out_csv, ""));
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
  CLI::App app{
      "sphcontract: scalar- and matrix-valued spherical functions of the "
      "pairs (SO(n+1),SO(n)), (M(n),SO(n)), (SO0(n,1),SO(n)) and their "
      "contraction limits"};
  app.require_subcommand(1);

  // Every subcommand takes --config plus flag overrides; flags win over
  // file values, file values win over built-in defaults.
  std::string cfg_path;

  // branch
  auto* branch_cmd = app.add_subcommand("branch", "restrict an SO(N) label");
  std::string group, part_str;
  branch_cmd->add_option("--config", cfg_path, "flat key = value config file");
  branch_cmd->add_option("--group", group, "group, e.g. so5");
  branch_cmd->add_option("--partition", part_str, "partition, comma separated");

  // eval
  auto* eval_cmd =
      app.add_subcommand("eval", "print one spherical value as a matrix");
  std::string ev_pair, ev_tau, ev_sigma, ev_x, ev_k, ev_n, ev_ell, ev_R,
      ev_phi, ev_lambda;
  eval_cmd->add_option("--config", cfg_path, "flat key = value config file");
  eval_cmd->add_option("--pair", ev_pair,
                       "compact | motion | lorentz | character");
  eval_cmd->add_option("--n", ev_n, "ambient dimension");
  eval_cmd->add_option("--tau", ev_tau, "tau partition");
  eval_cmd->add_option("--sigma", ev_sigma, "sigma partition (or '-')");
  eval_cmd->add_option("--R", ev_R, "motion radius R");
  eval_cmd->add_option("--phi", ev_phi, "principal-series parameter");
  eval_cmd->add_option("--ell", ev_ell, "compact label index ell");
  eval_cmd->add_option("--x", ev_x, "translation / Cartan part, comma separated");
  eval_cmd->add_option("--k", ev_k,
                       "rotation part: angle (n=2) or zyz Euler angles (n=3)");
  eval_cmd->add_option("--lambda", ev_lambda,
                       "character parameter for --pair character");

  // contract / dual
  auto* contract_cmd =
      app.add_subcommand("contract", "compact -> motion convergence sweep");
  SweepCliOpts contract_opts;
  add_sweep_options(contract_cmd, contract_opts);
  auto* dual_cmd =
      app.add_subcommand("dual", "lorentz -> motion convergence sweep (n = 2)");
  SweepCliOpts dual_opts;
  add_sweep_options(dual_cmd, dual_opts);

  // mehler-heine
  auto* mh_cmd = app.add_subcommand("mehler-heine", "classical limit sweep");
  std::string mh_N, mh_z, mh_alpha, mh_beta, mh_out, mh_csv;
  mh_cmd->add_option("--config", cfg_path, "flat key = value config file");
  mh_cmd->add_option("--N", mh_N, "polynomial degrees, comma separated");
  mh_cmd->add_option("--alpha", mh_alpha, "Jacobi alpha");
  mh_cmd->add_option("--beta", mh_beta, "Jacobi beta");
  mh_cmd->add_option("--z", mh_z, "z grid in (0,10], comma separated");
  mh_cmd->add_option("--out", mh_out, "JSON report path ('-' = stdout)");
  mh_cmd->add_option("--csv", mh_csv, "CSV table path");

  // axiom
  auto* ax_cmd = app.add_subcommand("axiom", "contraction axiom defect sweep");
  std::string ax_alphas, ax_pairs, ax_seed, ax_n, ax_out, ax_csv;
  ax_cmd->add_option("--config", cfg_path, "flat key = value config file");
  ax_cmd->add_option("--alphas", ax_alphas, "contraction parameters, increasing");
  ax_cmd->add_option("--pairs", ax_pairs, "number of random pairs");
  ax_cmd->add_option("--seed", ax_seed, "random seed");
  ax_cmd->add_option("--n", ax_n, "ambient dimension (2 or 3)");
  ax_cmd->add_option("--out", ax_out, "JSON report path ('-' = stdout)");
  ax_cmd->add_option("--csv", ax_csv, "CSV table path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    std::map<std::string, std::string> file;
    if (!cfg_path.empty()) file = parse_config_file(cfg_path);

    if (branch_cmd->parsed()) {
      const std::string grp = pick(file, "group", group, "so4");
      if (grp.size() < 3 || grp.substr(0, 2) != "so")
        throw std::invalid_argument("--group must look like so4");
      const int N = std::stoi(grp.substr(2));
      const Partition p =
          parse_partition(pick(file, "partition", part_str, "0,0"), N);
      for (const Partition& q : branch(p)) std::cout << q.to_string() << "\n";
      return 0;
    }
    if (eval_cmd->parsed()) {
      const std::string pair = pick(file, "pair", ev_pair, "motion");
      const int n = std::stoi(pick(file, "n", ev_n, "2"));
      Eigen::VectorXd x = Eigen::VectorXd::Zero(n);
      const std::string xs_str = pick(file, "x", ev_x, "");
      if (!xs_str.empty()) {
        const auto xs = parse_double_list(xs_str);
        if (static_cast<int>(xs.size()) != n)
          throw std::invalid_argument("--x must have n entries");
        for (int i = 0; i < n; ++i) x(i) = xs[i];
      }
      Rotation k = Rotation::identity(n);
      const std::string ks_str = pick(file, "k", ev_k, "");
      if (!ks_str.empty()) {
        const auto ks = parse_double_list(ks_str);
        if (n == 2 && ks.size() == 1)
          k = Rotation::from_angle(ks[0]);
        else if (n == 3 && ks.size() == 3)
          k = Rotation::from_euler(ks[0], ks[1], ks[2]);
        else
          throw std::invalid_argument("--k needs 1 angle (n=2) or 3 angles (n=3)");
      }
      const MotionElement g(k, x);
      if (pair == "character") {
        // Zero-Plancherel character attached to the trivial orbit.
        const auto ls = parse_double_list(pick(file, "lambda", ev_lambda, ""));
        if (static_cast<int>(ls.size()) != n)
          throw std::invalid_argument("--lambda must have n entries");
        Eigen::VectorXd lam(n);
        for (int i = 0; i < n; ++i) lam(i) = ls[i];
        Eigen::MatrixXcd out(1, 1);
        out(0, 0) = scalar_character_rep(lam, g);
        print_matrix(out);
        std::cout << "# zero Plancherel measure: absent from the spherical "
                     "Fourier inversion\n";
        return 0;
      }
      const Partition tau = parse_partition(pick(file, "tau", ev_tau, "0"), n);
      const TauModel model = TauModel::make(n, tau);
      if (pair == "motion") {
        const MotionRepParams params(
            n, parse_partition(pick(file, "sigma", ev_sigma, ""), n - 1),
            std::stod(pick(file, "R", ev_R, "1.0")));
        print_matrix(spherical_value(params, model, g).mat);
      } else if (pair == "compact") {
        const CompactRepLabel label{contracting_label(
            parse_partition(pick(file, "sigma", ev_sigma, ""), n - 1),
            std::stoi(pick(file, "ell", ev_ell, "8")))};
        print_matrix(
            spherical_value(label, model, contract_compact(1.0, g)).mat);
      } else if (pair == "lorentz") {
        if (n != 2) throw std::invalid_argument("lorentz pair needs n = 2");
        print_matrix(
            spherical_value(
                PrincipalSeriesParams{std::stod(pick(file, "phi", ev_phi, "1.0"))},
                model, contract_lorentz(1.0, g))
                .mat);
      } else {
        throw std::invalid_argument(
            "--pair must be compact, motion, lorentz or character");
      }
      return 0;
    }
    if (contract_cmd->parsed()) return run_sweep_command(contract_opts, false);
    if (dual_cmd->parsed()) return run_sweep_command(dual_opts, true);
    if (mh_cmd->parsed()) {
      const ConvergenceReport report = mehler_heine_run(
          parse_int_list(pick(file, "N", mh_N, "50,100,200")),
          std::stod(pick(file, "alpha", mh_alpha, "0")),
          std::stod(pick(file, "beta", mh_beta, "0")),
          parse_double_list(
              pick(file, "z", mh_z, "0.5,1,1.5,2,2.5,3,3.5,4,4.5,5")));
      return emit_report(report, nullptr, pick(file, "out.json", mh_out, ""),
                         pick(file, "out.csv", mh_csv, ""));
    }
    if (ax_cmd->parsed()) {
      const ConvergenceReport report =
          axiom_run(parse_double_list(pick(file, "alphas", ax_alphas, "10,100,1000")),
                    std::stoi(pick(file, "pairs", ax_pairs, "100")),
                    std::stoull(pick(file, "seed", ax_seed, "7")),
                    std::stoi(pick(file, "n", ax_n, "3")));
      return emit_report(report, nullptr, pick(file, "out.json", ax_out, ""),
                         pick(file, "out.csv", ax_csv, ""));
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::runtime_error& e) {
    std::cerr << "numeric failure: " << e.what() << "\n";
    return 3;
  }
  return 2;
}

}  // namespace sphc
