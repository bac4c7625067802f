#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sphcontract/groups.hpp"
#include "sphcontract/partitions.hpp"

namespace sphc {

/// Deterministic grid generator parameters: rotations x radii x directions
/// with radii up to max_radius (the compact-set hull of the sweep).
struct GridSpec {
  int rotations = 8;
  int radii = 8;
  double max_radius = 2.0;
  int directions = 4;
  std::uint64_t seed = 12345;
};

std::vector<MotionElement> make_grid(int n, const GridSpec& spec);

enum class ContractionPair { CompactToMotion, LorentzToMotion };

/// Configuration of one convergence experiment.  Validated on build:
/// ell schedule strictly increasing, grid nonempty, and
/// min(ell) >= min_contracting_index(tau).
struct ExperimentConfig {
  ContractionPair pair = ContractionPair::CompactToMotion;
  int n = 2;
  Partition tau{{0}, 2};
  Partition sigma{{}, 1};
  double R = 1.0;    // motion radius; for the dual pair this is phi(H0)
  GridSpec grid_spec;
  std::vector<MotionElement> grid;
  std::vector<int> ell_schedule{32, 64, 128, 256};
  // Optional pass/fail requirements (CLI exit code 3 when violated).
  bool require_monotone = false;
  std::optional<double> require_final_sup;

  static ExperimentConfig build(ContractionPair pair, int n, Partition tau,
                                Partition sigma, double R, GridSpec grid,
                                std::vector<int> ell_schedule);
};

struct ReportRow {
  long long ell;
  double sup_error;
  double mean_error;
};

/// Convergence report; wall_time_s stays in memory only so that the
/// serialized form is bitwise reproducible.
struct ConvergenceReport {
  std::vector<ReportRow> rows;
  // Config echo as ordered (key, JSON fragment) pairs.
  std::vector<std::pair<std::string, std::string>> config_echo;
  std::string version = "0.1.0";
  std::uint64_t seed = 0;
  std::optional<double> fit_rate;  // empirical log-log slope, metadata only
  double wall_time_s = 0.0;

  bool monotone_decreasing() const;
  double final_sup() const;
};

std::string report_to_json(const ConvergenceReport& report);
std::string report_to_csv(const ConvergenceReport& report);

/// sup/mean operator-norm error of the compact-side spherical function at
/// the contracted grid against the motion side, per ell (alpha = ell/R).
ConvergenceReport convergence_run(const ExperimentConfig& cfg);

/// Dual sweep: principal series at parameters ell*phi against the motion
/// side with R = phi, contracted by D_ell.
ConvergenceReport dual_convergence_run(const ExperimentConfig& cfg);

/// Mehler-Heine sweep over polynomial degrees.
ConvergenceReport mehler_heine_run(const std::vector<int>& degrees,
                                   double alpha, double beta,
                                   const std::vector<double>& z_grid);

/// Contraction-axiom sweep: max/mean defect over seeded random pairs with
/// ||x|| <= 1, one row per alpha.
ConvergenceReport axiom_run(const std::vector<double>& alphas, int n_pairs,
                            std::uint64_t seed, int n = 3);

/// Flat key-value config file: `key = value` lines, '#' comments.
std::map<std::string, std::string> parse_config_file(const std::string& path);

/// CLI entry point (subcommands branch/eval/contract/dual/mehler-heine/
/// axiom).  Returns 0 on success, 2 on configuration errors, 3 on
/// numeric-tolerance failures.
int run_cli(int argc, const char* const* argv);

}  // namespace sphc
