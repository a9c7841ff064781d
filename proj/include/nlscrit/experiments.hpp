#pragma once

// Epsilon sweeps comparing NLS evolutions with the semiclassical and the
// multiscale descriptions, with log-log scaling fits and run manifests.

#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "nlscrit/hodograph.hpp"
#include "nlscrit/multiscale.hpp"
#include "nlscrit/nls_solver.hpp"
#include "nlscrit/scaling.hpp"

namespace nlscrit::harness {

/// Catalog entry: satsuma_yajima, symmetric_mu, tvz_mu2 or nonsymmetric.
struct InitialCondition {
  std::string family = "satsuma_yajima";
  double A0 = 1.0;
  double mu = 0.0;
  double alpha = 0.1;
};

/// Everything derived from an initial condition that does not depend on eps.
struct Setup {
  InitialCondition ic;
  double L;
  hodograph::FOracle f;
  hodograph::InitialDataOptions options;
  std::shared_ptr<const hodograph::InitialData> data;
  hodograph::CriticalPoint cp;
};

/// Throws DomainError for an unknown family.
Setup make_setup(const InitialCondition& ic, double L = nls::kDefaultHalfPeriod);

/// Psi(x, 0) on the default grid for eps (or N if positive).
nls::WaveField initial_field(const Setup& setup, double epsilon, int N = 0,
                             double filter_threshold = 1e-13);

enum class Experiment {
  semiclassical_halftime,
  critical_time,
  multiscale_window,
  before_breakup,
  after_breakup
};

std::string to_string(Experiment e);
Experiment experiment_from_string(const std::string& s);

struct ExperimentConfig {
  Experiment experiment = Experiment::critical_time;
  InitialCondition ic;
  std::vector<double> epsilons{0.05, 0.06, 0.07, 0.08, 0.09, 0.1};
  double gamma = 1.0;
  double beta = 0.1;
  int N = 0;            ///< 0: default_grid_size(eps)
  double dt = 0.0;      ///< 0: default_time_step(eps)
  double filter_threshold = 1e-13;
  nls::Scheme scheme = nls::Scheme::yoshida4;
  double semicl_half_width = 6.0;  ///< semiclassical errors on |x - x0| <= this
  int threads = 1;
  std::filesystem::path out_dir;   ///< empty: no files
};

struct PointResult {
  double epsilon = 0.0;
  bool ok = false;
  std::string reason;
  double t = 0.0;
  int N = 0;
  double dt = 0.0;
  double error = 0.0;  ///< the designated L-infinity difference in u
  double linf_v = 0.0;
  double mass_drift = 0.0;
  double hamiltonian_drift = 0.0;
  bool conj_u_below_nls = false;
};

struct ExperimentResult {
  ExperimentConfig config;
  hodograph::CriticalPoint cp;
  std::vector<PointResult> points;
  std::optional<ScalingFit> fit;
  std::string fit_failure;
  std::vector<std::filesystem::path> outputs;
};

/// Time at which the experiment compares, for the given eps.
double comparison_time(Experiment e, const hodograph::CriticalPoint& cp, double epsilon,
                       double beta);

/// Runs the sweep; per-eps failures are recorded and skipped. Writes
/// per-eps CSVs and summary.csv under out_dir when it is set.
ExperimentResult run_experiment(const ExperimentConfig& config);

/// Reproducible record of a run.
struct RunManifest {
  std::vector<std::string> command;
  std::string configuration_json;
  std::string version;
  std::vector<std::filesystem::path> outputs;
  double wall_seconds = 0.0;
};

std::string version_tag();
std::string config_json(const ExperimentConfig& config);
std::string result_json(const ExperimentResult& result);
void write_manifest(const std::filesystem::path& path, const RunManifest& manifest);

}  // namespace nlscrit::harness
