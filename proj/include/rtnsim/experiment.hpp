#pragma once

#include <array>
#include <map>
#include <string>
#include <vector>

#include "rtnsim/entanglement.hpp"
#include "rtnsim/phase_diagram.hpp"
#include "rtnsim/types.hpp"

namespace rtn {

enum class Engine { Analytic, QuasiHamiltonian, MonteCarlo };
enum class ToleranceTier { Full, Smoke };

std::string engine_name(Engine e);
Engine engine_from_name(const std::string& name);

struct TimeGrid {
  double t_max = 100.0;
  int n_points = 501;

  double dt() const { return t_max / (n_points - 1); }
  std::vector<double> points() const;
};

struct ExperimentConfig {
  std::string name = "experiment";
  Model model = Model::TwoOne;
  QubitSpec qubit_a;
  QubitSpec qubit_b;
  InitialState state;
  TimeGrid grid;
  std::vector<Engine> engines{Engine::Analytic, Engine::QuasiHamiltonian};
  long mc_runs = 0;  // 0 = tier default (40000 full, 4000 smoke)
  std::uint64_t mc_seed = 20240817;
  ToleranceTier tier = ToleranceTier::Smoke;
  ZetaSource zeta_source = ZetaSource::Exact;
  std::string output_dir = ".";

  long effective_mc_runs() const;
  /// Full schema check including the sampling-rate rule: the grid must
  /// resolve both the coherence oscillation (b0 sum) and, for
  /// strongly-coupled sources, the dephasing oscillation g cos(theta).
  void validate() const;
};

/// Line-oriented config: `key = value` entries inside [section] headers,
/// `#` comments. Throws ConfigError with the offending line.
ExperimentConfig parse_experiment_config(const std::string& text,
                                         const std::string& name_hint);
ExperimentConfig load_experiment_config(const std::string& path);

struct PhaseScanConfig {
  std::string name = "phase_scan";
  PhaseScanSettings settings;
  std::string output_path = "phase_scan.csv";
};
PhaseScanConfig parse_phase_scan_config(const std::string& text,
                                        const std::string& name_hint);
PhaseScanConfig load_phase_scan_config(const std::string& path);

struct PresetPanel {
  std::string label;  // empty for single-panel presets
  ExperimentConfig config;
};
struct Preset {
  std::string name;
  std::string description;
  std::vector<PresetPanel> panels;
};
const std::vector<Preset>& presets();
const Preset* find_preset(const std::string& name);

/// One engine's full curve output.
struct CurveSet {
  std::vector<double> t;
  std::vector<Vector16d> n;  // extended Bloch vectors, n[0] = 1
  std::vector<std::array<double, 4>> lambdas;
  std::vector<double> n_norm;
  std::vector<double> c;
  std::vector<double> xi;
  std::vector<double> zeta_ab;
};

CurveSet run_engine(const ExperimentConfig& cfg, Engine engine);

struct ComparisonRow {
  std::string quantity;
  Engine engine_a = Engine::Analytic;
  Engine engine_b = Engine::QuasiHamiltonian;
  double max_abs_deviation = 0.0;
  double at_time = 0.0;
  double tolerance = 0.0;
  bool enforced = false;  // Bloch components, |n| and concurrence gate the run
  bool pass = true;
};

std::vector<ComparisonRow> compare_curves(const ExperimentConfig& cfg,
                                          const std::map<Engine, CurveSet>& curves);

struct ExperimentReport {
  std::vector<std::string> files_written;
  std::vector<ComparisonRow> comparisons;
  bool tolerances_ok = true;
};

/// Runs every configured engine, writes one CSV per engine plus the
/// comparison CSV, and reports whether all enforced tolerances held.
ExperimentReport run_experiment(const ExperimentConfig& cfg);

/// Classifies the scan grid and writes theta, g/gamma, label and the
/// signed boundary distance per cell.
void run_phase_scan(const PhaseScanConfig& cfg);

}  // namespace rtn
