#pragma once

#include <vector>

#include "rtnsim/entanglement.hpp"
#include "rtnsim/types.hpp"

namespace rtn {

enum class RegionKind { EsdWithRevival, SingleDeath, NoEsd };

struct RegionLabel {
  RegionKind label = RegionKind::NoEsd;
  /// signed distance of g/gamma from sec(theta); positive in the
  /// revival region
  double boundary_distance = 0.0;
  /// |log((g/gamma) cos theta)| < 0.1: both regime expansions degrade here
  bool boundary_band = false;
};

struct ClassifyOptions {
  double horizon = 0.0;  // 0 = auto: 20 / effective decay rate
  double dt = 0.0;       // 0 = auto: oscillation-resolving spacing
  ZetaSource zeta_source = ZetaSource::Exact;
  double revival_threshold = 1e-6;
};

/// Decay rate of the dephasing envelope: Gamma_2 at weak coupling,
/// gamma at strong coupling.
double effective_decay_rate(const RtnSource& src, double b0);

/// Classifies the concurrence time dependence of the two-one model with
/// noise `src` on qubit A. Runs the analytic concurrence on an
/// oscillation-resolving grid and extracts death/revival structure; the
/// horizon must cover 20 / (effective decay rate) or the result would be
/// a guess (throws GridError instead).
RegionLabel classify(const RtnSource& src, const InitialState& state, double b0,
                     const ClassifyOptions& opt = {});

/// Boundary curve g/gamma = sec(theta); theta = pi/2 diverges and is
/// rejected.
std::vector<double> boundary_curve(const std::vector<double>& theta_grid);

/// Geometric zero-concurrence criterion of the two-one model with a
/// generalized Bell initial state: C = 0 iff qubit A's Bloch vector
/// (length rho_a, polar angle theta_a) satisfies
/// 2 rho_a |sin theta_a| + rho_a cos theta_a <= 1 (falls inside the cone).
bool bloch_cone_test(double rho_a, double theta_a);

struct PhaseScanPoint {
  double theta = 0.0;
  double g_over_gamma = 1.0;
  RegionLabel label;
};

struct PhaseScanSettings {
  int n_theta = 20;
  double theta_min = 0.0;
  double theta_max = 1.4;
  int n_ratio = 20;
  double ratio_min = 0.2;  // g/gamma, log-spaced
  double ratio_max = 20.0;
  double g = 0.1;
  double b0 = 1.0;
  double alpha = 0.70710678118654752;
  double r = 0.5;
  ZetaSource zeta_source = ZetaSource::Exact;
};

/// Classifies every grid cell; cells run in parallel, assembly is by index.
std::vector<PhaseScanPoint> phase_scan(const PhaseScanSettings& settings);

}  // namespace rtn
