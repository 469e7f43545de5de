#pragma once

#include <array>
#include <vector>

#include "rtnsim/bloch.hpp"
#include "rtnsim/types.hpp"

namespace rtn {

enum class Model { TwoOne, TwoTwo };

/// Where the analytic curves take their dephasing function from.
/// Exact: the closed theta = 0 forms when applicable, otherwise the
/// rotating-frame entry of the matrix-exponential transfer matrix.
/// ClosedForm: the weak/strong expansion formulas.
enum class ZetaSource { Exact, ClosedForm };

/// Square roots of the eigenvalues of rho * rho_tilde, descending,
/// and q = l1 - l2 - l3 - l4. Concurrence is max{0, q}.
struct LambdaSpectrum {
  std::array<double, 4> lambdas{};
  double q = 0.0;
};

struct ConcurrenceResult {
  double concurrence = 0.0;
  LambdaSpectrum spectrum;
};

/// Wootters concurrence of a two-qubit density matrix via the Hermitian
/// form sqrt(rho) rho_tilde sqrt(rho); tiny negative eigenvalues are
/// clamped to zero.
ConcurrenceResult concurrence_wootters(const Matrix4cd& rho);

/// Per-time dephasing/relaxation inputs for the analytic spectrum.
/// Two-one model: gamma1_b = 0 and zeta_b = 1 (qubit B evolves freely).
struct ModelRates {
  double gamma1_a = 0.0;
  double gamma1_b = 0.0;
  double zeta_a = 1.0;
  double zeta_b = 1.0;
  double t = 0.0;
};

/// The analytic lambda spectrum plus the relaxation functions xi and
/// xi_tilde entering it. Throws InvalidArgument for degenerate states
/// (alpha in {0,1} or r = 0), where the radical expressions are 0/0.
struct AnalyticSpectrum {
  LambdaSpectrum spectrum;
  double xi = 0.0;
  double xi_tilde = 0.0;
};
AnalyticSpectrum lambda_spectrum_analytic(const InitialState& state, Model model,
                                          const ModelRates& rates);

/// Closed-form generalized Bloch vector from explicit rates: the printed
/// nonzero components, Werner-scaled by r. Building block of the model
/// wrappers below.
bloch::BlochVector analytic_bloch(const InitialState& state,
                                  const ModelRates& rates, double b0_a,
                                  double b0_b);

/// Closed-form generalized Bloch vector of the two-one model (noise on
/// qubit A only). Werner states scale the Bell-state components by r.
bloch::BlochVector analytic_bloch_two_one(const InitialState& state,
                                          const QubitSpec& qubit_a,
                                          double b0_b, double t,
                                          ZetaSource zs = ZetaSource::Exact);

/// Closed-form generalized Bloch vector with independent noise on both
/// qubits; the coherence components carry the product zeta_A * zeta_B.
bloch::BlochVector analytic_bloch_two_two(const InitialState& state,
                                          const QubitSpec& qubit_a,
                                          const QubitSpec& qubit_b, double t,
                                          ZetaSource zs = ZetaSource::Exact);

/// One point of the analytic concurrence, decomposed into the dephasing
/// term |zeta| (or |zeta_A zeta_B|) and the relaxation function xi that
/// race against each other. Degenerate states fall back to the
/// eigenvalue route (concurrence 0, xi/xi_tilde NaN).
struct ConcurrencePoint {
  double c = 0.0;
  double q = 0.0;
  double xi = 0.0;
  double xi_tilde = 0.0;
  double zeta_ab = 1.0;  // signed product of the dephasing functions
  double n_norm = 0.0;
  std::array<double, 4> lambdas{};
};
ConcurrencePoint concurrence_analytic(const InitialState& state, Model model,
                                      const QubitSpec& qubit_a,
                                      const QubitSpec& qubit_b, double t,
                                      ZetaSource zs = ZetaSource::Exact);

struct ConcurrenceCurve {
  std::vector<double> times;
  std::vector<double> c;
  std::vector<double> q;
  std::vector<double> xi;
  std::vector<double> xi_tilde;
  std::vector<double> zeta_ab;
  std::vector<double> n_norm;
  /// max over strongly-coupled sources of g cos(theta); 0 when all weak.
  /// esd_times uses it for its sampling check.
  double strong_rate = 0.0;
};

ConcurrenceCurve concurrence_curve(const InitialState& state, Model model,
                                   const QubitSpec& qubit_a,
                                   const QubitSpec& qubit_b,
                                   const std::vector<double>& grid,
                                   ZetaSource zs = ZetaSource::Exact);

/// A maximal region where the concurrence vanishes. Interval deaths are
/// runs of q <= 0; point deaths are isolated zero touches where the signed
/// dephasing product changes sign while the concurrence stays positive
/// around the crossing. The last interval may be open-ended (terminal).
struct EsdEvent {
  double start = 0.0;
  double end = 0.0;
  bool point_death = false;
  bool terminal = false;       // interval reaches the end of the grid
  bool revival_after = false;  // concurrence exceeds the threshold later
};

/// Extracts death/revival structure from a sampled curve. Throws GridError
/// when the grid spacing exceeds pi / (10 * strong_rate).
std::vector<EsdEvent> esd_times(const ConcurrenceCurve& curve,
                                double revival_threshold = 1e-6);

/// |n|(t): closed form for the two-two model, direct vector norm otherwise.
double purity_norm_analytic(const InitialState& state, const ModelRates& rates);
std::vector<double> purity_curve(const InitialState& state, Model model,
                                 const QubitSpec& qubit_a,
                                 const QubitSpec& qubit_b,
                                 const std::vector<double>& grid,
                                 ZetaSource zs = ZetaSource::Exact);

/// Dephasing function of one qubit under the given source policy
/// (1 for a noise-free qubit).
double zeta_of(const QubitSpec& spec, double t, ZetaSource zs);

/// zeta_of over a whole grid; the matrix-exponential case parallelizes
/// over time points.
std::vector<double> zeta_curve(const QubitSpec& spec,
                               const std::vector<double>& grid, ZetaSource zs);

}  // namespace rtn
