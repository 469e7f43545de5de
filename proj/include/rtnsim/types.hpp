#pragma once

#include <complex>
#include <optional>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace rtn {

using complexd = std::complex<double>;
using Eigen::Matrix2cd;
using Eigen::Matrix3d;
using Eigen::Matrix4cd;
using Eigen::Matrix4d;
using Eigen::Vector3d;
using Matrix6cd = Eigen::Matrix<complexd, 6, 6>;
using Matrix16d = Eigen::Matrix<double, 16, 16>;
using Vector16d = Eigen::Matrix<double, 16, 1>;

class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
public:
  using Error::Error;
};

/// Requested zeros of a monotone dephasing function (weak coupling).
class NoZerosError : public Error {
public:
  using Error::Error;
};

/// Time grid too coarse for the requested analysis, or outside the horizon.
class GridError : public Error {
public:
  using Error::Error;
};

class ConfigError : public Error {
public:
  using Error::Error;
};

/// An engine comparison exceeded its declared tolerance.
class ToleranceError : public Error {
public:
  using Error::Error;
};

/// One telegraph-noise fluctuator coupled to a qubit: coupling magnitude g
/// along the unit direction (theta, phi), Poisson switching rate gamma.
/// gamma = 0 is the quasistatic limit (a frozen random sign), accepted so
/// that trajectory sampling covers it.
struct RtnSource {
  double g = 0.1;
  double theta = 0.0;
  double phi = 0.0;
  double gamma = 0.5;

  RtnSource() = default;
  RtnSource(double g_, double theta_, double phi_, double gamma_)
      : g(g_), theta(theta_), phi(phi_), gamma(gamma_) {
    validate();
  }

  void validate() const;

  /// g * (sin(theta)cos(phi), sin(theta)sin(phi), cos(theta))
  Vector3d coupling_vector() const;
};

/// A qubit with energy splitting b0; noisy iff a source is attached.
struct QubitSpec {
  double b0 = 1.0;
  std::optional<RtnSource> source;

  QubitSpec() = default;
  explicit QubitSpec(double b0_) : b0(b0_) { validate(); }
  QubitSpec(double b0_, const RtnSource& src) : b0(b0_), source(src) { validate(); }

  void validate() const;
  bool noisy() const { return source.has_value(); }
};

enum class StateFamily { Phi, Psi };

/// Initial two-qubit state: the projector onto alpha|00> + beta|11> (Phi)
/// or alpha|01> + beta|10> (Psi), mixed with weight r against I/4.
/// r = 1 is the pure generalized Bell state, r = 0 the fully mixed state.
struct InitialState {
  StateFamily family = StateFamily::Phi;
  double alpha = 1.0 / std::sqrt(2.0);
  complexd beta = 1.0 / std::sqrt(2.0);
  double r = 1.0;

  InitialState() = default;
  InitialState(StateFamily family_, double alpha_, double delta, double r_);

  Matrix4cd density_matrix() const;

  /// alpha in {0, 1} or r = 0: the analytic lambda expressions are 0/0
  /// and the state is separable.
  bool degenerate() const;
};

}  // namespace rtn
