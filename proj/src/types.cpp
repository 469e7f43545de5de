#include "rtnsim/types.hpp"

#include <cmath>

#include "rtnsim/bloch.hpp"

namespace rtn {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

void RtnSource::validate() const {
  if (!(g > 0.0) || !std::isfinite(g))
    throw InvalidArgument("RTN coupling g must be positive");
  if (!(gamma >= 0.0) || !std::isfinite(gamma))
    throw InvalidArgument("RTN switching rate gamma must be >= 0");
  if (!(theta >= 0.0 && theta <= kPi / 2.0))
    throw InvalidArgument("RTN working point theta must lie in [0, pi/2]");
  if (!(phi >= 0.0 && phi < 2.0 * kPi))
    throw InvalidArgument("RTN azimuth phi must lie in [0, 2*pi)");
}

Vector3d RtnSource::coupling_vector() const {
  return g * Vector3d(std::sin(theta) * std::cos(phi),
                      std::sin(theta) * std::sin(phi), std::cos(theta));
}

void QubitSpec::validate() const {
  if (!(b0 > 0.0) || !std::isfinite(b0))
    throw InvalidArgument("qubit energy splitting b0 must be positive");
  if (source) source->validate();
}

InitialState::InitialState(StateFamily family_, double alpha_, double delta, double r_)
    : family(family_), alpha(alpha_), r(r_) {
  if (!(alpha >= 0.0 && alpha <= 1.0))
    throw InvalidArgument("state amplitude alpha must lie in [0, 1]");
  if (!(r >= 0.0 && r <= 1.0))
    throw InvalidArgument("Werner weight r must lie in [0, 1]");
  const double beta_mag = std::sqrt(std::max(0.0, 1.0 - alpha * alpha));
  beta = std::polar(beta_mag, delta);
}

Matrix4cd InitialState::density_matrix() const {
  // basis order |00>, |01>, |10>, |11>, qubit A first
  Eigen::Vector4cd psi = Eigen::Vector4cd::Zero();
  if (family == StateFamily::Phi) {
    psi(0) = alpha;
    psi(3) = beta;
  } else {
    psi(1) = alpha;
    psi(2) = beta;
  }
  return r * (psi * psi.adjoint()) + (1.0 - r) / 4.0 * Matrix4cd::Identity();
}

bool InitialState::degenerate() const {
  const double ab = alpha * std::abs(beta);
  return r < 1e-12 || ab < 1e-12;
}

}  // namespace rtn
