#include "rtnsim/single_qubit.hpp"

#include <cmath>
#include <limits>

namespace rtn {

namespace {
constexpr double kPi = 3.14159265358979323846;

double gamma1_weak(const RtnSource& src, double b0) {
  const double s = std::sin(src.theta);
  return 2.0 * src.gamma * src.g * src.g * s * s /
         (4.0 * src.gamma * src.gamma + b0 * b0);
}

double gamma1_strong(const RtnSource& src, double b0) {
  const double s = std::sin(src.theta);
  const double eps2 = src.g / b0;
  return 2.0 * src.gamma * eps2 * eps2 * s * s;
}

}  // namespace

DephasingProfile DephasingProfile::for_qubit(const RtnSource& src, double b0) {
  DephasingProfile p;
  const double gc = src.g * std::cos(src.theta);
  p.weak_coupling = src.gamma >= gc;
  p.near_boundary = std::abs(gc - src.gamma) <= 1e-3 * std::max(gc, src.gamma);
  if (src.theta == 0.0)
    p.regime = Regime::PureDephasingExact;
  else
    p.regime = p.weak_coupling ? Regime::WeakCoupling : Regime::StrongCoupling;
  p.eps1 = gc > 0.0 ? src.gamma / gc : std::numeric_limits<double>::infinity();
  p.eps2 = src.g / b0;
  p.gamma1 = rtn::gamma1(src, b0);
  p.gamma2 = p.weak_coupling
                 ? p.gamma1 / 2.0 + gc * gc / (2.0 * src.gamma)
                 : 0.0;
  return p;
}

double zeta_weak(const RtnSource& src, double b0, double t) {
  const double gc = src.g * std::cos(src.theta);
  const double g2 = gamma1_weak(src, b0) / 2.0 + gc * gc / (2.0 * src.gamma);
  return std::exp(-g2 * t);
}

double zeta_strong(const RtnSource& src, double t) {
  const double gc = src.g * std::cos(src.theta);
  const double eps1 = src.gamma / gc;
  return std::exp(-src.gamma * t) *
         (std::cos(gc * t) + eps1 * std::sin(gc * t));
}

double zeta_pure_dephasing_exact(double g, double gamma, double t) {
  if (!(g > 0.0) || gamma < 0.0 || t < 0.0)
    throw InvalidArgument("zeta_pure_dephasing_exact requires g > 0, gamma >= 0, t >= 0");
  if (std::abs(g - gamma) < 1e-9 * gamma)
    return std::exp(-gamma * t) * (1.0 + gamma * t);
  if (g < gamma) {
    // exp(-gamma t)[cosh(w t) + (gamma/w) sinh(w t)], w = sqrt(gamma^2 - g^2),
    // rearranged into decaying exponentials so large t cannot overflow.
    const double w = std::sqrt((gamma - g) * (gamma + g));
    const double a = 0.5 * (1.0 + gamma / w);
    const double b = 0.5 * (1.0 - gamma / w);
    return a * std::exp(-(gamma - w) * t) + b * std::exp(-(gamma + w) * t);
  }
  const double w = std::sqrt((g - gamma) * (g + gamma));
  return std::exp(-gamma * t) * (std::cos(w * t) + (gamma / w) * std::sin(w * t));
}

double gamma1(const RtnSource& src, double b0) {
  if (src.theta == 0.0) return 0.0;
  return src.gamma >= src.g * std::cos(src.theta) ? gamma1_weak(src, b0)
                                                  : gamma1_strong(src, b0);
}

std::vector<double> zeta_zeros(const RtnSource& src, int count) {
  if (count < 1) throw InvalidArgument("zeta_zeros requires count >= 1");
  const double gc = src.g * std::cos(src.theta);
  if (src.gamma >= gc)
    throw NoZerosError("weak-coupling dephasing is monotone: no zeros exist");
  std::vector<double> zeros;
  zeros.reserve(count);
  if (src.theta == 0.0) {
    const double w = std::sqrt((src.g - src.gamma) * (src.g + src.gamma));
    const double phase = std::atan(std::sqrt(src.g * src.g / (src.gamma * src.gamma) - 1.0));
    for (int l = 1; l <= count; ++l) zeros.push_back((kPi * l - phase) / w);
  } else {
    const double eps1 = src.gamma / gc;
    const double phase = std::atan(1.0 / eps1);
    for (int l = 1; l <= count; ++l) zeros.push_back((kPi * l - phase) / gc);
  }
  return zeros;
}

double zeta_regime(const RtnSource& src, double b0, double t) {
  return src.gamma >= src.g * std::cos(src.theta) ? zeta_weak(src, b0, t)
                                                  : zeta_strong(src, t);
}

double fid_signal(const RtnSource& src, double b0, double t) {
  if (t < 0.0) throw InvalidArgument("fid_signal requires t >= 0");
  return std::cos(b0 * t) * zeta_regime(src, b0, t);
}

}  // namespace rtn
