#pragma once

#include <vector>

#include "rtnsim/types.hpp"

namespace rtn {

/// Coupling classification of one RTN source. Weak (fast, Markovian-like)
/// means gamma > g cos(theta): the dephasing function decays monotonically.
/// Strong (slow, non-Markovian) means gamma < g cos(theta): it oscillates
/// through zero. At theta = 0 exact closed forms are available for any
/// coupling ratio.
enum class Regime { WeakCoupling, StrongCoupling, PureDephasingExact };

struct DephasingProfile {
  Regime regime = Regime::WeakCoupling;
  bool weak_coupling = true;   // gamma >= g cos(theta)
  bool near_boundary = false;  // g cos(theta) ~ gamma: both expansions degrade
  double gamma1 = 0.0;         // longitudinal relaxation rate
  double gamma2 = 0.0;         // transverse rate (weak coupling only)
  double eps1 = 0.0;           // gamma / (g cos theta)
  double eps2 = 0.0;           // g / b0

  static DephasingProfile for_qubit(const RtnSource& src, double b0);
};

/// Weak-coupling dephasing function exp(-Gamma_2 t) with
/// Gamma_2 = Gamma_1/2 + g^2 cos^2(theta) / (2 gamma).
double zeta_weak(const RtnSource& src, double b0, double t);

/// Strong-coupling dephasing function
/// exp(-gamma t) [cos(g cos(theta) t) + eps_1 sin(g cos(theta) t)].
double zeta_strong(const RtnSource& src, double t);

/// Exact dephasing function at theta = 0, valid for any coupling ratio.
/// Hyperbolic branch for g < gamma, trigonometric for g > gamma; the
/// removable g = gamma point evaluates the limit exp(-gamma t)(1 + gamma t).
double zeta_pure_dephasing_exact(double g, double gamma, double t);

/// Regime-appropriate longitudinal relaxation rate:
/// 2 gamma g^2 sin^2(theta) / (4 gamma^2 + b0^2) at weak coupling,
/// 2 gamma (g/b0)^2 sin^2(theta) at strong coupling. Zero at theta = 0.
double gamma1(const RtnSource& src, double b0);

/// First `count` zeros of the dephasing function, strictly increasing.
/// Uses the exact theta = 0 expression when applicable, the strong-coupling
/// expansion otherwise. Throws NoZerosError at weak coupling (no zeros).
std::vector<double> zeta_zeros(const RtnSource& src, int count);

/// Free-induction-decay signal cos(b0 t) * zeta(t) with the
/// weak/strong-coupling dephasing function chosen by the coupling ratio.
double fid_signal(const RtnSource& src, double b0, double t);

/// Weak/strong dispatch of the expansion forms (boundary counts as weak).
double zeta_regime(const RtnSource& src, double b0, double t);

}  // namespace rtn
