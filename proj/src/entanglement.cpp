#include "rtnsim/entanglement.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <unsupported/Eigen/KroneckerProduct>

#include "rtnsim/noise_core.hpp"
#include "rtnsim/parallel.hpp"
#include "rtnsim/single_qubit.hpp"

namespace rtn {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

Matrix4cd sigma_yy() {
  const auto& s = bloch::paulis();
  return Eigen::kroneckerProduct(s[2], s[2]);
}

Matrix4cd hermitian_sqrt(const Matrix4cd& rho) {
  Eigen::SelfAdjointEigenSolver<Matrix4cd> es(0.5 * (rho + rho.adjoint()));
  Eigen::Vector4d ev = es.eigenvalues().cwiseMax(0.0);
  return es.eigenvectors() * ev.cwiseSqrt().asDiagonal() *
         es.eigenvectors().adjoint();
}

void check_model_sources(Model model, const QubitSpec& a, const QubitSpec& b) {
  if (model == Model::TwoOne && (!a.noisy() || b.noisy()))
    throw InvalidArgument("two-one model: noise attached to qubit A only");
  if (model == Model::TwoTwo && (!a.noisy() || !b.noisy()))
    throw InvalidArgument("two-two model: both qubits carry a noise source");
}

ModelRates rates_at(const QubitSpec& a, const QubitSpec& b, double t, ZetaSource zs) {
  ModelRates r;
  r.t = t;
  r.gamma1_a = a.noisy() ? gamma1(*a.source, a.b0) : 0.0;
  r.gamma1_b = b.noisy() ? gamma1(*b.source, b.b0) : 0.0;
  r.zeta_a = zeta_of(a, t, zs);
  r.zeta_b = zeta_of(b, t, zs);
  return r;
}

}  // namespace

bloch::BlochVector analytic_bloch(const InitialState& st, const ModelRates& rates,
                                  double b0_a, double b0_b) {
  const double k = 2.0 * st.alpha * st.alpha - 1.0;
  const double ea = std::exp(-rates.gamma1_a * rates.t);
  const double eb = std::exp(-rates.gamma1_b * rates.t);
  const double zab = rates.zeta_a * rates.zeta_b;
  const double re_b = st.beta.real(), im_b = st.beta.imag();

  Vector16d n = Vector16d::Zero();
  n(0) = 1.0;
  if (st.family == StateFamily::Phi) {
    // coherences rotate at the sum frequency
    const double ph = (b0_a + b0_b) * rates.t;
    const double c = std::cos(ph), s = std::sin(ph);
    const double n5_0 = 2.0 * st.alpha * re_b;
    const double n6_0 = 2.0 * st.alpha * im_b;
    n(3) = st.r * k * eb;
    n(5) = st.r * zab * (c * n5_0 + s * n6_0);
    n(6) = st.r * zab * (-s * n5_0 + c * n6_0);
    n(9) = n(6);
    n(10) = -n(5);
    n(12) = st.r * k * ea;
    n(15) = st.r * ea * eb;
  } else {
    // sigma_z^A + sigma_z^B annihilates |Psi>; only the difference
    // frequency survives (zero for equal splittings)
    const double ph = (b0_a - b0_b) * rates.t;
    const double c = std::cos(ph), s = std::sin(ph);
    const double n5_0 = 2.0 * st.alpha * re_b;
    const double n6_0 = -2.0 * st.alpha * im_b;
    n(3) = -st.r * k * eb;
    n(5) = st.r * zab * (c * n5_0 - s * n6_0);
    n(6) = st.r * zab * (s * n5_0 + c * n6_0);
    n(9) = -n(6);
    n(10) = n(5);
    n(12) = st.r * k * ea;
    n(15) = -st.r * ea * eb;
  }
  return bloch::BlochVector(n);
}

double zeta_of(const QubitSpec& spec, double t, ZetaSource zs) {
  if (!spec.noisy()) return 1.0;
  const RtnSource& src = *spec.source;
  if (zs == ZetaSource::ClosedForm) return zeta_regime(src, spec.b0, t);
  if (src.theta == 0.0) return zeta_pure_dephasing_exact(src.g, src.gamma, t);
  return zeta_from_transfer(spec, t);
}

ConcurrenceResult concurrence_wootters(const Matrix4cd& rho) {
  bloch::validate_density(rho, 1e-10, 1e-10);
  const Matrix4cd yy = sigma_yy();
  const Matrix4cd rho_tilde = yy * rho.conjugate() * yy;
  const Matrix4cd sq = hermitian_sqrt(rho);
  const Matrix4cd m = sq * rho_tilde * sq;
  Eigen::SelfAdjointEigenSolver<Matrix4cd> es(0.5 * (m + m.adjoint()));
  Eigen::Vector4d ev = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  std::array<double, 4> l{ev(3), ev(2), ev(1), ev(0)};  // descending
  ConcurrenceResult res;
  res.spectrum.lambdas = l;
  res.spectrum.q = l[0] - l[1] - l[2] - l[3];
  res.concurrence = std::max(0.0, res.spectrum.q);
  return res;
}

AnalyticSpectrum lambda_spectrum_analytic(const InitialState& state, Model model,
                                          const ModelRates& rates) {
  if (state.degenerate())
    throw InvalidArgument(
        "analytic lambda spectrum is 0/0 for alpha in {0,1} or r = 0");
  if (model == Model::TwoOne &&
      (rates.gamma1_b != 0.0 || rates.zeta_b != 1.0))
    throw InvalidArgument("two-one model: qubit B evolves freely");

  const double r = state.r;
  const double alpha = state.alpha;
  const double bmag = std::abs(state.beta);
  const double k = 2.0 * alpha * alpha - 1.0;
  const double ea = std::exp(-rates.gamma1_a * rates.t);
  const double eb = std::exp(-rates.gamma1_b * rates.t);
  const double denom = 4.0 * r * alpha * bmag;
  const double zab = std::abs(rates.zeta_a * rates.zeta_b);

  const double rad_tilde =
      (1.0 + r * ea * eb) * (1.0 + r * ea * eb) - r * r * k * k * (ea + eb) * (ea + eb);
  const double rad =
      (1.0 - r * ea * eb) * (1.0 - r * ea * eb) - r * r * k * k * (ea - eb) * (ea - eb);

  AnalyticSpectrum out;
  out.xi_tilde = std::sqrt(std::max(0.0, rad_tilde)) / denom;
  out.xi = std::sqrt(std::max(0.0, rad)) / denom;

  const double c1 = r * alpha * bmag;
  std::array<double, 4> l{c1 * (out.xi_tilde + zab), c1 * (out.xi_tilde - zab),
                          c1 * out.xi, c1 * out.xi};
  for (auto& v : l) v = std::max(0.0, v);  // clamp roundoff
  out.spectrum.q = l[0] - l[1] - l[2] - l[3];
  std::sort(l.begin(), l.end(), std::greater<>());
  out.spectrum.lambdas = l;
  return out;
}

double purity_norm_analytic(const InitialState& state, const ModelRates& rates) {
  const double a2 = state.alpha * state.alpha;
  const double k = 2.0 * a2 - 1.0;
  const double ea = std::exp(-rates.gamma1_a * rates.t);
  const double eb = std::exp(-rates.gamma1_b * rates.t);
  const double zab = rates.zeta_a * rates.zeta_b;
  return state.r * std::sqrt(8.0 * a2 * (1.0 - a2) * zab * zab +
                             ea * ea * eb * eb + k * k * (ea * ea + eb * eb));
}

bloch::BlochVector analytic_bloch_two_one(const InitialState& state,
                                          const QubitSpec& qubit_a, double b0_b,
                                          double t, ZetaSource zs) {
  if (!qubit_a.noisy())
    throw InvalidArgument("two-one model: qubit A carries the noise source");
  QubitSpec b(b0_b);
  return analytic_bloch(state, rates_at(qubit_a, b, t, zs), qubit_a.b0, b0_b);
}

bloch::BlochVector analytic_bloch_two_two(const InitialState& state,
                                          const QubitSpec& qubit_a,
                                          const QubitSpec& qubit_b, double t,
                                          ZetaSource zs) {
  check_model_sources(Model::TwoTwo, qubit_a, qubit_b);
  return analytic_bloch(state, rates_at(qubit_a, qubit_b, t, zs), qubit_a.b0,
                        qubit_b.b0);
}

ConcurrencePoint concurrence_analytic(const InitialState& state, Model model,
                                      const QubitSpec& qubit_a,
                                      const QubitSpec& qubit_b, double t,
                                      ZetaSource zs) {
  check_model_sources(model, qubit_a, qubit_b);
  const ModelRates rates = rates_at(qubit_a, qubit_b, t, zs);
  const bloch::BlochVector n =
      analytic_bloch(state, rates, qubit_a.b0, qubit_b.b0);

  ConcurrencePoint pt;
  pt.zeta_ab = rates.zeta_a * rates.zeta_b;
  pt.n_norm = model == Model::TwoTwo ? purity_norm_analytic(state, rates)
                                     : n.norm();
  if (state.degenerate()) {
    // separable end points: the eigenvalue route settles it
    const ConcurrenceResult w = concurrence_wootters(bloch::from_bloch(n));
    pt.c = w.concurrence;
    pt.q = w.spectrum.q;
    pt.lambdas = w.spectrum.lambdas;
    pt.xi = kNaN;
    pt.xi_tilde = kNaN;
    return pt;
  }
  const AnalyticSpectrum sp = lambda_spectrum_analytic(state, model, rates);
  pt.q = sp.spectrum.q;
  pt.c = std::max(0.0, pt.q);
  pt.xi = sp.xi;
  pt.xi_tilde = sp.xi_tilde;
  pt.lambdas = sp.spectrum.lambdas;
  return pt;
}

std::vector<double> zeta_curve(const QubitSpec& spec,
                               const std::vector<double>& grid, ZetaSource zs) {
  const std::size_t np = grid.size();
  std::vector<double> z(np, 1.0);
  if (!spec.noisy()) return z;
  const RtnSource& src = *spec.source;
  if (zs == ZetaSource::ClosedForm) {
    for (std::size_t i = 0; i < np; ++i) z[i] = zeta_regime(src, spec.b0, grid[i]);
  } else if (src.theta == 0.0) {
    for (std::size_t i = 0; i < np; ++i)
      z[i] = zeta_pure_dephasing_exact(src.g, src.gamma, grid[i]);
  } else {
    // matrix-exponential read; the per-point exponentials are independent
    const QuasiHamiltonian hq = QuasiHamiltonian::build(spec);
    parallel_for(static_cast<std::int64_t>(np), [&](std::int64_t i) {
      z[i] = rotating_frame_block(hq.contracted(grid[i]), spec.b0, grid[i])(0, 0);
    });
  }
  return z;
}

ConcurrenceCurve concurrence_curve(const InitialState& state, Model model,
                                   const QubitSpec& qubit_a,
                                   const QubitSpec& qubit_b,
                                   const std::vector<double>& grid,
                                   ZetaSource zs) {
  check_model_sources(model, qubit_a, qubit_b);
  const std::size_t np = grid.size();
  for (std::size_t i = 0; i < np; ++i) {
    if (grid[i] < 0.0 || (i > 0 && grid[i] <= grid[i - 1]))
      throw InvalidArgument("time grid must be nonnegative and increasing");
  }

  const std::vector<double> za = zeta_curve(qubit_a, grid, zs);
  const std::vector<double> zb = zeta_curve(qubit_b, grid, zs);

  ConcurrenceCurve curve;
  curve.times = grid;
  curve.c.resize(np);
  curve.q.resize(np);
  curve.xi.resize(np);
  curve.xi_tilde.resize(np);
  curve.zeta_ab.resize(np);
  curve.n_norm.resize(np);
  for (const QubitSpec* q : {&qubit_a, &qubit_b}) {
    if (!q->noisy()) continue;
    const double gc = q->source->g * std::cos(q->source->theta);
    if (q->source->gamma < gc) curve.strong_rate = std::max(curve.strong_rate, gc);
  }

  const double g1a = qubit_a.noisy() ? gamma1(*qubit_a.source, qubit_a.b0) : 0.0;
  const double g1b = qubit_b.noisy() ? gamma1(*qubit_b.source, qubit_b.b0) : 0.0;
  for (std::size_t i = 0; i < np; ++i) {
    ModelRates rates{g1a, g1b, za[i], zb[i], grid[i]};
    const bloch::BlochVector n = analytic_bloch(state, rates, qubit_a.b0, qubit_b.b0);
    curve.zeta_ab[i] = rates.zeta_a * rates.zeta_b;
    curve.n_norm[i] = model == Model::TwoTwo ? purity_norm_analytic(state, rates)
                                             : n.norm();
    if (state.degenerate()) {
      const ConcurrenceResult w = concurrence_wootters(bloch::from_bloch(n));
      curve.c[i] = w.concurrence;
      curve.q[i] = w.spectrum.q;
      curve.xi[i] = kNaN;
      curve.xi_tilde[i] = kNaN;
    } else {
      const AnalyticSpectrum sp = lambda_spectrum_analytic(state, model, rates);
      curve.q[i] = sp.spectrum.q;
      curve.c[i] = std::max(0.0, sp.spectrum.q);
      curve.xi[i] = sp.xi;
      curve.xi_tilde[i] = sp.xi_tilde;
    }
  }
  return curve;
}

std::vector<EsdEvent> esd_times(const ConcurrenceCurve& curve,
                                double revival_threshold) {
  const std::size_t np = curve.times.size();
  if (np < 3) throw GridError("esd_times needs at least 3 grid points");
  double max_dt = 0.0;
  for (std::size_t i = 1; i < np; ++i)
    max_dt = std::max(max_dt, curve.times[i] - curve.times[i - 1]);
  if (curve.strong_rate > 0.0 && max_dt > kPi / (10.0 * curve.strong_rate))
    throw GridError("grid spacing exceeds pi/(10 g cos theta): oscillations "
                    "of the dephasing function would be undersampled");

  std::vector<EsdEvent> events;

  // interval deaths: maximal runs with c == 0, boundaries refined by the
  // linear root of q
  std::size_t i = 0;
  while (i < np) {
    if (curve.c[i] > 0.0) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j + 1 < np && curve.c[j + 1] <= 0.0) ++j;
    EsdEvent ev;
    if (i > 0 && curve.q[i - 1] > 0.0 && curve.q[i] < 0.0) {
      const double f = curve.q[i - 1] / (curve.q[i - 1] - curve.q[i]);
      ev.start = curve.times[i - 1] + f * (curve.times[i] - curve.times[i - 1]);
    } else {
      ev.start = curve.times[i];
    }
    ev.terminal = (j == np - 1);
    if (!ev.terminal && curve.q[j] < 0.0 && curve.q[j + 1] > 0.0) {
      const double f = curve.q[j] / (curve.q[j] - curve.q[j + 1]);
      ev.end = curve.times[j] + f * (curve.times[j + 1] - curve.times[j]);
    } else {
      ev.end = curve.times[j];
    }
    // an exact isolated zero touch between live neighbours is a point death
    ev.point_death = (i == j && curve.q[i] >= -1e-15 && i > 0 && j + 1 < np &&
                      curve.c[i - 1] > revival_threshold &&
                      curve.c[j + 1] > revival_threshold);
    if (ev.point_death) ev.start = ev.end = curve.times[i];
    events.push_back(ev);
    i = j + 1;
  }

  // point deaths between samples: the signed dephasing product crosses zero
  // while the concurrence stays positive on both sides
  for (std::size_t k = 0; k + 1 < np; ++k) {
    if (std::isnan(curve.zeta_ab[k]) || std::isnan(curve.zeta_ab[k + 1])) continue;
    if (curve.zeta_ab[k] * curve.zeta_ab[k + 1] < 0.0 &&
        curve.c[k] > revival_threshold && curve.c[k + 1] > revival_threshold) {
      const double f = curve.zeta_ab[k] / (curve.zeta_ab[k] - curve.zeta_ab[k + 1]);
      EsdEvent ev;
      ev.start = ev.end = curve.times[k] + f * (curve.times[k + 1] - curve.times[k]);
      ev.point_death = true;
      events.push_back(ev);
    }
  }

  std::sort(events.begin(), events.end(),
            [](const EsdEvent& a, const EsdEvent& b) { return a.start < b.start; });

  for (auto& ev : events) {
    const auto it = std::upper_bound(curve.times.begin(), curve.times.end(), ev.end);
    ev.revival_after = false;
    for (auto t = it; t != curve.times.end(); ++t) {
      const std::size_t idx = static_cast<std::size_t>(t - curve.times.begin());
      if (curve.c[idx] > revival_threshold) {
        ev.revival_after = true;
        break;
      }
    }
  }
  return events;
}

std::vector<double> purity_curve(const InitialState& state, Model model,
                                 const QubitSpec& qubit_a,
                                 const QubitSpec& qubit_b,
                                 const std::vector<double>& grid, ZetaSource zs) {
  check_model_sources(model, qubit_a, qubit_b);
  std::vector<double> out(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const ModelRates rates = rates_at(qubit_a, qubit_b, grid[i], zs);
    if (model == Model::TwoTwo) {
      out[i] = purity_norm_analytic(state, rates);
    } else {
      out[i] = analytic_bloch(state, rates, qubit_a.b0, qubit_b.b0).norm();
    }
  }
  return out;
}

}  // namespace rtn
