#include "rtnsim/phase_diagram.hpp"

#include <cmath>
#include <limits>

#include "rtnsim/parallel.hpp"
#include "rtnsim/single_qubit.hpp"

namespace rtn {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

double effective_decay_rate(const RtnSource& src, double b0) {
  const DephasingProfile p = DephasingProfile::for_qubit(src, b0);
  if (p.weak_coupling) return p.gamma2;
  return src.gamma > 0.0 ? src.gamma : p.gamma1;
}

RegionLabel classify(const RtnSource& src, const InitialState& state, double b0,
                     const ClassifyOptions& opt) {
  const double rate = effective_decay_rate(src, b0);
  if (!(rate > 0.0))
    throw InvalidArgument("source neither dephases nor relaxes: nothing to classify");
  const double horizon = opt.horizon > 0.0 ? opt.horizon : 20.0 / rate;
  if (horizon < 20.0 / rate)
    throw GridError("classification horizon shorter than 20/(decay rate): "
                    "terminal death may lie beyond it");

  const double gc = src.g * std::cos(src.theta);
  const bool strong = src.gamma < gc;
  double dt = opt.dt;
  if (dt <= 0.0) {
    dt = strong ? kPi / (12.0 * gc) : horizon / 2000.0;
    dt = std::min(dt, horizon / 200.0);
  }
  const auto n_points = static_cast<std::size_t>(std::ceil(horizon / dt)) + 1;
  std::vector<double> grid(n_points);
  for (std::size_t i = 0; i < n_points; ++i)
    grid[i] = horizon * static_cast<double>(i) / static_cast<double>(n_points - 1);

  const QubitSpec qa(b0, src);
  const QubitSpec qb(b0);
  const ConcurrenceCurve curve =
      concurrence_curve(state, Model::TwoOne, qa, qb, grid, opt.zeta_source);
  const std::vector<EsdEvent> events = esd_times(curve, opt.revival_threshold);

  RegionLabel out;
  out.boundary_distance = src.gamma > 0.0
                              ? src.g / src.gamma - 1.0 / std::cos(src.theta)
                              : std::numeric_limits<double>::infinity();
  out.boundary_band =
      src.gamma > 0.0 && std::abs(std::log(src.g / src.gamma * std::cos(src.theta))) < 0.1;

  bool any_revival = false;
  for (const auto& ev : events)
    if (ev.revival_after) any_revival = true;
  if (events.empty())
    out.label = RegionKind::NoEsd;
  else
    out.label = any_revival ? RegionKind::EsdWithRevival : RegionKind::SingleDeath;
  return out;
}

std::vector<double> boundary_curve(const std::vector<double>& theta_grid) {
  std::vector<double> out;
  out.reserve(theta_grid.size());
  for (double th : theta_grid) {
    if (!(th >= 0.0 && th < kPi / 2.0))
      throw InvalidArgument("boundary curve requires theta in [0, pi/2)");
    out.push_back(1.0 / std::cos(th));
  }
  return out;
}

bool bloch_cone_test(double rho_a, double theta_a) {
  if (!(rho_a >= 0.0 && rho_a <= 1.0))
    throw InvalidArgument("Bloch length must lie in [0, 1]");
  return 2.0 * rho_a * std::abs(std::sin(theta_a)) + rho_a * std::cos(theta_a) <=
         1.0;
}

std::vector<PhaseScanPoint> phase_scan(const PhaseScanSettings& s) {
  if (s.n_theta < 1 || s.n_ratio < 1) throw InvalidArgument("empty phase-scan grid");
  if (!(s.theta_min >= 0.0 && s.theta_max < kPi / 2.0 && s.theta_min <= s.theta_max))
    throw InvalidArgument("phase scan requires 0 <= theta < pi/2");
  if (!(s.ratio_min > 0.0 && s.ratio_min <= s.ratio_max))
    throw InvalidArgument("phase scan requires 0 < ratio_min <= ratio_max");

  std::vector<PhaseScanPoint> points(static_cast<std::size_t>(s.n_theta) * s.n_ratio);
  const InitialState state(StateFamily::Phi, s.alpha, 0.0, s.r);
  parallel_for(static_cast<std::int64_t>(points.size()), [&](std::int64_t idx) {
    const int it = static_cast<int>(idx) / s.n_ratio;
    const int ir = static_cast<int>(idx) % s.n_ratio;
    const double theta =
        s.n_theta == 1 ? s.theta_min
                       : s.theta_min + (s.theta_max - s.theta_min) * it / (s.n_theta - 1.0);
    const double log_ratio =
        s.n_ratio == 1 ? std::log(s.ratio_min)
                       : std::log(s.ratio_min) +
                             (std::log(s.ratio_max) - std::log(s.ratio_min)) * ir /
                                 (s.n_ratio - 1.0);
    const double ratio = std::exp(log_ratio);
    const RtnSource src(s.g, theta, 0.0, s.g / ratio);
    PhaseScanPoint& pt = points[idx];
    pt.theta = theta;
    pt.g_over_gamma = ratio;
    ClassifyOptions opt;
    opt.zeta_source = s.zeta_source;
    pt.label = classify(src, state, s.b0, opt);
  });
  return points;
}

}  // namespace rtn
