#include "rtnsim/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "rtnsim/bloch.hpp"
#include "rtnsim/parallel.hpp"

namespace rtn {

namespace {

std::mt19937_64 stream_generator(std::uint64_t seed, std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
  return std::mt19937_64(seq);
}

// uniform in (0, 1]; avoids log(0)
double uniform_open(std::mt19937_64& gen) {
  const std::uint64_t r = gen();
  return (static_cast<double>(r >> 11) + 1.0) * 0x1.0p-53;
}

void check_grid(const std::vector<double>& grid, double horizon) {
  if (grid.empty()) throw InvalidArgument("time grid is empty");
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (grid[i] < 0.0 || (i > 0 && grid[i] <= grid[i - 1]))
      throw InvalidArgument("time grid must be nonnegative and increasing");
  }
  if (horizon >= 0.0 && grid.back() > horizon)
    throw GridError("time grid extends beyond the trajectory horizon");
}

// sparse view of the generator basis: n_i is a sum of four signed entries
// of rho, so Bloch extraction costs 64 multiply-adds per time point
struct SparseMu {
  struct Entry {
    int row, col;
    complexd weight;
  };
  std::array<std::array<Entry, 4>, 16> entries{};

  SparseMu() {
    const auto& mu = bloch::generators();
    for (int k = 0; k < 16; ++k) {
      int m = 0;
      for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c)
          if (std::abs(mu[k](r, c)) > 0.5) entries[k][m++] = {r, c, mu[k](r, c)};
    }
  }

  // Tr[rho mu_k] = sum_rc rho(c, r) mu_k(r, c); real for Hermitian rho
  Vector16d extract(const Matrix4cd& rho) const {
    Vector16d n;
    for (int k = 0; k < 16; ++k) {
      complexd acc = 0.0;
      for (const auto& e : entries[k]) acc += rho(e.col, e.row) * e.weight;
      n(k) = acc.real();
    }
    return n;
  }
};

const SparseMu& sparse_mu() {
  static const SparseMu s;
  return s;
}

struct BlockPartial {
  std::vector<Matrix4cd> rho_sum;
  std::vector<Vector16d> n_sum;
  std::vector<Vector16d> n2_sum;
  bool init = false;

  void ensure(std::size_t np) {
    if (init) return;
    rho_sum.assign(np, Matrix4cd::Zero());
    n_sum.assign(np, Vector16d::Zero());
    n2_sum.assign(np, Vector16d::Zero());
    init = true;
  }
};

}  // namespace

int Trajectory::sign_at(double t) const {
  const auto it = std::upper_bound(switch_times.begin(), switch_times.end(), t);
  const auto flips = static_cast<std::size_t>(it - switch_times.begin());
  return (flips % 2 == 0) ? initial_sign : -initial_sign;
}

Trajectory sample_trajectory(const RtnSource& src, double horizon,
                             std::uint64_t seed, std::uint64_t stream) {
  if (!(horizon > 0.0)) throw InvalidArgument("trajectory horizon must be positive");
  auto gen = stream_generator(seed, stream);
  Trajectory traj;
  traj.horizon = horizon;
  traj.initial_sign = (gen() & 1u) ? 1 : -1;
  if (src.gamma > 0.0) {
    double t = 0.0;
    for (;;) {
      t += -std::log(uniform_open(gen)) / src.gamma;  // exponential waiting time
      if (t > horizon) break;
      traj.switch_times.push_back(t);
    }
  }
  return traj;
}

Matrix2cd segment_unitary(const QubitSpec& spec, int sign, double dt) {
  Vector3d omega(0.0, 0.0, spec.b0);
  if (spec.noisy()) omega += static_cast<double>(sign) * spec.source->coupling_vector();
  const double w = omega.norm();
  const complexd i(0.0, 1.0);
  if (w * dt == 0.0) return Matrix2cd::Identity();
  const Vector3d axis = omega / w;
  const double half = 0.5 * w * dt;
  const auto& s = bloch::paulis();
  Matrix2cd ax = axis(0) * s[1] + axis(1) * s[2] + axis(2) * s[3];
  return std::cos(half) * Matrix2cd::Identity() + i * std::sin(half) * ax;
}

std::vector<Matrix2cd> trajectory_unitaries(const QubitSpec& spec,
                                            const Trajectory* traj,
                                            const std::vector<double>& grid) {
  check_grid(grid, traj ? traj->horizon : -1.0);
  std::vector<Matrix2cd> out(grid.size());
  Matrix2cd acc = Matrix2cd::Identity();
  double t_prev = 0.0;
  int sign = traj ? traj->initial_sign : 1;
  std::size_t next_switch = 0;
  for (std::size_t j = 0; j < grid.size(); ++j) {
    const double t = grid[j];
    if (traj) {
      while (next_switch < traj->switch_times.size() &&
             traj->switch_times[next_switch] <= t) {
        const double ts = traj->switch_times[next_switch];
        acc = segment_unitary(spec, sign, ts - t_prev) * acc;
        t_prev = ts;
        sign = -sign;
        ++next_switch;
      }
    }
    out[j] = segment_unitary(spec, sign, t - t_prev) * acc;
  }
  return out;
}

std::vector<Matrix4cd> evolve_trajectory(const QubitSpec& a, const QubitSpec& b,
                                         const Trajectory* traj_a,
                                         const Trajectory* traj_b,
                                         const Matrix4cd& rho0,
                                         const std::vector<double>& grid) {
  const auto ua = trajectory_unitaries(a, traj_a, grid);
  const auto ub = trajectory_unitaries(b, traj_b, grid);
  std::vector<Matrix4cd> out(grid.size());
  for (std::size_t j = 0; j < grid.size(); ++j) {
    Matrix4cd u;
    for (int r = 0; r < 2; ++r)
      for (int c = 0; c < 2; ++c)
        u.block<2, 2>(2 * r, 2 * c) = ua[j](r, c) * ub[j];
    out[j] = u * rho0 * u.adjoint();
  }
  return out;
}

EnsembleResult ensemble_average(const QubitSpec& a, const QubitSpec& b,
                                const InitialState& state,
                                const std::vector<double>& grid,
                                const EnsembleOptions& opt) {
  if (opt.n_runs < 1) throw InvalidArgument("ensemble needs n_runs >= 1");
  const double horizon = grid.back();
  check_grid(grid, horizon);
  const std::size_t np = grid.size();
  const Matrix4cd rho0 = state.density_matrix();
  const SparseMu& mu = sparse_mu();

  BlockPartial total;
  total.ensure(np);

  ordered_block_reduce<BlockPartial>(
      opt.n_runs, opt.block_size,
      [&](std::int64_t begin, std::int64_t end, BlockPartial& part) {
        part.ensure(np);
        for (std::int64_t run = begin; run < end; ++run) {
          Trajectory ta, tb;
          const Trajectory* pa = nullptr;
          const Trajectory* pb = nullptr;
          if (a.noisy()) {
            ta = sample_trajectory(*a.source, horizon, opt.seed,
                                   2 * static_cast<std::uint64_t>(run));
            pa = &ta;
          }
          if (b.noisy()) {
            tb = sample_trajectory(*b.source, horizon, opt.seed,
                                   2 * static_cast<std::uint64_t>(run) + 1);
            pb = &tb;
          }
          const auto path = evolve_trajectory(a, b, pa, pb, rho0, grid);
          for (std::size_t j = 0; j < np; ++j) {
            part.rho_sum[j] += path[j];
            const Vector16d n = mu.extract(path[j]);
            part.n_sum[j] += n;
            part.n2_sum[j] += n.cwiseProduct(n);
          }
        }
      },
      [&](BlockPartial&& part) {
        for (std::size_t j = 0; j < np; ++j) {
          total.rho_sum[j] += part.rho_sum[j];
          total.n_sum[j] += part.n_sum[j];
          total.n2_sum[j] += part.n2_sum[j];
        }
      },
      opt.threads);

  EnsembleResult res;
  res.grid = grid;
  res.n_runs = opt.n_runs;
  res.rho_mean.resize(np);
  res.n_mean.resize(np);
  res.n_stderr.resize(np);
  const double inv_n = 1.0 / static_cast<double>(opt.n_runs);
  for (std::size_t j = 0; j < np; ++j) {
    res.rho_mean[j] = total.rho_sum[j] * inv_n;
    res.n_mean[j] = total.n_sum[j] * inv_n;
    const Vector16d var =
        (total.n2_sum[j] * inv_n - res.n_mean[j].cwiseProduct(res.n_mean[j]))
            .cwiseMax(0.0);
    res.n_stderr[j] = (var * inv_n).cwiseSqrt();
  }
  return res;
}

}  // namespace rtn
