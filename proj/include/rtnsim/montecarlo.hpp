#pragma once

#include <cstdint>
#include <vector>

#include "rtnsim/types.hpp"

namespace rtn {

/// One realization of the telegraph process on [0, horizon]: initial sign
/// uniform on {+1, -1}, switch times a Poisson stream of rate gamma.
struct Trajectory {
  int initial_sign = 1;
  std::vector<double> switch_times;  // strictly increasing, within [0, horizon]
  double horizon = 0.0;

  int sign_at(double t) const;
};

/// Deterministic given (seed, stream): each (seed, stream) pair opens an
/// independent generator, so trajectories can be produced in parallel in
/// any order. Run i draws stream 2i for qubit A and 2i+1 for qubit B.
Trajectory sample_trajectory(const RtnSource& src, double horizon,
                             std::uint64_t seed, std::uint64_t stream = 0);

/// Exact propagator for one constant-sign segment:
/// U = exp(+i (dt/2) (b0 sigma_z + s g.sigma)) in axis-angle form.
Matrix2cd segment_unitary(const QubitSpec& spec, int sign, double dt);

/// Cumulative single-qubit unitaries at the grid times. `traj` may be null
/// for a noise-free qubit. The grid must be increasing and inside the
/// horizon.
std::vector<Matrix2cd> trajectory_unitaries(const QubitSpec& spec,
                                            const Trajectory* traj,
                                            const std::vector<double>& grid);

/// rho(t) along one two-qubit noise realization: exact piecewise-unitary
/// conjugation by U_A (x) U_B. Purity is conserved per trajectory.
std::vector<Matrix4cd> evolve_trajectory(const QubitSpec& a, const QubitSpec& b,
                                         const Trajectory* traj_a,
                                         const Trajectory* traj_b,
                                         const Matrix4cd& rho0,
                                         const std::vector<double>& grid);

struct EnsembleResult {
  std::vector<double> grid;
  std::vector<Matrix4cd> rho_mean;
  std::vector<Vector16d> n_mean;
  std::vector<Vector16d> n_stderr;
  long n_runs = 0;
};

struct EnsembleOptions {
  long n_runs = 40000;
  std::uint64_t seed = 1;
  int threads = 0;        // 0 = hardware concurrency
  long block_size = 512;  // reduction granularity; part of the result contract
};

/// Averages rho(t) over independent noise realizations. Trajectory pairs
/// for the two qubits come from disjoint generator streams. The reduction
/// merges fixed-size blocks in index order, so the result is bitwise
/// reproducible for a fixed (seed, n_runs, block_size) regardless of
/// thread count.
EnsembleResult ensemble_average(const QubitSpec& a, const QubitSpec& b,
                                const InitialState& state,
                                const std::vector<double>& grid,
                                const EnsembleOptions& opt);

}  // namespace rtn
