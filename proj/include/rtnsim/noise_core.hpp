#pragma once

#include "rtnsim/types.hpp"

namespace rtn {

/// Extended 4x4 transfer matrix of a noise-free qubit: row/column 0 is
/// (1,0,0,0), the Bloch block precesses about z at rate b0 and leaves n_3
/// fixed. Orthogonal, so the Bloch length is conserved.
Matrix4d free_transfer(double b0, double t);
Matrix4d free_transfer(const QubitSpec& spec, double t);

/// Generator on the (fluctuator (x) Bloch) space whose boundary-contracted
/// exponential is the noise-averaged single-qubit transfer matrix:
///   H_q = -i gamma I + i gamma (tau_1 (x) I_3) + I_2 (x) b0 L_z
///         + tau_3 (x) (g.L),
/// with (L_k)_{mn} = i eps_{kmn}. That sign makes the g = 0 propagator
/// reproduce free_transfer exactly, which anchors the orientation of the
/// whole construction.
struct QuasiHamiltonian {
  Matrix6cd matrix;

  /// Builds and factors the generator; propagator evaluations afterwards
  /// are safe to run concurrently.
  static QuasiHamiltonian build(const QubitSpec& spec);

  /// exp(-i H_q t); spectral route when the eigenbasis is well
  /// conditioned, otherwise Pade scaling-and-squaring.
  Matrix6cd propagator(double t) const;

  /// <x_f| exp(-i H_q t) |i_f> with the unbiased boundary vectors
  /// [1;1]/sqrt(2): the 3x3 noise-averaged Bloch-block map.
  Matrix3d contracted(double t) const;

private:
  bool use_eig_ = false;
  Eigen::Matrix<complexd, 6, 1> eigvals_;
  Matrix6cd eigvecs_, eigvecs_inv_;
  void factor();
};

/// Noise-averaged extended transfer matrix of a noisy qubit, exact to
/// matrix-exponential precision. Generally nonorthogonal: averaging over
/// noise histories contracts the Bloch vector.
Matrix4d rtn_transfer(const QubitSpec& spec, double t);

/// rtn_transfer or free_transfer depending on whether a source is attached.
Matrix4d single_qubit_transfer(const QubitSpec& spec, double t);

/// Two-qubit extended transfer matrix T = R_A (x) R_B for independent
/// noise, in the base-4 component order of the generator basis.
Matrix16d two_qubit_transfer(const QubitSpec& a, const QubitSpec& b, double t);

/// Bloch block of `transfer` right-multiplied by the inverse free rotation,
/// so the dephasing function can be read off the (0,0) entry.
Matrix3d rotating_frame_block(const Matrix4d& transfer, double b0, double t);
Matrix3d rotating_frame_block(const Matrix3d& bloch_block, double b0, double t);

/// Dephasing function from the matrix-exponential route: the rotating-frame
/// (0,0) entry of the qubit's transfer matrix.
double zeta_from_transfer(const QubitSpec& spec, double t);

}  // namespace rtn
