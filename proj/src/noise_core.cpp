#include "rtnsim/noise_core.hpp"

#include <cmath>

#include <unsupported/Eigen/KroneckerProduct>
#include <unsupported/Eigen/MatrixFunctions>

namespace rtn {

namespace {

using Matrix3cd = Eigen::Matrix3cd;

// Rotation generators (L_k)_{mn} = i eps_{kmn}. L_z generates
// n_x -> cos(wt) n_x + sin(wt) n_y under exp(-i w L_z t), matching the
// printed free transfer matrix (see QuasiHamiltonian doc).
const Matrix3cd& rotation_generator(int k) {
  static const std::array<Matrix3cd, 3> gen = [] {
    const complexd i(0.0, 1.0);
    std::array<Matrix3cd, 3> l;
    for (auto& m : l) m.setZero();
    l[0](1, 2) = i;
    l[0](2, 1) = -i;
    l[1](2, 0) = i;
    l[1](0, 2) = -i;
    l[2](0, 1) = i;
    l[2](1, 0) = -i;
    return l;
  }();
  return gen[k];
}

Matrix4d pad_to_extended(const Matrix3d& block) {
  Matrix4d r = Matrix4d::Zero();
  r(0, 0) = 1.0;
  r.block<3, 3>(1, 1) = block;
  return r;
}

void require_nonnegative_time(double t) {
  if (t < 0.0 || !std::isfinite(t))
    throw InvalidArgument("evolution time must be finite and >= 0");
}

}  // namespace

Matrix4d free_transfer(double b0, double t) {
  require_nonnegative_time(t);
  if (!(b0 > 0.0)) throw InvalidArgument("free_transfer requires b0 > 0");
  const double c = std::cos(b0 * t), s = std::sin(b0 * t);
  Matrix4d r = Matrix4d::Identity();
  r(1, 1) = c;
  r(1, 2) = s;
  r(2, 1) = -s;
  r(2, 2) = c;
  return r;
}

Matrix4d free_transfer(const QubitSpec& spec, double t) {
  if (spec.noisy())
    throw InvalidArgument("free_transfer expects a qubit without a noise source");
  return free_transfer(spec.b0, t);
}

QuasiHamiltonian QuasiHamiltonian::build(const QubitSpec& spec) {
  if (!spec.noisy())
    throw InvalidArgument("quasi-Hamiltonian requires an attached RTN source");
  const RtnSource& src = *spec.source;
  const complexd i(0.0, 1.0);
  const Vector3d gv = src.coupling_vector();

  Matrix3cd gdotl = Matrix3cd::Zero();
  for (int k = 0; k < 3; ++k) gdotl += gv(k) * rotation_generator(k);

  Matrix2cd tau1, tau3;
  tau1 << 0, 1, 1, 0;
  tau3 << 1, 0, 0, -1;

  QuasiHamiltonian hq;
  hq.matrix = -i * src.gamma * Matrix6cd::Identity() +
              i * src.gamma * Eigen::kroneckerProduct(tau1, Matrix3cd::Identity()) +
              Eigen::kroneckerProduct(Matrix2cd::Identity(),
                                      (spec.b0 * rotation_generator(2)).eval()) +
              Eigen::kroneckerProduct(tau3, gdotl);
  hq.factor();
  return hq;
}

void QuasiHamiltonian::factor() {
  Eigen::ComplexEigenSolver<Matrix6cd> es(matrix);
  if (es.info() != Eigen::Success) return;
  const Matrix6cd v = es.eigenvectors();
  Eigen::FullPivLU<Matrix6cd> lu(v);
  if (!lu.isInvertible()) return;
  const Matrix6cd vinv = lu.inverse();
  // accept the spectral route only when V is well conditioned
  if (v.cwiseAbs().maxCoeff() * vinv.cwiseAbs().maxCoeff() > 1e6) return;
  eigvals_ = es.eigenvalues();
  eigvecs_ = v;
  eigvecs_inv_ = vinv;
  use_eig_ = true;
}

Matrix6cd QuasiHamiltonian::propagator(double t) const {
  require_nonnegative_time(t);
  const complexd i(0.0, 1.0);
  if (use_eig_) {
    Eigen::Matrix<complexd, 6, 1> phases;
    for (int k = 0; k < 6; ++k) phases(k) = std::exp(-i * eigvals_(k) * t);
    return eigvecs_ * phases.asDiagonal() * eigvecs_inv_;
  }
  return (-i * t * matrix).exp();
}

Matrix3d QuasiHamiltonian::contracted(double t) const {
  const Matrix6cd u = propagator(t);
  // <x_f| . |i_f> with [1;1]/sqrt(2) on the fluctuator factor: average of
  // the four 3x3 blocks times 2 * (1/sqrt 2)^2 = 1.
  const Matrix3cd sum = 0.5 * (u.block<3, 3>(0, 0) + u.block<3, 3>(0, 3) +
                               u.block<3, 3>(3, 0) + u.block<3, 3>(3, 3));
  if (sum.imag().cwiseAbs().maxCoeff() > 1e-8)
    throw Error("quasi-Hamiltonian contraction has non-real residue");
  return sum.real();
}

Matrix4d rtn_transfer(const QubitSpec& spec, double t) {
  require_nonnegative_time(t);
  return pad_to_extended(QuasiHamiltonian::build(spec).contracted(t));
}

Matrix4d single_qubit_transfer(const QubitSpec& spec, double t) {
  return spec.noisy() ? rtn_transfer(spec, t) : free_transfer(spec.b0, t);
}

Matrix16d two_qubit_transfer(const QubitSpec& a, const QubitSpec& b, double t) {
  const Matrix4d ra = single_qubit_transfer(a, t);
  const Matrix4d rb = single_qubit_transfer(b, t);
  return Eigen::kroneckerProduct(ra, rb);
}

Matrix3d rotating_frame_block(const Matrix4d& transfer, double b0, double t) {
  return rotating_frame_block(Matrix3d(transfer.block<3, 3>(1, 1)), b0, t);
}

Matrix3d rotating_frame_block(const Matrix3d& bloch_block, double b0, double t) {
  const Matrix4d r0 = free_transfer(b0, t);
  // R0 is orthogonal, so its inverse is the transpose
  return bloch_block * r0.block<3, 3>(1, 1).transpose();
}

double zeta_from_transfer(const QubitSpec& spec, double t) {
  if (!spec.noisy())
    throw InvalidArgument("zeta_from_transfer requires a noisy qubit");
  return rotating_frame_block(rtn_transfer(spec, t), spec.b0, t)(0, 0);
}

}  // namespace rtn
