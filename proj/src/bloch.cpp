#include "rtnsim/bloch.hpp"

#include <cmath>

#include <unsupported/Eigen/KroneckerProduct>

namespace rtn::bloch {

namespace {

std::array<Matrix2cd, 4> make_paulis() {
  const complexd i(0.0, 1.0);
  std::array<Matrix2cd, 4> s;
  s[0] = Matrix2cd::Identity();
  s[1] << 0, 1, 1, 0;
  s[2] << 0, -i, i, 0;
  s[3] << 1, 0, 0, -1;
  return s;
}

std::array<Matrix4cd, 16> make_generators() {
  const auto& s = paulis();
  std::array<Matrix4cd, 16> mu;
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      mu[4 * a + b] = Eigen::kroneckerProduct(s[a], s[b]).eval();
  return mu;
}

}  // namespace

const std::array<Matrix2cd, 4>& paulis() {
  static const auto s = make_paulis();
  return s;
}

const std::array<Matrix4cd, 16>& generators() {
  static const auto mu = make_generators();
  return mu;
}

BlochVector::BlochVector(const Vector16d& v) : v_(v) {
  if (std::abs(v_(0) - 1.0) > 1e-12)
    throw InvalidArgument("extended Bloch vector must have n_0 = 1");
  v_(0) = 1.0;
}

double& BlochVector::at(int i) {
  if (i < 1 || i > 15) throw InvalidArgument("Bloch component index must be in 1..15");
  return v_(i);
}

void validate_density(const Matrix4cd& rho, double herm_tol, double trace_tol) {
  if ((rho - rho.adjoint()).cwiseAbs().maxCoeff() > herm_tol)
    throw InvalidArgument("density matrix is not Hermitian");
  if (std::abs(rho.trace() - complexd(1.0)) > trace_tol)
    throw InvalidArgument("density matrix trace differs from 1");
}

BlochVector to_bloch(const Matrix4cd& rho) {
  validate_density(rho);
  const auto& mu = generators();
  Vector16d n;
  for (int k = 0; k < 16; ++k) {
    const complexd tr = (rho * mu[k]).trace();
    if (std::abs(tr.imag()) > 1e-12)
      throw InvalidArgument("Bloch component has non-real trace");
    n(k) = tr.real();
  }
  return BlochVector(n);
}

Matrix4cd from_bloch(const BlochVector& n) {
  const auto& mu = generators();
  Matrix4cd rho = Matrix4cd::Zero();
  for (int k = 0; k < 16; ++k) rho += n[k] * mu[k];
  return 0.25 * rho;
}

double purity_norm(const BlochVector& n) { return n.norm(); }

bool is_physical(const BlochVector& n, double tol) {
  Eigen::SelfAdjointEigenSolver<Matrix4cd> es(from_bloch(n));
  return es.eigenvalues().minCoeff() >= -tol;
}

Vector3d to_bloch_1q(const Matrix2cd& rho) {
  const auto& s = paulis();
  Vector3d n;
  for (int k = 0; k < 3; ++k) n(k) = (rho * s[k + 1]).trace().real();
  return n;
}

Matrix2cd from_bloch_1q(const Vector3d& n) {
  const auto& s = paulis();
  Matrix2cd rho = Matrix2cd::Identity();
  for (int k = 0; k < 3; ++k) rho += n(k) * s[k + 1];
  return 0.5 * rho;
}

}  // namespace rtn::bloch
