#pragma once

#include <array>

#include "rtnsim/types.hpp"

namespace rtn::bloch {

/// Pauli set sigma_0..sigma_3 (sigma_0 = identity).
const std::array<Matrix2cd, 4>& paulis();

/// SU(4) generator basis mu_i = sigma_a (x) sigma_b in base-4 order
/// (i = 4a + b, qubit A is the left factor); mu_0 = I_4.
/// Orthonormal under <mu, mu'> = Tr[mu mu']/4, traceless for i >= 1.
const std::array<Matrix4cd, 16>& generators();

/// Extended generalized Bloch vector: component 0 pinned to 1,
/// components 1..15 the coefficients of rho in the mu basis.
class BlochVector {
public:
  BlochVector() : v_(Vector16d::Zero()) { v_(0) = 1.0; }
  explicit BlochVector(const Vector16d& v);

  double operator[](int i) const { return v_(i); }
  double& at(int i);
  const Vector16d& data() const { return v_; }

  /// Euclidean norm of components 1..15. sqrt(3) for pure states,
  /// 0 for the maximally mixed state.
  double norm() const { return v_.tail<15>().norm(); }

private:
  Vector16d v_;
};

/// n_i = Tr[rho mu_i]. Rejects non-Hermitian or non-unit-trace input;
/// imaginary residue beyond 1e-12 is an error, below it is discarded.
BlochVector to_bloch(const Matrix4cd& rho);

/// rho = (1/4) sum_i n_i mu_i. Positivity is not assumed; use is_physical.
Matrix4cd from_bloch(const BlochVector& n);

/// |n| as a purity measure: Tr(rho - rho^2) = 3/4 - |n|^2/4.
double purity_norm(const BlochVector& n);

/// True iff the reconstructed density matrix has eigenvalues >= -tol.
bool is_physical(const BlochVector& n, double tol = 1e-10);

void validate_density(const Matrix4cd& rho, double herm_tol = 1e-12,
                      double trace_tol = 1e-12);

// single-qubit (2x2) helpers
Vector3d to_bloch_1q(const Matrix2cd& rho);
Matrix2cd from_bloch_1q(const Vector3d& n);

}  // namespace rtn::bloch
