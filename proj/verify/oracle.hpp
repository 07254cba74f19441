#pragma once

// Reference computations that share no code path with the library's index
// machinery. Each one reaches its answer by a different route: localization
// of near-null vectors of square sections, analytic kernels, closed-form
// radial solutions and dense Hermitian eigensolves.

#include <map>

#include "eqindex/types.hpp"

namespace eqindex::oracle {

/// Index of the Toeplitz operator with the given Laurent symbol, read off
/// the square N x N section: near-null right singular vectors concentrated
/// in the first half count as kernel, near-null left singular vectors
/// concentrated there count as cokernel. The other half carries the
/// truncation artifacts.
int toeplitz_index_by_localization(const std::map<int, cdouble>& symbol, int n);

/// Fourier coefficients of e^{i cos t} for |k| <= K (Jacobi-Anger: i^k J_k(1)).
VectorXcd circle_kernel_coefficients(int cutoff);

/// Relative residual |A v| / (|A| |v|) with |A| the Frobenius norm.
double relative_residual(const MatrixXcd& a, const VectorXcd& v);

/// |<u, v>| / (|u| |v|).
double overlap(const VectorXcd& u, const VectorXcd& v);

/// Closed-form cokernel r^{m+1/2} exp(-F(r)) of the weight-m plane model
/// sampled at the cell midpoints of the uniform grid on [0, R]; F = r^2/2
/// for quad == false, r^2/2 + r^4/4 otherwise.
VectorXcd plane_cokernel_profile(int weight, int cells, double radius, bool quad);

struct DenseNullities {
  int kernel = 0;    // eigenvalues of A* A below threshold^2
  int cokernel = 0;  // eigenvalues of A A* below threshold^2
};

/// Kernel and cokernel dimensions from Hermitian eigensolves, with
/// threshold max(1e-10, 1e-6 sigma_max) and sigma_max^2 the largest eigenvalue.
DenseNullities dense_nullities(const MatrixXcd& a);

/// sum_k xi_k sigma_k with Pauli matrices written out.
MatrixXcd pauli_contraction(const VectorXd& xi);

}  // namespace eqindex::oracle
