#include "oracle.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace eqindex::oracle {

int toeplitz_index_by_localization(const std::map<int, cdouble>& symbol, int n) {
  MatrixXcd t = MatrixXcd::Zero(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      auto it = symbol.find(i - j);
      if (it != symbol.end()) t(i, j) = it->second;
    }
  Eigen::JacobiSVD<MatrixXcd> svd(t, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const VectorXd s = svd.singularValues();
  const double cut = std::max(1e-10, 1e-6 * s(0));
  const int head = n / 2;
  int kernel = 0;
  int cokernel = 0;
  for (int k = 0; k < n; ++k) {
    if (s(k) >= cut) continue;
    if (svd.matrixV().col(k).head(head).squaredNorm() > 0.5) ++kernel;
    if (svd.matrixU().col(k).head(head).squaredNorm() > 0.5) ++cokernel;
  }
  return kernel - cokernel;
}

VectorXcd circle_kernel_coefficients(int cutoff) {
  VectorXcd v(2 * cutoff + 1);
  for (int k = -cutoff; k <= cutoff; ++k) {
    const int a = std::abs(k);
    double j = std::cyl_bessel_j(static_cast<double>(a), 1.0);
    if (k < 0 && a % 2 == 1) j = -j;  // J_{-k} = (-1)^k J_k
    v(k + cutoff) = std::pow(cdouble(0.0, 1.0), k) * j;
  }
  return v;
}

double relative_residual(const MatrixXcd& a, const VectorXcd& v) { return (a * v).norm() / (a.norm() * v.norm()); }

double overlap(const VectorXcd& u, const VectorXcd& v) { return std::abs(u.dot(v)) / (u.norm() * v.norm()); }

VectorXcd plane_cokernel_profile(int weight, int cells, double radius, bool quad) {
  const double h = radius / cells;
  VectorXcd w(cells);
  for (int j = 0; j < cells; ++j) {
    const double r = (j + 0.5) * h;
    const double f_int = quad ? r * r / 2 + r * r * r * r / 4 : r * r / 2;
    w(j) = std::pow(r, weight + 0.5) * std::exp(-f_int);
  }
  return w;
}

DenseNullities dense_nullities(const MatrixXcd& a) {
  DenseNullities out;
  const MatrixXcd left = a.adjoint() * a;
  const MatrixXcd right = a * a.adjoint();
  Eigen::SelfAdjointEigenSolver<MatrixXcd> el(left, Eigen::EigenvaluesOnly);
  Eigen::SelfAdjointEigenSolver<MatrixXcd> er(right, Eigen::EigenvaluesOnly);
  double top = 0.0;
  if (left.size() > 0) top = std::max(top, el.eigenvalues().maxCoeff());
  if (right.size() > 0) top = std::max(top, er.eigenvalues().maxCoeff());
  const double cut = std::max(1e-10, 1e-6 * std::sqrt(std::max(top, 0.0)));
  const double cut2 = cut * cut;
  for (Eigen::Index k = 0; k < el.eigenvalues().size(); ++k) out.kernel += el.eigenvalues()(k) < cut2;
  for (Eigen::Index k = 0; k < er.eigenvalues().size(); ++k) out.cokernel += er.eigenvalues()(k) < cut2;
  return out;
}

MatrixXcd pauli_contraction(const VectorXd& xi) {
  const cdouble i(0.0, 1.0);
  MatrixXcd m(2, 2);
  m << xi(2), xi(0) - i * xi(1), xi(0) + i * xi(1), -xi(2);
  return m;
}

}  // namespace eqindex::oracle
