#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "eqindex/types.hpp"

namespace eqindex {

/// Splitting of the fiber basis into E+ and E- index sets.
struct Grading {
  std::vector<int> positive;
  std::vector<int> negative;
};

/// Clifford action c : R^n -> End(C^N) given by its values c_i = c(e_i) on
/// the standard basis, optionally graded.
template <typename Scalar = double>
class CliffordAction {
 public:
  using Matrix = ComplexMatrix<Scalar>;
  using Vector = RealVector<Scalar>;

  CliffordAction(std::vector<Matrix> generators, std::optional<Grading> grading = std::nullopt)
      : generators_(std::move(generators)), grading_(std::move(grading)) {
    if (generators_.empty()) throw std::invalid_argument("Clifford action needs at least one generator");
    const auto n = generators_.front().rows();
    for (const auto& g : generators_)
      if (g.rows() != n || g.cols() != n) throw std::invalid_argument("Clifford generators must be N x N");
    if (grading_) {
      std::vector<bool> seen(n, false);
      for (int i : grading_->positive) mark(seen, i);
      for (int i : grading_->negative) mark(seen, i);
      for (bool s : seen)
        if (!s) throw std::invalid_argument("grading does not cover the fiber basis");
    }
  }

  int vector_dim() const { return static_cast<int>(generators_.size()); }
  int fiber_dim() const { return static_cast<int>(generators_.front().rows()); }
  const Matrix& generator(int i) const { return generators_.at(i); }
  const std::vector<Matrix>& generators() const { return generators_; }
  const std::optional<Grading>& grading() const { return grading_; }

  /// c(v) = sum_i v_i c_i.
  Matrix operator()(const Vector& v) const {
    if (v.size() != vector_dim()) throw std::invalid_argument("vector dimension does not match Clifford action");
    Matrix out = Matrix::Zero(fiber_dim(), fiber_dim());
    for (int i = 0; i < vector_dim(); ++i) out += v(i) * generators_[i];
    return out;
  }

  /// Block of a fiber endomorphism mapping E+ into E-.
  Matrix plus_to_minus(const Matrix& m) const {
    if (!grading_) throw std::logic_error("Clifford action is not graded");
    return select(m, grading_->negative, grading_->positive);
  }

  static Matrix select(const Matrix& m, const std::vector<int>& rows, const std::vector<int>& cols) {
    Matrix out(rows.size(), cols.size());
    for (std::size_t r = 0; r < rows.size(); ++r)
      for (std::size_t c = 0; c < cols.size(); ++c) out(r, c) = m(rows[r], cols[c]);
    return out;
  }

 private:
  void mark(std::vector<bool>& seen, int i) const {
    if (i < 0 || i >= static_cast<int>(seen.size()) || seen[i])
      throw std::invalid_argument("grading is not a partition of the fiber basis");
    seen[i] = true;
  }

  std::vector<Matrix> generators_;
  std::optional<Grading> grading_;
};

struct CliffordDiagnostics {
  double max_relation_deviation = 0.0;  // max_ij |c_i c_j + c_j c_i + 2 delta_ij Id|
  double max_grading_leak = 0.0;        // largest entry of c_i inside E+ x E+ or E- x E-
  bool graded = false;
  bool passed = false;
};

inline constexpr double kCliffordTolerance = 1e-12;

template <typename Scalar>
CliffordDiagnostics verify_clifford(const CliffordAction<Scalar>& action) {
  using Matrix = typename CliffordAction<Scalar>::Matrix;
  CliffordDiagnostics d;
  const int n = action.vector_dim();
  const auto id = Matrix::Identity(action.fiber_dim(), action.fiber_dim());
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      const Matrix& ci = action.generator(i);
      const Matrix& cj = action.generator(j);
      Matrix anti = ci * cj + cj * ci;
      if (i == j) anti += Scalar(2) * id;
      d.max_relation_deviation = std::max<double>(d.max_relation_deviation, anti.cwiseAbs().maxCoeff());
    }
  }
  if (const auto& g = action.grading()) {
    d.graded = true;
    for (const auto& c : action.generators()) {
      const auto pp = CliffordAction<Scalar>::select(c, g->positive, g->positive);
      const auto mm = CliffordAction<Scalar>::select(c, g->negative, g->negative);
      if (pp.size() > 0) d.max_grading_leak = std::max<double>(d.max_grading_leak, pp.cwiseAbs().maxCoeff());
      if (mm.size() > 0) d.max_grading_leak = std::max<double>(d.max_grading_leak, mm.cwiseAbs().maxCoeff());
    }
  }
  d.passed = d.max_relation_deviation < kCliffordTolerance && d.max_grading_leak < kCliffordTolerance;
  return d;
}

/// Leading symbol of the Dirac operator built from `action`: i c(xi).
template <typename Scalar>
typename CliffordAction<Scalar>::Matrix dirac_symbol(const CliffordAction<Scalar>& action,
                                                     const RealVector<Scalar>& xi) {
  return Complex<Scalar>(0, 1) * action(xi);
}

/// c(x) = (1/i)(x1 s1 + x2 s2 + x3 s3) on C^2, ungraded.
CliffordAction<double> make_pauli_action();

/// c(xi) = (1/i)(xi1 s1 + xi2 s2) on C^2, graded by the s3 eigenspaces {e1} | {e2}.
CliffordAction<double> make_plane_action();

/// c(v) = eps_v - iota_v on the exterior algebra of C^n (dimension 2^n),
/// basis ordered lexicographically by sorted index tuple, graded by parity.
CliffordAction<double> make_exterior_action(int n);

/// Sorted index tuples in the basis order used by make_exterior_action.
std::vector<std::vector<int>> exterior_basis(int n);

}  // namespace eqindex
