#include "eqindex/symbols.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <stdexcept>

#include <unsupported/Eigen/MatrixFunctions>

namespace eqindex {

DiffOpCoefficients::DiffOpCoefficients(int order, int base_dim, int in_dim, int out_dim)
    : order_(order), base_dim_(base_dim), in_dim_(in_dim), out_dim_(out_dim) {
  if (order < 0 || base_dim < 1 || in_dim < 1 || out_dim < 1)
    throw std::invalid_argument("invalid differential operator dimensions");
}

DiffOpCoefficients& DiffOpCoefficients::add_term(MultiIndex alpha, CoefficientSampler coefficient) {
  if (static_cast<int>(alpha.size()) != base_dim_) throw std::invalid_argument("multi-index has wrong length");
  int total = 0;
  for (int a : alpha) {
    if (a < 0) throw std::invalid_argument("multi-index entries must be non-negative");
    total += a;
  }
  if (total > order_) throw std::invalid_argument("multi-index exceeds operator order");
  auto it = terms_.find(alpha);
  if (it == terms_.end()) {
    terms_.emplace(std::move(alpha), std::move(coefficient));
  } else {
    it->second = [prev = it->second, next = std::move(coefficient)](const VectorXd& x) -> MatrixXcd {
      return prev(x) + next(x);
    };
  }
  return *this;
}

DiffOpCoefficients& DiffOpCoefficients::add_constant_term(MultiIndex alpha, const MatrixXcd& coefficient) {
  if (coefficient.rows() != out_dim_ || coefficient.cols() != in_dim_)
    throw std::invalid_argument("coefficient matrix has wrong shape");
  return add_term(std::move(alpha), [coefficient](const VectorXd&) { return coefficient; });
}

DiffOpCoefficients DiffOpCoefficients::scaled(cdouble factor) const {
  DiffOpCoefficients out(order_, base_dim_, in_dim_, out_dim_);
  for (const auto& [alpha, a] : terms_)
    out.add_term(alpha, [a, factor](const VectorXd& x) -> MatrixXcd { return factor * a(x); });
  return out;
}

bool DiffOpCoefficients::has_top_order_term(const std::vector<VectorXd>& points) const {
  for (const auto& [alpha, a] : terms_) {
    int total = 0;
    for (int v : alpha) total += v;
    if (total != order_) continue;
    for (const auto& x : points)
      if (a(x).cwiseAbs().maxCoeff() > 0.0) return true;
  }
  return false;
}

namespace {

int degree(const MultiIndex& alpha) {
  int total = 0;
  for (int a : alpha) total += a;
  return total;
}

double monomial(const MultiIndex& alpha, const VectorXd& xi) {
  double p = 1.0;
  for (std::size_t j = 0; j < alpha.size(); ++j) p *= std::pow(xi(static_cast<Eigen::Index>(j)), alpha[j]);
  return p;
}

void check_dims(const DiffOpCoefficients& op, const VectorXd& x, const VectorXd& xi) {
  if (x.size() != op.base_dim() || xi.size() != op.base_dim())
    throw std::invalid_argument("point or covector dimension does not match the operator");
}

double smallest_singular_value(const MatrixXcd& m) {
  if (m.size() == 0) return std::numeric_limits<double>::infinity();
  Eigen::JacobiSVD<MatrixXcd> svd(m);
  return svd.singularValues().minCoeff();
}

double operator_norm(const MatrixXcd& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<MatrixXcd> svd(m);
  return svd.singularValues()(0);
}

}  // namespace

MatrixXcd leading_symbol(const DiffOpCoefficients& op, const VectorXd& x, const VectorXd& xi) {
  check_dims(op, x, xi);
  MatrixXcd out = MatrixXcd::Zero(op.out_dim(), op.in_dim());
  for (const auto& [alpha, a] : op.terms())
    if (degree(alpha) == op.order()) out += monomial(alpha, xi) * a(x);
  return out;
}

MatrixXcd scaled_oscillatory_response(const DiffOpCoefficients& op, const VectorXd& x, const VectorXd& xi,
                                      double t) {
  check_dims(op, x, xi);
  if (t <= 0.0) throw std::invalid_argument("t must be positive");
  // D^alpha e^{it<xi, y - x>} = (t xi)^alpha e^{it<xi, y - x>}, and the
  // exponential equals 1 at y = x.
  MatrixXcd out = MatrixXcd::Zero(op.out_dim(), op.in_dim());
  for (const auto& [alpha, a] : op.terms())
    out += std::pow(t, degree(alpha) - op.order()) * monomial(alpha, xi) * a(x);
  return out;
}

SymbolLimitResult symbol_limit_check(const DiffOpCoefficients& op, const VectorXd& x, const VectorXd& xi,
                                     const std::vector<double>& t_values) {
  const MatrixXcd sigma = leading_symbol(op, x, xi);
  SymbolLimitResult r;
  for (double t : t_values) {
    const double dev = operator_norm(scaled_oscillatory_response(op, x, xi, t) - sigma);
    r.deviations.push_back(dev);
    r.max_deviation = std::max(r.max_deviation, dev);
  }
  return r;
}

TamingField rotation_taming_field() {
  TamingField f;
  f.generator = MatrixXd(2, 2);
  f.generator << 0, -1, 1, 0;
  f.map = [](const VectorXd&) { return 1.0; };
  f.compact_radius = 0.0;
  return f;
}

double taming_equivariance_defect(const TamingField& field, const std::vector<VectorXd>& points) {
  double worst = 0.0;
  for (double theta : {0.3, 1.1, 2.5, -0.7}) {
    const MatrixXd g = (theta * field.generator).exp();
    for (const auto& x : points) worst = std::max(worst, (field(g * x) - g * field(x)).norm());
  }
  return worst;
}

std::vector<VectorXd> sphere_samples(int dim, int count, std::uint64_t seed) {
  if (dim < 1) throw std::invalid_argument("sphere dimension must be positive");
  std::vector<VectorXd> out;
  if (dim == 1) {
    for (int k = 0; k < std::max(count, 2); ++k) out.push_back(VectorXd::Constant(1, k % 2 == 0 ? 1.0 : -1.0));
    return out;
  }
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  for (int k = 0; k < dim; ++k) {
    out.push_back(VectorXd::Unit(dim, k));
    out.push_back(-VectorXd::Unit(dim, k));
  }
  while (static_cast<int>(out.size()) < count) {
    VectorXd v(dim);
    for (int j = 0; j < dim; ++j) v(j) = normal(rng);
    const double n = v.norm();
    if (n > 1e-8) out.push_back(v / n);
  }
  return out;
}

std::vector<VectorXd> box_samples(int dim, int count, double half_width, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uniform(-half_width, half_width);
  std::vector<VectorXd> out;
  out.push_back(VectorXd::Zero(dim));
  while (static_cast<int>(out.size()) < count) {
    VectorXd v(dim);
    for (int j = 0; j < dim; ++j) v(j) = uniform(rng);
    out.push_back(v);
  }
  return out;
}

EllipticityResult ellipticity_check(const DiffOpCoefficients& op, const std::vector<VectorXd>& points,
                                    int sphere_count, std::uint64_t seed) {
  if (op.in_dim() != op.out_dim()) throw std::invalid_argument("ellipticity needs equal fiber dimensions");
  EllipticityResult r;
  r.min_singular_value = std::numeric_limits<double>::infinity();
  const auto directions = sphere_samples(op.base_dim(), sphere_count, seed);
  for (const auto& x : points) {
    for (const auto& xi : directions) {
      const double s = smallest_singular_value(leading_symbol(op, x, xi));
      if (s < r.min_singular_value) {
        r.min_singular_value = s;
        r.worst_point = x;
        r.worst_covector = xi;
      }
    }
  }
  r.invertible = r.min_singular_value > kEllipticityThreshold;
  return r;
}

MatrixXd annihilator_basis(const std::vector<VectorXd>& directions, int dim) {
  if (directions.empty()) return MatrixXd::Identity(dim, dim);
  MatrixXd rows(directions.size(), dim);
  for (std::size_t k = 0; k < directions.size(); ++k) {
    if (directions[k].size() != dim) throw std::invalid_argument("orbit direction has wrong dimension");
    rows.row(static_cast<Eigen::Index>(k)) = directions[k].transpose();
  }
  Eigen::JacobiSVD<MatrixXd> svd(rows, Eigen::ComputeFullV);
  const auto& s = svd.singularValues();
  const double tol = 1e-12 * std::max(1.0, s.size() > 0 ? s(0) : 0.0);
  int rank = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s(i) > tol) ++rank;
  return svd.matrixV().rightCols(dim - rank);
}

EllipticityResult transversal_ellipticity_check(const DiffOpCoefficients& op, const OrbitDirections& orbits,
                                                const std::vector<VectorXd>& points, int sphere_count,
                                                std::uint64_t seed) {
  if (op.in_dim() != op.out_dim()) throw std::invalid_argument("ellipticity needs equal fiber dimensions");
  EllipticityResult r;
  r.min_singular_value = std::numeric_limits<double>::infinity();
  for (const auto& x : points) {
    const MatrixXd basis = annihilator_basis(orbits.sampler(x), op.base_dim());
    if (basis.cols() == 0) continue;
    for (const auto& u : sphere_samples(static_cast<int>(basis.cols()), sphere_count, seed)) {
      const VectorXd xi = basis * u;
      const double s = smallest_singular_value(leading_symbol(op, x, xi));
      if (s < r.min_singular_value) {
        r.min_singular_value = s;
        r.worst_point = x;
        r.worst_covector = xi;
      }
    }
  }
  r.invertible = r.min_singular_value > kEllipticityThreshold;
  return r;
}

DeformedSymbolResult deformed_symbol_check(const CliffordAction<double>& action, const TamingField& field,
                                           const OrbitDirections& orbits, const std::vector<VectorXd>& points,
                                           int covector_count, std::uint64_t seed) {
  if (!action.grading()) throw std::invalid_argument("deformed symbol check needs a graded Clifford action");
  DeformedSymbolResult r;
  r.min_singular_value_off_locus = std::numeric_limits<double>::infinity();
  const int n = action.vector_dim();
  for (const auto& x : points) {
    const VectorXd v = field(x);
    const MatrixXd basis = annihilator_basis(orbits.sampler(x), n);
    std::vector<VectorXd> covectors{VectorXd::Zero(n)};
    if (basis.cols() > 0) {
      int k = 0;
      for (const auto& u : sphere_samples(static_cast<int>(basis.cols()), covector_count, seed)) {
        const double scale = std::array<double, 3>{0.5, 1.0, 2.0}[k++ % 3];
        covectors.push_back(scale * (basis * u));
      }
    }
    for (const auto& xi : covectors) {
      const VectorXd w = xi + v;
      ++r.samples_checked;
      if (w.norm() <= 1e-12) {
        r.degenerate_points.push_back(x);
        if (x.norm() > field.compact_radius + 1e-12) r.locus_inside_compact_set = false;
        continue;
      }
      const MatrixXcd block = action.plus_to_minus(action(w));
      const double s = smallest_singular_value(block) / w.norm();
      r.min_singular_value_off_locus = std::min(r.min_singular_value_off_locus, s);
    }
  }
  r.passed = r.min_singular_value_off_locus > kEllipticityThreshold && r.locus_inside_compact_set;
  return r;
}

DiffOpCoefficients laplacian_coefficients(int n, cdouble lower_order_dx1) {
  DiffOpCoefficients op(2, n, 1, 1);
  for (int j = 0; j < n; ++j) {
    MultiIndex alpha(n, 0);
    alpha[j] = 2;
    op.add_constant_term(alpha, MatrixXcd::Ones(1, 1));
  }
  if (lower_order_dx1 != 0.0) {
    MultiIndex alpha(n, 0);
    alpha[0] = 1;
    // d/dx_1 = i D_1
    op.add_constant_term(alpha, MatrixXcd::Constant(1, 1, kI * lower_order_dx1));
  }
  return op;
}

DiffOpCoefficients circle_first_order_coefficients(std::function<cdouble(double)> potential) {
  DiffOpCoefficients op(1, 1, 1, 1);
  op.add_constant_term({1}, MatrixXcd::Ones(1, 1));
  op.add_term({0}, [potential](const VectorXd& x) { return MatrixXcd::Constant(1, 1, potential(x(0))); });
  return op;
}

DiffOpCoefficients dirac_coefficients(const CliffordAction<double>& action, const TamingField* field,
                                      std::function<double(const VectorXd&)> rescaling) {
  const int n = action.vector_dim();
  const int dim = action.fiber_dim();
  DiffOpCoefficients op(1, n, dim, dim);
  for (int j = 0; j < n; ++j) {
    MultiIndex alpha(n, 0);
    alpha[j] = 1;
    op.add_constant_term(alpha, kI * action.generator(j));
  }
  if (field != nullptr) {
    TamingField v = *field;
    auto f = rescaling ? rescaling : [](const VectorXd&) { return 1.0; };
    op.add_term(MultiIndex(n, 0), [action, v, f](const VectorXd& x) -> MatrixXcd {
      return kI * action(f(x) * v(x));
    });
  }
  return op;
}

DiffOpCoefficients torus_dx_coefficients() {
  DiffOpCoefficients op(1, 2, 1, 1);
  op.add_constant_term({1, 0}, MatrixXcd::Ones(1, 1));
  return op;
}

OrbitDirections torus_y_orbits() {
  return {[](const VectorXd&) { return std::vector<VectorXd>{VectorXd::Unit(2, 1)}; }};
}

OrbitDirections rotation_orbits() {
  return {[](const VectorXd& x) {
    if (x.norm() <= 1e-14) return std::vector<VectorXd>{};
    VectorXd d(2);
    d << -x(1), x(0);
    return std::vector<VectorXd>{d};
  }};
}

}  // namespace eqindex
