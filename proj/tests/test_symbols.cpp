#include <cmath>

#include "doctest.h"
#include "eqindex/coeff_expr.hpp"
#include "eqindex/symbols.hpp"
#include "oracle.hpp"

using namespace eqindex;

TEST_CASE("laplacian symbol is |xi|^2 with or without lower order terms") {
  const auto x = box_samples(3, 4, 1.0, 7);
  for (const auto& xi : sphere_samples(3, 16, 7)) {
    CHECK(std::abs(leading_symbol(laplacian_coefficients(3), x[0], 2.0 * xi)(0, 0) - 4.0) < 1e-12);
    CHECK(std::abs(leading_symbol(laplacian_coefficients(3, 5.0), x[1], xi)(0, 0) - 1.0) < 1e-12);
  }
}

TEST_CASE("oscillatory response converges to the leading symbol like 1/t") {
  const auto op = laplacian_coefficients(2, 1.0);
  const Eigen::Vector2d x(0.1, 0.2);
  const Eigen::Vector2d xi(1.0, 0.0);
  const auto r = symbol_limit_check(op, x, xi, {10.0, 100.0});
  // The first-order term contributes i xi_1 / t.
  CHECK(r.deviations[0] == doctest::Approx(0.1).epsilon(1e-12));
  CHECK(r.deviations[1] == doctest::Approx(0.01).epsilon(1e-12));
}

TEST_CASE("dirac leading symbol matches the Pauli contraction") {
  const auto d = dirac_coefficients(make_pauli_action());
  const VectorXd x = VectorXd::Zero(3);
  for (const auto& xi : sphere_samples(3, 8, 3))
    CHECK((leading_symbol(d, x, xi) - oracle::pauli_contraction(xi)).norm() < 1e-13);
}

TEST_CASE("ellipticity") {
  const auto pts = box_samples(2, 8, 2.0, 1);
  CHECK(ellipticity_check(laplacian_coefficients(2), pts, 32).invertible);
  CHECK(ellipticity_check(dirac_coefficients(make_plane_action()), pts, 32).invertible);

  const auto torus = torus_dx_coefficients();
  const auto full = ellipticity_check(torus, pts, 32);
  CHECK_FALSE(full.invertible);
  // Fails along xi = (0, +-1).
  CHECK(std::abs(full.worst_covector(0)) < 1e-6);
  CHECK(transversal_ellipticity_check(torus, torus_y_orbits(), pts, 32).invertible);
}

TEST_CASE("annihilator of the rotation orbit is the radial direction") {
  const Eigen::Vector2d x(3.0, 4.0);
  const auto dirs = rotation_orbits().sampler(x);
  REQUIRE(dirs.size() == 1);
  const MatrixXd b = annihilator_basis(dirs, 2);
  REQUIRE(b.cols() == 1);
  CHECK(std::abs(std::abs(b.col(0).dot(x.normalized())) - 1.0) < 1e-12);
  CHECK(rotation_orbits().sampler(Eigen::Vector2d::Zero()).empty());
}

TEST_CASE("deformed plane symbol degenerates only at the origin") {
  const auto field = rotation_taming_field();
  CHECK(taming_equivariance_defect(field, box_samples(2, 8, 2.0, 1)) < 1e-12);
  // The sample set always starts at the origin.
  const std::vector<VectorXd> pts = box_samples(2, 8, 2.0, 1);
  const auto r = deformed_symbol_check(make_plane_action(), field, rotation_orbits(), pts, 16);
  CHECK(r.passed);
  CHECK(r.locus_inside_compact_set);
  REQUIRE(r.degenerate_points.size() == 1);
  CHECK(r.degenerate_points[0].norm() == 0.0);
}

TEST_CASE("operator dimensions are validated") {
  DiffOpCoefficients op(2, 2, 1, 1);
  CHECK_THROWS(op.add_constant_term({3, 0}, MatrixXcd::Ones(1, 1)));
  CHECK_THROWS(op.add_constant_term({1}, MatrixXcd::Ones(1, 1)));
  CHECK_THROWS(op.add_constant_term({1, 0}, MatrixXcd::Ones(2, 1)));
  op.add_constant_term({1, 1}, MatrixXcd::Ones(1, 1));
  CHECK(op.has_top_order_term({VectorXd::Zero(2)}));
}

TEST_CASE("coefficient expressions") {
  const auto e = parse_coefficient_expression("2*x1^2*sin(x2) - 0.5*i*cos(3*x1)", 2);
  const Eigen::Vector2d x(0.7, -1.3);
  const cdouble expected = 2 * 0.49 * std::sin(-1.3) - cdouble(0, 0.5) * std::cos(2.1);
  CHECK(std::abs(e(x) - expected) < 1e-14);
  CHECK(std::abs(parse_coefficient_expression("-(1 + x1)*(1 - x1)", 1)(Eigen::VectorXd::Constant(1, 3.0)) -
                 8.0) < 1e-14);
  CHECK_THROWS_AS(parse_coefficient_expression("x3", 2), std::invalid_argument);
  CHECK_THROWS_AS(parse_coefficient_expression("2*", 1), std::invalid_argument);
  CHECK_THROWS_AS(parse_coefficient_expression("tan(x1)", 1), std::invalid_argument);
  CHECK_THROWS_AS(parse_coefficient_expression("(x1", 1), std::invalid_argument);
}

TEST_CASE("scalar operators from text") {
  const auto op = parse_scalar_operator(2, 2, {{"2,0", "1"}, {"0,2", "1 + x1^2"}, {"1,0", "i"}});
  const Eigen::Vector2d x(2.0, 0.0);
  const Eigen::Vector2d xi(0.0, 1.0);
  CHECK(std::abs(leading_symbol(op, x, xi)(0, 0) - 5.0) < 1e-14);
  CHECK(ellipticity_check(op, {x}, 32).invertible);
  CHECK_FALSE(ellipticity_check(parse_scalar_operator(2, 2, {{"1,1", "1"}}), {x}, 32).invertible);
  CHECK_THROWS(parse_scalar_operator(2, 2, {{"2", "1"}}));
  CHECK_THROWS(parse_scalar_operator(2, 2, {{"a,b", "1"}}));
}
