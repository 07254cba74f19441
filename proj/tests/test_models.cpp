#include <cmath>

#include "doctest.h"
#include "eqindex/index.hpp"
#include "eqindex/models.hpp"
#include "oracle.hpp"

using namespace eqindex;

namespace {

int numerical_rank(const MatrixXcd& m) {
  Eigen::JacobiSVD<MatrixXcd> svd(m);
  const auto& s = svd.singularValues();
  int r = 0;
  for (Eigen::Index k = 0; k < s.size(); ++k)
    if (s(k) > 1e-10 * std::max(1.0, s(0))) ++r;
  return r;
}

}  // namespace

TEST_CASE("shift model on C^4 drops the first pair") {
  const auto m = build_shift_model(4);
  MatrixXcd expected = MatrixXcd::Zero(2, 4);
  expected(0, 2) = 1.0;
  expected(1, 3) = 1.0;
  CHECK(m.dense() == expected);
  CHECK(m.group() == GroupDesc::trivial());
  CHECK_THROWS(build_shift_model(5));
  CHECK_THROWS(build_shift_model(2));
}

TEST_CASE("Z2 shift model is block diagonal and unitarily equivalent") {
  const auto plain = build_shift_model(10);
  const auto z2 = build_shift_model(10, true);
  CHECK(z2.group() == GroupDesc::cyclic(2));
  CHECK(z2.is_equivariant());
  CHECK(z2.label_offset() == 0);
  CHECK(z2.domain_dim(IrrepLabel{0}) == 5);
  CHECK(z2.domain_dim(IrrepLabel{1}) == 5);
  CHECK(z2.codomain_dim(IrrepLabel{1}) == 4);
  const VectorXd a = Eigen::JacobiSVD<MatrixXcd>(plain.dense()).singularValues();
  const VectorXd b = Eigen::JacobiSVD<MatrixXcd>(z2.dense()).singularValues();
  CHECK((a - b).norm() < 1e-14);
}

TEST_CASE("off-block entries are rejected") {
  const auto z2 = build_shift_model(6, true);
  MatrixXcd d = z2.dense();
  CHECK(off_block_magnitude(z2, d) == 0.0);
  d(0, d.cols() - 1) += 1e-9;
  CHECK(off_block_magnitude(z2, d) == doctest::Approx(1e-9));
  CHECK_THROWS(IsotypicBlockOperator::from_dense(z2, d, true));
  const auto loose = IsotypicBlockOperator::from_dense(z2, d, false);
  CHECK(loose.group() == GroupDesc::trivial());
  CHECK(loose.dense() == d);
  // Below the tolerance the labels survive.
  d = z2.dense();
  d(0, d.cols() - 1) = 1e-16;
  CHECK(IsotypicBlockOperator::from_dense(z2, d, true).group() == GroupDesc::cyclic(2));
}

TEST_CASE("winding numbers of Laurent symbols") {
  CHECK(symbol_winding_number({{-2, 1.0}}) == -2);
  CHECK(symbol_winding_number({{0, 2.0}, {1, 1.0}}) == 0);
  CHECK(symbol_winding_number({{0, 0.5}, {1, 1.0}}) == 1);
  CHECK(symbol_winding_number({{-1, 1.0}, {3, 0.1}}) == -1);
  CHECK_THROWS(symbol_winding_number({{0, 1.0}, {1, 1.0}}));
}

TEST_CASE("Toeplitz truncation follows the winding") {
  const auto z = build_toeplitz_model({{1, 1.0}}, 8);
  CHECK(z.dense().rows() == 9);
  CHECK(z.dense().cols() == 8);
  // T(z) is the unilateral shift, an isometry.
  CHECK((z.dense().adjoint() * z.dense() - MatrixXcd::Identity(8, 8)).norm() < 1e-14);
  const auto zbar = build_toeplitz_model({{-2, 1.0}}, 8);
  CHECK(zbar.dense().rows() == 6);
  CHECK(std::abs(zbar.dense()(0, 2) - 1.0) < 1e-14);
}

TEST_CASE("circle model with sin t is tridiagonal") {
  const int K = 6;
  const auto m = build_circle_model(sine_potential(), K);
  const MatrixXcd a = m.dense();
  REQUIRE(a.rows() == 2 * K + 1);
  for (int j = 0; j < a.rows(); ++j) {
    CHECK(std::abs(a(j, j) - double(j - K)) < 1e-14);
    for (int k = 0; k < a.cols(); ++k)
      if (std::abs(j - k) > 1) CHECK(a(j, k) == cdouble(0.0));
  }
  // sin t = (e^{it} - e^{-it}) / 2i couples mode k to k + 1 with 1/2i.
  CHECK(std::abs(a(1, 0) - 1.0 / cdouble(0, 2)) < 1e-14);
  CHECK(std::abs(a(0, 1) + 1.0 / cdouble(0, 2)) < 1e-14);
  CHECK_THROWS(build_circle_model(sine_potential(), 0));
}

TEST_CASE("de Rham model and its deformation") {
  const auto plain = build_derham_circle_model(4, false);
  const auto deformed = build_derham_circle_model(4, true);
  CHECK(plain.group() == GroupDesc::circle());
  CHECK(plain.graded());
  CHECK(std::abs(plain.block(IrrepLabel{3}, IrrepLabel{3})(0, 0) - cdouble(0, 3)) < 1e-14);
  CHECK(std::abs(deformed.block(IrrepLabel{3}, IrrepLabel{3})(0, 0) - cdouble(0, 4)) < 1e-14);
  const MatrixXcd d = graded_dirac_matrix(plain);
  CHECK(d.rows() == 18);
  CHECK((d - d.adjoint()).norm() < 1e-14);
  CHECK_THROWS(build_derham_circle_model(2, false));
}

TEST_CASE("product model repeats the base block per weight") {
  const auto base = build_shift_model(6);
  const auto p = build_product_model(base, 2);
  CHECK(p.domain_labels().size() == 5);
  for (int m = -2; m <= 2; ++m) CHECK(p.block(IrrepLabel{m}, IrrepLabel{m}) == base.dense());
  CHECK(p.metadata().at("window") == "-2:2");
}

TEST_CASE("plane weight model is banded and its adjoint kills the closed form") {
  PlaneParams params;
  params.radial_points = 120;
  for (int m : {-2, 0, 3}) {
    const auto model = build_plane_weight_model(m, params);
    CHECK(model.label_offset() == 0);
    const MatrixXcd a = model.dense();
    for (Eigen::Index j = 0; j < a.rows(); ++j)
      for (Eigen::Index k = 0; k < a.cols(); ++k)
        if (k != j && k != j + (m >= 0 ? -1 : 1)) CHECK(a(j, k) == cdouble(0.0));
    if (m >= 0) {
      CHECK(a.rows() == a.cols() + 1);
      CHECK(oracle::relative_residual(a.adjoint(), oracle::plane_cokernel_profile(m, 120, 8.0, false)) < 1e-12);
    } else {
      CHECK(a.rows() == a.cols());
    }
  }
  PlaneParams coarse;
  coarse.radial_points = 50;
  CHECK_THROWS(build_plane_weight_model(0, coarse));
}

TEST_CASE("glued pieces validate the split radius") {
  GlueParams g;
  g.plane.radial_points = 100;
  g.split_radius = 0.0;
  CHECK_THROWS(glued_pieces(g));
  g.split_radius = 8.0;
  CHECK_THROWS(build_glued_plane_models(0, g));
  g.split_radius = 3.0;
  g.collar_fraction = 1.5;
  CHECK_THROWS(glued_pieces(g));
  g.collar_fraction = 0.1;
  const auto pieces = build_glued_plane_models(1, g);
  CHECK(pieces.inner.dense().rows() == pieces.inner.dense().cols() + 1);
  CHECK(pieces.outer.dense().rows() == pieces.outer.dense().cols());
}

TEST_CASE("collar warp inverses") {
  for (Warp w : {Warp::reciprocal, Warp::smooth}) {
    const CollarWarp c(w, 0.3);
    CHECK(c.phi(0.3) == doctest::Approx(1.0));
    CHECK(c.stretch(0.3) == doctest::Approx(0.0));
    for (double d : {1e-4, 0.01, 0.2}) {
      CHECK(c.distance_for_stretch(c.stretch(d)) == doctest::Approx(d).epsilon(1e-9));
      CHECK(c.distance_for_phi(c.phi(d)) == doctest::Approx(d).epsilon(1e-9));
    }
  }
}

TEST_CASE("finite-rank perturbations have the requested rank and norm") {
  const auto base = build_shift_model(12);
  for (int rank : {1, 3}) {
    const auto p = random_finite_rank_perturbation(base, rank, 0.4, 11, false);
    const MatrixXcd k = p.dense() - base.dense();
    CHECK(numerical_rank(k) == rank);
    CHECK(largest_singular_value(k) == doctest::Approx(0.4).epsilon(1e-12));
  }
  const auto z2 = build_shift_model(12, true);
  const auto pe = random_finite_rank_perturbation(z2, 3, 0.25, 5, true);
  CHECK(pe.is_equivariant());
  CHECK(off_block_magnitude(z2, pe.dense()) == 0.0);
  CHECK(numerical_rank(pe.dense() - z2.dense()) == 3);
  CHECK(largest_singular_value(pe.dense() - z2.dense()) == doctest::Approx(0.25).epsilon(1e-12));
  // Same seed, same perturbation.
  CHECK(random_finite_rank_perturbation(base, 2, 0.4, 9, false).dense() ==
        random_finite_rank_perturbation(base, 2, 0.4, 9, false).dense());
}

TEST_CASE("model specs") {
  CHECK(parse_model_kind(to_string(ModelKind::plane_glued)) == ModelKind::plane_glued);
  CHECK_THROWS(parse_model_kind("sphere"));
  ModelSpec spec;
  spec.kind = ModelKind::plane_glued;
  CHECK_THROWS(build_model(spec));
  spec.kind = ModelKind::toeplitz;
  spec.truncation = 10;
  CHECK(build_model(spec).dense().rows() == 8);
}

TEST_CASE("Toeplitz z-bar^2 is the shift") {
  for (int n : {4, 10, 20}) CHECK(build_toeplitz_model({{-2, 1.0}}, n).dense() == build_shift_model(n).dense());
  CHECK(fredholm_index(build_toeplitz_model({{0, 2.0}, {1, 1.0}}, 64)) == 0);
}

TEST_CASE("rank 0 perturbation is the identity map on models") {
  const auto base = build_shift_model(8, true);
  CHECK(random_finite_rank_perturbation(base, 0, 0.4, 3, true).dense() == base.dense());
  MatrixXcd off = MatrixXcd::Zero(base.dense().rows(), base.dense().cols());
  off(0, off.cols() - 1) = 0.1;
  CHECK_THROWS(add_perturbation(base, off, true));
}

TEST_CASE("glued warp is the identity away from the collar") {
  GlueParams g;
  g.plane.radial_points = 100;
  const auto pieces = glued_pieces(g);
  const double delta = g.collar_fraction * g.split_radius;
  for (double s : {0.1, 1.0, g.split_radius - delta - 1e-3})
    CHECK(pieces.inner.radius_of(s) == doctest::Approx(s).epsilon(1e-14));
  for (double s : {g.split_radius + delta + 1e-3, 5.0, 8.0})
    CHECK(pieces.outer.radius_of(s) == doctest::Approx(s).epsilon(1e-14));
  // Inside the collar the radius approaches r0 but never reaches it.
  CHECK(pieces.inner.radius_of(pieces.inner.s_end) < g.split_radius);
  CHECK(pieces.outer.radius_of(pieces.outer.s_begin) > g.split_radius);
}

TEST_CASE("plane dimensions are stable in R") {
  PlaneParams a;
  a.radial_points = 200;
  PlaneParams b = a;
  b.radius = 10.0;
  b.radial_points = 250;  // same spacing
  const auto ra = deformed_plane_index(a, -3, 3);
  const auto rb = deformed_plane_index(b, -3, 3);
  CHECK(ra.windowed() == rb.windowed());
}
