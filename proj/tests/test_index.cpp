#include <cmath>
#include <limits>

#include "doctest.h"
#include "eqindex/index.hpp"
#include "eqindex/models.hpp"
#include "oracle.hpp"

using namespace eqindex;

TEST_CASE("rank decisions on exact matrices") {
  const auto zero = numeric_kernel<double>(MatrixXcd::Zero(3, 3));
  CHECK(zero.kernel_dim == 3);
  CHECK(zero.rank == 0);
  CHECK(zero.gap_ratio == std::numeric_limits<double>::infinity());
  CHECK(zero.confident);

  const auto id = numeric_kernel<double>(MatrixXcd::Identity(4, 4));
  CHECK(id.kernel_dim == 0);
  CHECK(id.gap_ratio == doctest::Approx(1e6));

  const auto empty = numeric_kernel<double>(MatrixXcd(0, 3));
  CHECK(empty.kernel_dim == 3);
  CHECK(empty.confident);
}

TEST_CASE("missing singular values of a wide matrix are zeros") {
  const auto fr = fredholm_analysis(build_shift_model(6).dense());
  CHECK(fr.kernel_dim == 2);
  CHECK(fr.cokernel_dim == 0);
  CHECK(fr.index == 2);
  CHECK(fr.kernel.gap_ratio == doctest::Approx(1e10));
}

TEST_CASE("square matrices have index zero") {
  MatrixXcd a = MatrixXcd::Random(7, 7);
  a.col(3) = a.col(1) + a.col(2);  // rank 6
  const auto fr = fredholm_analysis(a);
  CHECK(fr.confident);
  CHECK(fr.kernel_dim == 1);
  CHECK(fr.cokernel_dim == 1);
  CHECK(fr.index == 0);
  CHECK(oracle::dense_nullities(a).kernel == 1);
}

TEST_CASE("index is invariant under scaling") {
  const auto base = build_shift_model(20);
  for (double c : {0.1, 0.5, 1.0, 3.0, 10.0}) {
    const auto scaled = trivial_model(c * base.dense(), "scaled shift");
    CHECK(fredholm_index(scaled) == 2);
  }
}

TEST_CASE("no clear gap means indeterminate") {
  MatrixXcd a = MatrixXcd::Zero(2, 2);
  a(0, 0) = 1.0;
  a(1, 1) = 3e-6;
  const auto fr = fredholm_analysis(a);
  CHECK_FALSE(fr.confident);
  CHECK(fr.kernel.gap_ratio == doctest::Approx(3.0));
  CHECK_THROWS_AS(fredholm_index(trivial_model(a, "near singular")), IndeterminateError);

  // A clear gap on the other side of the threshold is fine.
  a(1, 1) = 1e-9;
  CHECK(fredholm_analysis(a).confident);
  CHECK(fredholm_analysis(a).kernel_dim == 1);
}

TEST_CASE("per-label dimensions sum to the total index") {
  const auto z2 = build_shift_model(20, true);
  const auto r = equivariant_index(z2);
  CHECK(r.labels.size() == 2);
  CHECK(dimension(r.character()) == fredholm_analysis(z2.dense()).index);
  CHECK(r.total_index() == 2);
  CHECK(r.character() == CharacterElement(GroupDesc::cyclic(2), {{0, 1}, {1, 1}}));
}

TEST_CASE("windowed plane result") {
  PlaneParams p;
  p.radial_points = 100;
  const auto r = deformed_plane_index(p, -2, 2);
  REQUIRE(r.window.has_value());
  const auto w = r.windowed();
  for (int m = -2; m <= 2; ++m) CHECK(w.multiplicity(IrrepLabel{m}) == (m >= 0 ? -1 : 0));
  CHECK_FALSE(w.multiplicity(IrrepLabel{3}).has_value());
  const auto rep = make_report("plane", {}, r, RankPolicy{});
  CHECK_FALSE(rep.index.has_value());
  CHECK(rep.labels.size() == 5);
}

TEST_CASE("non-equivariant models are not analysed per label") {
  IsotypicBlockOperator m(GroupDesc::cyclic(2), {{IrrepLabel{0}, 1}, {IrrepLabel{1}, 1}},
                          {{IrrepLabel{0}, 1}, {IrrepLabel{1}, 1}});
  m.set_block(IrrepLabel{0}, IrrepLabel{0}, MatrixXcd::Ones(1, 1));
  m.set_block(IrrepLabel{0}, IrrepLabel{1}, MatrixXcd::Ones(1, 1));
  CHECK_FALSE(m.is_equivariant());
  CHECK_THROWS(equivariant_analysis(m));
  CHECK(fredholm_index(m) == 0);
}

TEST_CASE("composition and adjoint") {
  const auto a = build_shift_model(20);
  const auto b = build_shift_model(18);
  const auto c = composition_check(a, b);
  CHECK(c.passed);
  CHECK(c.index_ba == 4);
  const auto adj = adjoint_check(build_toeplitz_model({{-2, 1.0}}, 32));
  CHECK(adj.passed);
  CHECK(adj.index == 2);
  CHECK(adj.adjoint_index == -2);
}

TEST_CASE("stability under small perturbations") {
  StabilityOptions s;
  s.trials = 12;
  const auto rep = stability_suite(build_shift_model(12, true), s);
  CHECK(rep.passed());
  CHECK(rep.index == 2);
}

TEST_CASE("homotopies") {
  const auto ok = homotopy_suite(
      "2 + s z", [](double s) { return build_toeplitz_model({{0, 2.0}, {1, s}}, 32); }, 5);
  CHECK(ok.passed());
  // Crossing |a0| = |a1| changes the winding, so the path is not admissible.
  const auto bad = homotopy_suite(
      "1 + 2s z", [](double s) { return build_toeplitz_model({{0, 1.0}, {1, 2.0 * s + 0.1}}, 32); }, 5);
  CHECK_FALSE(bad.passed());
}

TEST_CASE("convergence studies") {
  const auto circle = convergence_study([](int k) { return build_circle_model(sine_potential(), k); }, {8, 16, 32});
  CHECK(circle.plateau);
  CHECK(circle.accepted_resolution == 32);
  CHECK(circle.report("circle", RankPolicy{}).passed());
  CHECK_THROWS(convergence_study([](int n) { return build_shift_model(n); }, {8, 16}));
}

TEST_CASE("gluing additivity at a coarse resolution") {
  GlueParams g;
  g.plane.radial_points = 100;
  for (Warp w : {Warp::reciprocal, Warp::smooth}) {
    g.warp = w;
    const auto rep = gluing_check(g, -1, 1);
    CHECK(rep.passed());
    CHECK(rep.checks.size() == 3);
  }
}
