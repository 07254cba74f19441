#include "doctest.h"
#include "eqindex/clifford.hpp"

using namespace eqindex;

TEST_CASE("standard actions satisfy the Clifford relations") {
  for (const auto& action : {make_pauli_action(), make_plane_action(), make_exterior_action(2),
                             make_exterior_action(3)}) {
    const auto d = verify_clifford(action);
    CHECK(d.passed);
    CHECK(d.max_relation_deviation < 1e-14);
  }
  CHECK(verify_clifford(make_plane_action()).graded);
  CHECK_FALSE(verify_clifford(make_pauli_action()).graded);
}

TEST_CASE("c(v)^2 = -|v|^2 for a generic vector") {
  const auto c = make_pauli_action();
  const Eigen::Vector3d v(0.3, -1.2, 2.0);
  const Eigen::MatrixXcd sq = c(v) * c(v);
  CHECK((sq + v.squaredNorm() * Eigen::MatrixXcd::Identity(2, 2)).norm() < 1e-13);
}

TEST_CASE("broken relations are reported") {
  Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(2, 2);
  a(0, 1) = 1.0;
  a(1, 0) = 1.0;  // squares to +1
  CHECK_FALSE(verify_clifford(CliffordAction<double>({a})).passed);
}

TEST_CASE("grading must partition the fiber") {
  const Eigen::MatrixXcd i2 = cdouble(0, 1) * Eigen::MatrixXcd::Identity(2, 2);
  CHECK_THROWS(CliffordAction<double>({i2}, Grading{{0}, {0}}));
  CHECK_THROWS(CliffordAction<double>({i2}, Grading{{0}, {}}));
  CHECK_THROWS(CliffordAction<double>({}));
}

TEST_CASE("plane action is odd and its E+ to E- block is invertible off zero") {
  const auto c = make_plane_action();
  const Eigen::Vector2d xi(0.6, 0.8);
  const Eigen::MatrixXcd block = c.plus_to_minus(c(xi));
  CHECK(block.rows() == 1);
  CHECK(std::abs(std::abs(block(0, 0)) - 1.0) < 1e-14);
  CHECK(verify_clifford(c).max_grading_leak == 0.0);
}

TEST_CASE("exterior basis order") {
  const std::vector<std::vector<int>> expected{{}, {0}, {0, 1}, {1}};
  CHECK(exterior_basis(2) == expected);
  CHECK(exterior_basis(3).size() == 8);
  const auto c = make_exterior_action(3);
  CHECK(c.fiber_dim() == 8);
  CHECK(c.grading()->positive.size() == 4);
}

TEST_CASE("dirac symbol is i c(xi)") {
  const auto c = make_pauli_action();
  const Eigen::Vector3d xi(1.0, 2.0, 3.0);
  // i c(xi) = xi . sigma, which is Hermitian with eigenvalues +-|xi|.
  const Eigen::MatrixXcd s = dirac_symbol(c, VectorXd(xi));
  CHECK((s - s.adjoint()).norm() < 1e-14);
  CHECK(std::abs(s(0, 0) - cdouble(3, 0)) < 1e-14);
  CHECK(std::abs(s(0, 1) - cdouble(1, -2)) < 1e-14);
}
