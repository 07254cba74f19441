#include <cmath>
#include <numbers>

#include "doctest.h"
#include "eqindex/charring.hpp"

using namespace eqindex;

TEST_CASE("cyclic labels reduce mod n") {
  const GroupDesc z3 = GroupDesc::cyclic(3);
  CHECK(z3.product(IrrepLabel{2}, IrrepLabel{2}) == IrrepLabel{1});
  CHECK(z3.admits(IrrepLabel{2}));
  CHECK_FALSE(z3.admits(IrrepLabel{3}));
  CHECK_FALSE(GroupDesc::trivial().admits(IrrepLabel{1}));
  CHECK(GroupDesc::circle().product(IrrepLabel{-3}, IrrepLabel{5}) == IrrepLabel{2});
  CHECK_THROWS(GroupDesc::cyclic(0));
}

TEST_CASE("ring operations") {
  const GroupDesc s1 = GroupDesc::circle();
  const CharacterElement a(s1, {{1, 2}, {-1, 1}});
  const CharacterElement b(s1, {{1, -2}, {0, 3}});

  const CharacterElement sum = a + b;
  CHECK(sum.multiplicity(IrrepLabel{1}) == 0);
  CHECK(sum.entries().count(IrrepLabel{1}) == 0);
  CHECK(sum.multiplicity(IrrepLabel{0}) == 3);
  CHECK(a - a == CharacterElement(s1));
  CHECK(-a == CharacterElement(s1) - a);

  // (2 t + t^-1)(t) = 2 t^2 + 1
  const CharacterElement t(s1, {{1, 1}});
  CHECK(tensor(a, t) == CharacterElement(s1, {{2, 2}, {0, 1}}));
  CHECK(dimension(tensor(a, b)) == dimension(a) * dimension(b));
  CHECK(dimension(a) == 3);
}

TEST_CASE("mixing groups is rejected") {
  const CharacterElement a(GroupDesc::circle(), {{1, 1}});
  const CharacterElement b(GroupDesc::cyclic(2), {{1, 1}});
  CHECK_THROWS(a + b);
  CHECK_THROWS(CharacterElement(GroupDesc::cyclic(2), {{2, 1}}));
}

TEST_CASE("windows keep unknown labels unknown") {
  WindowedCharacter w(GroupDesc::circle(), -2, 2);
  w.set(IrrepLabel{1}, 4);
  w.set(IrrepLabel{-2}, -1);
  CHECK(w.multiplicity(IrrepLabel{1}) == 4);
  CHECK(w.multiplicity(IrrepLabel{0}) == 0);
  CHECK_FALSE(w.multiplicity(IrrepLabel{3}).has_value());
  CHECK_THROWS(w.set(IrrepLabel{5}, 1));

  const WindowedCharacter narrow = w.restricted(0, 2);
  CHECK(narrow.lo() == 0);
  CHECK(narrow.entries().size() == 1);

  WindowedCharacter other(GroupDesc::circle(), 0, 6);
  other.set(IrrepLabel{1}, 4);
  other.set(IrrepLabel{6}, 9);
  CHECK(equal_on_overlap(w, other));
  other.set(IrrepLabel{2}, 1);
  CHECK_FALSE(equal_on_overlap(w, other));
  CHECK_FALSE(equal_on_overlap(w, WindowedCharacter(GroupDesc::circle(), 10, 12)));
}

TEST_CASE("decomposition of a Z3 representation in a rotated basis") {
  const double w = 2 * std::numbers::pi / 3;
  Eigen::Vector3cd phases(1.0, std::polar(1.0, w), std::polar(1.0, w));
  // Random unitary from a QR factorization.
  Eigen::MatrixXcd g = Eigen::MatrixXcd::Random(3, 3);
  const Eigen::MatrixXcd q = Eigen::HouseholderQR<Eigen::MatrixXcd>(g).householderQ();
  const Eigen::MatrixXcd u = q * phases.asDiagonal() * q.adjoint();

  const auto dec = decompose_representation(u, GroupDesc::cyclic(3));
  CHECK(dec.character == CharacterElement(GroupDesc::cyclic(3), {{0, 1}, {1, 2}}));
  const Eigen::MatrixXcd& p1 = dec.projectors.at(IrrepLabel{1});
  CHECK((p1 * p1 - p1).norm() < 1e-10);
  CHECK(std::abs(p1.trace() - 2.0) < 1e-10);
  CHECK((u * p1 - std::polar(1.0, w) * p1).norm() < 1e-10);
}

TEST_CASE("decomposition rejects a generator of the wrong order") {
  Eigen::MatrixXcd u = Eigen::MatrixXcd::Identity(2, 2);
  u(1, 1) = std::polar(1.0, 0.3);
  CHECK_THROWS(decompose_representation(u, GroupDesc::cyclic(4)));
  const Eigen::MatrixXcd scaled = 2.0 * Eigen::MatrixXcd::Identity(2, 2);
  CHECK_THROWS(decompose_representation(scaled, GroupDesc::cyclic(2)));
}

TEST_CASE("circle decomposition from a sampler") {
  const auto sampler = [](double t) {
    Eigen::Vector3cd d(std::polar(1.0, t), std::polar(1.0, -2 * t), std::polar(1.0, t));
    return Eigen::MatrixXcd(d.asDiagonal());
  };
  const auto dec = decompose_representation(sampler, GroupDesc::circle(), 8);
  CHECK(dec.character == CharacterElement(GroupDesc::circle(), {{1, 2}, {-2, 1}}));
}
