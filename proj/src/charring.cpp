#include "eqindex/charring.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace eqindex {

GroupDesc GroupDesc::cyclic(int n) {
  if (n < 1) throw std::invalid_argument("cyclic group order must be positive");
  return GroupDesc(GroupKind::cyclic, n);
}

bool GroupDesc::admits(IrrepLabel label) const {
  switch (kind_) {
    case GroupKind::trivial:
      return label.value == 0;
    case GroupKind::cyclic:
      return label.value >= 0 && label.value < order_;
    case GroupKind::circle:
      return true;
  }
  return false;
}

IrrepLabel GroupDesc::product(IrrepLabel a, IrrepLabel b) const {
  switch (kind_) {
    case GroupKind::trivial:
      return IrrepLabel{0};
    case GroupKind::cyclic:
      return IrrepLabel{(a.value + b.value) % order_};
    case GroupKind::circle:
      return IrrepLabel{a.value + b.value};
  }
  return IrrepLabel{0};
}

std::string GroupDesc::name() const {
  switch (kind_) {
    case GroupKind::trivial:
      return "trivial";
    case GroupKind::cyclic:
      return "Z" + std::to_string(order_);
    case GroupKind::circle:
      return "S1";
  }
  return "?";
}

std::string GroupDesc::label_name(IrrepLabel label) const {
  if (kind_ == GroupKind::circle) return "m=" + std::to_string(label.value);
  return "V" + std::to_string(label.value);
}

namespace {

void require_same_group(const GroupDesc& a, const GroupDesc& b) {
  if (!(a == b)) throw std::invalid_argument("character group mismatch: " + a.name() + " vs " + b.name());
}

}  // namespace

CharacterElement::CharacterElement(GroupDesc group,
                                   std::initializer_list<std::pair<int, long long>> entries)
    : group_(group) {
  for (const auto& [label, mult] : entries) add(IrrepLabel{label}, mult);
}

long long CharacterElement::multiplicity(IrrepLabel label) const {
  auto it = entries_.find(label);
  return it == entries_.end() ? 0 : it->second;
}

void CharacterElement::add(IrrepLabel label, long long multiplicity) {
  if (!group_.admits(label))
    throw std::invalid_argument("label " + std::to_string(label.value) + " is not an irreducible of " +
                                group_.name());
  if (multiplicity == 0) return;
  auto& slot = entries_[label];
  slot += multiplicity;
  if (slot == 0) entries_.erase(label);
}

CharacterElement operator+(const CharacterElement& a, const CharacterElement& b) {
  require_same_group(a.group_, b.group_);
  CharacterElement out = a;
  for (const auto& [label, mult] : b.entries_) out.add(label, mult);
  return out;
}

CharacterElement operator-(const CharacterElement& a) {
  CharacterElement out(a.group_);
  for (const auto& [label, mult] : a.entries_) out.add(label, -mult);
  return out;
}

CharacterElement operator-(const CharacterElement& a, const CharacterElement& b) { return a + (-b); }

CharacterElement tensor(const CharacterElement& a, const CharacterElement& b) {
  if (!(a.group() == b.group())) throw std::invalid_argument("character group mismatch in tensor product");
  const GroupDesc& g = a.group();
  CharacterElement out(g);
  for (const auto& [la, ma] : a.entries())
    for (const auto& [lb, mb] : b.entries()) out.add(g.product(la, lb), ma * mb);
  return out;
}

long long dimension(const CharacterElement& a) {
  long long total = 0;
  for (const auto& [label, mult] : a.entries()) total += mult;
  return total;
}

WindowedCharacter::WindowedCharacter(GroupDesc group, int lo, int hi) : group_(group), lo_(lo), hi_(hi) {
  if (group.kind() == GroupKind::trivial)
    throw std::invalid_argument("windowed characters need a cyclic or circle group");
  if (lo > hi) throw std::invalid_argument("window bounds out of order");
  if (!group.admits(IrrepLabel{lo}) || !group.admits(IrrepLabel{hi}))
    throw std::invalid_argument("window bounds are not labels of " + group.name());
}

std::optional<long long> WindowedCharacter::multiplicity(IrrepLabel label) const {
  if (!contains(label)) return std::nullopt;
  auto it = entries_.find(label);
  return it == entries_.end() ? 0 : it->second;
}

void WindowedCharacter::set(IrrepLabel label, long long multiplicity) {
  if (!contains(label))
    throw std::out_of_range("label " + std::to_string(label.value) + " outside window [" +
                            std::to_string(lo_) + ", " + std::to_string(hi_) + "]");
  if (multiplicity == 0)
    entries_.erase(label);
  else
    entries_[label] = multiplicity;
}

WindowedCharacter WindowedCharacter::restricted(int lo, int hi) const {
  if (lo < lo_ || hi > hi_) throw std::out_of_range("restriction window exceeds the known window");
  WindowedCharacter out(group_, lo, hi);
  for (const auto& [label, mult] : entries_)
    if (out.contains(label)) out.set(label, mult);
  return out;
}

bool equal_on_overlap(const WindowedCharacter& a, const WindowedCharacter& b) {
  if (!(a.group() == b.group())) return false;
  const int lo = std::max(a.lo(), b.lo());
  const int hi = std::min(a.hi(), b.hi());
  if (lo > hi) return false;
  for (int m = lo; m <= hi; ++m)
    if (a.multiplicity(IrrepLabel{m}) != b.multiplicity(IrrepLabel{m})) return false;
  return true;
}

namespace {

void require_unitary(const MatrixXcd& u) {
  if (u.rows() != u.cols()) throw std::invalid_argument("representation matrix must be square");
  const MatrixXcd id = MatrixXcd::Identity(u.rows(), u.cols());
  if ((u.adjoint() * u - id).norm() > kUnitarityTolerance * std::max<double>(1.0, u.rows()))
    throw std::invalid_argument("representation matrix is not unitary");
}

double angular_distance(double a, double b) {
  return std::abs(std::remainder(a - b, 2.0 * std::numbers::pi));
}

void check_completeness(const IsotypicDecomposition& d, Eigen::Index dim) {
  MatrixXcd sum = MatrixXcd::Zero(dim, dim);
  for (const auto& [label, p] : d.projectors) {
    sum += p;
    const double trace = p.trace().real();
    if (std::abs(trace - static_cast<double>(d.character.multiplicity(label))) > 1e-6)
      throw std::invalid_argument("isotypic projector trace disagrees with eigenvalue count");
  }
  if ((sum - MatrixXcd::Identity(dim, dim)).norm() > 1e-8 * std::max<double>(1.0, dim))
    throw std::invalid_argument("isotypic projectors do not resolve the identity");
}

}  // namespace

IsotypicDecomposition decompose_representation(const MatrixXcd& generator, const GroupDesc& group) {
  require_unitary(generator);
  const Eigen::Index dim = generator.rows();
  IsotypicDecomposition out{CharacterElement(group), {}};

  if (group.kind() == GroupKind::circle)
    throw std::invalid_argument("circle representations are decomposed from a sampler");

  const int n = group.order();
  MatrixXcd power = MatrixXcd::Identity(dim, dim);
  std::vector<MatrixXcd> powers;
  for (int k = 0; k < n; ++k) {
    powers.push_back(power);
    power = power * generator;
  }
  if ((power - MatrixXcd::Identity(dim, dim)).norm() > kUnitarityTolerance * std::max<double>(1.0, dim))
    throw std::invalid_argument("generator does not satisfy g^n = Id");

  if (dim > 0) {
    Eigen::ComplexEigenSolver<MatrixXcd> es(generator, false);
    for (Eigen::Index i = 0; i < dim; ++i) {
      const double theta = std::arg(es.eigenvalues()(i));
      const double step = 2.0 * std::numbers::pi / n;
      int j = static_cast<int>(std::lround(theta / step));
      if (angular_distance(theta, j * step) > kLabelSnapTolerance)
        throw std::invalid_argument("eigenvalue is not an n-th root of unity");
      j = ((j % n) + n) % n;
      out.character.add(IrrepLabel{j}, 1);
    }
  }

  for (const auto& [label, mult] : out.character.entries()) {
    MatrixXcd p = MatrixXcd::Zero(dim, dim);
    for (int k = 0; k < n; ++k)
      p += std::polar(1.0, -2.0 * std::numbers::pi * label.value * k / n) * powers[k];
    out.projectors.emplace(label, p / static_cast<double>(n));
  }
  check_completeness(out, dim);
  return out;
}

IsotypicDecomposition decompose_representation(const std::function<MatrixXcd(double)>& sampler,
                                               const GroupDesc& group, int max_weight) {
  if (group.kind() != GroupKind::circle)
    throw std::invalid_argument("sampler decomposition is for the circle group");
  if (max_weight < 0) throw std::invalid_argument("max_weight must be non-negative");

  // e^{i m t0} are distinct for |m| <= max_weight.
  const double t0 = std::numbers::pi / (max_weight + 1);
  const MatrixXcd u0 = sampler(t0);
  require_unitary(u0);
  const Eigen::Index dim = u0.rows();
  IsotypicDecomposition out{CharacterElement(group), {}};

  if (dim > 0) {
    Eigen::ComplexEigenSolver<MatrixXcd> es(u0, false);
    for (Eigen::Index i = 0; i < dim; ++i) {
      const double theta = std::arg(es.eigenvalues()(i));
      const int m = static_cast<int>(std::lround(theta / t0));
      if (std::abs(m) > max_weight || angular_distance(theta, m * t0) > kLabelSnapTolerance)
        throw std::invalid_argument("eigenvalue does not lie on the character lattice");
      out.character.add(IrrepLabel{m}, 1);
    }
  }

  const int samples = 2 * max_weight + 2;
  std::vector<MatrixXcd> us;
  for (int k = 0; k < samples; ++k) {
    MatrixXcd u = sampler(2.0 * std::numbers::pi * k / samples);
    require_unitary(u);
    us.push_back(std::move(u));
  }
  for (const auto& [label, mult] : out.character.entries()) {
    MatrixXcd p = MatrixXcd::Zero(dim, dim);
    for (int k = 0; k < samples; ++k)
      p += std::polar(1.0, -2.0 * std::numbers::pi * label.value * k / samples) * us[k];
    out.projectors.emplace(label, p / static_cast<double>(samples));
  }
  check_completeness(out, dim);
  return out;
}

}  // namespace eqindex
