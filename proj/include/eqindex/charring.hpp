#pragma once

#include <compare>
#include <functional>
#include <initializer_list>
#include <map>
#include <optional>
#include <string>
#include <utility>

#include "eqindex/types.hpp"

namespace eqindex {

enum class GroupKind { trivial, cyclic, circle };

/// Irreducible representation of one of the supported abelian groups.
/// For Z_n the value is the residue j (generator acts by e^{2 pi i j / n}),
/// for the circle it is the integer weight m (e^{it} acts by e^{imt}),
/// for the trivial group it is always 0.
struct IrrepLabel {
  int value = 0;
  auto operator<=>(const IrrepLabel&) const = default;
};

class GroupDesc {
 public:
  static GroupDesc trivial() { return GroupDesc(GroupKind::trivial, 1); }
  static GroupDesc cyclic(int n);
  static GroupDesc circle() { return GroupDesc(GroupKind::circle, 0); }

  GroupKind kind() const { return kind_; }
  /// n for Z_n, 1 for the trivial group, 0 for the circle.
  int order() const { return order_; }

  bool admits(IrrepLabel label) const;
  /// Label of the tensor product of two irreducibles (all are one-dimensional).
  IrrepLabel product(IrrepLabel a, IrrepLabel b) const;

  std::string name() const;
  std::string label_name(IrrepLabel label) const;

  friend bool operator==(const GroupDesc&, const GroupDesc&) = default;

 private:
  GroupDesc(GroupKind kind, int order) : kind_(kind), order_(order) {}

  GroupKind kind_;
  int order_;
};

/// Element of the character ring R(G): a finitely supported integer
/// combination of irreducibles. Zero multiplicities are never stored.
class CharacterElement {
 public:
  using Entries = std::map<IrrepLabel, long long>;

  explicit CharacterElement(GroupDesc group) : group_(group) {}
  CharacterElement(GroupDesc group, std::initializer_list<std::pair<int, long long>> entries);

  const GroupDesc& group() const { return group_; }
  const Entries& entries() const { return entries_; }
  long long multiplicity(IrrepLabel label) const;
  bool empty() const { return entries_.empty(); }

  void add(IrrepLabel label, long long multiplicity);

  friend CharacterElement operator+(const CharacterElement& a, const CharacterElement& b);
  friend CharacterElement operator-(const CharacterElement& a, const CharacterElement& b);
  friend CharacterElement operator-(const CharacterElement& a);
  friend bool operator==(const CharacterElement&, const CharacterElement&) = default;

 private:
  GroupDesc group_;
  Entries entries_;
};

/// Product induced by the tensor product of representations.
CharacterElement tensor(const CharacterElement& a, const CharacterElement& b);

/// Virtual dimension: sum of multiplicities times irrep dimensions (all 1 here).
long long dimension(const CharacterElement& a);

/// Finite window [lo, hi] of an element of the completed ring. Labels outside
/// the window are unknown, not zero.
class WindowedCharacter {
 public:
  WindowedCharacter(GroupDesc group, int lo, int hi);

  const GroupDesc& group() const { return group_; }
  int lo() const { return lo_; }
  int hi() const { return hi_; }
  bool contains(IrrepLabel label) const { return label.value >= lo_ && label.value <= hi_; }

  /// nullopt outside the window.
  std::optional<long long> multiplicity(IrrepLabel label) const;
  void set(IrrepLabel label, long long multiplicity);

  /// Nonzero entries inside the window.
  const std::map<IrrepLabel, long long>& entries() const { return entries_; }

  WindowedCharacter restricted(int lo, int hi) const;

  friend bool operator==(const WindowedCharacter&, const WindowedCharacter&) = default;

 private:
  GroupDesc group_;
  int lo_;
  int hi_;
  std::map<IrrepLabel, long long> entries_;
};

/// Equality on the intersection of the two windows. Returns false when the
/// windows do not overlap at all.
bool equal_on_overlap(const WindowedCharacter& a, const WindowedCharacter& b);

/// Isotypic decomposition of a finite-dimensional unitary representation.
struct IsotypicDecomposition {
  CharacterElement character;
  std::map<IrrepLabel, MatrixXcd> projectors;
};

inline constexpr double kLabelSnapTolerance = 1e-6;
inline constexpr double kUnitarityTolerance = 1e-10;

/// Decomposes the representation of Z_n (or the trivial group) generated by
/// the unitary matrix `generator`.
IsotypicDecomposition decompose_representation(const MatrixXcd& generator, const GroupDesc& group);

/// Decomposes a circle representation given by a sampler t -> U(e^{it}).
/// Weights are assumed to satisfy |m| <= max_weight.
IsotypicDecomposition decompose_representation(const std::function<MatrixXcd(double)>& sampler,
                                               const GroupDesc& group, int max_weight = 64);

}  // namespace eqindex
