#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "eqindex/charring.hpp"
#include "eqindex/radial.hpp"
#include "eqindex/types.hpp"

namespace eqindex {

struct LabelDim {
  IrrepLabel label;
  int dim = 0;
};

using Metadata = std::map<std::string, std::string>;

/// Finite matrix model of an operator between two representations, stored
/// as blocks between isotypic components. Each stored block maps one
/// domain label to one codomain label; the dense form orders basis vectors
/// by the declared label lists.
class IsotypicBlockOperator {
 public:
  using BlockKey = std::pair<IrrepLabel, IrrepLabel>;  // (domain, codomain)

  IsotypicBlockOperator(GroupDesc group, std::vector<LabelDim> domain, std::vector<LabelDim> codomain);

  const GroupDesc& group() const { return group_; }
  const std::vector<LabelDim>& domain_labels() const { return domain_; }
  const std::vector<LabelDim>& codomain_labels() const { return codomain_; }
  const std::map<BlockKey, MatrixXcd>& blocks() const { return blocks_; }

  void set_block(IrrepLabel from, IrrepLabel to, MatrixXcd block);
  const MatrixXcd& block(IrrepLabel from, IrrepLabel to) const;

  Eigen::Index domain_dim() const;
  Eigen::Index codomain_dim() const;
  int domain_dim(IrrepLabel label) const;
  int codomain_dim(IrrepLabel label) const;

  bool graded() const { return graded_; }
  void set_graded(bool graded) { graded_ = graded; }
  Metadata& metadata() { return metadata_; }
  const Metadata& metadata() const { return metadata_; }

  /// Codomain label each domain label maps to, when every domain label has
  /// at most one block (Schur block-diagonality up to a label shift).
  std::optional<IrrepLabel> target_of(IrrepLabel from) const;
  bool is_equivariant() const;
  /// Common shift `to - from` of every block, when it exists.
  std::optional<int> label_offset() const;

  MatrixXcd dense() const;
  IsotypicBlockOperator adjoint() const;

  /// Rebuilds a labeled model from a dense matrix with the same label
  /// layout. With `require_blocks`, entries outside the blocks of
  /// `layout` above 1e-14 are an error.
  static IsotypicBlockOperator from_dense(const IsotypicBlockOperator& layout, const MatrixXcd& dense,
                                          bool require_blocks);

 private:
  int domain_start(IrrepLabel label) const;
  int codomain_start(IrrepLabel label) const;

  GroupDesc group_;
  std::vector<LabelDim> domain_;
  std::vector<LabelDim> codomain_;
  std::map<BlockKey, MatrixXcd> blocks_;
  bool graded_ = false;
  Metadata metadata_;
};

inline constexpr double kOffBlockTolerance = 1e-14;

/// Largest entry of `dense` outside the blocks declared in `layout`.
double off_block_magnitude(const IsotypicBlockOperator& layout, const MatrixXcd& dense);

/// Block direct sum of models over the same group with disjoint labels.
IsotypicBlockOperator direct_sum(const std::vector<IsotypicBlockOperator>& parts);

/// Wraps a plain matrix as a single-block model of the trivial group.
IsotypicBlockOperator trivial_model(const MatrixXcd& matrix, const std::string& kind);

/// Finite Fourier (or Laurent) coefficient list: power -> coefficient.
using FourierCoefficients = std::map<int, cdouble>;

/// T(x1, x2, x3, ...) = (x3, x4, ...) truncated to C^N -> C^{N-2}, N even >= 4.
/// With `z2_labels`, the basis is rotated to eigenvectors of the pair swap
/// q(x1, x2, x3, x4, ...) = (x2, x1, x4, x3, ...) and the model is Z2-labeled.
IsotypicBlockOperator build_shift_model(int n, bool z2_labels = false);

/// Winding number of a Laurent polynomial symbol around 0 on |z| = 1.
/// Throws when the symbol comes within `tolerance` of zero on the circle.
int symbol_winding_number(const FourierCoefficients& symbol, double tolerance = 1e-8);

/// Toeplitz operator T(a) with (T x)_i = sum_k a_k x_{i-k}, truncated to
/// C^N -> C^{N + w}, w = winding number of the symbol.
IsotypicBlockOperator build_toeplitz_model(const FourierCoefficients& symbol, int n);

/// -i d/dt + V(t) in the basis e^{ikt}, |k| <= K.
IsotypicBlockOperator build_circle_model(const FourierCoefficients& potential, int cutoff);

/// Graded de Rham-Dirac operator on the circle: D+ = d from 0-forms to
/// 1-forms, optionally deformed by i c(v) with v the generating field of
/// the circle acting on itself and f = 1. Mode e^{ikt} carries weight k.
IsotypicBlockOperator build_derham_circle_model(int cutoff, bool deformed);

/// Full (ungraded) operator [[0, D-], [D+, 0]] of a graded model with D- = (D+)*.
MatrixXcd graded_dirac_matrix(const IsotypicBlockOperator& plus_part);

/// Product with the circle: one copy of the base matrix for every weight in
/// [-K, K].
IsotypicBlockOperator build_product_model(const IsotypicBlockOperator& base, int cutoff);

/// D+_{fv} on the plane restricted to weight m; see radial.hpp for the
/// discretization. Weight convention: under (g.u)(z) = rho(g) u(g^{-1} z),
/// with E+ twisted by the character e^{it} -> e^{-it} so that the Clifford
/// action is equivariant, the E+ mode e^{-i(m+1)theta} and the E- mode
/// e^{-i m theta} both carry weight m (label offset 0).
IsotypicBlockOperator build_plane_weight_model(int weight, const PlaneParams& params);

/// Direct sum of the weight models over [lo, hi].
IsotypicBlockOperator build_plane_window_model(int lo, int hi, const PlaneParams& params);

struct GluedModels {
  IsotypicBlockOperator inner;
  IsotypicBlockOperator outer;
};

/// Weight-m models of the disk r < r0 and the exterior r > r0, each made
/// complete by a conformal stretch of a collar around the split circle.
GluedModels build_glued_plane_models(int weight, const GlueParams& params);

/// Adds a pseudorandom perturbation of the given rank and operator norm
/// relative_norm * sigma_max(model). With `equivariant`, the rank is spread
/// over randomly chosen blocks so that the labels are respected.
IsotypicBlockOperator random_finite_rank_perturbation(const IsotypicBlockOperator& model, int rank,
                                                      double relative_norm, std::uint64_t seed, bool equivariant);

/// Adds a given dense perturbation; with `require_equivariant`, entries
/// outside the model's blocks are rejected.
IsotypicBlockOperator add_perturbation(const IsotypicBlockOperator& model, const MatrixXcd& perturbation,
                                       bool require_equivariant);

/// Composition B A of two models over the trivial group.
IsotypicBlockOperator compose(const IsotypicBlockOperator& b, const IsotypicBlockOperator& a);

double largest_singular_value(const MatrixXcd& m);

// Configuration-level description of a model.

enum class ModelKind { shift, toeplitz, circle_first_order, derham_circle, product, plane_weight, plane_glued };

std::string to_string(ModelKind kind);
ModelKind parse_model_kind(const std::string& text);

struct ModelSpec {
  ModelKind kind = ModelKind::shift;
  int truncation = 20;      // N (shift, toeplitz, product base)
  int fourier_cutoff = 32;  // K (circle, de Rham, product window)
  bool z2_labels = false;
  FourierCoefficients symbol{{-2, 1.0}};
  FourierCoefficients potential;
  bool deformed = false;
  int window_lo = -8;
  int window_hi = 8;
  PlaneParams plane;
  GlueParams glue;
  std::uint64_t seed = 0;
};

/// Builds the model described by `spec`. Plane specs build the whole weight
/// window. Glued specs describe a pair of models and are rejected here; see
/// build_glued_plane_models.
IsotypicBlockOperator build_model(const ModelSpec& spec);

/// FourierCoefficients for a*sin(t).
FourierCoefficients sine_potential(double amplitude = 1.0);

}  // namespace eqindex
