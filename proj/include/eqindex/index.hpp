#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/SVD>

#include "eqindex/charring.hpp"
#include "eqindex/models.hpp"
#include "eqindex/types.hpp"

namespace eqindex {

/// sigma counts as zero iff sigma < max(absolute_floor, relative_factor * sigma_max);
/// a decision is confident iff its gap ratio is at least min_gap_ratio.
struct RankPolicy {
  double absolute_floor = 1e-10;
  double relative_factor = 1e-6;
  double min_gap_ratio = 10.0;

  double threshold(double sigma_max) const { return std::max(absolute_floor, relative_factor * sigma_max); }
};

struct RankDecision {
  VectorXd singular_values;  // descending, min(rows, cols) entries
  Eigen::Index rows = 0;
  Eigen::Index cols = 0;
  double threshold = 0.0;
  int rank = 0;
  int kernel_dim = 0;
  /// Smallest accepted-nonzero sigma over the largest sigma counted as zero.
  /// Missing singular values of a wide matrix count as exact zeros, and the
  /// denominator is never below the absolute floor. With no zero sigma at
  /// all the denominator is the threshold itself. +inf when every sigma is
  /// zero or the matrix is empty.
  double gap_ratio = std::numeric_limits<double>::infinity();
  bool confident = true;
};

template <class Scalar>
RankDecision numeric_kernel(const ComplexMatrix<Scalar>& a, const RankPolicy& policy = {}) {
  RankDecision d;
  d.rows = a.rows();
  d.cols = a.cols();
  const Eigen::Index p = std::min(a.rows(), a.cols());
  if (p == 0) {
    d.singular_values.resize(0);
    d.threshold = policy.absolute_floor;
    d.kernel_dim = static_cast<int>(a.cols());
    return d;
  }
  if (!a.allFinite()) throw std::runtime_error("matrix has non-finite entries");
  Eigen::BDCSVD<ComplexMatrix<Scalar>> svd(a);
  if (svd.info() != Eigen::Success) throw std::runtime_error("singular value decomposition failed");
  d.singular_values = svd.singularValues().template cast<double>();
  const double sigma_max = d.singular_values(0);
  d.threshold = policy.threshold(sigma_max);
  int rank = 0;
  while (rank < p && d.singular_values(rank) >= d.threshold) ++rank;
  d.rank = rank;
  d.kernel_dim = static_cast<int>(a.cols()) - rank;

  if (rank == 0) {
    d.gap_ratio = std::numeric_limits<double>::infinity();
  } else {
    const double smallest_kept = d.singular_values(rank - 1);
    const bool any_zero = rank < p || a.cols() > p;
    if (any_zero) {
      const double largest_zero = rank < p ? d.singular_values(rank) : 0.0;
      d.gap_ratio = smallest_kept / std::max(largest_zero, policy.absolute_floor);
    } else {
      d.gap_ratio = smallest_kept / d.threshold;
    }
  }
  d.confident = d.gap_ratio >= policy.min_gap_ratio;
  return d;
}

struct FredholmResult {
  RankDecision kernel;    // decision on A
  RankDecision cokernel;  // decision on A*
  int kernel_dim = 0;
  int cokernel_dim = 0;
  int index = 0;
  bool confident = true;
};

/// dim Ker A - dim Ker A*, without throwing on indeterminate decisions.
FredholmResult fredholm_analysis(const MatrixXcd& a, const RankPolicy& policy = {});

/// Index of the whole model; throws IndeterminateError when either rank
/// decision lacks a confident gap.
int fredholm_index(const IsotypicBlockOperator& model, const RankPolicy& policy = {});

/// Kernel multiplicity by domain label, cokernel multiplicity by codomain label.
struct LabelResult {
  IrrepLabel label;
  int kernel = 0;    // m+
  int cokernel = 0;  // m-
  double kernel_gap = std::numeric_limits<double>::infinity();
  double cokernel_gap = std::numeric_limits<double>::infinity();
  bool confident = true;

  int index() const { return kernel - cokernel; }
};

struct EquivariantResult {
  GroupDesc group = GroupDesc::trivial();
  std::vector<LabelResult> labels;  // sorted by label
  std::optional<std::pair<int, int>> window;
  bool confident = true;

  CharacterElement character() const;
  /// Requires a window.
  WindowedCharacter windowed() const;
  /// Sum of per-label indices.
  long long total_index() const;
};

/// Per-label analysis without throwing on indeterminate blocks.
EquivariantResult equivariant_analysis(const IsotypicBlockOperator& model, const RankPolicy& policy = {});

/// Per-label index of an equivariant model. The result is windowed when the
/// model records a "window" (lo:hi) in its metadata. Throws
/// IndeterminateError when any block is indeterminate.
EquivariantResult equivariant_index(const IsotypicBlockOperator& model, const RankPolicy& policy = {});

/// Windowed index of D+_{fv} on the plane over weights [lo, hi].
EquivariantResult deformed_plane_index(const PlaneParams& params, int lo, int hi, const RankPolicy& policy = {});

// Reports.

struct LabelEntry {
  int label = 0;
  std::string label_name;
  int kernel = 0;
  int cokernel = 0;
  int index = 0;
  double kernel_gap = 0.0;
  double cokernel_gap = 0.0;
  bool confident = true;
};

struct CheckEntry {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct IndexReport {
  std::string title;
  Metadata metadata;
  RankPolicy policy;
  std::optional<std::uint64_t> seed;
  std::string group = "trivial";
  std::optional<std::pair<int, int>> window;
  std::vector<LabelEntry> labels;
  std::optional<long long> index;
  std::vector<CheckEntry> checks;
  std::map<std::string, double> diagnostics;
  bool confident = true;

  /// Confident and every check passed.
  bool passed() const;
};

IndexReport make_report(const std::string& title, const Metadata& metadata, const EquivariantResult& result,
                        const RankPolicy& policy);

// Verification suites.

struct StabilityOptions {
  int trials = 100;
  int max_rank = 3;  // trial t uses rank 1 + t % max_rank
  double relative_norm = 0.4;
  std::uint64_t seed = 1;
};

/// Perturbs the model `trials` times (equivariantly when it carries labels
/// of a nontrivial group) and compares every index with the unperturbed one.
IndexReport stability_suite(const IsotypicBlockOperator& model, const StabilityOptions& options,
                            const RankPolicy& policy = {});

using ModelPath = std::function<IsotypicBlockOperator(double)>;

/// Evaluates the path at s = k / steps, k = 0..steps, and requires a
/// confident, constant index.
IndexReport homotopy_suite(const std::string& name, const ModelPath& path, int steps, const RankPolicy& policy = {});

struct CompositionVerdict {
  int index_a = 0;
  int index_b = 0;
  int index_ba = 0;
  bool passed = false;
};

/// Ind(BA) = Ind(A) + Ind(B).
CompositionVerdict composition_check(const IsotypicBlockOperator& a, const IsotypicBlockOperator& b,
                                     const RankPolicy& policy = {});

struct AdjointVerdict {
  int index = 0;
  int adjoint_index = 0;
  bool passed = false;
};

/// Ind(A*) = -Ind(A).
AdjointVerdict adjoint_check(const IsotypicBlockOperator& a, const RankPolicy& policy = {});

/// Per-weight check inner + outer = unsplit on [lo, hi].
IndexReport gluing_check(const GlueParams& params, int lo, int hi, const RankPolicy& policy = {});

using ResolutionFamily = std::function<IsotypicBlockOperator(int)>;

struct ConvergenceResult {
  std::vector<int> resolutions;
  std::vector<EquivariantResult> results;
  bool plateau = false;
  std::optional<int> accepted_resolution;  // finest resolution once the last two agree

  IndexReport report(const std::string& title, const RankPolicy& policy) const;
};

/// Builds the family at each resolution (at least three) and accepts the
/// finest one when the last two agree label by label with confident gaps.
ConvergenceResult convergence_study(const ResolutionFamily& family, const std::vector<int>& resolutions,
                                    const RankPolicy& policy = {});

}  // namespace eqindex
