#include "eqindex/models.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>

#include <Eigen/QR>
#include <Eigen/SVD>

namespace eqindex {

namespace {

void check_labels(const GroupDesc& group, const std::vector<LabelDim>& labels, const char* side) {
  std::set<IrrepLabel> seen;
  for (const auto& [label, dim] : labels) {
    if (!group.admits(label))
      throw std::invalid_argument(std::string(side) + " label " + group.label_name(label) + " is not an irrep of " +
                                  group.name());
    if (dim < 0) throw std::invalid_argument(std::string(side) + " label with negative dimension");
    if (!seen.insert(label).second)
      throw std::invalid_argument(std::string(side) + " label " + group.label_name(label) + " listed twice");
  }
}

int start_of(const std::vector<LabelDim>& labels, IrrepLabel label) {
  int start = 0;
  for (const auto& ld : labels) {
    if (ld.label == label) return start;
    start += ld.dim;
  }
  return -1;
}

int dim_of(const std::vector<LabelDim>& labels, IrrepLabel label) {
  for (const auto& ld : labels)
    if (ld.label == label) return ld.dim;
  return -1;
}

Eigen::Index total(const std::vector<LabelDim>& labels) {
  Eigen::Index n = 0;
  for (const auto& ld : labels) n += ld.dim;
  return n;
}

MatrixXcd random_gaussian(std::mt19937_64& rng, Eigen::Index rows, Eigen::Index cols) {
  std::normal_distribution<double> normal(0.0, 1.0);
  MatrixXcd m(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j)
    for (Eigen::Index i = 0; i < rows; ++i) m(i, j) = cdouble(normal(rng), normal(rng));
  return m;
}

MatrixXcd orthonormal_columns(std::mt19937_64& rng, Eigen::Index rows, Eigen::Index cols) {
  Eigen::HouseholderQR<MatrixXcd> qr(random_gaussian(rng, rows, cols));
  return qr.householderQ() * MatrixXcd::Identity(rows, cols);
}

// U diag(s) V^* with random orthonormal U, V; s_0 = top, the rest in [0.1, 1] * top.
MatrixXcd random_rank_matrix(std::mt19937_64& rng, Eigen::Index rows, Eigen::Index cols, int rank, double top,
                             bool include_top) {
  const MatrixXcd u = orthonormal_columns(rng, rows, rank);
  const MatrixXcd v = orthonormal_columns(rng, cols, rank);
  std::uniform_real_distribution<double> uniform(0.1, 1.0);
  VectorXd s(rank);
  for (int k = 0; k < rank; ++k) s(k) = (k == 0 && include_top) ? top : uniform(rng) * top;
  return u * s.cast<cdouble>().asDiagonal() * v.adjoint();
}

std::string format_double(double v) {
  std::ostringstream os;
  os.precision(12);
  os << v;
  return os.str();
}

}  // namespace

IsotypicBlockOperator::IsotypicBlockOperator(GroupDesc group, std::vector<LabelDim> domain,
                                             std::vector<LabelDim> codomain)
    : group_(group), domain_(std::move(domain)), codomain_(std::move(codomain)) {
  check_labels(group_, domain_, "domain");
  check_labels(group_, codomain_, "codomain");
}

void IsotypicBlockOperator::set_block(IrrepLabel from, IrrepLabel to, MatrixXcd block) {
  const int cols = dim_of(domain_, from);
  const int rows = dim_of(codomain_, to);
  if (cols < 0 || rows < 0) throw std::invalid_argument("block between undeclared labels");
  if (block.rows() != rows || block.cols() != cols)
    throw std::invalid_argument("block size does not match the label dimensions");
  blocks_[{from, to}] = std::move(block);
}

const MatrixXcd& IsotypicBlockOperator::block(IrrepLabel from, IrrepLabel to) const {
  auto it = blocks_.find({from, to});
  if (it == blocks_.end()) throw std::out_of_range("no block between these labels");
  return it->second;
}

Eigen::Index IsotypicBlockOperator::domain_dim() const { return total(domain_); }
Eigen::Index IsotypicBlockOperator::codomain_dim() const { return total(codomain_); }

int IsotypicBlockOperator::domain_dim(IrrepLabel label) const { return std::max(0, dim_of(domain_, label)); }
int IsotypicBlockOperator::codomain_dim(IrrepLabel label) const { return std::max(0, dim_of(codomain_, label)); }

int IsotypicBlockOperator::domain_start(IrrepLabel label) const { return start_of(domain_, label); }
int IsotypicBlockOperator::codomain_start(IrrepLabel label) const { return start_of(codomain_, label); }

std::optional<IrrepLabel> IsotypicBlockOperator::target_of(IrrepLabel from) const {
  std::optional<IrrepLabel> target;
  for (const auto& [key, block] : blocks_) {
    if (key.first != from) continue;
    if (target) return std::nullopt;
    target = key.second;
  }
  return target;
}

bool IsotypicBlockOperator::is_equivariant() const {
  std::set<IrrepLabel> sources;
  for (const auto& [key, block] : blocks_)
    if (!sources.insert(key.first).second) return false;
  return true;
}

std::optional<int> IsotypicBlockOperator::label_offset() const {
  if (!is_equivariant()) return std::nullopt;
  std::optional<int> offset;
  for (const auto& [key, block] : blocks_) {
    const int d = key.second.value - key.first.value;
    if (offset && *offset != d) return std::nullopt;
    offset = d;
  }
  return offset.value_or(0);
}

MatrixXcd IsotypicBlockOperator::dense() const {
  MatrixXcd m = MatrixXcd::Zero(codomain_dim(), domain_dim());
  for (const auto& [key, block] : blocks_)
    m.block(codomain_start(key.second), domain_start(key.first), block.rows(), block.cols()) = block;
  return m;
}

IsotypicBlockOperator IsotypicBlockOperator::adjoint() const {
  IsotypicBlockOperator out(group_, codomain_, domain_);
  for (const auto& [key, block] : blocks_) out.blocks_[{key.second, key.first}] = block.adjoint();
  out.graded_ = graded_;
  out.metadata_ = metadata_;
  out.metadata_["adjoint"] = metadata_.count("adjoint") && metadata_.at("adjoint") == "true" ? "false" : "true";
  return out;
}

double off_block_magnitude(const IsotypicBlockOperator& layout, const MatrixXcd& dense) {
  if (dense.rows() != layout.codomain_dim() || dense.cols() != layout.domain_dim())
    throw std::invalid_argument("matrix size does not match the model");
  Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic> inside =
      Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic>::Constant(dense.rows(), dense.cols(), false);
  for (const auto& [key, block] : layout.blocks()) {
    const int r = start_of(layout.codomain_labels(), key.second);
    const int c = start_of(layout.domain_labels(), key.first);
    inside.block(r, c, block.rows(), block.cols()).setConstant(true);
  }
  double worst = 0.0;
  for (Eigen::Index j = 0; j < dense.cols(); ++j)
    for (Eigen::Index i = 0; i < dense.rows(); ++i)
      if (!inside(i, j)) worst = std::max(worst, std::abs(dense(i, j)));
  return worst;
}

IsotypicBlockOperator IsotypicBlockOperator::from_dense(const IsotypicBlockOperator& layout, const MatrixXcd& dense,
                                                        bool require_blocks) {
  const double off = off_block_magnitude(layout, dense);
  if (off > kOffBlockTolerance) {
    if (require_blocks) {
      std::ostringstream os;
      os << "matrix does not respect the isotypic blocks (off-block entry " << off << ")";
      throw std::invalid_argument(os.str());
    }
    IsotypicBlockOperator out = trivial_model(dense, layout.metadata().count("kind") ? layout.metadata().at("kind") : "");
    out.metadata_ = layout.metadata();
    out.metadata_["equivariant"] = "false";
    out.graded_ = layout.graded();
    return out;
  }
  IsotypicBlockOperator out(layout.group(), layout.domain_labels(), layout.codomain_labels());
  for (const auto& [key, block] : layout.blocks()) {
    const int r = start_of(layout.codomain_labels(), key.second);
    const int c = start_of(layout.domain_labels(), key.first);
    out.blocks_[key] = dense.block(r, c, block.rows(), block.cols());
  }
  out.graded_ = layout.graded();
  out.metadata_ = layout.metadata();
  return out;
}

IsotypicBlockOperator direct_sum(const std::vector<IsotypicBlockOperator>& parts) {
  if (parts.empty()) throw std::invalid_argument("direct sum of no models");
  std::vector<LabelDim> domain;
  std::vector<LabelDim> codomain;
  for (const auto& p : parts) {
    if (!(p.group() == parts.front().group())) throw std::invalid_argument("direct sum over different groups");
    domain.insert(domain.end(), p.domain_labels().begin(), p.domain_labels().end());
    codomain.insert(codomain.end(), p.codomain_labels().begin(), p.codomain_labels().end());
  }
  IsotypicBlockOperator out(parts.front().group(), domain, codomain);
  bool graded = true;
  for (const auto& p : parts) {
    for (const auto& [key, block] : p.blocks()) out.set_block(key.first, key.second, block);
    graded = graded && p.graded();
  }
  out.set_graded(graded);
  out.metadata() = parts.front().metadata();
  return out;
}

IsotypicBlockOperator trivial_model(const MatrixXcd& matrix, const std::string& kind) {
  IsotypicBlockOperator out(GroupDesc::trivial(), {{IrrepLabel{0}, static_cast<int>(matrix.cols())}},
                            {{IrrepLabel{0}, static_cast<int>(matrix.rows())}});
  out.set_block(IrrepLabel{0}, IrrepLabel{0}, matrix);
  if (!kind.empty()) out.metadata()["kind"] = kind;
  return out;
}

IsotypicBlockOperator build_shift_model(int n, bool z2_labels) {
  if (n < 4 || n % 2 != 0) throw std::invalid_argument("shift truncation needs an even N >= 4");
  MatrixXcd s = MatrixXcd::Zero(n - 2, n);
  for (int i = 0; i < n - 2; ++i) s(i, i + 2) = 1.0;

  if (!z2_labels) {
    IsotypicBlockOperator out = trivial_model(s, "shift");
    out.metadata()["N"] = std::to_string(n);
    return out;
  }

  // Columns: symmetric pair combinations first (label 0), then antisymmetric (label 1).
  auto pair_basis = [](int dim) {
    MatrixXcd u = MatrixXcd::Zero(dim, dim);
    const double c = 1.0 / std::numbers::sqrt2;
    const int half = dim / 2;
    for (int k = 0; k < half; ++k) {
      u(2 * k, k) = c;
      u(2 * k + 1, k) = c;
      u(2 * k, half + k) = c;
      u(2 * k + 1, half + k) = -c;
    }
    return u;
  };
  const MatrixXcd rotated = pair_basis(n - 2).adjoint() * s * pair_basis(n);
  IsotypicBlockOperator layout(GroupDesc::cyclic(2), {{IrrepLabel{0}, n / 2}, {IrrepLabel{1}, n / 2}},
                               {{IrrepLabel{0}, n / 2 - 1}, {IrrepLabel{1}, n / 2 - 1}});
  layout.set_block(IrrepLabel{0}, IrrepLabel{0}, MatrixXcd::Zero(n / 2 - 1, n / 2));
  layout.set_block(IrrepLabel{1}, IrrepLabel{1}, MatrixXcd::Zero(n / 2 - 1, n / 2));
  IsotypicBlockOperator out = IsotypicBlockOperator::from_dense(layout, rotated, true);
  out.metadata()["kind"] = "shift";
  out.metadata()["N"] = std::to_string(n);
  out.metadata()["labels"] = "pair swap";
  return out;
}

int symbol_winding_number(const FourierCoefficients& symbol, double tolerance) {
  if (symbol.empty()) throw std::invalid_argument("empty symbol");
  int degree = 1;
  for (const auto& [k, a] : symbol) degree = std::max(degree, std::abs(k));
  const int samples = std::max(1024, 64 * degree);
  auto eval = [&symbol](double theta) {
    cdouble v = 0.0;
    for (const auto& [k, a] : symbol) v += a * std::polar(1.0, k * theta);
    return v;
  };
  double total_angle = 0.0;
  cdouble prev = eval(0.0);
  if (std::abs(prev) < tolerance) throw std::invalid_argument("symbol vanishes on the unit circle");
  for (int s = 1; s <= samples; ++s) {
    const cdouble cur = eval(2.0 * std::numbers::pi * s / samples);
    if (std::abs(cur) < tolerance) throw std::invalid_argument("symbol vanishes on the unit circle");
    total_angle += std::arg(cur / prev);
    prev = cur;
  }
  return static_cast<int>(std::lround(total_angle / (2.0 * std::numbers::pi)));
}

IsotypicBlockOperator build_toeplitz_model(const FourierCoefficients& symbol, int n) {
  if (n < 1) throw std::invalid_argument("Toeplitz truncation needs N >= 1");
  const int w = symbol_winding_number(symbol);
  const int rows = n + w;
  if (rows < 1) throw std::invalid_argument("truncation too small for the winding number of the symbol");
  MatrixXcd t = MatrixXcd::Zero(rows, n);
  for (int i = 0; i < rows; ++i)
    for (const auto& [k, a] : symbol) {
      const int j = i - k;
      if (j >= 0 && j < n) t(i, j) += a;
    }
  IsotypicBlockOperator out = trivial_model(t, "toeplitz");
  out.metadata()["N"] = std::to_string(n);
  out.metadata()["winding"] = std::to_string(w);
  return out;
}

IsotypicBlockOperator build_circle_model(const FourierCoefficients& potential, int cutoff) {
  int harmonic = 0;
  for (const auto& [k, a] : potential) harmonic = std::max(harmonic, std::abs(k));
  if (cutoff < 1 || cutoff < 2 * harmonic)
    throw std::invalid_argument("Fourier cutoff must be at least twice the highest harmonic of the potential");
  const int dim = 2 * cutoff + 1;
  MatrixXcd a = MatrixXcd::Zero(dim, dim);
  for (int k = -cutoff; k <= cutoff; ++k) {
    a(k + cutoff, k + cutoff) += static_cast<double>(k);
    for (const auto& [j, v] : potential) {
      const int row = k + j;
      if (row >= -cutoff && row <= cutoff) a(row + cutoff, k + cutoff) += v;
    }
  }
  IsotypicBlockOperator out = trivial_model(a, "circle_first_order");
  out.metadata()["K"] = std::to_string(cutoff);
  return out;
}

IsotypicBlockOperator build_derham_circle_model(int cutoff, bool deformed) {
  if (cutoff < 4) throw std::invalid_argument("de Rham model needs K >= 4");
  std::vector<LabelDim> labels;
  for (int k = -cutoff; k <= cutoff; ++k) labels.push_back({IrrepLabel{k}, 1});
  IsotypicBlockOperator out(GroupDesc::circle(), labels, labels);
  for (int k = -cutoff; k <= cutoff; ++k) {
    const cdouble entry = kI * static_cast<double>(k) + (deformed ? kI : cdouble(0.0));
    out.set_block(IrrepLabel{k}, IrrepLabel{k}, MatrixXcd::Constant(1, 1, entry));
  }
  out.set_graded(true);
  out.metadata()["kind"] = "derham_circle";
  out.metadata()["K"] = std::to_string(cutoff);
  out.metadata()["deformed"] = deformed ? "true" : "false";
  out.metadata()["window"] = std::to_string(-cutoff) + ":" + std::to_string(cutoff);
  return out;
}

MatrixXcd graded_dirac_matrix(const IsotypicBlockOperator& plus_part) {
  const MatrixXcd a = plus_part.dense();
  const Eigen::Index n = a.cols();
  const Eigen::Index m = a.rows();
  MatrixXcd d = MatrixXcd::Zero(n + m, n + m);
  d.bottomLeftCorner(m, n) = a;
  d.topRightCorner(n, m) = a.adjoint();
  return d;
}

IsotypicBlockOperator build_product_model(const IsotypicBlockOperator& base, int cutoff) {
  if (cutoff < 1) throw std::invalid_argument("product model needs K >= 1");
  const MatrixXcd b = base.dense();
  std::vector<LabelDim> domain;
  std::vector<LabelDim> codomain;
  for (int k = -cutoff; k <= cutoff; ++k) {
    domain.push_back({IrrepLabel{k}, static_cast<int>(b.cols())});
    codomain.push_back({IrrepLabel{k}, static_cast<int>(b.rows())});
  }
  IsotypicBlockOperator out(GroupDesc::circle(), domain, codomain);
  for (int k = -cutoff; k <= cutoff; ++k) out.set_block(IrrepLabel{k}, IrrepLabel{k}, b);
  out.metadata()["kind"] = "product";
  out.metadata()["base"] = base.metadata().count("kind") ? base.metadata().at("kind") : "matrix";
  out.metadata()["K"] = std::to_string(cutoff);
  out.metadata()["window"] = std::to_string(-cutoff) + ":" + std::to_string(cutoff);
  return out;
}

namespace {

IsotypicBlockOperator radial_model(int weight, const MatrixXcd& a) {
  IsotypicBlockOperator out(GroupDesc::circle(), {{IrrepLabel{weight}, static_cast<int>(a.cols())}},
                            {{IrrepLabel{weight}, static_cast<int>(a.rows())}});
  out.set_block(IrrepLabel{weight}, IrrepLabel{weight}, a);
  return out;
}

void plane_metadata(Metadata& meta, const PlaneParams& params) {
  meta["n_r"] = std::to_string(params.radial_points);
  meta["R"] = format_double(params.radius);
  meta["f"] = to_string(params.rescaling);
  meta["label_offset"] = "0";
  meta["weight_convention"] = "E+ mode exp(-i(m+1)theta), E- mode exp(-i m theta)";
}

}  // namespace

IsotypicBlockOperator build_plane_weight_model(int weight, const PlaneParams& params) {
  if (params.radial_points < 100) throw std::invalid_argument("plane model needs n_r >= 100");
  if (!(params.radius >= 6.0)) throw std::invalid_argument("plane model needs R >= 6");
  IsotypicBlockOperator out = radial_model(weight, fitted_radial_operator(plane_piece(params), weight));
  out.metadata()["kind"] = "plane_weight";
  out.metadata()["weight"] = std::to_string(weight);
  plane_metadata(out.metadata(), params);
  return out;
}

IsotypicBlockOperator build_plane_window_model(int lo, int hi, const PlaneParams& params) {
  if (lo > hi) throw std::invalid_argument("empty weight window");
  std::vector<IsotypicBlockOperator> parts;
  for (int m = lo; m <= hi; ++m) parts.push_back(build_plane_weight_model(m, params));
  IsotypicBlockOperator out = direct_sum(parts);
  out.metadata().erase("weight");
  out.metadata()["window"] = std::to_string(lo) + ":" + std::to_string(hi);
  return out;
}

GluedModels build_glued_plane_models(int weight, const GlueParams& params) {
  const GluedPieces pieces = glued_pieces(params);
  GluedModels out{radial_model(weight, fitted_radial_operator(pieces.inner, weight)),
                  radial_model(weight, fitted_radial_operator(pieces.outer, weight))};
  for (auto* model : {&out.inner, &out.outer}) {
    Metadata& meta = model->metadata();
    meta["kind"] = "plane_glued";
    meta["weight"] = std::to_string(weight);
    meta["r0"] = format_double(params.split_radius);
    meta["warp"] = to_string(params.warp);
    plane_metadata(meta, params.plane);
  }
  out.inner.metadata()["piece"] = "inner";
  out.outer.metadata()["piece"] = "outer";
  return out;
}

double largest_singular_value(const MatrixXcd& m) {
  if (m.size() == 0) return 0.0;
  Eigen::BDCSVD<MatrixXcd> svd(m);
  return svd.singularValues()(0);
}

IsotypicBlockOperator random_finite_rank_perturbation(const IsotypicBlockOperator& model, int rank,
                                                      double relative_norm, std::uint64_t seed, bool equivariant) {
  if (rank < 0) throw std::invalid_argument("perturbation rank must be nonnegative");
  if (relative_norm < 0) throw std::invalid_argument("perturbation norm must be nonnegative");
  std::mt19937_64 rng(seed);
  const MatrixXcd a = model.dense();
  const double top = relative_norm * largest_singular_value(a);
  MatrixXcd k = MatrixXcd::Zero(a.rows(), a.cols());
  if (rank == 0) return add_perturbation(model, k, equivariant);

  if (!equivariant) {
    if (rank > std::min(a.rows(), a.cols())) throw std::invalid_argument("perturbation rank exceeds matrix size");
    k = random_rank_matrix(rng, a.rows(), a.cols(), rank, top, true);
    return add_perturbation(model, k, false);
  }

  std::vector<IsotypicBlockOperator::BlockKey> keys;
  std::vector<int> capacity;
  for (const auto& [key, block] : model.blocks()) {
    const int c = static_cast<int>(std::min(block.rows(), block.cols()));
    if (c > 0) {
      keys.push_back(key);
      capacity.push_back(c);
    }
  }
  std::vector<int> units(keys.size(), 0);
  int left = rank;
  while (left > 0) {
    std::vector<std::size_t> open;
    for (std::size_t b = 0; b < keys.size(); ++b)
      if (units[b] < capacity[b]) open.push_back(b);
    if (open.empty()) throw std::invalid_argument("perturbation rank exceeds the block capacity");
    std::uniform_int_distribution<std::size_t> pick(0, open.size() - 1);
    ++units[open[pick(rng)]];
    --left;
  }
  bool top_placed = false;
  IsotypicBlockOperator out = model;
  for (std::size_t b = 0; b < keys.size(); ++b) {
    if (units[b] == 0) continue;
    const MatrixXcd& block = model.block(keys[b].first, keys[b].second);
    MatrixXcd kb = random_rank_matrix(rng, block.rows(), block.cols(), units[b], top, !top_placed);
    top_placed = true;
    out.set_block(keys[b].first, keys[b].second, block + kb);
  }
  out.metadata()["perturbation_rank"] = std::to_string(rank);
  return out;
}

IsotypicBlockOperator add_perturbation(const IsotypicBlockOperator& model, const MatrixXcd& perturbation,
                                       bool require_equivariant) {
  return IsotypicBlockOperator::from_dense(model, model.dense() + perturbation, require_equivariant);
}

IsotypicBlockOperator compose(const IsotypicBlockOperator& b, const IsotypicBlockOperator& a) {
  if (b.domain_dim() != a.codomain_dim()) throw std::invalid_argument("composition of incompatible sizes");
  return trivial_model(b.dense() * a.dense(), "composition");
}

std::string to_string(ModelKind kind) {
  switch (kind) {
    case ModelKind::shift:
      return "shift";
    case ModelKind::toeplitz:
      return "toeplitz";
    case ModelKind::circle_first_order:
      return "circle_first_order";
    case ModelKind::derham_circle:
      return "derham_circle";
    case ModelKind::product:
      return "product";
    case ModelKind::plane_weight:
      return "plane_weight";
    case ModelKind::plane_glued:
      return "plane_glued";
  }
  return "unknown";
}

ModelKind parse_model_kind(const std::string& text) {
  for (ModelKind k : {ModelKind::shift, ModelKind::toeplitz, ModelKind::circle_first_order, ModelKind::derham_circle,
                      ModelKind::product, ModelKind::plane_weight, ModelKind::plane_glued})
    if (to_string(k) == text) return k;
  throw std::invalid_argument("unknown model kind '" + text + "'");
}

IsotypicBlockOperator build_model(const ModelSpec& spec) {
  switch (spec.kind) {
    case ModelKind::shift:
      return build_shift_model(spec.truncation, spec.z2_labels);
    case ModelKind::toeplitz:
      return build_toeplitz_model(spec.symbol, spec.truncation);
    case ModelKind::circle_first_order:
      return build_circle_model(spec.potential, spec.fourier_cutoff);
    case ModelKind::derham_circle:
      return build_derham_circle_model(spec.fourier_cutoff, spec.deformed);
    case ModelKind::product:
      return build_product_model(build_shift_model(spec.truncation), spec.fourier_cutoff);
    case ModelKind::plane_weight:
      return build_plane_window_model(spec.window_lo, spec.window_hi, spec.plane);
    case ModelKind::plane_glued:
      throw std::invalid_argument("glued plane models come in pairs; use build_glued_plane_models");
  }
  throw std::invalid_argument("unknown model kind");
}

FourierCoefficients sine_potential(double amplitude) {
  // a sin t = a (e^{it} - e^{-it}) / (2i)
  return {{1, amplitude / (2.0 * kI)}, {-1, -amplitude / (2.0 * kI)}};
}

}  // namespace eqindex
