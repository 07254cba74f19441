#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <vector>

#include "eqindex/charring.hpp"
#include "eqindex/clifford.hpp"
#include "eqindex/types.hpp"

namespace eqindex {

using MultiIndex = std::vector<int>;
using CoefficientSampler = std::function<MatrixXcd(const VectorXd&)>;

/// Order-k differential operator sum_{|a| <= k} a_a(x) D^a on R^n with
/// D_j = (1/i) d/dx_j, acting from C^{N1} to C^{N2}.
class DiffOpCoefficients {
 public:
  DiffOpCoefficients(int order, int base_dim, int in_dim, int out_dim);

  int order() const { return order_; }
  int base_dim() const { return base_dim_; }
  int in_dim() const { return in_dim_; }
  int out_dim() const { return out_dim_; }
  const std::map<MultiIndex, CoefficientSampler>& terms() const { return terms_; }

  /// Adds (or accumulates onto) the coefficient of D^alpha.
  DiffOpCoefficients& add_term(MultiIndex alpha, CoefficientSampler coefficient);
  DiffOpCoefficients& add_constant_term(MultiIndex alpha, const MatrixXcd& coefficient);

  /// Multiplies every coefficient by `factor`.
  DiffOpCoefficients scaled(cdouble factor) const;

  /// Checks that some top-order coefficient is nonzero at one of `points`.
  bool has_top_order_term(const std::vector<VectorXd>& points) const;

 private:
  int order_;
  int base_dim_;
  int in_dim_;
  int out_dim_;
  std::map<MultiIndex, CoefficientSampler> terms_;
};

/// Orbit directions of a group action: x -> tangent vectors spanning the orbit.
struct OrbitDirections {
  std::function<std::vector<VectorXd>(const VectorXd&)> sampler;
};

/// Taming map for a linear circle action on R^n generated by `generator`:
/// v(x) = map(x) * generator * x.
struct TamingField {
  GroupDesc group = GroupDesc::circle();
  MatrixXd generator;
  std::function<double(const VectorXd&)> map;
  double compact_radius = 0.0;  // v(x) != 0 for |x| > compact_radius

  VectorXd operator()(const VectorXd& x) const { return map(x) * (generator * x); }
};

/// Rotation field of the plane, v(z) = i z, with constant taming map 1.
TamingField rotation_taming_field();

/// Max deviation of v(g x) - g v(x) over sampled points and rotation angles.
double taming_equivariance_defect(const TamingField& field, const std::vector<VectorXd>& points);

MatrixXcd leading_symbol(const DiffOpCoefficients& op, const VectorXd& x, const VectorXd& xi);

/// t^{-k} D(e^{it<xi, y - x>} e)|_{y=x} for each basis vector e, assembled as
/// a matrix. The exponential is differentiated exactly, which turns each
/// D^alpha into multiplication by (t xi)^alpha.
MatrixXcd scaled_oscillatory_response(const DiffOpCoefficients& op, const VectorXd& x, const VectorXd& xi,
                                      double t);

struct SymbolLimitResult {
  std::vector<double> deviations;  // one per t value
  double max_deviation = 0.0;
};

SymbolLimitResult symbol_limit_check(const DiffOpCoefficients& op, const VectorXd& x, const VectorXd& xi,
                                     const std::vector<double>& t_values);

inline constexpr double kEllipticityThreshold = 1e-8;

struct EllipticityResult {
  bool invertible = false;
  double min_singular_value = 0.0;
  VectorXd worst_point;
  VectorXd worst_covector;
};

/// Unit vectors spread over the sphere of `dim`, reproducible from `seed`.
std::vector<VectorXd> sphere_samples(int dim, int count, std::uint64_t seed);

/// Points in the box [-half_width, half_width]^dim, reproducible from `seed`.
std::vector<VectorXd> box_samples(int dim, int count, double half_width, std::uint64_t seed);

EllipticityResult ellipticity_check(const DiffOpCoefficients& op, const std::vector<VectorXd>& points,
                                    int sphere_count = 128, std::uint64_t seed = 1);

EllipticityResult transversal_ellipticity_check(const DiffOpCoefficients& op, const OrbitDirections& orbits,
                                                const std::vector<VectorXd>& points, int sphere_count = 128,
                                                std::uint64_t seed = 1);

/// Orthonormal basis (columns) of the covectors annihilating `directions`.
MatrixXd annihilator_basis(const std::vector<VectorXd>& directions, int dim);

struct DeformedSymbolResult {
  bool passed = false;
  double min_singular_value_off_locus = 0.0;
  std::vector<VectorXd> degenerate_points;  // (x, xi = 0) with v(x) = 0
  bool locus_inside_compact_set = true;
  int samples_checked = 0;
};

/// Checks that c(xi + v(x)) : E+ -> E- is invertible on sampled points of
/// T*_G M away from the zero set of v, and that the set where it fails is
/// contained in the compact set recorded by the taming field.
DeformedSymbolResult deformed_symbol_check(const CliffordAction<double>& action, const TamingField& field,
                                           const OrbitDirections& orbits, const std::vector<VectorXd>& points,
                                           int covector_count = 32, std::uint64_t seed = 1);

// Coefficient tables of the operators used throughout.

/// Delta = sum_j D_j^2 on R^n, plus an optional first-order term
/// lower_order * d/dx_1.
DiffOpCoefficients laplacian_coefficients(int n, cdouble lower_order_dx1 = 0.0);

/// -i d/dt + potential(t) on the circle (base dimension 1).
DiffOpCoefficients circle_first_order_coefficients(std::function<cdouble(double)> potential);

/// sum_j c(e_j) d/dx_j with the flat connection, plus the zero-order term
/// i c(f v) when a taming field is supplied.
DiffOpCoefficients dirac_coefficients(const CliffordAction<double>& action, const TamingField* field = nullptr,
                                      std::function<double(const VectorXd&)> rescaling = {});

/// -i d/dx on the 2-torus (coordinates x, y).
DiffOpCoefficients torus_dx_coefficients();

/// Circle acting on the y-coordinate of the torus.
OrbitDirections torus_y_orbits();

/// Rotation orbits of the plane; empty at the origin.
OrbitDirections rotation_orbits();

}  // namespace eqindex
