#pragma once

#include <functional>
#include <string>

#include "eqindex/types.hpp"

namespace eqindex {

/// Rescaling f in D_{fv} = D + i c(f v) on the plane.
enum class Rescaling { one, quad };  // f = 1, f = 1 + |x|^2

std::string to_string(Rescaling f);
Rescaling parse_rescaling(const std::string& text);
double rescaling_value(Rescaling f, double r);
/// F(r) = int_0^r f(s) s ds.
double rescaling_potential(Rescaling f, double r);

struct PlaneParams {
  int radial_points = 400;  // n_r
  double radius = 8.0;      // R
  Rescaling rescaling = Rescaling::one;
};

/// Conformal stretch of the collar |r - r0| < delta: phi(d) -> infinity as
/// d = |r - r0| -> 0. `reciprocal` uses phi = delta/d; `smooth` uses
/// phi = delta/d + d/delta - 1, which meets 1 with matching slope at d = delta.
enum class Warp { reciprocal, smooth };

std::string to_string(Warp w);
Warp parse_warp(const std::string& text);

struct GlueParams {
  PlaneParams plane;
  double split_radius = 3.0;      // r0
  double collar_fraction = 0.1;   // delta = collar_fraction * r0
  Warp warp = Warp::reciprocal;
  double max_cell_peclet = 2.0;   // collar truncation: f r phi h / 2 at the cut
};

class CollarWarp {
 public:
  CollarWarp(Warp kind, double delta);

  double delta() const { return delta_; }
  /// phi at distance d from the split circle (1 outside the collar).
  double phi(double d) const;
  /// Stretched length int_d^delta phi.
  double stretch(double d) const;
  /// Distance d with stretch(d) = sigma (sigma >= 0).
  double distance_for_stretch(double sigma) const;
  /// Distance at which phi reaches `value` (> 1).
  double distance_for_phi(double value) const;

 private:
  Warp kind_;
  double delta_;
};

/// A radial interval in a stretched coordinate s with ds = phi dr. The
/// operator on it, written for psi = sqrt(r) a in L^2(ds), is
///   P = -i (d/ds + g(s)),  g = (m + 1/2) r'(s)/r - f phi r r'(s),
/// whose formal cokernel in the weight-m sector is E(s) = exp(Phi(s)) with
/// Phi(s) = (m + 1/2) ln r(s) - G(s), G' = f phi r dr/ds.
struct RadialPiece {
  enum class LeftEnd { origin, open };

  double s_begin = 0.0;
  double s_end = 0.0;
  int cells = 0;
  LeftEnd left = LeftEnd::origin;
  std::function<double(double)> radius_of;  // r(s)
  std::function<double(double)> weight_density;  // f phi r at s, i.e. dG/ds
};

/// Unsplit piece [0, R] with the identity coordinate.
RadialPiece plane_piece(const PlaneParams& params);

struct GluedPieces {
  RadialPiece inner;
  RadialPiece outer;
};

GluedPieces glued_pieces(const GlueParams& params);

/// Exponentially fitted first-order scheme for P on a piece. Row j is the
/// cell [s_j, s_{j+1}]:
///   -i (E_{j+1} psi_{j+1} - E_j psi_j) / (h E_{j+1/2}),
/// which annihilates the sampled formal kernel 1/E exactly and whose adjoint
/// annihilates E sampled at cell midpoints. psi vanishes at the right end;
/// the origin node is excluded and the first row is kept only when the
/// homogeneous solution r^{-(m+1/2)} e^{F} is not square integrable there,
/// i.e. for m >= 0. An open left end keeps psi_0 as an unknown.
MatrixXcd fitted_radial_operator(const RadialPiece& piece, int weight);

}  // namespace eqindex
