#include "eqindex/radial.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

namespace eqindex {

std::string to_string(Rescaling f) { return f == Rescaling::one ? "one" : "quad"; }

Rescaling parse_rescaling(const std::string& text) {
  if (text == "one" || text == "1") return Rescaling::one;
  if (text == "quad" || text == "1+r^2") return Rescaling::quad;
  throw std::invalid_argument("unknown rescaling '" + text + "' (expected one or quad)");
}

double rescaling_value(Rescaling f, double r) { return f == Rescaling::one ? 1.0 : 1.0 + r * r; }

double rescaling_potential(Rescaling f, double r) {
  const double r2 = r * r;
  return f == Rescaling::one ? 0.5 * r2 : 0.5 * r2 + 0.25 * r2 * r2;
}

std::string to_string(Warp w) { return w == Warp::reciprocal ? "reciprocal" : "smooth"; }

Warp parse_warp(const std::string& text) {
  if (text == "reciprocal") return Warp::reciprocal;
  if (text == "smooth") return Warp::smooth;
  throw std::invalid_argument("unknown warp '" + text + "' (expected reciprocal or smooth)");
}

CollarWarp::CollarWarp(Warp kind, double delta) : kind_(kind), delta_(delta) {
  if (!(delta > 0)) throw std::invalid_argument("collar width must be positive");
}

double CollarWarp::phi(double d) const {
  if (d >= delta_) return 1.0;
  if (kind_ == Warp::reciprocal) return delta_ / d;
  return delta_ / d + d / delta_ - 1.0;
}

double CollarWarp::stretch(double d) const {
  if (d >= delta_) return 0.0;
  const double log_part = delta_ * std::log(delta_ / d);
  if (kind_ == Warp::reciprocal) return log_part;
  return log_part - 0.5 * delta_ - d * d / (2.0 * delta_) + d;
}

namespace {

// Bisection for a decreasing function g on (0, delta] with g(d) = target.
template <class F>
double invert_decreasing(F g, double target, double delta) {
  double lo = 0.0;
  double hi = delta;
  for (int it = 0; it < 200 && hi - lo > 1e-17 * delta; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= 0) break;
    if (g(mid) > target)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

double CollarWarp::distance_for_stretch(double sigma) const {
  if (sigma <= 0) return delta_;
  if (kind_ == Warp::reciprocal) return delta_ * std::exp(-sigma / delta_);
  return invert_decreasing([this](double d) { return stretch(d); }, sigma, delta_);
}

double CollarWarp::distance_for_phi(double value) const {
  if (value <= 1.0) return delta_;
  if (kind_ == Warp::reciprocal) return delta_ / value;
  return invert_decreasing([this](double d) { return phi(d); }, value, delta_);
}

RadialPiece plane_piece(const PlaneParams& params) {
  if (params.radial_points < 2) throw std::invalid_argument("radial grid needs at least two cells");
  if (!(params.radius > 0)) throw std::invalid_argument("radius must be positive");
  RadialPiece piece;
  piece.s_begin = 0.0;
  piece.s_end = params.radius;
  piece.cells = params.radial_points;
  piece.left = RadialPiece::LeftEnd::origin;
  piece.radius_of = [](double s) { return s; };
  const Rescaling f = params.rescaling;
  piece.weight_density = [f](double s) { return rescaling_value(f, s) * s; };
  return piece;
}

GluedPieces glued_pieces(const GlueParams& params) {
  const double R = params.plane.radius;
  const double r0 = params.split_radius;
  if (!(r0 > 0) || !(r0 < R)) throw std::invalid_argument("split radius must lie strictly inside (0, R)");
  if (!(params.collar_fraction > 0) || !(params.collar_fraction < 1))
    throw std::invalid_argument("collar fraction must lie in (0, 1)");
  const double delta = params.collar_fraction * r0;
  if (r0 + delta >= R) throw std::invalid_argument("collar does not fit inside the radius");
  if (params.plane.radial_points < 2) throw std::invalid_argument("radial grid needs at least two cells");

  const double h = R / params.plane.radial_points;
  const CollarWarp warp(params.warp, delta);
  const Rescaling f = params.plane.rescaling;
  const double phi_cut = std::max(4.0, 2.0 * params.max_cell_peclet / (rescaling_value(f, r0) * r0 * h));
  const double depth = warp.stretch(warp.distance_for_phi(phi_cut));

  GluedPieces out;

  RadialPiece& in = out.inner;
  in.left = RadialPiece::LeftEnd::origin;
  in.s_begin = 0.0;
  in.s_end = (r0 - delta) + depth;
  in.cells = std::max(2, static_cast<int>(std::lround(in.s_end / h)));
  in.radius_of = [warp, r0, delta](double s) {
    return s <= r0 - delta ? s : r0 - warp.distance_for_stretch(s - (r0 - delta));
  };
  in.weight_density = [warp, r0, f, radius = in.radius_of](double s) {
    const double r = radius(s);
    return rescaling_value(f, r) * warp.phi(r0 - r) * r;
  };

  RadialPiece& outer = out.outer;
  outer.left = RadialPiece::LeftEnd::open;
  outer.s_begin = (r0 + delta) - depth;
  outer.s_end = R;
  outer.cells = std::max(2, static_cast<int>(std::lround((R - outer.s_begin) / h)));
  outer.radius_of = [warp, r0, delta](double s) {
    return s >= r0 + delta ? s : r0 + warp.distance_for_stretch((r0 + delta) - s);
  };
  outer.weight_density = [warp, r0, f, radius = outer.radius_of](double s) {
    const double r = radius(s);
    return rescaling_value(f, r) * warp.phi(r - r0) * r;
  };
  return out;
}

namespace {

constexpr std::array<double, 5> kGaussNodes{0.0, -0.5384693101056831, 0.5384693101056831, -0.9061798459085390,
                                            0.9061798459085390};
constexpr std::array<double, 5> kGaussWeights{0.5688888888888889, 0.4786286704993665, 0.4786286704993665,
                                              0.2369268850561891, 0.2369268850561891};

double integrate(const std::function<double(double)>& g, double a, double b) {
  const double c = 0.5 * (a + b);
  const double w = 0.5 * (b - a);
  double sum = 0.0;
  for (std::size_t k = 0; k < kGaussNodes.size(); ++k) sum += kGaussWeights[k] * g(c + w * kGaussNodes[k]);
  return w * sum;
}

}  // namespace

MatrixXcd fitted_radial_operator(const RadialPiece& piece, int weight) {
  const int n = piece.cells;
  if (n < 2) throw std::invalid_argument("radial piece needs at least two cells");
  const double h = (piece.s_end - piece.s_begin) / n;
  const double mu = weight + 0.5;
  const bool origin = piece.left == RadialPiece::LeftEnd::origin;

  const int first_unknown = origin ? 1 : 0;
  const int cols = n - first_unknown;  // nodes first_unknown .. n-1
  const int first_row = (origin && weight < 0) ? 1 : 0;
  const int rows = n - first_row;

  MatrixXcd a = MatrixXcd::Zero(rows, cols);
  for (int j = first_row; j < n; ++j) {
    const double s0 = piece.s_begin + j * h;
    const double s1 = s0 + h;
    const double sm = s0 + 0.5 * h;
    const double rm = piece.radius_of(sm);
    const int row = j - first_row;
    if (j + 1 <= n - 1) {
      // Phi(s_{j+1}) - Phi(s_{j+1/2})
      const double d = mu * std::log(piece.radius_of(s1) / rm) - integrate(piece.weight_density, sm, s1);
      a(row, j + 1 - first_unknown) = -kI * std::exp(d) / h;
    }
    if (j >= first_unknown) {
      // Phi(s_j) - Phi(s_{j+1/2})
      const double d = mu * std::log(piece.radius_of(s0) / rm) + integrate(piece.weight_density, s0, sm);
      a(row, j - first_unknown) = kI * std::exp(d) / h;
    }
  }
  return a;
}

}  // namespace eqindex
