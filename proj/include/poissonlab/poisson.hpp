#pragma once

// Poisson extension w = P[F] of a boundary function and its derivatives.
//
// Two independent routes:
//   quadrature  Poisson integrals of F and F' against the kernel,
//   spectral    w = sum c_n r^|n| e^{in theta}, differentiated term by term.
// With Route::both the two are evaluated and compared.

#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "poissonlab/boundary.hpp"

namespace poissonlab {

/// P_r(x) = (1/2pi)(1 - r^2)/((1 - r)^2 + 4 r sin^2(x/2)).
double poisson_kernel(double r, double x);

enum class Route { quadrature, spectral, both };
enum class Quantity { w, w_r, w_theta, w_z, w_zbar, conj_w_zbar };

std::string to_string(Route r);
std::string to_string(Quantity q);

class RouteDisagreement : public std::runtime_error {
 public:
  RouteDisagreement(Quantity q, double r, double theta, cplx quadrature, cplx spectral,
                    double tolerance);
  Quantity quantity;
  double r, theta;
  cplx quadrature, spectral;
  double tolerance;
};

struct DerivativeBundle {
  cplx w, w_r, w_theta, w_z, w_zbar;
  double jacobian = 0.0;
  double lambda_big = 0.0;
  double lambda_small = 0.0;
  /// Largest |quadrature - spectral| seen, 0 if only one route ran.
  double route_residual = 0.0;
};

struct DilatationResult {
  double sup = 0.0;
  /// (1 + sup)/(1 - sup); infinity when sup >= 1.
  double K = 1.0;
  double arg_r = 0.0, arg_theta = 0.0;
  /// (r, theta) samples with w_z == 0, excluded from the ratio.
  std::vector<std::pair<double, double>> degenerate;
};

class HarmonicMap {
 public:
  HarmonicMap(BoundaryFunction F, QuadratureSpec spec, Route mode = Route::both);

  const BoundaryFunction& boundary() const { return F_; }
  const FourierSeries& spectral() const { return F_.spectrum(); }
  const QuadratureSpec& spec() const { return spec_; }
  Route mode() const { return mode_; }

  /// a_n = c_n (n >= 0) and b_n = conj(c_{-n}) (n >= 1) in w = h + conj(g).
  cplx analytic_coefficient(int n) const;
  cplx antianalytic_coefficient(int n) const;

  /// max(1e-8, 10 * tail_bound), applied relative to max(1, |value|).
  double tolerance() const;

  /// One quantity by one route (Route::both cross-checks).
  cplx value(Quantity q, double r, double theta, Route route) const;
  cplx value(Quantity q, double r, double theta) const { return value(q, r, theta, mode_); }

  cplx eval(double r, double theta) const { return value(Quantity::w, r, theta); }
  cplx d_theta(double r, double theta) const { return value(Quantity::w_theta, r, theta); }
  cplx d_r(double r, double theta) const { return value(Quantity::w_r, r, theta); }
  DerivativeBundle wirtinger(double r, double theta) const;

  /// Number of coefficients used at radius 1 - gap.
  int effective_degree(double gap) const;

  /// Spectral samples of q at theta_k = 2 pi k / m on the circle of radius
  /// r = 1 - gap (gap passed separately to keep r^n accurate near 1).
  std::vector<cplx> circle(Quantity q, double r, double gap, std::size_t m) const;

  /// Default sample count for circle(): enough to resolve the series at this radius.
  std::size_t circle_nodes(double gap) const;

 private:
  struct Polar {
    cplx w, w_theta, w_r;
  };
  Polar quadrature_polar(double r, double theta, bool need_r) const;
  cplx spectral_value(Quantity q, double r, double gap, double theta) const;
  cplx quadrature_value(Quantity q, double r, double theta) const;

  BoundaryFunction F_;
  QuadratureSpec spec_;
  Route mode_;
};

HarmonicMap extend(const BoundaryFunction& F, const QuadratureSpec& spec,
                   Route mode = Route::both);

/// sup of |w_zbar / w_z| over r_grid x theta_nodes equispaced angles.
DilatationResult dilatation_sup(const HarmonicMap& w, std::span<const double> r_grid,
                                std::size_t theta_nodes);

}  // namespace poissonlab
