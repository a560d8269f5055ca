#pragma once

// Principal-value integrals on the circle: the Hilbert transform of F', the
// Cauchy singular integral, the V / V* functionals and the identity tying them
// together, and boundary moduli of the extension of a phase map e^{i phi}.
//
// Every principal value uses symmetric excision over spec.pv_epsilons; terms of
// one identity share the same epsilons.

#include <functional>
#include <span>
#include <string>

#include "poissonlab/boundary.hpp"

namespace poissonlab {

/// -(1/pi) lim int_eps^pi (F'(theta + t) - F'(theta - t)) / (2 tan(t/2)) dt.
PvResult hilbert_transform(const BoundaryFunction& F, double theta, const QuadratureSpec& spec);

struct SakanSubintegrals {
  /// (2/pi^2) int_0^pi sin^2(t/2) cos(t/pi) / tan(t/2) dt
  double first = 0.0;
  /// (1/pi^2) int_0^pi sin t cos(t/pi) / tan(t/2) dt
  double second = 0.0;
  /// (1/pi) int_0^pi sin(t/pi) / tan(t/2) dt
  double third = 0.0;
};

SakanSubintegrals sakan_subintegrals(const QuadratureSpec& spec);

/// p.v. (1/2 pi i) int_T phi(u) / (u - zeta) du at zeta = e^{ix}; phi is given
/// as a function of t, phi(e^{it}). Breakpoints are t values where phi is not smooth.
PvResult cauchy_singular(const std::function<cplx(double)>& phi, double x,
                         const QuadratureSpec& spec, std::span<const double> breakpoints = {});

struct VFunctionals {
  PvResult V;
  PvResult V_star;
};

/// V[F](zeta) and V*[F](zeta) at zeta = e^{ix}.
VFunctionals v_functionals(const BoundaryFunction& F, double x, const QuadratureSpec& spec);

struct TheoremAResult {
  /// False when one of the principal values diverges.
  bool defined = false;
  /// |2 C_T[F'](zeta) - conj(zeta) F(zeta) (V + i V*)| in the eps -> 0 limit.
  double residual = 0.0;
  /// The difference as a function of eps, classified like any principal value.
  PvResult difference;
  PvResult cauchy;
  VFunctionals v;
  std::string note;
};

TheoremAResult theorem_a_residual(const BoundaryFunction& F, double x,
                                  const QuadratureSpec& spec);

struct SingularProfile {
  double theta = 0.0;
  PvResult h_value;
  double a_value = 0.0;
  double b_value = 0.0;
  double wz_mod = 0.0;
  double wzbar_mod = 0.0;
  double phi_prime = 0.0;
  /// wzbar_mod / wz_mod.
  double ratio = 0.0;
  /// B's truncated values did not settle.
  bool b_flagged = false;
};

/// A(theta), B(theta) and the boundary moduli of w_z, w_zbar for F = e^{i phi}.
/// The Hilbert transform is filled in only when with_hilbert is set.
SingularProfile boundary_moduli(const BoundaryFunction& F, double theta,
                                const QuadratureSpec& spec, bool with_hilbert = true);

/// Largest boundary ratio |w_zbar| / |w_z| on theta = s +- 10^-k approaching each
/// singular point s of the phase (k up to 300). Zero for phases without singular points.
double boundary_ratio_sup(const BoundaryFunction& F, const QuadratureSpec& spec);

}  // namespace poissonlab
