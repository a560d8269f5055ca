#pragma once

// I(r), the constant C(p) in its weighted and unweighted forms, the Gamma
// bound, and the monotone function phi(r) behind them.

#include <optional>
#include <span>
#include <vector>

#include "poissonlab/kernelmath.hpp"

namespace poissonlab {

/// I(r) = 4 atanh(r) / (pi r); I(0) = 4/pi.
double I_of_r(double r);

/// (1/pi) int_0^{2pi} |sin t| / (1 + r^2 - 2 r cos t) dt by quadrature.
double I_integral(double r, const QuadratureSpec& spec);

/// Reference values of int_0^1 I(r)^p dr quoted for p = 1..5.
std::optional<double> c_table_value(double p);

/// 4^{p-1} pi^{-p} (2^p + (2 - 2^{-p}) Gamma(1 + p)).
double c_bound(double p);

struct ConstantsReport {
  double p = 1.0;
  /// int_0^1 I(r)^p r dr
  double c_weighted = 0.0;
  /// int_0^1 I(r)^p dr
  double c_unweighted = 0.0;
  double c_bound = 0.0;
  std::optional<double> table_value;
  bool bound_satisfied_weighted = false;
  bool table_matches_unweighted = false;
  bool table_matches_weighted = false;

  bool operator==(const ConstantsReport&) const = default;
};

/// Relative tolerance used for the table comparison flags.
inline constexpr double table_tolerance = 1e-6;

ConstantsReport c_of_p(double p, const QuadratureSpec& spec);

/// The weighted integral alone (used by the theorem checkers).
double c_weighted(double p, const QuadratureSpec& spec);

/// phi(r) = log(1/(1-r)) - 2 atanh(r)/r; phi(0) = -2.
double phi_of_r(double r);

struct MonotoneCheck {
  bool pass = false;
  /// Smallest (phi(r_{i+1}) - phi(r_i)) / (r_{i+1} - r_i).
  double min_slope = 0.0;
  double min_value = 0.0;
};

MonotoneCheck phi_monotone_check(std::span<const double> r_grid);

/// int_0^1 t^alpha log(1/t)^{p-1} dt by quadrature.
double log_moment(double alpha, double p, const QuadratureSpec& spec);

}  // namespace poissonlab
