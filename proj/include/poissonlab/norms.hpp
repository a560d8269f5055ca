#pragma once

// Integral means, Hardy-norm estimates and Bergman norms on the unit disk.
// Area measure is dA = dx dy / pi, so ||1|| = 1.

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "poissonlab/poisson.hpp"

namespace poissonlab {

enum class NormKind { integral_mean, hardy, bergman, esssup };

std::string to_string(NormKind k);

struct NormEstimate {
  double value = 0.0;
  NormKind kind = NormKind::integral_mean;
  double p = 1.0;
  std::vector<double> r_grid;
  /// M_p(r) along r_grid (hardy) or empty.
  std::vector<double> sequence;
  /// Integral means nondecreasing along r_grid.
  bool monotone_flag = true;
  /// Size of the last increment (hardy) or of the outermost radial panel (bergman).
  double residual = 0.0;
};

/// A function on the disk that can be sampled on circles.
struct DiskFunction {
  /// Samples at theta_k = 2 pi k / m on the circle of radius r = 1 - gap.
  std::function<std::vector<cplx>(double r, double gap, std::size_t m)> circle;
  /// Preferred sample count at radius 1 - gap.
  std::function<std::size_t(double gap)> nodes;
  /// True when |f|^p is smooth up to r = 1, so the radial rule may run to the boundary.
  bool regular_at_boundary = false;
  std::string label;
};

/// Wraps one derivative of a harmonic map (spectral route, FFT sampling).
DiskFunction disk_function(const HarmonicMap& w, Quantity q);

/// Wraps a pointwise function of z, regular up to the boundary.
DiskFunction disk_function(std::function<cplx(cplx)> f, const QuadratureSpec& spec,
                           std::string label = "f");

/// (mean |v|^p)^{1/p}, or max |v| for p = infinity.
double circle_mean(std::span<const cplx> samples, double p);

double integral_mean(const DiskFunction& f, double r, double p, const QuadratureSpec& spec);

/// {1 - 2^-k : k = 2..13}.
std::vector<double> default_hardy_grid();

/// Grid maximum of M_p(r, f) over r_grid: a lower estimate of the Hardy norm.
NormEstimate hardy_norm(const DiskFunction& f, double p, std::span<const double> r_grid,
                        const QuadratureSpec& spec);
std::vector<NormEstimate> hardy_norms(const DiskFunction& f, std::span<const double> ps,
                                      std::span<const double> r_grid, const QuadratureSpec& spec);

/// (int_D |f|^p dA)^{1/p} = (2 int_0^1 M_p(r)^p r dr)^{1/p}. For functions not
/// regular at the boundary the radial integral stops at r = 1 - boundary_gap,
/// which under-estimates the norm.
NormEstimate bergman_norm(const DiskFunction& f, double p, const QuadratureSpec& spec);
std::vector<NormEstimate> bergman_norms(const DiskFunction& f, std::span<const double> ps,
                                        const QuadratureSpec& spec);

}  // namespace poissonlab
