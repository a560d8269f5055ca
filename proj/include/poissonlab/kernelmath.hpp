#pragma once

// Special functions and quadrature engines shared by the rest of the library.
//
// Every integral in poissonlab goes through one of three rules:
//   - the equispaced trapezoid rule on [0, 2pi) for smooth periodic integrands,
//   - panel Gauss-Legendre on an interval, with a geometrically graded tail
//     toward a singular endpoint (log^p growth, t^alpha behaviour),
//   - symmetric-excision principal values, evaluated over a decreasing
//     sequence of excision radii and classified by a least-squares fit.

#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <numbers>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace poissonlab {

using cplx = std::complex<double>;

inline constexpr double pi = std::numbers::pi;
inline constexpr double two_pi = 2.0 * std::numbers::pi;

/// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A sampled integrand produced a non-finite value.
class EvaluationError : public std::runtime_error {
 public:
  EvaluationError(const std::string& what, std::size_t node, double at);
  std::size_t node() const noexcept { return node_; }
  double at() const noexcept { return at_; }

 private:
  std::size_t node_;
  double at_;
};

struct QuadratureSpec {
  /// Equispaced nodes on [0, 2pi) for periodic integrals and circle means.
  int periodic_nodes = 4096;
  /// Uniform Gauss-Legendre panels on the bulk [a, endpoint_split] of a radial integral.
  int radial_panels = 8;
  /// Gauss-Legendre nodes per panel.
  int radial_order = 20;
  /// Start of the graded tail toward r = 1.
  double endpoint_split = 1.0 - 1.0 / 64.0;
  /// Symmetric excision radii, strictly decreasing.
  std::vector<double> pv_epsilons = default_pv_epsilons();
  /// Minimum R^2 of the log fit for a divergent-log verdict.
  double divergence_fit_threshold = 0.99;
  /// |slope| below this in value-vs-ln(1/eps) means convergent.
  double convergence_slope = 1e-3;
  /// Ratio between consecutive widths of graded tail panels.
  double tail_ratio = 0.25;
  /// Smallest distance to a singular endpoint that graded panels resolve.
  double tail_floor = 1e-200;
  /// Above this radius the Poisson-integral route hands over to the spectral route.
  double quadrature_crossover = 0.99;
  /// Closest approach to the unit circle for disk integrals of functions
  /// whose spectrum is infinite.
  double boundary_gap = 1.0 / 4096.0;

  /// Throws DomainError when an invariant is violated.
  void validate() const;

  /// {2^-4, 2^-5, ..., 2^-20}.
  static std::vector<double> default_pv_epsilons();
  /// n geometrically spaced radii from hi down to lo.
  static std::vector<double> geometric_epsilons(double hi, double lo, int n);

  bool operator==(const QuadratureSpec&) const = default;
};

// ---------------------------------------------------------------------------
// Special functions

/// Inverse hyperbolic tangent via 0.5 * (log1p(x) - log1p(-x)).
double atanh(double x);

/// Gamma function for p > 0 (Lanczos, g = 7, nine terms).
double gamma(double p);

// ---------------------------------------------------------------------------
// Gauss-Legendre

struct GaussRule {
  std::vector<double> nodes;    // on [-1, 1], ascending
  std::vector<double> weights;
};

/// Cached rule; order in [1, 128].
const GaussRule& gauss_legendre(int order);

/// Composite Gauss-Legendre over consecutive breakpoints (must be ascending).
cplx integrate_panels(const std::function<cplx(double)>& f, std::span<const double> breaks,
                      int order);

/// Breakpoints from `from` toward `to` (either direction), with widths growing
/// geometrically by 1/ratio starting at `first`.
std::vector<double> graded_breaks(double from, double to, double first, double ratio);

// ---------------------------------------------------------------------------
// Periodic trapezoid rule

namespace detail {
[[noreturn]] void throw_non_finite(std::size_t node, double t);
inline bool finite_value(double v) { return std::isfinite(v); }
inline bool finite_value(const cplx& v) { return std::isfinite(v.real()) && std::isfinite(v.imag()); }
}  // namespace detail

/// Trapezoid rule on spec.periodic_nodes equispaced nodes of [0, 2pi).
template <class F>
auto integrate_periodic(F&& f, const QuadratureSpec& spec) -> decltype(f(0.0)) {
  using T = decltype(f(0.0));
  const std::size_t n = static_cast<std::size_t>(spec.periodic_nodes);
  const double h = two_pi / static_cast<double>(n);
  T sum{};
  for (std::size_t k = 0; k < n; ++k) {
    const double t = h * static_cast<double>(k);
    const T v = f(t);
    if (!detail::finite_value(v)) detail::throw_non_finite(k, t);
    sum += v;
  }
  return sum * h;
}

// ---------------------------------------------------------------------------
// Radial rule

/// A quadrature node on [a, b] that also carries gap = b - r computed without
/// cancellation, so integrands can evaluate log(1/(1-r)) for r within 1e-300 of 1.
struct RadialNode {
  double r;
  double gap;
  double weight;
};

/// Nodes for the radial rule on [a, b]. When b == 1 the part beyond
/// endpoint_split is covered by panels graded toward 1 down to gap_floor;
/// otherwise panels are uniform.
std::vector<RadialNode> radial_nodes(double a, double b, const QuadratureSpec& spec,
                                     double gap_floor);
std::vector<RadialNode> radial_nodes(double a, double b, const QuadratureSpec& spec);

/// Uniform composite Gauss-Legendre on [a, b] (no grading).
std::vector<RadialNode> uniform_nodes(double a, double b, int panels, int order);

double integrate_radial(const std::function<double(double)>& f, double a, double b,
                        const QuadratureSpec& spec);
double integrate_radial(const std::function<double(const RadialNode&)>& f, double a,
                        double b, const QuadratureSpec& spec);

// ---------------------------------------------------------------------------
// Principal values

enum class PvVerdict { convergent, divergent_log, inconclusive };

std::string to_string(PvVerdict v);
PvVerdict pv_verdict_from_string(const std::string& s);

struct PvSample {
  double epsilon;
  cplx value;

  bool operator==(const PvSample&) const = default;
};

struct PvResult {
  /// Ordered by decreasing epsilon.
  std::vector<PvSample> values;
  PvVerdict verdict = PvVerdict::inconclusive;
  /// Extrapolated eps -> 0 value; meaningful for convergent verdicts.
  cplx limit{};
  /// |b| in value ~ a + b ln(1/eps) + O(eps); reported for divergent-log only.
  double slope = 0.0;
  cplx slope_coefficient{};
  /// R^2 of the fit.
  double fit_quality = 0.0;

  bool operator==(const PvResult&) const = default;
};

/// Fits value(eps) = a + b ln(1/eps) + c eps + d eps^2 + e eps^3 and classifies.
/// values must be ordered by decreasing epsilon.
PvResult classify_pv(std::vector<PvSample> values, const QuadratureSpec& spec);

/// Principal value of f over [a, b] minus (t0 - eps, t0 + eps), for each eps in
/// spec.pv_epsilons. t0 may equal a or b (one-sided excision). Extra
/// breakpoints mark points where f is not smooth.
PvResult integrate_pv(const std::function<cplx(double)>& f, double a, double b, double t0,
                      const QuadratureSpec& spec, std::span<const double> breakpoints = {});

/// Truncated integral for one excision radius.
cplx truncated_integral(const std::function<cplx(double)>& f, double a, double b, double t0,
                        double eps, int order, double ratio,
                        std::span<const double> breakpoints = {});

// ---------------------------------------------------------------------------
// Misc helpers

/// Smallest power of two >= n.
std::size_t next_pow2(std::size_t n);

/// Angle reduced to [0, 2pi).
double wrap_angle(double t);

}  // namespace poissonlab
