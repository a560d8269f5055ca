#include "poissonlab/poisson.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "poissonlab/fft.hpp"

namespace poissonlab {

double poisson_kernel(double r, double x) {
  if (!(r >= 0.0 && r < 1.0)) throw DomainError("poisson_kernel needs 0 <= r < 1");
  const double s = std::sin(0.5 * x);
  const double d = (1.0 - r) * (1.0 - r) + 4.0 * r * s * s;
  return (1.0 - r) * (1.0 + r) / (two_pi * d);
}

std::string to_string(Route r) {
  switch (r) {
    case Route::quadrature: return "quadrature";
    case Route::spectral: return "spectral";
    case Route::both: return "both";
  }
  return "both";
}

std::string to_string(Quantity q) {
  switch (q) {
    case Quantity::w: return "w";
    case Quantity::w_r: return "w_r";
    case Quantity::w_theta: return "w_theta";
    case Quantity::w_z: return "w_z";
    case Quantity::w_zbar: return "w_zbar";
    case Quantity::conj_w_zbar: return "conj_w_zbar";
  }
  return "w";
}

namespace {
std::string disagreement_message(Quantity q, double r, double theta, cplx a, cplx b, double tol) {
  std::ostringstream os;
  os.precision(17);
  os << "routes disagree for " << to_string(q) << " at r=" << r << " theta=" << theta
     << ": quadrature=" << a << " spectral=" << b << " |diff|=" << std::abs(a - b)
     << " tolerance=" << tol;
  return os.str();
}
}  // namespace

RouteDisagreement::RouteDisagreement(Quantity q, double r_, double theta_, cplx quad, cplx spec,
                                     double tol)
    : std::runtime_error(disagreement_message(q, r_, theta_, quad, spec, tol)),
      quantity(q), r(r_), theta(theta_), quadrature(quad), spectral(spec), tolerance(tol) {}

// ---------------------------------------------------------------------------

HarmonicMap::HarmonicMap(BoundaryFunction F, QuadratureSpec spec, Route mode)
    : F_(std::move(F)), spec_(std::move(spec)), mode_(mode) {
  spec_.validate();
}

HarmonicMap extend(const BoundaryFunction& F, const QuadratureSpec& spec, Route mode) {
  HarmonicMap w(F, spec, mode);
  w.spectral();  // build the series eagerly so later evaluation is read-only
  return w;
}

cplx HarmonicMap::analytic_coefficient(int n) const {
  if (n < 0) throw DomainError("analytic coefficients are indexed by n >= 0");
  return spectral()(n);
}

cplx HarmonicMap::antianalytic_coefficient(int n) const {
  if (n < 1) throw DomainError("anti-analytic coefficients are indexed by n >= 1");
  return std::conj(spectral()(-n));
}

double HarmonicMap::tolerance() const { return std::max(1e-8, 10.0 * spectral().tail_bound); }

int HarmonicMap::effective_degree(double gap) const {
  const int N = spectral().degree;
  if (gap >= 1.0) return std::min(N, 1);
  const double neg_log_r = -std::log1p(-gap);
  const double want = std::ceil(50.0 / neg_log_r);
  return std::max(std::min(N, 1), static_cast<int>(std::min<double>(N, want)));
}

std::size_t HarmonicMap::circle_nodes(double gap) const {
  const auto n = static_cast<std::size_t>(effective_degree(gap));
  return next_pow2(std::max<std::size_t>(static_cast<std::size_t>(spec_.periodic_nodes), 2 * n + 2));
}

namespace {

// r^k for k >= 0 given log r; r = 0 handled so that 0^0 = 1.
inline double rpow(int k, double log_r, bool zero) {
  if (k == 0) return 1.0;
  if (zero) return 0.0;
  return std::exp(k * log_r);
}

// Coefficient and frequency of the n-th term of q; frequency is returned via freq.
// Returns false when the term is absent.
inline bool term(Quantity q, const FourierSeries& s, int n, double log_r, bool zero, cplx& coef,
                 int& freq) {
  const int a = std::abs(n);
  switch (q) {
    case Quantity::w:
      coef = s(n) * rpow(a, log_r, zero);
      freq = n;
      return true;
    case Quantity::w_theta:
      if (n == 0) return false;
      coef = cplx(0.0, n) * s(n) * rpow(a, log_r, zero);
      freq = n;
      return true;
    case Quantity::w_r:
      if (n == 0) return false;
      coef = static_cast<double>(a) * s(n) * rpow(a - 1, log_r, zero);
      freq = n;
      return true;
    case Quantity::w_z:
      if (n < 1) return false;
      coef = static_cast<double>(n) * s(n) * rpow(n - 1, log_r, zero);
      freq = n - 1;
      return true;
    case Quantity::w_zbar:
      if (n < 1) return false;
      coef = static_cast<double>(n) * s(-n) * rpow(n - 1, log_r, zero);
      freq = -(n - 1);
      return true;
    case Quantity::conj_w_zbar:
      if (n < 1) return false;
      coef = static_cast<double>(n) * std::conj(s(-n)) * rpow(n - 1, log_r, zero);
      freq = n - 1;
      return true;
  }
  return false;
}

}  // namespace

cplx HarmonicMap::spectral_value(Quantity q, double r, double gap, double theta) const {
  const FourierSeries& s = spectral();
  const int N = effective_degree(gap);
  const bool zero = r == 0.0;
  const double log_r = zero ? 0.0 : std::log1p(-gap);
  cplx sum{};
  for (int n = -N; n <= N; ++n) {
    cplx c;
    int f;
    if (!term(q, s, n, log_r, zero, c, f)) continue;
    if (c != cplx{}) sum += c * std::polar(1.0, f * theta);
  }
  return sum;
}

std::vector<cplx> HarmonicMap::circle(Quantity q, double r, double gap, std::size_t m) const {
  if (!(r >= 0.0 && r < 1.0)) throw DomainError("circle sampling needs 0 <= r < 1");
  if (m == 0) throw DomainError("circle sampling needs m >= 1");
  const FourierSeries& s = spectral();
  const int N = effective_degree(gap);
  const bool zero = r == 0.0;
  const double log_r = zero ? 0.0 : std::log1p(-gap);
  const long M = static_cast<long>(m);
  std::vector<cplx> bins(m);
  for (int n = -N; n <= N; ++n) {
    cplx c;
    int f;
    if (!term(q, s, n, log_r, zero, c, f)) continue;
    bins[static_cast<std::size_t>(((f % M) + M) % M)] += c;
  }
  return fft_backward(bins);
}

HarmonicMap::Polar HarmonicMap::quadrature_polar(double r, double theta, bool need_r) const {
  const double one_minus = 1.0 - r;
  const double one_plus = 1.0 + r;
  Polar out;
  auto kernel_terms = [&](double t, cplx& w, cplx& wt, cplx& wr) {
    const double x = t - theta;
    const double s = std::sin(0.5 * x);
    const double d = one_minus * one_minus + 4.0 * r * s * s;
    const double P = one_minus * one_plus / (two_pi * d);
    const cplx F = F_.eval(t), dF = F_.deriv(t);
    w = P * F;
    wt = P * dF;
    wr = need_r ? cplx(-std::sin(x) / (pi * d)) * dF : cplx{};
  };

  const auto& sing = F_.singular_points();
  if (sing.empty()) {
    const int n = spec_.periodic_nodes;
    const double h = two_pi / n;
    for (int k = 0; k < n; ++k) {
      cplx a, b, c;
      const double t = theta + h * k;
      kernel_terms(t, a, b, c);
      if (!detail::finite_value(a) || !detail::finite_value(b) || !detail::finite_value(c))
        detail::throw_non_finite(static_cast<std::size_t>(k), t);
      out.w += a;
      out.w_theta += b;
      out.w_r += c;
    }
    out.w *= h;
    out.w_theta *= h;
    out.w_r *= h;
    return out;
  }

  // Piecewise Gauss-Legendre on [theta - pi, theta + pi], split at the
  // singular points and graded toward theta where the kernel peaks.
  const double first = std::max(0.5 * one_minus, 1e-12);
  std::vector<double> br = graded_breaks(theta, theta + pi, first, spec_.tail_ratio);
  const auto left = graded_breaks(theta - pi, theta, first, spec_.tail_ratio);
  br.insert(br.end(), left.begin(), left.end());
  for (double s0 : sing)
    for (int k = -2; k <= 2; ++k) {
      const double t = s0 + two_pi * k;
      if (t > theta - pi && t < theta + pi) br.push_back(t);
    }
  std::sort(br.begin(), br.end());
  br.erase(std::unique(br.begin(), br.end()), br.end());

  const GaussRule& rule = gauss_legendre(spec_.radial_order);
  std::size_t node = 0;
  for (std::size_t i = 0; i + 1 < br.size(); ++i) {
    const double a = br[i], b = br[i + 1];
    if (!(b > a)) continue;
    const double half = 0.5 * (b - a), mid = 0.5 * (a + b);
    for (std::size_t k = 0; k < rule.nodes.size(); ++k, ++node) {
      cplx x, y, z;
      const double t = mid + half * rule.nodes[k];
      kernel_terms(t, x, y, z);
      if (!detail::finite_value(x) || !detail::finite_value(y) || !detail::finite_value(z))
        detail::throw_non_finite(node, t);
      const double wgt = half * rule.weights[k];
      out.w += wgt * x;
      out.w_theta += wgt * y;
      out.w_r += wgt * z;
    }
  }
  return out;
}

cplx HarmonicMap::quadrature_value(Quantity q, double r, double theta) const {
  const bool need_r = q != Quantity::w && q != Quantity::w_theta;
  const Polar p = quadrature_polar(r, theta, need_r);
  const cplx I(0.0, 1.0);
  switch (q) {
    case Quantity::w: return p.w;
    case Quantity::w_theta: return p.w_theta;
    case Quantity::w_r: return p.w_r;
    case Quantity::w_z: return 0.5 * std::polar(1.0, -theta) * (p.w_r - I / r * p.w_theta);
    case Quantity::w_zbar: return 0.5 * std::polar(1.0, theta) * (p.w_r + I / r * p.w_theta);
    case Quantity::conj_w_zbar:
      return std::conj(0.5 * std::polar(1.0, theta) * (p.w_r + I / r * p.w_theta));
  }
  return {};
}

cplx HarmonicMap::value(Quantity q, double r, double theta, Route route) const {
  if (!(r >= 0.0 && r < 1.0)) throw DomainError("evaluation needs 0 <= r < 1");
  if (q == Quantity::w_theta && r == 0.0) return {};
  const bool quad_ok = r <= spec_.quadrature_crossover && (r > 0.0 || q == Quantity::w);
  if (route == Route::spectral || !quad_ok) return spectral_value(q, r, 1.0 - r, theta);
  if (route == Route::quadrature) return quadrature_value(q, r, theta);
  const cplx a = quadrature_value(q, r, theta);
  const cplx b = spectral_value(q, r, 1.0 - r, theta);
  const double tol = tolerance() * std::max(1.0, std::abs(b));
  if (!(std::abs(a - b) <= tol)) throw RouteDisagreement(q, r, theta, a, b, tol);
  return a;
}

DerivativeBundle HarmonicMap::wirtinger(double r, double theta) const {
  if (!(r >= 0.0 && r < 1.0)) throw DomainError("evaluation needs 0 <= r < 1");
  DerivativeBundle d;
  const double gap = 1.0 - r;
  const bool quad_ok = r > 0.0 && r <= spec_.quadrature_crossover && mode_ != Route::spectral;
  auto spectral_all = [&](DerivativeBundle& b) {
    b.w = spectral_value(Quantity::w, r, gap, theta);
    b.w_r = spectral_value(Quantity::w_r, r, gap, theta);
    b.w_theta = r == 0.0 ? cplx{} : spectral_value(Quantity::w_theta, r, gap, theta);
    b.w_z = spectral_value(Quantity::w_z, r, gap, theta);
    b.w_zbar = spectral_value(Quantity::w_zbar, r, gap, theta);
  };
  if (!quad_ok) {
    spectral_all(d);
  } else {
    const Polar p = quadrature_polar(r, theta, true);
    const cplx I(0.0, 1.0);
    d.w = p.w;
    d.w_r = p.w_r;
    d.w_theta = p.w_theta;
    d.w_z = 0.5 * std::polar(1.0, -theta) * (p.w_r - I / r * p.w_theta);
    d.w_zbar = 0.5 * std::polar(1.0, theta) * (p.w_r + I / r * p.w_theta);
    if (mode_ == Route::both) {
      DerivativeBundle s;
      spectral_all(s);
      const std::pair<Quantity, std::pair<cplx, cplx>> pairs[] = {
          {Quantity::w, {d.w, s.w}},
          {Quantity::w_r, {d.w_r, s.w_r}},
          {Quantity::w_theta, {d.w_theta, s.w_theta}},
          {Quantity::w_z, {d.w_z, s.w_z}},
          {Quantity::w_zbar, {d.w_zbar, s.w_zbar}}};
      for (const auto& [q, v] : pairs) {
        const double diff = std::abs(v.first - v.second);
        const double tol = tolerance() * std::max(1.0, std::abs(v.second));
        if (!(diff <= tol)) throw RouteDisagreement(q, r, theta, v.first, v.second, tol);
        d.route_residual = std::max(d.route_residual, diff);
      }
    }
  }
  const double a = std::abs(d.w_z), b = std::abs(d.w_zbar);
  d.jacobian = a * a - b * b;
  d.lambda_big = a + b;
  d.lambda_small = std::fabs(a - b);
  return d;
}

// ---------------------------------------------------------------------------

DilatationResult dilatation_sup(const HarmonicMap& w, std::span<const double> r_grid,
                                std::size_t theta_nodes) {
  if (r_grid.empty() || theta_nodes == 0) throw DomainError("dilatation_sup needs a nonempty grid");
  DilatationResult out;
  for (double r : r_grid) {
    const double gap = 1.0 - r;
    const std::size_t m = std::max(theta_nodes, w.circle_nodes(gap));
    const auto hz = w.circle(Quantity::w_z, r, gap, m);
    const auto gz = w.circle(Quantity::w_zbar, r, gap, m);
    double scale = 0.0;
    for (std::size_t k = 0; k < m; ++k) scale = std::max({scale, std::abs(hz[k]), std::abs(gz[k])});
    for (std::size_t k = 0; k < m; ++k) {
      const double theta = two_pi * static_cast<double>(k) / static_cast<double>(m);
      const double a = std::abs(hz[k]), b = std::abs(gz[k]);
      if (a <= 1e-14 * scale) {
        out.degenerate.emplace_back(r, theta);
        continue;
      }
      const double ratio = b / a;
      if (ratio > out.sup) {
        out.sup = ratio;
        out.arg_r = r;
        out.arg_theta = theta;
      }
    }
  }
  out.K = out.sup < 1.0 - 1e-12 ? (1.0 + out.sup) / (1.0 - out.sup)
                                : std::numeric_limits<double>::infinity();
  return out;
}

}  // namespace poissonlab
