#include "poissonlab/boundary.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/tools/minima.hpp>

#include "poissonlab/fft.hpp"

namespace poissonlab {

std::string to_string(Smoothness s) {
  switch (s) {
    case Smoothness::analytic: return "analytic";
    case Smoothness::lipschitz: return "lipschitz";
    case Smoothness::piecewise_smooth: return "piecewise-smooth";
  }
  return "analytic";
}

cplx FourierSeries::eval(double t) const {
  cplx sum{};
  for (int n = -degree; n <= degree; ++n) {
    const cplx c = (*this)(n);
    if (c != cplx{}) sum += c * std::polar(1.0, n * t);
  }
  return sum;
}

double FourierSeries::l1_mass() const {
  double m = 0.0;
  for (const auto& c : coeffs) m += std::abs(c);
  return m;
}

BoundaryFunction::BoundaryFunction(BoundaryParts parts) : s_(std::make_shared<State>()) {
  if (!parts.eval || !parts.deriv) throw DomainError("boundary function needs eval and deriv");
  for (double& t : parts.singular_points) t = wrap_angle(t);
  std::sort(parts.singular_points.begin(), parts.singular_points.end());
  parts.singular_points.erase(
      std::unique(parts.singular_points.begin(), parts.singular_points.end()),
      parts.singular_points.end());
  s_->parts = std::move(parts);
}

namespace {

// Drop trailing coefficients that are below roundoff, moving their mass to the tail.
void trim(FourierSeries& s) {
  const double floor = 1e-17 * std::max(s.l1_mass(), 1e-300);
  int keep = s.degree;
  while (keep > 0 && std::abs(s(keep)) <= floor && std::abs(s(-keep)) <= floor) --keep;
  if (keep == s.degree) return;
  double dropped = 0.0;
  for (int n = keep + 1; n <= s.degree; ++n) dropped += std::abs(s(n)) + std::abs(s(-n));
  std::vector<cplx> c(static_cast<std::size_t>(2 * keep + 1));
  for (int n = -keep; n <= keep; ++n) c[static_cast<std::size_t>(n + keep)] = s(n);
  s.coeffs = std::move(c);
  s.degree = keep;
  s.tail_bound += dropped;
}

}  // namespace

const FourierSeries& BoundaryFunction::spectrum() const {
  std::call_once(s_->once, [this] {
    if (s_->parts.spectrum) {
      s_->series = s_->parts.spectrum();
      return;
    }
    QuadratureSpec spec;
    FourierSeries s;
    for (int N = 1024;; N *= 2) {
      s = fourier_coefficients(*this, N, spec);
      if (s.tail_bound < 1e-10 || N >= (1 << 16)) break;
    }
    trim(s);
    s_->series = std::move(s);
  });
  return s_->series;
}

// ---------------------------------------------------------------------------

double estimate_tail(const FourierSeries& s) {
  const int N = s.degree;
  if (N < 8) return 0.0;
  double a1 = 0.0, a2 = 0.0;
  for (int n = N / 4 + 1; n <= N / 2; ++n) a1 = std::max({a1, std::abs(s(n)), std::abs(s(-n))});
  for (int n = N / 2 + 1; n <= N; ++n) a2 = std::max({a2, std::abs(s(n)), std::abs(s(-n))});
  if (a2 == 0.0) return 0.0;
  const double alpha = a1 > 0.0 ? std::clamp(std::log2(a1 / a2), 1.1, 8.0) : 1.1;
  return 2.0 * a2 * N * std::pow(2.0, -alpha) / (alpha - 1.0);
}

FourierSeries fourier_coefficients(const BoundaryFunction& F, int N, const QuadratureSpec& spec) {
  if (N < 1) throw DomainError("fourier_coefficients needs N >= 1");
  const std::size_t M =
      next_pow2(std::max<std::size_t>(static_cast<std::size_t>(spec.periodic_nodes),
                                      4 * static_cast<std::size_t>(N)));
  std::vector<cplx> samples(M);
  for (std::size_t k = 0; k < M; ++k) {
    const double t = two_pi * static_cast<double>(k) / static_cast<double>(M);
    samples[k] = F.eval(t);
    if (!detail::finite_value(samples[k])) detail::throw_non_finite(k, t);
  }
  const auto spec_out = fft_forward(samples);
  FourierSeries s;
  s.degree = N;
  s.coeffs.resize(static_cast<std::size_t>(2 * N + 1));
  const double inv = 1.0 / static_cast<double>(M);
  for (int n = -N; n <= N; ++n) {
    const std::size_t idx = static_cast<std::size_t>((n % static_cast<long>(M) + static_cast<long>(M)) %
                                                     static_cast<long>(M));
    s.coeffs[static_cast<std::size_t>(n + N)] = spec_out[idx] * inv;
  }
  s.tail_bound = estimate_tail(s);
  return s;
}

// ---------------------------------------------------------------------------

namespace {

// Arcs of [0, 2pi) between consecutive singular points, as (start, end) with end > start.
std::vector<std::pair<double, double>> arcs(std::span<const double> singular) {
  std::vector<double> s;
  for (double t : singular) s.push_back(wrap_angle(t));
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  std::vector<std::pair<double, double>> out;
  if (s.empty()) {
    out.emplace_back(0.0, two_pi);
    return out;
  }
  for (std::size_t i = 0; i + 1 < s.size(); ++i) out.emplace_back(s[i], s[i + 1]);
  out.emplace_back(s.back(), s.front() + two_pi);
  return out;
}

double sup_norm(const std::function<cplx(double)>& g, std::span<const double> singular,
                const QuadratureSpec& spec) {
  const auto pieces = arcs(singular);
  const int M = spec.periodic_nodes;
  double best = 0.0;
  auto mag = [&](double t) {
    const double v = std::abs(g(t));
    if (!std::isfinite(v)) detail::throw_non_finite(0, t);
    return v;
  };
  for (const auto& [a, b] : pieces) {
    const double len = b - a;
    const int n = std::max(8, static_cast<int>(std::ceil(M * len / two_pi)));
    const double h = len / n;
    // one-sided limits at the arc ends
    const double d = 1e-12 * std::max(1.0, std::fabs(b));
    std::vector<double> vals(static_cast<std::size_t>(n + 1));
    vals[0] = mag(a + d);
    vals[static_cast<std::size_t>(n)] = mag(b - d);
    for (int k = 1; k < n; ++k) vals[static_cast<std::size_t>(k)] = mag(a + h * k);
    const double grid_max = *std::max_element(vals.begin(), vals.end());
    best = std::max(best, grid_max);
    for (int k = 1; k < n; ++k) {
      const auto i = static_cast<std::size_t>(k);
      if (vals[i] >= vals[i - 1] && vals[i] >= vals[i + 1] && vals[i] >= 0.5 * grid_max) {
        const auto r = boost::math::tools::brent_find_minima(
            [&](double t) { return -mag(t); }, a + h * (k - 1), a + h * (k + 1),
            std::numeric_limits<double>::digits / 2);
        best = std::max(best, -r.second);
      }
    }
  }
  return best;
}

}  // namespace

double lp_norm_circle(const std::function<cplx(double)>& g, std::span<const double> singular,
                      double p, const QuadratureSpec& spec) {
  if (std::isnan(p) || p < 1.0) throw DomainError("L^p norm needs p >= 1");
  if (std::isinf(p)) return sup_norm(g, singular, spec);
  using GK = boost::math::quadrature::gauss_kronrod<double, 31>;
  double total = 0.0;
  for (const auto& [a, b] : arcs(singular)) {
    const int pieces = std::max(1, static_cast<int>(std::ceil(32.0 * (b - a) / two_pi)));
    const double h = (b - a) / pieces;
    for (int i = 0; i < pieces; ++i) {
      const double lo = a + h * i, hi = (i == pieces - 1) ? b : a + h * (i + 1);
      total += GK::integrate(
          [&](double t) {
            const double v = std::pow(std::abs(g(t)), p);
            if (!std::isfinite(v)) detail::throw_non_finite(0, t);
            return v;
          },
          lo, hi, 10, 1e-11);
    }
  }
  return std::pow(total / two_pi, 1.0 / p);
}

double lp_norm_deriv(const BoundaryFunction& F, double p, const QuadratureSpec& spec) {
  return lp_norm_circle([&](double t) { return F.deriv(t); }, F.singular_points(), p, spec);
}

double lp_norm_eval(const BoundaryFunction& F, double p, const QuadratureSpec& spec) {
  return lp_norm_circle([&](double t) { return F.eval(t); }, F.singular_points(), p, spec);
}

// ---------------------------------------------------------------------------

ContinuityCheck check_absolute_continuity(const BoundaryFunction& F, int trials,
                                          const QuadratureSpec& spec, std::uint64_t seed) {
  if (trials < 1) throw DomainError("check_absolute_continuity needs trials >= 1");
  ContinuityCheck out;
  out.tolerance = 1e-8 * (1.0 + lp_norm_deriv(F, 1.0, spec));
  UniformStream rng(seed);
  auto deriv = [&](double t) { return F.deriv(t); };
  for (int i = 0; i < trials; ++i) {
    double a = two_pi * rng.next(), b = two_pi * rng.next();
    if (a > b) std::swap(a, b);
    if (b - a < 1e-6) continue;
    std::vector<double> br;
    const int pieces = 64;
    for (int k = 0; k <= pieces; ++k) br.push_back(a + (b - a) * k / pieces);
    for (double s : F.singular_points())
      for (double shift : {0.0, two_pi})
        if (s + shift > a && s + shift < b) br.push_back(s + shift);
    std::sort(br.begin(), br.end());
    const cplx integral = integrate_panels(deriv, br, spec.radial_order);
    const double res = std::abs(F.eval(b) - F.eval(a) - integral);
    out.worst_residual = std::max(out.worst_residual, res);
  }
  out.pass = out.worst_residual <= out.tolerance;
  return out;
}

}  // namespace poissonlab
