#include "poissonlab/singular.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace poissonlab {

namespace {

// All p + 2 pi k strictly inside (lo, hi).
std::vector<double> images_in(std::span<const double> pts, double lo, double hi) {
  std::vector<double> out;
  for (double p : pts) {
    const double base = p - two_pi * std::ceil((p - hi) / two_pi);
    for (double t = base; t > lo; t -= two_pi)
      if (t < hi) out.push_back(t);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

// Panels on [lo, hi] split at the given points and graded geometrically
// toward every split point. The first width near a point q is about 3|q|
// when q is close to the origin, so kinks at tiny offsets are resolved.
std::vector<double> graded_split(double lo, double hi, std::vector<double> pts, double ratio) {
  pts.push_back(lo);
  pts.push_back(hi);
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  std::vector<double> br;
  auto first_width = [](double q, double len) {
    const double base = len * 1e-7;
    const double near = std::fabs(q) > 0.0 ? 3.0 * std::fabs(q) : base;
    return std::max(std::min(base, near), 1e-305);
  };
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    const double a = pts[i], b = pts[i + 1];
    const double mid = 0.5 * (a + b), len = b - a;
    const auto left = graded_breaks(a, mid, first_width(a, len), ratio);
    const auto right = graded_breaks(b, mid, first_width(b, len), ratio);
    br.insert(br.end(), left.begin(), left.end());
    br.insert(br.end(), right.begin(), right.end());
  }
  std::sort(br.begin(), br.end());
  br.erase(std::unique(br.begin(), br.end()), br.end());
  return br;
}

double real_integral(const std::function<double(double)>& f, const std::vector<double>& br,
                     int order) {
  return integrate_panels([&](double t) { return cplx(f(t), 0.0); }, br, order).real();
}

}  // namespace

PvResult hilbert_transform(const BoundaryFunction& F, double theta, const QuadratureSpec& spec) {
  const auto& sing = F.singular_points();
  // t in (0, pi) where theta + t or theta - t meets a singular point
  std::vector<double> bp = images_in(sing, theta, theta + pi);
  for (double& t : bp) t -= theta;
  auto lower = images_in(sing, theta - pi, theta);
  for (double t : lower) bp.push_back(theta - t);
  std::sort(bp.begin(), bp.end());
  auto g = [&](double t) {
    return -(F.deriv(theta + t) - F.deriv(theta - t)) / (pi * 2.0 * std::tan(0.5 * t));
  };
  return integrate_pv(g, 0.0, pi, 0.0, spec, bp);
}

SakanSubintegrals sakan_subintegrals(const QuadratureSpec& spec) {
  const auto br = graded_breaks(0.0, pi, pi * 1e-7, spec.tail_ratio);
  const int order = spec.radial_order;
  const double pi2 = pi * pi;
  SakanSubintegrals s;
  s.first = real_integral(
      [&](double t) {
        const double h = std::sin(0.5 * t);
        return 2.0 / pi2 * h * h * std::cos(t / pi) / std::tan(0.5 * t);
      },
      br, order);
  s.second = real_integral(
      [&](double t) { return 1.0 / pi2 * std::sin(t) * std::cos(t / pi) / std::tan(0.5 * t); },
      br, order);
  s.third = real_integral(
      [&](double t) { return 1.0 / pi * std::sin(t / pi) / std::tan(0.5 * t); }, br, order);
  return s;
}

PvResult cauchy_singular(const std::function<cplx(double)>& phi, double x,
                         const QuadratureSpec& spec, std::span<const double> breakpoints) {
  // u = e^{i(x+s)}: du/(u - zeta) = i e^{is/2} ds / (2i sin(s/2))
  auto g = [&](double s) {
    return phi(x + s) * std::polar(1.0, 0.5 * s) / (two_pi * cplx(0.0, 2.0 * std::sin(0.5 * s)));
  };
  std::vector<double> bp(breakpoints.begin(), breakpoints.end());
  return integrate_pv(g, -pi, pi, 0.0, spec, bp);
}

namespace {

std::vector<double> centred_breaks(const BoundaryFunction& F, double x) {
  auto bp = images_in(F.singular_points(), x - pi, x + pi);
  for (double& t : bp) t -= x;
  return bp;
}

}  // namespace

VFunctionals v_functionals(const BoundaryFunction& F, double x, const QuadratureSpec& spec) {
  const cplx Fz = F.eval(x);
  const auto bp = centred_breaks(F, x);
  auto gv = [&](double s) {
    const double d = 2.0 * std::sin(0.5 * s);
    return cplx(std::norm(F.eval(x + s) - Fz) / (d * d) / two_pi, 0.0);
  };
  auto gs = [&](double s) {
    const double d = 2.0 * std::sin(0.5 * s);
    return cplx(-(F.eval(x + s) * std::conj(Fz)).imag() / (d * d) / pi, 0.0);
  };
  return {integrate_pv(gv, -pi, pi, 0.0, spec, bp), integrate_pv(gs, -pi, pi, 0.0, spec, bp)};
}

TheoremAResult theorem_a_residual(const BoundaryFunction& F, double x, const QuadratureSpec& spec) {
  TheoremAResult out;
  const auto bp = centred_breaks(F, x);
  // F'(u) = F'(t) / (i e^{it}) on u = e^{it}
  auto dF = [&](double t) { return F.deriv(t) / (cplx(0.0, 1.0) * std::polar(1.0, t)); };
  out.cauchy = cauchy_singular(dF, x, spec, bp);
  out.v = v_functionals(F, x, spec);

  const cplx pre = std::polar(1.0, -x) * F.eval(x);
  std::vector<PvSample> diff;
  for (std::size_t i = 0; i < out.cauchy.values.size(); ++i) {
    const cplx lhs = 2.0 * out.cauchy.values[i].value;
    const cplx rhs = pre * (out.v.V.values[i].value + cplx(0.0, 1.0) * out.v.V_star.values[i].value);
    diff.push_back({out.cauchy.values[i].epsilon, lhs - rhs});
  }
  out.difference = classify_pv(std::move(diff), spec);

  const bool divergent = out.cauchy.verdict == PvVerdict::divergent_log ||
                         out.v.V.verdict == PvVerdict::divergent_log ||
                         out.v.V_star.verdict == PvVerdict::divergent_log;
  if (divergent) {
    out.defined = false;
    out.residual = std::numeric_limits<double>::quiet_NaN();
    out.note = "a principal value diverges; residual undefined";
    return out;
  }
  out.defined = true;
  out.residual = std::abs(out.difference.limit);
  if (out.difference.verdict != PvVerdict::convergent) out.note = "difference did not settle";
  return out;
}

// ---------------------------------------------------------------------------

SingularProfile boundary_moduli(const BoundaryFunction& F, double theta, const QuadratureSpec& spec,
                                bool with_hilbert) {
  const PhaseFunction* ph = F.phase();
  if (!ph) throw DomainError("boundary_moduli needs a phase map F = e^{i phi}");
  SingularProfile out;
  out.theta = theta;
  out.phi_prime = ph->phi_prime(theta);
  const int order = spec.radial_order;
  const auto& inc = ph->increment;

  // A: kinks where theta + s meets a singular point
  {
    auto bp = images_in(ph->singular_points, theta - pi, theta + pi);
    for (double& t : bp) t -= theta;
    const auto br = graded_split(-pi, pi, bp, spec.tail_ratio);
    out.a_value = real_integral(
                      [&](double s) {
                        const double q = std::sin(0.5 * inc(theta, s)) / std::sin(0.5 * s);
                        return q * q;
                      },
                      br, order) /
                  two_pi;
  }

  bool at_singular = false;
  for (double s : ph->singular_points)
    if (wrap_angle(theta) == wrap_angle(s)) at_singular = true;

  if (at_singular) {
    out.b_flagged = true;
    out.b_value = std::numeric_limits<double>::quiet_NaN();
  } else {
    std::vector<double> bp = images_in(ph->singular_points, theta, theta + pi);
    for (double& t : bp) t -= theta;
    for (double t : images_in(ph->singular_points, theta - pi, theta)) bp.push_back(theta - t);
    const auto br = graded_split(0.0, pi, bp, spec.tail_ratio);
    // (sin a + sin b) / (4 sin^2(t/2)) arranged to avoid underflow of t^2
    out.b_value = -real_integral(
                      [&](double t) {
                        const double num = std::sin(inc(theta, t)) + std::sin(inc(theta, -t));
                        const double h = 0.5 * t / std::sin(0.5 * t);
                        return (num / t / t) * h * h;
                      },
                      br, order) /
                  pi;
    if (!std::isfinite(out.b_value)) out.b_flagged = true;
  }

  const double a = out.a_value, b = out.b_value, d = out.phi_prime;
  out.wz_mod = 0.5 * std::sqrt((a + d) * (a + d) + b * b);
  out.wzbar_mod = 0.5 * std::sqrt((a - d) * (a - d) + b * b);
  out.ratio = out.b_flagged ? 1.0 : out.wzbar_mod / out.wz_mod;
  if (with_hilbert) out.h_value = hilbert_transform(F, theta, spec);
  return out;
}

double boundary_ratio_sup(const BoundaryFunction& F, const QuadratureSpec& spec) {
  const PhaseFunction* ph = F.phase();
  if (!ph) return 0.0;
  double best = 0.0;
  const int ks[] = {1, 2, 4, 8, 16, 32, 64, 128, 256, 300};
  for (double s : ph->singular_points)
    for (double sign : {1.0, -1.0})
      for (int k : ks) {
        const double theta = s + sign * std::pow(10.0, -k);
        if (theta == s) continue;
        const auto prof = boundary_moduli(F, theta, spec, false);
        if (!prof.b_flagged) best = std::max(best, prof.ratio);
      }
  return best;
}

}  // namespace poissonlab
