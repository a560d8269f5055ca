#include "poissonlab/constants.hpp"

#include <cmath>
#include <limits>

namespace poissonlab {

double I_of_r(double r) {
  if (r == 0.0) return 4.0 / pi;
  if (!(r > 0.0 && r < 1.0)) throw DomainError("I(r) needs 0 <= r < 1");
  return 4.0 * atanh(r) / (pi * r);
}

double I_integral(double r, const QuadratureSpec& spec) {
  if (!(r >= 0.0 && r < 1.0)) throw DomainError("I(r) needs 0 <= r < 1");
  // The kernel peaks at t = 0 with width 1 - r; |sin t| has kinks at 0 and pi.
  const double first = std::max(0.5 * (1.0 - r), 1e-12);
  std::vector<double> br = graded_breaks(0.0, pi, first, spec.tail_ratio);
  const auto upper = graded_breaks(two_pi, pi, first, spec.tail_ratio);
  br.insert(br.end(), upper.begin() + 1, upper.end());
  const cplx v = integrate_panels(
      [r](double t) {
        const double s = std::sin(0.5 * t);
        return cplx(std::fabs(std::sin(t)) / ((1.0 - r) * (1.0 - r) + 4.0 * r * s * s), 0.0);
      },
      br, spec.radial_order);
  return v.real() / pi;
}

std::optional<double> c_table_value(double p) {
  const double pi2 = pi * pi;
  if (p == 1.0) return pi / 2.0;
  if (p == 2.0) return 8.0 / 3.0;
  if (p == 3.0) return 16.0 / pi;
  if (p == 4.0) return 128.0 * (30.0 + pi2) / (45.0 * pi2);
  if (p == 5.0) return 256.0 * (15.0 + 2.0 * pi2) / (9.0 * pi2);
  return std::nullopt;
}

double c_bound(double p) {
  if (std::isnan(p) || p < 1.0) throw DomainError("C(p) needs p >= 1");
  return std::pow(4.0, p - 1.0) * std::pow(pi, -p) *
         (std::pow(2.0, p) + (2.0 - std::pow(2.0, -p)) * gamma(1.0 + p));
}

namespace {

// I(r) from a radial node, with atanh(r) = (log(1 + r) - log(gap)) / 2 so that
// the logarithm stays accurate when gap = 1 - r is tiny.
double I_at(const RadialNode& n) {
  if (n.r == 0.0) return 4.0 / pi;
  if (n.r < 0.5) return I_of_r(n.r);
  const double at = 0.5 * (std::log1p(n.r) - std::log(n.gap));
  return 4.0 * at / (pi * n.r);
}

}  // namespace

double c_weighted(double p, const QuadratureSpec& spec) {
  if (std::isnan(p) || p < 1.0) throw DomainError("C(p) needs p >= 1");
  return integrate_radial([p](const RadialNode& n) { return std::pow(I_at(n), p) * n.r; }, 0.0,
                          1.0, spec);
}

ConstantsReport c_of_p(double p, const QuadratureSpec& spec) {
  if (std::isnan(p) || p < 1.0 || std::isinf(p)) throw DomainError("C(p) needs finite p >= 1");
  ConstantsReport rep;
  rep.p = p;
  rep.c_weighted = c_weighted(p, spec);
  rep.c_unweighted =
      integrate_radial([p](const RadialNode& n) { return std::pow(I_at(n), p); }, 0.0, 1.0, spec);
  rep.c_bound = c_bound(p);
  rep.table_value = c_table_value(p);
  rep.bound_satisfied_weighted = rep.c_weighted <= rep.c_bound;
  if (rep.table_value) {
    const double t = *rep.table_value;
    rep.table_matches_unweighted = std::fabs(rep.c_unweighted - t) <= table_tolerance * t;
    rep.table_matches_weighted = std::fabs(rep.c_weighted - t) <= table_tolerance * t;
  }
  return rep;
}

double phi_of_r(double r) {
  if (r == 0.0) return -2.0;
  if (!(r > 0.0 && r < 1.0)) throw DomainError("phi(r) needs 0 <= r < 1");
  return -std::log1p(-r) - 2.0 * atanh(r) / r;
}

MonotoneCheck phi_monotone_check(std::span<const double> r_grid) {
  MonotoneCheck out;
  if (r_grid.empty()) return out;
  out.pass = true;
  out.min_slope = std::numeric_limits<double>::infinity();
  out.min_value = std::numeric_limits<double>::infinity();
  double prev = 0.0;
  for (std::size_t i = 0; i < r_grid.size(); ++i) {
    const double r = r_grid[i];
    if (!(r > 0.0 && r < 1.0)) throw DomainError("phi grid must lie in (0, 1)");
    const double v = phi_of_r(r);
    out.min_value = std::min(out.min_value, v);
    if (v < -2.0) out.pass = false;
    if (i > 0) {
      const double dr = r - r_grid[i - 1];
      if (!(dr > 0.0)) throw DomainError("phi grid must be increasing");
      const double slope = (v - prev) / dr;
      out.min_slope = std::min(out.min_slope, slope);
      if (!(v > prev)) out.pass = false;
    }
    prev = v;
  }
  return out;
}

double log_moment(double alpha, double p, const QuadratureSpec& spec) {
  if (!(alpha > -1.0)) throw DomainError("log_moment needs alpha > -1");
  if (std::isnan(p) || p < 1.0) throw DomainError("log_moment needs p >= 1");
  // t = 1 - r. Near t = 0 (r = 1) the radial rule grades toward the log
  // singularity; near t = 1 the factor log(1/t)^{p-1} ~ r^{p-1} is not smooth
  // for fractional p, so that half gets panels graded toward r = 0.
  auto g = [alpha, p](double r, double t) {
    return std::pow(t, alpha) * std::pow(-std::log1p(-r), p - 1.0);
  };
  const auto br = graded_breaks(0.0, 0.5, 1e-14, spec.tail_ratio);
  const double near_one =
      integrate_panels([&](double r) { return cplx(g(r, 1.0 - r), 0.0); }, br, spec.radial_order).real();
  const double near_zero = integrate_radial(
      [&](const RadialNode& n) {
        return std::pow(n.gap, alpha) * std::pow(-std::log(n.gap), p - 1.0);
      },
      0.5, 1.0, spec);
  return near_one + near_zero;
}

}  // namespace poissonlab
