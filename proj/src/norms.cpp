#include "poissonlab/norms.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace poissonlab {

std::string to_string(NormKind k) {
  switch (k) {
    case NormKind::integral_mean: return "integral_mean";
    case NormKind::hardy: return "hardy";
    case NormKind::bergman: return "bergman";
    case NormKind::esssup: return "esssup";
  }
  return "integral_mean";
}

namespace {

void check_p(double p) {
  if (std::isnan(p) || p < 1.0) throw DomainError("norms need p >= 1");
}

// mean |v|^p (not the root); max |v| for p = infinity
double power_mean(std::span<const cplx> v, double p) {
  if (std::isinf(p)) {
    double m = 0.0;
    for (const auto& x : v) m = std::max(m, std::abs(x));
    return m;
  }
  double s = 0.0;
  if (p == 2.0)
    for (const auto& x : v) s += std::norm(x);
  else if (p == 1.0)
    for (const auto& x : v) s += std::abs(x);
  else
    for (const auto& x : v) s += std::pow(std::abs(x), p);
  return s / static_cast<double>(v.size());
}

double root(double mean, double p) { return std::isinf(p) ? mean : std::pow(mean, 1.0 / p); }

}  // namespace

DiskFunction disk_function(const HarmonicMap& w, Quantity q) {
  DiskFunction f;
  f.circle = [&w, q](double r, double gap, std::size_t m) { return w.circle(q, r, gap, m); };
  f.nodes = [&w](double gap) { return w.circle_nodes(gap); };
  const auto& s = w.spectral();
  f.regular_at_boundary = s.tail_bound < 1e-14 && s.degree <= 4096;
  f.label = to_string(q);
  return f;
}

DiskFunction disk_function(std::function<cplx(cplx)> fn, const QuadratureSpec& spec,
                           std::string label) {
  DiskFunction f;
  f.circle = [fn](double r, double, std::size_t m) {
    std::vector<cplx> out(m);
    for (std::size_t k = 0; k < m; ++k)
      out[k] = fn(std::polar(r, two_pi * static_cast<double>(k) / static_cast<double>(m)));
    return out;
  };
  const auto n = static_cast<std::size_t>(spec.periodic_nodes);
  f.nodes = [n](double) { return n; };
  f.regular_at_boundary = true;
  f.label = std::move(label);
  return f;
}

double circle_mean(std::span<const cplx> samples, double p) {
  check_p(p);
  if (samples.empty()) throw DomainError("circle_mean needs samples");
  return root(power_mean(samples, p), p);
}

double integral_mean(const DiskFunction& f, double r, double p, const QuadratureSpec& spec) {
  check_p(p);
  if (!(r >= 0.0 && r < 1.0)) throw DomainError("integral_mean needs 0 <= r < 1");
  const double gap = 1.0 - r;
  const std::size_t m = std::max(f.nodes(gap), static_cast<std::size_t>(spec.periodic_nodes));
  const auto v = f.circle(r, gap, m);
  return circle_mean(v, p);
}

std::vector<double> default_hardy_grid() {
  std::vector<double> g;
  for (int k = 2; k <= 13; ++k) g.push_back(1.0 - std::ldexp(1.0, -k));
  return g;
}

std::vector<NormEstimate> hardy_norms(const DiskFunction& f, std::span<const double> ps,
                                      std::span<const double> r_grid, const QuadratureSpec& spec) {
  for (double p : ps) check_p(p);
  if (r_grid.empty()) throw DomainError("hardy_norm needs a nonempty r grid");
  for (std::size_t i = 1; i < r_grid.size(); ++i)
    if (!(r_grid[i] > r_grid[i - 1])) throw DomainError("hardy_norm needs an increasing r grid");
  std::vector<NormEstimate> out(ps.size());
  for (std::size_t j = 0; j < ps.size(); ++j) {
    out[j].kind = NormKind::hardy;
    out[j].p = ps[j];
    out[j].r_grid.assign(r_grid.begin(), r_grid.end());
  }
  for (double r : r_grid) {
    if (!(r >= 0.0 && r < 1.0)) throw DomainError("hardy_norm needs radii in [0, 1)");
    const double gap = 1.0 - r;
    const std::size_t m = std::max(f.nodes(gap), static_cast<std::size_t>(spec.periodic_nodes));
    const auto v = f.circle(r, gap, m);
    for (std::size_t j = 0; j < ps.size(); ++j) out[j].sequence.push_back(circle_mean(v, ps[j]));
  }
  for (auto& e : out) {
    const auto& s = e.sequence;
    e.value = *std::max_element(s.begin(), s.end());
    for (std::size_t i = 1; i < s.size(); ++i)
      if (s[i] < s[i - 1] * (1.0 - 1e-12) - 1e-300) e.monotone_flag = false;
    e.residual = s.size() > 1 ? std::fabs(s.back() - s[s.size() - 2]) : 0.0;
  }
  return out;
}

NormEstimate hardy_norm(const DiskFunction& f, double p, std::span<const double> r_grid,
                        const QuadratureSpec& spec) {
  const double ps[] = {p};
  return hardy_norms(f, ps, r_grid, spec).front();
}

std::vector<NormEstimate> bergman_norms(const DiskFunction& f, std::span<const double> ps,
                                        const QuadratureSpec& spec) {
  for (double p : ps) {
    check_p(p);
    if (std::isinf(p)) throw DomainError("bergman_norm needs finite p");
  }
  const auto nodes = f.regular_at_boundary
                         ? uniform_nodes(0.0, 1.0, spec.radial_panels, spec.radial_order)
                         : radial_nodes(0.0, 1.0, spec, spec.boundary_gap);
  const std::size_t per_panel = static_cast<std::size_t>(spec.radial_order);
  std::vector<double> total(ps.size(), 0.0), last(ps.size(), 0.0);
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const auto& nd = nodes[i];
    const std::size_t m = std::max(f.nodes(nd.gap), static_cast<std::size_t>(spec.periodic_nodes));
    const auto v = f.circle(nd.r, nd.gap, m);
    for (std::size_t j = 0; j < ps.size(); ++j) {
      const double term = 2.0 * nd.weight * power_mean(v, ps[j]) * nd.r;
      if (!std::isfinite(term)) detail::throw_non_finite(i, nd.r);
      total[j] += term;
      if (i + per_panel >= nodes.size()) last[j] += term;
    }
  }
  std::vector<NormEstimate> out(ps.size());
  for (std::size_t j = 0; j < ps.size(); ++j) {
    out[j].kind = NormKind::bergman;
    out[j].p = ps[j];
    out[j].value = std::pow(total[j], 1.0 / ps[j]);
    out[j].residual = f.regular_at_boundary ? 0.0 : last[j];
  }
  return out;
}

NormEstimate bergman_norm(const DiskFunction& f, double p, const QuadratureSpec& spec) {
  const double ps[] = {p};
  return bergman_norms(f, ps, spec).front();
}

}  // namespace poissonlab
