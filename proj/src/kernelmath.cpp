#include "poissonlab/kernelmath.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <sstream>

namespace poissonlab {

EvaluationError::EvaluationError(const std::string& what, std::size_t node, double at)
    : std::runtime_error(what), node_(node), at_(at) {}

namespace detail {
void throw_non_finite(std::size_t node, double t) {
  std::ostringstream os;
  os.precision(17);
  os << "non-finite integrand sample at node " << node << " (t = " << t << ")";
  throw EvaluationError(os.str(), node, t);
}
}  // namespace detail

void QuadratureSpec::validate() const {
  if (periodic_nodes < 1) throw DomainError("periodic_nodes must be >= 1");
  if (radial_panels < 1) throw DomainError("radial_panels must be >= 1");
  if (radial_order < 1 || radial_order > 128) throw DomainError("radial_order must be in [1, 128]");
  if (!(endpoint_split > 0.0 && endpoint_split < 1.0))
    throw DomainError("endpoint_split must lie in (0, 1)");
  if (pv_epsilons.empty()) throw DomainError("pv_epsilons must be nonempty");
  for (std::size_t i = 0; i < pv_epsilons.size(); ++i) {
    if (!(pv_epsilons[i] > 0.0)) throw DomainError("pv_epsilons must be positive");
    if (i > 0 && !(pv_epsilons[i] < pv_epsilons[i - 1]))
      throw DomainError("pv_epsilons must be strictly decreasing");
  }
  if (!(tail_ratio > 0.0 && tail_ratio < 1.0)) throw DomainError("tail_ratio must lie in (0, 1)");
  if (!(tail_floor > 0.0 && tail_floor < 1.0)) throw DomainError("tail_floor must lie in (0, 1)");
  if (!(quadrature_crossover > 0.0 && quadrature_crossover < 1.0))
    throw DomainError("quadrature_crossover must lie in (0, 1)");
  if (!(boundary_gap > 0.0 && boundary_gap < 1.0 - endpoint_split + 1e-300))
    throw DomainError("boundary_gap must lie in (0, 1 - endpoint_split]");
  if (!(convergence_slope > 0.0)) throw DomainError("convergence_slope must be positive");
}

std::vector<double> QuadratureSpec::default_pv_epsilons() {
  std::vector<double> eps;
  for (int k = 4; k <= 20; ++k) eps.push_back(std::ldexp(1.0, -k));
  return eps;
}

std::vector<double> QuadratureSpec::geometric_epsilons(double hi, double lo, int n) {
  if (!(hi > lo && lo > 0.0) || n < 2) throw DomainError("geometric_epsilons needs hi > lo > 0, n >= 2");
  std::vector<double> eps(static_cast<std::size_t>(n));
  const double step = std::log(lo / hi) / (n - 1);
  for (int i = 0; i < n; ++i) eps[static_cast<std::size_t>(i)] = hi * std::exp(step * i);
  eps.back() = lo;
  return eps;
}

// ---------------------------------------------------------------------------

double atanh(double x) {
  if (!(std::fabs(x) < 1.0)) throw DomainError("atanh requires |x| < 1");
  return 0.5 * (std::log1p(x) - std::log1p(-x));
}

namespace {

constexpr double lanczos_g = 7.0;
constexpr std::array<double, 9> lanczos_coeffs = {
    0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
    771.32342877765313,   -176.61502916214059,   12.507343278686905,
    -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};

double lanczos_gamma(double z) {
  // valid for z >= 0.5
  z -= 1.0;
  double x = lanczos_coeffs[0];
  for (std::size_t i = 1; i < lanczos_coeffs.size(); ++i)
    x += lanczos_coeffs[i] / (z + static_cast<double>(i));
  const double t = z + lanczos_g + 0.5;
  return std::sqrt(two_pi) * std::pow(t, z + 0.5) * std::exp(-t) * x;
}

}  // namespace

double gamma(double p) {
  if (!(p > 0.0)) throw DomainError("gamma requires p > 0");
  if (p < 0.5) return pi / (std::sin(pi * p) * lanczos_gamma(1.0 - p));
  // Integers are exact factorials up to 171.
  if (p == std::floor(p) && p <= 23.0) {
    double f = 1.0;
    for (int k = 2; k < static_cast<int>(p); ++k) f *= k;
    return f;
  }
  return lanczos_gamma(p);
}

// ---------------------------------------------------------------------------

namespace {

GaussRule compute_gauss_rule(int n) {
  GaussRule rule;
  rule.nodes.resize(static_cast<std::size_t>(n));
  rule.weights.resize(static_cast<std::size_t>(n));
  const int m = (n + 1) / 2;
  for (int i = 0; i < m; ++i) {
    double x = std::cos(pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = pk;
      }
      if (n == 1) {
        p1 = x;
        p0 = 1.0;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::fabs(dx) < 1e-16) break;
    }
    // recompute derivative at the converged node
    double p0 = 1.0, p1 = x;
    for (int k = 2; k <= n; ++k) {
      const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = pk;
    }
    if (n == 1) {
      p1 = x;
      p0 = 1.0;
    }
    dp = n * (x * p1 - p0) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    const auto lo = static_cast<std::size_t>(i);
    const auto hi = static_cast<std::size_t>(n - 1 - i);
    rule.nodes[lo] = -x;
    rule.nodes[hi] = x;
    rule.weights[lo] = w;
    rule.weights[hi] = w;
  }
  if (n % 2 == 1) rule.nodes[static_cast<std::size_t>(n / 2)] = 0.0;
  return rule;
}

}  // namespace

const GaussRule& gauss_legendre(int order) {
  static const std::vector<GaussRule> rules = [] {
    std::vector<GaussRule> r(129);
    for (int n = 1; n <= 128; ++n) r[static_cast<std::size_t>(n)] = compute_gauss_rule(n);
    return r;
  }();
  if (order < 1 || order > 128) throw DomainError("Gauss-Legendre order must be in [1, 128]");
  return rules[static_cast<std::size_t>(order)];
}

cplx integrate_panels(const std::function<cplx(double)>& f, std::span<const double> breaks,
                      int order) {
  const GaussRule& rule = gauss_legendre(order);
  cplx total{};
  std::size_t node = 0;
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    const double a = breaks[i], b = breaks[i + 1];
    if (!(b > a)) continue;
    const double half = 0.5 * (b - a), mid = 0.5 * (a + b);
    cplx panel{};
    for (std::size_t k = 0; k < rule.nodes.size(); ++k, ++node) {
      const double t = mid + half * rule.nodes[k];
      const cplx v = f(t);
      if (!detail::finite_value(v)) detail::throw_non_finite(node, t);
      panel += rule.weights[k] * v;
    }
    total += half * panel;
  }
  return total;
}

std::vector<double> graded_breaks(double from, double to, double first, double ratio) {
  std::vector<double> out{from};
  const double dir = to > from ? 1.0 : -1.0;
  const double span = std::fabs(to - from);
  const double cap = std::max(span / 4.0, first);
  double pos = 0.0, width = first;
  while (pos + width < span * (1.0 - 1e-12)) {
    pos += width;
    out.push_back(from + dir * pos);
    width = std::min(width / ratio, cap);
  }
  out.push_back(to);
  if (dir < 0) std::reverse(out.begin(), out.end());
  return out;
}

// ---------------------------------------------------------------------------

std::vector<RadialNode> uniform_nodes(double a, double b, int panels, int order) {
  std::vector<RadialNode> nodes;
  if (!(b > a)) return nodes;
  const GaussRule& rule = gauss_legendre(order);
  const double width = (b - a) / panels;
  nodes.reserve(static_cast<std::size_t>(panels) * rule.nodes.size());
  for (int i = 0; i < panels; ++i) {
    const double lo = a + width * i;
    const double hi = (i == panels - 1) ? b : a + width * (i + 1);
    const double half = 0.5 * (hi - lo);
    const double hi_gap = b - hi;
    for (std::size_t k = 0; k < rule.nodes.size(); ++k) {
      const double x = rule.nodes[k];
      const double gap = hi_gap + half * (1.0 - x);
      nodes.push_back({b - gap, gap, half * rule.weights[k]});
    }
  }
  return nodes;
}

std::vector<RadialNode> radial_nodes(double a, double b, const QuadratureSpec& spec,
                                     double gap_floor) {
  if (!(b > a)) return {};
  if (b != 1.0) return uniform_nodes(a, b, spec.radial_panels, spec.radial_order);

  std::vector<RadialNode> nodes;
  const double split = spec.endpoint_split;
  double tail_start_gap = 1.0 - a;
  if (a < split) {
    nodes = uniform_nodes(a, split, spec.radial_panels, spec.radial_order);
    for (auto& n : nodes) n.gap += 1.0 - split;
    tail_start_gap = 1.0 - split;
  }
  const GaussRule& rule = gauss_legendre(spec.radial_order);
  double hi_gap = tail_start_gap;
  while (hi_gap > gap_floor) {
    const double lo_gap = std::max(hi_gap * spec.tail_ratio, gap_floor);
    const double half = 0.5 * (hi_gap - lo_gap);
    for (std::size_t k = 0; k < rule.nodes.size(); ++k) {
      const double gap = lo_gap + half * (1.0 + rule.nodes[k]);
      nodes.push_back({1.0 - gap, gap, half * rule.weights[k]});
    }
    hi_gap = lo_gap;
    if (lo_gap <= gap_floor) break;
  }
  return nodes;
}

std::vector<RadialNode> radial_nodes(double a, double b, const QuadratureSpec& spec) {
  return radial_nodes(a, b, spec, spec.tail_floor);
}

double integrate_radial(const std::function<double(const RadialNode&)>& f, double a, double b,
                        const QuadratureSpec& spec) {
  if (!(a >= 0.0 && b <= 1.0 && a <= b)) throw DomainError("integrate_radial needs 0 <= a <= b <= 1");
  const auto nodes = radial_nodes(a, b, spec);
  double sum = 0.0;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const double v = f(nodes[i]);
    if (!std::isfinite(v)) detail::throw_non_finite(i, nodes[i].r);
    sum += nodes[i].weight * v;
  }
  return sum;
}

double integrate_radial(const std::function<double(double)>& f, double a, double b,
                        const QuadratureSpec& spec) {
  return integrate_radial([&](const RadialNode& n) { return f(n.r); }, a, b, spec);
}

// ---------------------------------------------------------------------------

std::string to_string(PvVerdict v) {
  switch (v) {
    case PvVerdict::convergent: return "convergent";
    case PvVerdict::divergent_log: return "divergent-log";
    case PvVerdict::inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

PvVerdict pv_verdict_from_string(const std::string& s) {
  if (s == "convergent") return PvVerdict::convergent;
  if (s == "divergent-log") return PvVerdict::divergent_log;
  if (s == "inconclusive") return PvVerdict::inconclusive;
  throw DomainError("unknown verdict: " + s);
}

namespace {

// Least squares with a real design matrix and complex observations, via
// modified Gram-Schmidt on column-normalised design.
std::vector<cplx> least_squares(const std::vector<std::vector<double>>& cols,
                                const std::vector<cplx>& y) {
  const std::size_t m = y.size(), k = cols.size();
  std::vector<std::vector<double>> q = cols;
  std::vector<double> scale(k, 1.0);
  for (std::size_t j = 0; j < k; ++j) {
    double nrm = 0.0;
    for (double v : q[j]) nrm += v * v;
    nrm = std::sqrt(nrm);
    scale[j] = nrm > 0 ? nrm : 1.0;
    for (double& v : q[j]) v /= scale[j];
  }
  std::vector<std::vector<double>> rmat(k, std::vector<double>(k, 0.0));
  for (std::size_t j = 0; j < k; ++j) {
    for (std::size_t i = 0; i < j; ++i) {
      double d = 0.0;
      for (std::size_t t = 0; t < m; ++t) d += q[i][t] * q[j][t];
      rmat[i][j] = d;
      for (std::size_t t = 0; t < m; ++t) q[j][t] -= d * q[i][t];
    }
    double nrm = 0.0;
    for (double v : q[j]) nrm += v * v;
    nrm = std::sqrt(nrm);
    rmat[j][j] = nrm;
    if (nrm > 0)
      for (double& v : q[j]) v /= nrm;
  }
  std::vector<cplx> qty(k);
  for (std::size_t j = 0; j < k; ++j) {
    cplx d{};
    for (std::size_t t = 0; t < m; ++t) d += q[j][t] * y[t];
    qty[j] = d;
  }
  std::vector<cplx> coef(k);
  for (std::size_t jj = k; jj-- > 0;) {
    cplx v = qty[jj];
    for (std::size_t i = jj + 1; i < k; ++i) v -= rmat[jj][i] * coef[i];
    coef[jj] = rmat[jj][jj] > 0 ? v / rmat[jj][jj] : cplx{};
  }
  for (std::size_t j = 0; j < k; ++j) coef[j] /= scale[j];
  return coef;
}

struct FitOutcome {
  std::vector<cplx> coef;
  double r2;
};

FitOutcome fit_model(const std::vector<PvSample>& values, bool with_log) {
  const std::size_t m = values.size();
  std::vector<std::vector<double>> cols;
  cols.emplace_back(m, 1.0);
  if (with_log) {
    std::vector<double> c(m);
    for (std::size_t i = 0; i < m; ++i) c[i] = std::log(1.0 / values[i].epsilon);
    cols.push_back(std::move(c));
  }
  // remainder terms only when enough samples remain to keep the fit overdetermined
  const std::size_t base = cols.size();
  const std::size_t extra = m > base + 2 ? std::min<std::size_t>(3, m - base - 2) : 0;
  for (std::size_t e = 1; e <= extra; ++e) {
    std::vector<double> c(m);
    for (std::size_t i = 0; i < m; ++i) c[i] = std::pow(values[i].epsilon, static_cast<double>(e));
    cols.push_back(std::move(c));
  }
  std::vector<cplx> y(m);
  for (std::size_t i = 0; i < m; ++i) y[i] = values[i].value;
  FitOutcome out{least_squares(cols, y), 1.0};

  cplx mean{};
  for (const auto& v : y) mean += v;
  mean /= static_cast<double>(m);
  double ss_tot = 0.0, ss_res = 0.0, mag = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    cplx pred{};
    for (std::size_t j = 0; j < cols.size(); ++j) pred += out.coef[j] * cols[j][i];
    ss_res += std::norm(y[i] - pred);
    ss_tot += std::norm(y[i] - mean);
    mag += std::norm(y[i]);
  }
  out.r2 = ss_tot <= 1e-26 * (1.0 + mag) ? 1.0 : 1.0 - ss_res / ss_tot;
  return out;
}

}  // namespace

PvResult classify_pv(std::vector<PvSample> values, const QuadratureSpec& spec) {
  PvResult res;
  res.values = std::move(values);
  if (res.values.size() < 3) {
    res.verdict = PvVerdict::inconclusive;
    if (!res.values.empty()) res.limit = res.values.back().value;
    return res;
  }
  const FitOutcome full = fit_model(res.values, true);
  const cplx b = full.coef[1];
  res.fit_quality = full.r2;
  if (std::abs(b) < spec.convergence_slope) {
    const FitOutcome conv = fit_model(res.values, false);
    res.verdict = PvVerdict::convergent;
    res.limit = conv.coef[0];
    res.fit_quality = conv.r2;
    return res;
  }
  if (full.r2 >= spec.divergence_fit_threshold) {
    res.verdict = PvVerdict::divergent_log;
    res.slope = std::abs(b);
    res.slope_coefficient = b;
  } else {
    res.verdict = PvVerdict::inconclusive;
  }
  res.limit = res.values.back().value;
  return res;
}

cplx truncated_integral(const std::function<cplx(double)>& f, double a, double b, double t0,
                        double eps, int order, double ratio, std::span<const double> breakpoints) {
  cplx total{};
  auto piece = [&](double from, double to) {
    // from is the excision edge; grade away from it
    if (std::fabs(to - from) <= 0.0) return;
    const double first = eps * (1.0 / ratio - 1.0);
    std::vector<double> br = graded_breaks(from, to, first, ratio);
    const double lo = std::min(from, to), hi = std::max(from, to);
    for (double bp : breakpoints)
      if (bp > lo && bp < hi) br.push_back(bp);
    std::sort(br.begin(), br.end());
    br.erase(std::unique(br.begin(), br.end()), br.end());
    total += integrate_panels(f, br, order);
  };
  if (t0 - eps > a) piece(t0 - eps, a);
  if (t0 + eps < b) piece(t0 + eps, b);
  return total;
}

PvResult integrate_pv(const std::function<cplx(double)>& f, double a, double b, double t0,
                      const QuadratureSpec& spec, std::span<const double> breakpoints) {
  if (!(a < b) || t0 < a || t0 > b) throw DomainError("integrate_pv needs a < b and t0 in [a, b]");
  std::vector<PvSample> values;
  values.reserve(spec.pv_epsilons.size());
  for (double eps : spec.pv_epsilons)
    values.push_back({eps, truncated_integral(f, a, b, t0, eps, spec.radial_order,
                                              spec.tail_ratio, breakpoints)});
  return classify_pv(std::move(values), spec);
}

// ---------------------------------------------------------------------------

std::size_t next_pow2(std::size_t n) {
  std::size_t p = 1;
  while (p < n) p <<= 1;
  return p;
}

double wrap_angle(double t) {
  double r = std::fmod(t, two_pi);
  if (r < 0) r += two_pi;
  if (r >= two_pi) r -= two_pi;
  return r;
}

}  // namespace poissonlab
