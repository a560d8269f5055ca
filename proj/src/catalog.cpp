#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>

#include "poissonlab/boundary.hpp"

namespace poissonlab {

namespace {

constexpr int exact_degree = 1 << 19;

std::string fmt(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string fmt(cplx v) {
  if (v.imag() == 0.0) return fmt(v.real());
  std::string im = fmt(v.imag()) + "i";
  if (v.real() == 0.0) return im;
  return fmt(v.real()) + (v.imag() >= 0 ? "+" : "") + im;
}

double parse_real(const std::string& key, const std::string& s) {
  double v = 0.0;
  auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc{} || res.ptr != s.data() + s.size())
    throw DomainError("bad number for " + key + ": '" + s + "'");
  return v;
}

cplx parse_complex(const std::string& key, std::string s) {
  if (s.empty()) throw DomainError("empty value for " + key);
  if (s.back() != 'i') return {parse_real(key, s), 0.0};
  s.pop_back();
  // split at the last sign that is not the leading one or part of an exponent
  for (std::size_t i = s.size(); i-- > 1;) {
    if ((s[i] == '+' || s[i] == '-') && s[i - 1] != 'e' && s[i - 1] != 'E') {
      const std::string im = s.substr(i);
      return {parse_real(key, s.substr(0, i)),
              im == "+" ? 1.0 : im == "-" ? -1.0 : parse_real(key, im[0] == '+' ? im.substr(1) : im)};
    }
  }
  if (s.empty() || s == "+") return {0.0, 1.0};
  if (s == "-") return {0.0, -1.0};
  return {0.0, parse_real(key, s)};
}

long parse_integer(const std::string& key, const std::string& s) {
  long v = 0;
  auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc{} || res.ptr != s.data() + s.size())
    throw DomainError("bad integer for " + key + ": '" + s + "'");
  return v;
}

std::string canonical_name(std::string name) {
  if (name.rfind("fam_", 0) == 0) name = name.substr(4);
  return name;
}

cplx finite_sum(const std::vector<cplx>& c, int N, double t) {
  cplx sum{};
  for (int n = -N; n <= N; ++n) sum += c[static_cast<std::size_t>(n + N)] * std::polar(1.0, n * t);
  return sum;
}

cplx finite_deriv(const std::vector<cplx>& c, int N, double t) {
  cplx sum{};
  for (int n = -N; n <= N; ++n)
    sum += cplx(0.0, n) * c[static_cast<std::size_t>(n + N)] * std::polar(1.0, n * t);
  return sum;
}

BoundaryParts finite_family(std::string descriptor, std::vector<cplx> c) {
  if (c.size() % 2 != 1) throw DomainError("coefficient list must have odd length 2N+1");
  const int N = static_cast<int>(c.size() / 2);
  BoundaryParts p;
  p.descriptor = std::move(descriptor);
  p.smoothness = Smoothness::analytic;
  p.eval = [c, N](double t) { return finite_sum(c, N, t); };
  p.deriv = [c, N](double t) { return finite_deriv(c, N, t); };
  p.spectrum = [c, N] {
    FourierSeries s;
    s.degree = N;
    s.coeffs = c;
    return s;
  };
  return p;
}

// Reduction of x to [-pi, pi).
double reduce(double x) { return x - two_pi * std::floor((x + pi) / two_pi); }

BoundaryFunction make_exp() {
  auto p = finite_family("exp", {0.0, 0.0, 1.0});
  p.eval = [](double t) { return std::polar(1.0, t); };
  p.deriv = [](double t) { return cplx(0.0, 1.0) * std::polar(1.0, t); };
  p.exact_K = 1.0;
  p.phase = PhaseFunction{[](double t) { return t; }, [](double) { return 1.0; },
                          [](double, double t) { return t; }, {}};
  return BoundaryFunction(std::move(p));
}

BoundaryFunction make_shear(cplx c) {
  if (!(std::abs(c) < 1.0)) throw DomainError("shear needs |c| < 1");
  auto p = finite_family("shear c=" + fmt(c), {c, 0.0, 1.0});
  p.eval = [c](double t) { return std::polar(1.0, t) + c * std::polar(1.0, -t); };
  p.deriv = [c](double t) {
    return cplx(0.0, 1.0) * (std::polar(1.0, t) - c * std::polar(1.0, -t));
  };
  p.exact_K = (1.0 + std::abs(c)) / (1.0 - std::abs(c));
  return BoundaryFunction(std::move(p));
}

BoundaryFunction make_abs_sin() {
  BoundaryParts p;
  p.descriptor = "abs_sin";
  p.smoothness = Smoothness::piecewise_smooth;
  p.real_valued = true;
  p.eval = [](double t) { return cplx(std::fabs(std::sin(t)), 0.0); };
  p.deriv = [](double t) {
    const double s = std::sin(t);
    return cplx(s >= 0.0 ? std::cos(t) : -std::cos(t), 0.0);
  };
  p.singular_points = {0.0, pi};
  p.spectrum = [] {
    FourierSeries s;
    s.degree = exact_degree;
    s.coeffs.assign(static_cast<std::size_t>(2 * exact_degree + 1), cplx{});
    s.coeffs[static_cast<std::size_t>(exact_degree)] = 2.0 / pi;
    for (int k = 1; 2 * k <= exact_degree; ++k) {
      const double v = -2.0 / (pi * (4.0 * k * k - 1.0));
      s.coeffs[static_cast<std::size_t>(exact_degree + 2 * k)] = v;
      s.coeffs[static_cast<std::size_t>(exact_degree - 2 * k)] = v;
    }
    const double K = exact_degree / 2;
    s.tail_bound = 2.0 / (pi * (2.0 * K + 1.0));
    return s;
  };
  return BoundaryFunction(std::move(p));
}

// phi(x) = x + 1 - |reduce(x)| / pi, i.e. 1 + (1 + 1/pi) x on [-pi, 0) and
// 1 + (1 - 1/pi) x on [0, pi], extended by phi(x + 2 pi) = phi(x) + 2 pi.
BoundaryFunction make_sakan() {
  PhaseFunction ph;
  ph.phi = [](double x) { return x + 1.0 - std::fabs(reduce(x)) / pi; };
  ph.phi_prime = [](double x) { return reduce(x) < 0.0 ? 1.0 + 1.0 / pi : 1.0 - 1.0 / pi; };
  ph.increment = [](double theta, double t) {
    return t + (std::fabs(reduce(theta)) - std::fabs(reduce(theta + t))) / pi;
  };
  ph.singular_points = {0.0, pi};

  BoundaryParts p;
  p.descriptor = "sakan";
  p.smoothness = Smoothness::piecewise_smooth;
  p.eval = [phi = ph.phi](double t) { return std::polar(1.0, phi(t)); };
  p.deriv = [phi = ph.phi, dphi = ph.phi_prime](double t) {
    return cplx(0.0, dphi(t)) * std::polar(1.0, phi(t));
  };
  p.singular_points = ph.singular_points;
  p.spectrum = [] {
    // c_n = e^i/(2 pi) [ (1 - e^{-i b1 pi})/(i b1) + (e^{i b2 pi} - 1)/(i b2) ],
    // b1 = 1 + 1/pi - n, b2 = 1 - 1/pi - n.
    FourierSeries s;
    s.degree = exact_degree;
    s.coeffs.resize(static_cast<std::size_t>(2 * exact_degree + 1));
    const cplx I(0.0, 1.0);
    const cplx pre = std::polar(1.0, 1.0) / two_pi;
    const cplx e1 = std::polar(1.0, -(pi + 1.0));
    const cplx e2 = std::polar(1.0, pi - 1.0);
    for (int n = -exact_degree; n <= exact_degree; ++n) {
      const double sign = (n % 2 == 0) ? 1.0 : -1.0;
      const double b1 = 1.0 + 1.0 / pi - n, b2 = 1.0 - 1.0 / pi - n;
      const cplx v = (1.0 - e1 * sign) / (I * b1) + (e2 * sign - 1.0) / (I * b2);
      s.coeffs[static_cast<std::size_t>(n + exact_degree)] = pre * v;
    }
    s.tail_bound = estimate_tail(s);
    return s;
  };
  p.phase = std::move(ph);
  return BoundaryFunction(std::move(p));
}

BoundaryFunction make_phase(double a, int k) {
  if (k < 1) throw DomainError("phase needs k >= 1");
  if (!(std::fabs(a) * k < 1.0)) throw DomainError("phase needs |a| k < 1 (homeomorphism)");
  PhaseFunction ph;
  ph.phi = [a, k](double t) { return t + a * std::sin(k * t); };
  ph.phi_prime = [a, k](double t) { return 1.0 + a * k * std::cos(k * t); };
  ph.increment = [a, k](double theta, double t) {
    return t + 2.0 * a * std::cos(k * (theta + 0.5 * t)) * std::sin(0.5 * k * t);
  };
  BoundaryParts p;
  p.descriptor = "phase a=" + fmt(a) + " k=" + std::to_string(k);
  p.smoothness = Smoothness::analytic;
  p.eval = [phi = ph.phi](double t) { return std::polar(1.0, phi(t)); };
  p.deriv = [phi = ph.phi, dphi = ph.phi_prime](double t) {
    return cplx(0.0, dphi(t)) * std::polar(1.0, phi(t));
  };
  p.phase = std::move(ph);
  return BoundaryFunction(std::move(p));
}

BoundaryFunction make_trigpoly(const FamilyParams& fp) {
  if (!fp.coeffs.empty()) {
    std::string d = "trigpoly coeffs=";
    for (std::size_t i = 0; i < fp.coeffs.size(); ++i) d += (i ? "," : "") + fmt(fp.coeffs[i]);
    return BoundaryFunction(finite_family(d, fp.coeffs));
  }
  const std::uint64_t seed = fp.seed.value_or(1);
  const int N = fp.degree.value_or(8);
  if (N < 1) throw DomainError("trigpoly needs degree >= 1");
  UniformStream rng(seed);
  std::vector<cplx> c(static_cast<std::size_t>(2 * N + 1));
  for (int n = -N; n <= N; ++n) {
    const double re = 2.0 * rng.next() - 1.0, im = 2.0 * rng.next() - 1.0;
    c[static_cast<std::size_t>(n + N)] = cplx(re, im) / (1.0 + std::abs(n));
  }
  return BoundaryFunction(
      finite_family("trigpoly seed=" + std::to_string(seed) + " degree=" + std::to_string(N), c));
}

BoundaryFunction make_random_ac(const FamilyParams& fp) {
  if (!fp.seed) throw DomainError("random_ac needs seed");
  if (!fp.s || !(*fp.s > 1.0)) throw DomainError("random_ac needs decay exponent s > 1");
  const int N = fp.degree.value_or(64);
  if (N < 1) throw DomainError("random_ac needs degree >= 1");
  const double s = *fp.s;
  UniformStream rng(*fp.seed);
  std::vector<cplx> c(static_cast<std::size_t>(2 * N + 1));
  for (int n = -N; n <= N; ++n) {
    const double re = 2.0 * rng.next() - 1.0, im = 2.0 * rng.next() - 1.0;
    const double scale = n == 0 ? 1.0 : std::pow(std::abs(n), -s);
    c[static_cast<std::size_t>(n + N)] = cplx(re, im) * scale;
  }
  auto p = finite_family("random_ac seed=" + std::to_string(*fp.seed) + " s=" + fmt(s) +
                             " degree=" + std::to_string(N),
                         c);
  return BoundaryFunction(std::move(p));
}

}  // namespace

std::string FamilySpec::to_string() const {
  std::string out = name;
  const auto& p = params;
  if (p.c) out += " c=" + fmt(*p.c);
  if (p.seed) out += " seed=" + std::to_string(*p.seed);
  if (p.s) out += " s=" + fmt(*p.s);
  if (p.degree) out += " degree=" + std::to_string(*p.degree);
  if (p.a) out += " a=" + fmt(*p.a);
  if (p.k) out += " k=" + std::to_string(*p.k);
  if (!p.coeffs.empty()) {
    out += " coeffs=";
    for (std::size_t i = 0; i < p.coeffs.size(); ++i) out += (i ? "," : "") + fmt(p.coeffs[i]);
  }
  return out;
}

FamilySpec parse_family(const std::string& line) {
  std::istringstream is(line);
  FamilySpec spec;
  if (!(is >> spec.name)) throw DomainError("empty family entry");
  spec.name = canonical_name(spec.name);
  std::string tok;
  while (is >> tok) {
    const auto eq = tok.find('=');
    if (eq == std::string::npos) throw DomainError("expected key=value, got '" + tok + "'");
    const std::string key = tok.substr(0, eq), val = tok.substr(eq + 1);
    auto& p = spec.params;
    if (key == "c") p.c = parse_complex(key, val);
    else if (key == "seed") {
      const long v = parse_integer(key, val);
      if (v < 0) throw DomainError("seed must be nonnegative");
      p.seed = static_cast<std::uint64_t>(v);
    } else if (key == "s") p.s = parse_real(key, val);
    else if (key == "degree") p.degree = static_cast<int>(parse_integer(key, val));
    else if (key == "a") p.a = parse_real(key, val);
    else if (key == "k") p.k = static_cast<int>(parse_integer(key, val));
    else if (key == "coeffs") {
      std::string item;
      std::istringstream cs(val);
      while (std::getline(cs, item, ',')) p.coeffs.push_back(parse_complex(key, item));
    } else throw DomainError("unknown parameter '" + key + "'");
  }
  return spec;
}

std::vector<FamilySpec> parse_corpus(const std::string& text) {
  std::vector<FamilySpec> out;
  std::istringstream is(text);
  std::string line;
  while (std::getline(is, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    out.push_back(parse_family(line));
  }
  return out;
}

std::vector<std::string> catalog_names() {
  return {"exp", "abs_sin", "shear", "sakan", "trigpoly", "random_ac", "phase"};
}

BoundaryFunction catalog(const std::string& name, const FamilyParams& params) {
  const std::string n = canonical_name(name);
  if (n == "exp") return make_exp();
  if (n == "abs_sin") return make_abs_sin();
  if (n == "shear") return make_shear(params.c.value_or(0.0));
  if (n == "sakan") return make_sakan();
  if (n == "trigpoly") return make_trigpoly(params);
  if (n == "random_ac") return make_random_ac(params);
  if (n == "phase") return make_phase(params.a.value_or(0.3), params.k.value_or(1));
  throw DomainError("unknown family '" + name + "'");
}

BoundaryFunction catalog(const FamilySpec& spec) { return catalog(spec.name, spec.params); }

}  // namespace poissonlab
