#include <doctest.h>

#include <boost/math/quadrature/tanh_sinh.hpp>
#include <cmath>

#include "poissonlab/poisson.hpp"
#include "poissonlab/singular.hpp"

using namespace poissonlab;

TEST_CASE("hilbert transform of smooth maps") {
  QuadratureSpec spec;
  // For F = e^{it}, H[F'] = e^{i theta}
  for (double th : {0.0, 1.0, 3.0}) {
    const auto h = hilbert_transform(catalog("exp"), th, spec);
    CHECK(h.verdict == PvVerdict::convergent);
    CHECK(std::abs(h.limit - std::polar(1.0, th)) < 1e-9);
  }
  // boundary limit of r w_r for a trig polynomial
  FamilyParams p;
  p.seed = 4;
  p.degree = 5;
  const auto F = catalog("trigpoly", p);
  const HarmonicMap w = extend(F, spec, Route::spectral);
  const double th = 0.8;
  const auto h = hilbert_transform(F, th, spec);
  CHECK(h.verdict == PvVerdict::convergent);
  CHECK(std::abs(h.limit - w.d_r(1.0 - 1e-12, th)) < 1e-8);
}

TEST_CASE("sakan hilbert transform diverges logarithmically at 0") {
  QuadratureSpec spec;
  spec.pv_epsilons = QuadratureSpec::geometric_epsilons(1e-2, 1e-6, 17);
  const auto h = hilbert_transform(catalog("sakan"), 0.0, spec);
  CHECK(h.verdict == PvVerdict::divergent_log);
  CHECK(h.slope == doctest::Approx(2.0 / (pi * pi)).epsilon(1e-4));
  // away from the corners it converges
  CHECK(hilbert_transform(catalog("sakan"), 1.0, spec).verdict == PvVerdict::convergent);
}

TEST_CASE("sakan sub-integrals against tanh-sinh and closed forms") {
  QuadratureSpec spec;
  const auto s = sakan_subintegrals(spec);
  boost::math::quadrature::tanh_sinh<double> ts;
  const double pi2 = pi * pi;
  // sin^2(t/2)/tan(t/2) = sin(t)/2, sin t / tan(t/2) = 1 + cos t
  const double a = ts.integrate([&](double t) { return std::sin(t) * std::cos(t / pi) / pi2; }, 0.0, pi);
  const double b = ts.integrate([&](double t) { return (1 + std::cos(t)) * std::cos(t / pi) / pi2; }, 0.0, pi);
  const double c = ts.integrate([&](double t) { return t > 0 ? std::sin(t / pi) / std::tan(0.5 * t) / pi : 2.0 / pi2; }, 0.0, pi);
  CHECK(s.first == doctest::Approx(a).epsilon(1e-12));
  CHECK(s.second == doctest::Approx(b).epsilon(1e-12));
  CHECK(s.third == doctest::Approx(c).epsilon(1e-12));
  CHECK(s.first == doctest::Approx((1 + std::cos(1.0)) / (pi2 - 1)).epsilon(1e-10));
  CHECK(s.second == doctest::Approx(pi * std::sin(1.0) / (pi2 - 1)).epsilon(1e-10));
  CHECK(s.third <= 2.0 / pi);
}

TEST_CASE("cauchy integral of boundary values of analytic functions") {
  QuadratureSpec spec;
  // For phi(u) = u^2 the principal value equals phi(zeta)/2.
  const double x = 0.7;
  const auto c = cauchy_singular([](double t) { return std::polar(1.0, 2 * t); }, x, spec);
  CHECK(c.verdict == PvVerdict::convergent);
  CHECK(std::abs(c.limit - 0.5 * std::polar(1.0, 2 * x)) < 1e-9);
  // conj(u) has analytic part 0 inside: p.v. = -conj(zeta)/2
  const auto d = cauchy_singular([](double t) { return std::polar(1.0, -t); }, x, spec);
  CHECK(std::abs(d.limit + 0.5 * std::polar(1.0, -x)) < 1e-9);
}

TEST_CASE("identity linking the cauchy integral and V, V*") {
  QuadratureSpec spec;
  FamilyParams p;
  p.a = 0.3;
  p.k = 1;
  for (const auto& F : {catalog("exp"), catalog("phase", p)})
    for (double x : {0.0, 1.1, 4.0}) {
      const auto r = theorem_a_residual(F, x, spec);
      CHECK(r.defined);
      CHECK(r.residual < 1e-8);
    }
  // V for the identity: |e^{is} - 1|^2 / (2 sin(s/2))^2 = 1, so V = 1
  const auto v = v_functionals(catalog("exp"), 0.5, spec);
  CHECK(v.V.limit.real() == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("boundary moduli agree with the interior derivatives near the circle") {
  QuadratureSpec spec;
  FamilyParams p;
  p.a = 0.2;
  p.k = 2;
  const auto F = catalog("phase", p);
  const HarmonicMap w = extend(F, spec, Route::spectral);
  for (double th : {0.3, 2.0}) {
    const auto prof = boundary_moduli(F, th, spec);
    const auto b = w.wirtinger(1.0 - 1e-10, th);
    CHECK(prof.wz_mod == doctest::Approx(std::abs(b.w_z)).epsilon(1e-7));
    CHECK(prof.wzbar_mod == doctest::Approx(std::abs(b.w_zbar)).epsilon(1e-7));
    CHECK(prof.ratio < 1.0);
  }
  CHECK_THROWS_AS(boundary_moduli(catalog("abs_sin"), 0.1, spec), DomainError);
}

TEST_CASE("sakan boundary ratio approaches 1 at the corners") {
  QuadratureSpec spec;
  const auto F = catalog("sakan");
  const auto near = boundary_moduli(F, 1e-8, spec, false);
  const auto far = boundary_moduli(F, 1.0, spec, false);
  CHECK(near.ratio > far.ratio);
  CHECK(boundary_ratio_sup(F, spec) > 0.99);
  CHECK(boundary_moduli(F, 0.0, spec, false).b_flagged);
}
