#include <doctest.h>

#include <boost/math/quadrature/tanh_sinh.hpp>
#include <cmath>

#include "poissonlab/poisson.hpp"

using namespace poissonlab;

TEST_CASE("kernel is normalised and positive") {
  boost::math::quadrature::tanh_sinh<double> ts;
  for (double r : {0.0, 0.3, 0.9, 0.999}) {
    auto k = [r](double x) { return poisson_kernel(r, x); };
    const double v = ts.integrate(k, -pi, 0.0) + ts.integrate(k, 0.0, pi);
    CHECK(v == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(poisson_kernel(r, pi) > 0.0);
  }
  CHECK_THROWS_AS(poisson_kernel(1.0, 0.0), DomainError);
}

TEST_CASE("exp extends to the identity") {
  const HarmonicMap w = extend(catalog("exp"), QuadratureSpec{});
  for (double r : {0.0, 0.2, 0.7, 0.95, 0.999})
    for (double th : {0.0, 1.0, 4.0}) {
      CHECK(std::abs(w.eval(r, th) - std::polar(r, th)) < 1e-12);
      const auto b = w.wirtinger(r, th);
      CHECK(std::abs(b.w_z - 1.0) < 1e-11);
      CHECK(std::abs(b.w_zbar) < 1e-11);
      CHECK(b.jacobian == doctest::Approx(1.0).epsilon(1e-10));
    }
}

TEST_CASE("shear extends to z + c conj(z)") {
  FamilyParams p;
  p.c = cplx(0.3, -0.2);
  const HarmonicMap w = extend(catalog("shear", p), QuadratureSpec{});
  for (double r : {0.1, 0.5, 0.9})
    for (double th : {0.3, 2.0}) {
      const cplx z = std::polar(r, th);
      CHECK(std::abs(w.eval(r, th) - (z + *p.c * std::conj(z))) < 1e-12);
      CHECK(std::abs(w.value(Quantity::w_zbar, r, th) - *p.c) < 1e-11);
      CHECK(std::abs(w.value(Quantity::conj_w_zbar, r, th) - std::conj(*p.c)) < 1e-11);
      // w_theta = i z - i c conj(z), w_r = z/r + c conj(z)/r
      CHECK(std::abs(w.d_theta(r, th) - (cplx(0, 1) * z - cplx(0, 1) * *p.c * std::conj(z))) < 1e-11);
      CHECK(std::abs(w.d_r(r, th) - (z + *p.c * std::conj(z)) / r) < 1e-11);
    }
  const auto d = dilatation_sup(w, std::vector<double>{0.5, 0.9}, 64);
  CHECK(d.sup == doctest::Approx(std::abs(*p.c)).epsilon(1e-10));
}

TEST_CASE("routes agree on a random trigonometric polynomial") {
  FamilyParams p;
  p.seed = 11;
  p.degree = 8;
  const auto F = catalog("trigpoly", p);
  const HarmonicMap w = extend(F, QuadratureSpec{}, Route::both);
  for (double r : {0.0, 0.4, 0.8, 0.98})
    for (double th : {0.0, 0.9, 3.3})
      for (Quantity q : {Quantity::w, Quantity::w_r, Quantity::w_theta, Quantity::w_z, Quantity::w_zbar})
        CHECK_NOTHROW(w.value(q, r, th));
  // boundary values are reproduced as r -> 1
  const double t = 1.234;
  CHECK(std::abs(w.eval(1.0 - 1e-9, t) - F.eval(t)) < 1e-7);
}

TEST_CASE("abs_sin closed forms on the real axis") {
  const HarmonicMap w = extend(catalog("abs_sin"), QuadratureSpec{}, Route::both);
  for (double r : {0.1, 0.5, 0.9}) {
    const double L = std::log((1 + r) / (1 - r));
    CHECK(w.eval(r, 0.0).real() == doctest::Approx((1 - r * r) / (pi * r) * L).epsilon(1e-10));
    CHECK(w.d_r(r, 0.0).real() == doctest::Approx((2 * r - (1 + r * r) * L) / (pi * r * r)).epsilon(1e-10));
    CHECK(std::abs(w.d_theta(r, 0.0)) < 1e-10);
  }
  CHECK(w.eval(0.0, 1.0).real() == doctest::Approx(2.0 / pi));
}

TEST_CASE("circle sampling matches pointwise evaluation") {
  const HarmonicMap w = extend(catalog("sakan"), QuadratureSpec{}, Route::spectral);
  const double gap = 1.0 / 256, r = 1.0 - gap;
  const std::size_t m = w.circle_nodes(gap);
  const auto v = w.circle(Quantity::w_z, r, gap, m);
  REQUIRE(v.size() == m);
  for (std::size_t k : {std::size_t(0), m / 3, m - 1}) {
    const double th = two_pi * static_cast<double>(k) / static_cast<double>(m);
    CHECK(std::abs(v[k] - w.value(Quantity::w_z, r, th)) < 1e-10);
  }
  CHECK(w.effective_degree(gap) <= w.spectral().degree);
}

TEST_CASE("sakan dilatation stays below 1 inside the disk") {
  const HarmonicMap w = extend(catalog("sakan"), QuadratureSpec{}, Route::spectral);
  const auto d1 = dilatation_sup(w, std::vector<double>{0.9}, 256);
  const auto d2 = dilatation_sup(w, std::vector<double>{0.999}, 1024);
  CHECK(d1.sup < d2.sup);
  CHECK(d2.sup < 1.0);
}
