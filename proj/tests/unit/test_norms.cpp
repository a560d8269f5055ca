#include <doctest.h>

#include <cmath>

#include "poissonlab/norms.hpp"

using namespace poissonlab;

TEST_CASE("circle means") {
  std::vector<cplx> v{1.0, cplx(0, -2), 3.0, -4.0};
  CHECK(circle_mean(v, 1.0) == doctest::Approx(2.5));
  CHECK(circle_mean(v, 2.0) == doctest::Approx(std::sqrt(7.5)));
  CHECK(circle_mean(v, HUGE_VAL) == 4.0);
  CHECK_THROWS_AS(circle_mean(v, 0.9), DomainError);
}

TEST_CASE("bergman norms of monomials") {
  QuadratureSpec spec;
  for (int n : {0, 1, 3})
    for (double p : {1.0, 1.5, 2.0, 4.0}) {
      const auto f = disk_function([n](cplx z) { return std::pow(z, n); }, spec, "z^n");
      // int_D |z|^{np} dA / pi ... here the area measure is normalised by pi: 2 int r^{np+1} dr
      const double ref = std::pow(2.0 / (n * p + 2.0), 1.0 / p);
      CHECK(bergman_norm(f, p, spec).value == doctest::Approx(ref).epsilon(1e-12));
    }
}

TEST_CASE("bergman norm of a log-singular function matches tanh-sinh") {
  QuadratureSpec spec;
  // f(z) = log(1/(1 - z)) is regular inside; compare |f|^2 via the series
  // M_2(r)^2 = sum r^{2n}/n^2 = Li_2(r^2) and 2 int Li_2(r^2) r dr = int_0^1 Li_2(s) ds = pi^2/6 - 1.
  const auto f = disk_function([](cplx z) { return -std::log(1.0 - z); }, spec, "log");
  const auto e = bergman_norm(f, 2.0, spec);
  CHECK(e.value * e.value == doctest::Approx(pi * pi / 6 - 1).epsilon(1e-3));
}

TEST_CASE("hardy norm is the grid maximum") {
  QuadratureSpec spec;
  const auto f = disk_function([](cplx z) { return 1.0 + z * z; }, spec, "1+z^2");
  const auto grid = default_hardy_grid();
  REQUIRE(grid.size() == 12);
  CHECK(grid.front() == 0.75);
  CHECK(grid.back() == 1.0 - std::ldexp(1.0, -13));
  const auto e = hardy_norm(f, 2.0, grid, spec);
  const double r = grid.back();
  CHECK(e.value == doctest::Approx(std::sqrt(1 + std::pow(r, 4))).epsilon(1e-13));
  CHECK(e.monotone_flag);
  CHECK(e.sequence.size() == grid.size());
  CHECK(e.residual >= 0.0);
  CHECK_THROWS_AS(hardy_norm(f, 2.0, std::vector<double>{0.5, 0.4}, spec), DomainError);
}

TEST_CASE("abs_sin: integral means of w_r stay bounded while the maximum grows") {
  QuadratureSpec spec;
  const HarmonicMap w = extend(catalog("abs_sin"), spec, Route::spectral);
  const auto f = disk_function(w, Quantity::w_r);
  std::vector<double> m1, minf;
  for (int k = 1; k <= 5; ++k) {
    const double gap = std::pow(10.0, -k);
    const auto v = f.circle(1.0 - gap, gap, f.nodes(gap));
    m1.push_back(circle_mean(v, 1.0));
    minf.push_back(circle_mean(v, HUGE_VAL));
  }
  // increments of M_1 shrink by about a factor 10 per decade
  CHECK(std::fabs(m1[4] - m1[3]) < 1e-4);
  CHECK(std::fabs(m1[4] - m1[3]) < 0.2 * std::fabs(m1[3] - m1[2]));
  // the maximum grows like (2/pi) log(1/(1-r))
  for (int k = 2; k < 5; ++k) CHECK(minf[k] - minf[k - 1] == doctest::Approx(2.0 / pi * std::log(10.0)).epsilon(0.05));
}
