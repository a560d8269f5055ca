#include <doctest.h>

#include <boost/math/quadrature/tanh_sinh.hpp>
#include <cmath>

#include "poissonlab/constants.hpp"

using namespace poissonlab;

namespace {

double oracle(double p, bool weighted) {
  boost::math::quadrature::tanh_sinh<double> ts;
  return ts.integrate(
      [p, weighted](double r, double rc) {
        if (r == 0.0) return std::pow(4.0 / pi, p) * (weighted ? 0.0 : 1.0);
        // rc is 1 - r near the right end
        const double gap = r > 0.5 ? rc : 1.0 - r;
        const double I = 2.0 * (std::log1p(r) - std::log(gap)) / (pi * r);
        return std::pow(I, p) * (weighted ? r : 1.0);
      },
      0.0, 1.0);
}

}  // namespace

TEST_CASE("I(r) closed form against the defining integral") {
  QuadratureSpec spec;
  for (double r : {0.0, 0.2, 0.6, 0.95, 0.999})
    CHECK(I_integral(r, spec) == doctest::Approx(I_of_r(r)).epsilon(1e-11));
  CHECK(I_of_r(0.0) == doctest::Approx(4.0 / pi));
  CHECK_THROWS_AS(I_of_r(1.0), DomainError);
}

TEST_CASE("weighted and unweighted C(p) against tanh-sinh") {
  QuadratureSpec spec;
  for (double p : {1.0, 1.5, 2.0, 3.0, 5.0, 8.0}) {
    const auto c = c_of_p(p, spec);
    CHECK(c.c_weighted == doctest::Approx(oracle(p, true)).epsilon(1e-10));
    CHECK(c.c_unweighted == doctest::Approx(oracle(p, false)).epsilon(1e-10));
    CHECK(c.bound_satisfied_weighted);
    CHECK(c.c_weighted <= c.c_bound);
  }
  CHECK(c_weighted(1.0, spec) == doctest::Approx(4.0 * std::log(2.0) / pi).epsilon(1e-12));
}

TEST_CASE("table flags") {
  QuadratureSpec spec;
  for (int p = 1; p <= 4; ++p) {
    const auto c = c_of_p(p, spec);
    CHECK(c.table_value.has_value());
    CHECK(c.table_matches_unweighted);
    CHECK_FALSE(c.table_matches_weighted);
  }
  // the quoted p = 5 value is pi times the unweighted integral
  const auto c5 = c_of_p(5.0, spec);
  CHECK_FALSE(c5.table_matches_unweighted);
  CHECK(*c5.table_value / pi == doctest::Approx(c5.c_unweighted).epsilon(1e-9));
  CHECK_FALSE(c_of_p(1.5, spec).table_value.has_value());
  CHECK_THROWS_AS(c_of_p(0.5, spec), DomainError);
}

TEST_CASE("gamma bound values") {
  CHECK(c_bound(1.0) == doctest::Approx((2.0 + 1.5) / pi));
  CHECK(c_bound(2.0) == doctest::Approx(4.0 / (pi * pi) * (4.0 + 1.75 * 2.0)));
}

TEST_CASE("phi is increasing with phi(0) = -2") {
  CHECK(phi_of_r(0.0) == -2.0);
  CHECK(phi_of_r(1e-8) == doctest::Approx(-2.0).epsilon(1e-7));
  std::vector<double> grid;
  for (int i = 1; i < 1000; ++i) grid.push_back(i / 1000.0);
  grid.push_back(1.0 - 1e-12);
  const auto m = phi_monotone_check(grid);
  CHECK(m.pass);
  CHECK(m.min_slope > 0.0);
  CHECK(m.min_value >= -2.0);
}

TEST_CASE("log moments") {
  QuadratureSpec spec;
  for (double a : {0.0, 0.5, 3.0})
    for (double p : {1.0, 2.5, 6.0})
      CHECK(log_moment(a, p, spec) == doctest::Approx(std::tgamma(p) / std::pow(1 + a, p)).epsilon(1e-10));
  CHECK_THROWS_AS(log_moment(-1.0, 2.0, spec), DomainError);
}
