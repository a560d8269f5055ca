#include <doctest.h>

#include <cmath>

#include "poissonlab/verify.hpp"

using namespace poissonlab;

TEST_CASE("settle applies the relative tolerance") {
  InequalityCheck c;
  c.lhs = 1.0 + 0.5e-9;
  c.rhs = 1.0;
  settle(c);
  CHECK(c.pass());
  CHECK(c.tight);
  c.lhs = 1.0 + 2e-9;
  settle(c);
  CHECK(c.status == CheckStatus::fail);
  c.lhs = 0.5;
  settle(c);
  CHECK(c.pass());
  CHECK_FALSE(c.tight);
  CHECK(c.margin == 0.5);
  c.lhs = NAN;
  settle(c);
  CHECK(c.status == CheckStatus::fail);
  c.status = CheckStatus::skip;
  settle(c);
  CHECK(std::isnan(c.lhs));
}

TEST_CASE("theorem ids") {
  CHECK(theorem_from_string("thm2") == TheoremId::thm_wz_bergman);
  CHECK(theorem_from_string("lemma_wtheta") == TheoremId::lemma_wtheta);
  CHECK(to_string(TheoremId::thm_qr_hardy) == "thm_qr_hardy");
  CHECK_THROWS_AS(theorem_from_string("thm9"), DomainError);
}

TEST_CASE("single checks") {
  QuadratureSpec spec;
  const auto E = catalog("exp");
  const auto l = check_lemma_wtheta(E, 2.0, {0.5, 0.9}, spec);
  CHECK(l.pass());
  CHECK(l.lhs == doctest::Approx(0.9).epsilon(1e-12));
  CHECK(l.rhs == doctest::Approx(1.0).epsilon(1e-12));

  // ||w_r||_{L^1} for w = z is 2 int r dr = 1
  const auto t1 = check_thm1(E, 1.0, spec);
  CHECK(t1.pass());
  CHECK(t1.lhs == doctest::Approx(1.0).epsilon(1e-12));
  CHECK_THROWS_AS(check_thm1(E, HUGE_VAL, spec), DomainError);

  const auto [a, b] = check_thm2(E, 1.5, spec);
  CHECK(a.pass());
  CHECK(b.pass());
  CHECK(b.lhs == doctest::Approx(0.0).scale(1.0));
  CHECK_THROWS_AS(check_thm2(E, 2.0, spec), DomainError);
}

TEST_CASE("shear hardy check uses the exact K") {
  QuadratureSpec spec;
  for (double c : {0.0, 0.3, 0.9}) {
    FamilyParams p;
    p.c = c;
    const auto F = catalog("shear", p);
    const auto [z, zb] = check_thm3(F, 2.0, spec);
    CHECK(z.pass());
    CHECK(zb.pass());
    CHECK(z.lhs == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(std::fabs(zb.lhs - c) < 1e-10);
    const double K = (1 + c) / (1 - c);
    CHECK(z.metrics.at(0).first == "K");
    CHECK(z.metrics.at(0).second == doctest::Approx(K));
    CHECK(z.note == "K from closed form");
  }
}

TEST_CASE("sakan is not quasiregular and the hardy check skips") {
  QuadratureSpec spec;
  const auto F = catalog("sakan");
  const auto q = quasiregular_witness(F, spec);
  CHECK_FALSE(q.quasiregular);
  CHECK_FALSE(q.closed_form);
  CHECK(q.boundary_sup > 0.99);
  const auto [z, zb] = check_thm3(F, 1.0, spec);
  CHECK(z.status == CheckStatus::skip);
  CHECK(zb.status == CheckStatus::skip);
}

TEST_CASE("smooth phase map is quasiregular with a grid K") {
  QuadratureSpec spec;
  FamilyParams p;
  p.a = 0.3;
  p.k = 1;
  const auto q = quasiregular_witness(catalog("phase", p), spec);
  CHECK(q.quasiregular);
  CHECK(q.K > 1.0);
  CHECK(std::isfinite(q.K));
}

TEST_CASE("corpus runs are independent of the worker count") {
  QuadratureSpec spec;
  std::vector<FamilySpec> corpus;
  for (const char* s : {"exp", "shear c=0.5", "trigpoly seed=3 degree=8", "random_ac seed=2 s=2", "phase a=0.2 k=2"})
    corpus.push_back(parse_family(s));
  VerifyOptions o;
  o.p_list = {1.0, 1.5, HUGE_VAL};
  const auto a = run_corpus(corpus, o, spec, 9);
  o.workers = 3;
  const auto b = run_corpus(corpus, o, spec, 9);
  CHECK(a == b);
  CHECK(a.failed == 0);
  CHECK(a.passed + a.skipped == static_cast<int>(a.checks.size()));
  // order: family, then theorem
  CHECK(a.checks.front().family == "exp");
  CHECK(a.checks.front().theorem_id == TheoremId::lemma_wtheta);
  CHECK(a.checks.back().family == "phase a=0.2 k=2");
  CHECK_THROWS_AS(run_corpus({}, o, spec), DomainError);
}

TEST_CASE("default corpus") {
  const auto c = default_corpus(0);
  CHECK(c.size() >= 50);
  CHECK(default_corpus(5)[20].to_string() != c[20].to_string());
}
