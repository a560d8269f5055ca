import cmath
import math

import pytest

import poissonlab as pl


def test_kernel_and_families():
    assert pl.poisson_kernel(0.0, 1.0) == pytest.approx(1 / (2 * math.pi))
    assert "sakan" in pl.families()


def test_evaluate_exp():
    v = pl.evaluate("exp", 0.3, 1.0)
    assert abs(v - 0.3 * cmath.exp(1j)) < 1e-12


def test_abs_sin_closed_form():
    r = 0.5
    L = math.log((1 + r) / (1 - r))
    assert pl.evaluate("abs_sin", r, 0.0, "w").real == pytest.approx((1 - r * r) / (math.pi * r) * L, abs=1e-10)


def test_constants():
    c = pl.c_of_p(1.0)
    assert c["c_weighted"] == pytest.approx(4 * math.log(2) / math.pi, rel=1e-10)
    assert c["table_matches_unweighted"] and not c["table_matches_weighted"]


def test_hilbert_sakan_diverges():
    h = pl.hilbert("sakan", 0.0)
    assert h["verdict"] == "divergent-log"
    assert 0.18 <= h["slope"] <= 0.23


def test_verify_small_corpus():
    rep = pl.verify(["exp", "shear c=0.5"], [1.0, 1.5], ["thm1", "thm2"])
    assert rep["meta"]["version"] == pl.__version__
    assert rep["checks"] and all(c["status"] == "pass" for c in rep["checks"])


def test_domain_error():
    with pytest.raises(ValueError):
        pl.c_of_p(0.5)
    with pytest.raises(ValueError):
        pl.evaluate("nope", 0.1, 0.0)
