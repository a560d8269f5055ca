"""Harmonic extensions of circle maps and their norm inequalities."""

import json

from ._poissonlab import (
    DomainError,
    I_of_r,
    RouteDisagreement,
    __version__,
    c_of_p,
    deriv_norm,
    evaluate,
    families,
    hilbert,
    log_moment,
    phi_of_r,
    poisson_kernel,
    sakan_subintegrals,
    verify_json,
)


def verify(corpus=(), p_list=(), theorems=(), seed=0, workers=1):
    """Run the inequality checks and return the report as a dict.

    An empty corpus means the built-in one.
    """
    return json.loads(verify_json(list(corpus), list(p_list), list(theorems), seed, workers))


__all__ = [
    "DomainError",
    "I_of_r",
    "RouteDisagreement",
    "__version__",
    "c_of_p",
    "deriv_norm",
    "evaluate",
    "families",
    "hilbert",
    "log_moment",
    "phi_of_r",
    "poisson_kernel",
    "sakan_subintegrals",
    "verify",
    "verify_json",
]
