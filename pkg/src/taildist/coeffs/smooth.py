"""The prime-free saddle model.

With z = e^L and s = z log z, replacing log W(s) by its expansion in 1/log z
turns the Chernoff exponent into

    f(L) = e^L (L log(L/l) - 1 + sum_k b_k / L^k),    l = log y,

whose minimum expands as -y + y sum_k c_k / l^k. Minimizing f in extended
precision checks the c_k independently of any prime sum.
"""

from __future__ import annotations

import logging

import mpmath

from taildist.coeffs.state import CoefficientSet
from taildist.errors import DomainError

logger = logging.getLogger(__name__)


def smooth_saddle_min(
    t: float, m: int, coeffs: CoefficientSet, precision: int = 50
) -> tuple[mpmath.mpf, mpmath.mpf]:
    """Return (L*, min f) for the model truncated at order m."""
    if m < 2 or m > coeffs.m:
        raise DomainError(f"order {m} outside 2..{coeffs.m}")
    with mpmath.workdps(precision):
        ell = mpmath.mpf(t) * mpmath.exp(-mpmath.euler)
        if ell <= 1:
            raise DomainError("the smooth model needs log y > 1")
        b = {k: coeffs.b[k].numeric(precision) for k in range(2, m + 1)}

        def stationarity(L):
            tail = mpmath.fsum(b[k] * (L ** -k - k * L ** (-k - 1)) for k in b)
            return (L + 1) * mpmath.log(L / ell) + tail

        def model(L):
            tail = mpmath.fsum(b[k] * L ** -k for k in b)
            return mpmath.exp(L) * (L * mpmath.log(L / ell) - 1 + tail)

        L_star = mpmath.findroot(stationarity, ell)
        value = model(L_star)
        logger.debug("Smooth model at t=%s, m=%d: L*=%s", t, m, mpmath.nstr(L_star, 20))
        return +L_star, +value


def smooth_expansion(t: float, m: int, coeffs: CoefficientSet, precision: int = 50) -> mpmath.mpf:
    """-y + y sum_{k<=m} c_k / (log y)^k."""
    with mpmath.workdps(precision):
        ell = mpmath.mpf(t) * mpmath.exp(-mpmath.euler)
        y = mpmath.exp(ell)
        series = mpmath.fsum(coeffs.c[k].numeric(precision) / ell**k for k in range(2, m + 1))
        return -y + y * series
