"""Integral form of the tail exponent.

    I(y, s) = int_e^y log(1 + x e^(-s/x)) dx/log x
            + int_y^(y log y) log(1 + e^(s/x)/x) dx/log x

and the estimate -y + min_{s in J} I(y, s) over J = [y log y - y, y log y + y].
Both integrands are softplus functions of expressions linear in s, so I is
convex in s; the line search still audits that on a grid.
"""

from __future__ import annotations

import logging
import math

import numpy as np
from pydantic import BaseModel, ConfigDict
from scipy import integrate, optimize

from taildist.config import Settings, get_settings
from taildist.errors import DomainError
from taildist.saddle import y_of_t
from taildist.wfunc import log_w_we, solve_z

logger = logging.getLogger(__name__)

_BREAK_FACTORS = (0.25, 0.5, 1.0, 2.0, 4.0)
# y within this relative distance of e counts as the degenerate case y = e
_DEGENERATE_REL = 1e-12


class IntegralEstimate(BaseModel):
    model_config = ConfigDict(frozen=True)

    y: float
    j_lo: float
    j_hi: float
    s_min: float
    I_min: float
    log_value: float
    quadrature_error: float
    panels: int
    interior: bool
    audit_passed: bool


def _lower_integrand(x: float, s: float) -> float:
    return float(np.logaddexp(0.0, math.log(x) - s / x)) / math.log(x)


def _upper_integrand(x: float, s: float) -> float:
    return float(np.logaddexp(0.0, s / x - math.log(x))) / math.log(x)


def _quad(f, a: float, b: float, s: float, breaks: list[float], tol: float, limit: int):
    if b <= a:
        return 0.0, 0.0, 0
    points = [p for p in breaks if a < p < b] or None
    out = integrate.quad(
        f, a, b, args=(s,), points=points, epsabs=tol, epsrel=tol, limit=limit, full_output=1
    )
    value, error, info = out[0], out[1], out[2]
    return value, error, int(info["last"])


def integral_with_error(
    y: float, s: float, tol: float | None = None, settings: Settings | None = None
) -> tuple[float, float, int]:
    """I(y, s) with its quadrature error estimate and the number of panels used."""
    settings = settings or get_settings()
    tol = settings.quad_tol if tol is None else tol
    if y < math.e * (1 - _DEGENERATE_REL):
        raise DomainError(f"I(y, s) needs y >= e, got {y}")
    if s <= 0:
        raise DomainError(f"I(y, s) needs s > 0, got {s}")
    if tol <= 0:
        raise DomainError("tol must be > 0")
    if y <= math.e * (1 + _DEGENERATE_REL):
        return 0.0, 0.0, 0
    z = solve_z(s, settings)
    breaks = [z * f for f in _BREAK_FACTORS]
    top = y * math.log(y)
    v1, e1, n1 = _quad(_lower_integrand, math.e, y, s, breaks, tol, settings.quad_limit)
    v2, e2, n2 = _quad(_upper_integrand, y, top, s, breaks, tol, settings.quad_limit)
    value, error = v1 + v2, e1 + e2
    if error > tol * max(1.0, abs(value)):
        logger.warning("Quadrature error %.3g for I(%g, %g) exceeds tolerance", error, y, s)
    return value, error, n1 + n2


def integral_I(
    y: float, s: float, tol: float | None = None, settings: Settings | None = None
) -> float:
    return integral_with_error(y, s, tol, settings)[0]


def _unimodal(values: np.ndarray) -> bool:
    """Finite differences change sign at most once, from - to +."""
    signs = np.sign(np.diff(values))
    signs = signs[signs != 0]
    if signs.size == 0:
        return True
    changes = np.flatnonzero(np.diff(signs))
    return changes.size == 0 or (changes.size == 1 and signs[0] < 0)


def thm2_estimate(
    t: float, tol: float | None = None, settings: Settings | None = None
) -> IntegralEstimate:
    """-y + min_{s in J} I(y, s) by bounded Brent/golden-section search."""
    settings = settings or get_settings()
    tol = settings.quad_tol if tol is None else tol
    y = y_of_t(t)
    if y < math.e * (1 - _DEGENERATE_REL):
        raise DomainError(f"t={t} gives y={y} < e")
    if y <= math.e * (1 + _DEGENERATE_REL):
        y = math.e
        return IntegralEstimate(
            y=y, j_lo=0.0, j_hi=2.0 * y, s_min=y, I_min=0.0, log_value=-y,
            quadrature_error=0.0, panels=0, interior=True, audit_passed=True,
        )

    center = y * math.log(y)
    j_lo, j_hi = max(center - y, 1e-9 * y), center + y
    xatol = settings.line_search_xtol * y
    panels = 0

    def objective(s: float) -> float:
        nonlocal panels
        value, _, n = integral_with_error(y, s, tol, settings)
        panels += n
        return value

    grid = np.linspace(j_lo, j_hi, settings.audit_points)
    samples = np.array([objective(s) for s in grid])
    audit_passed = _unimodal(samples)
    if audit_passed:
        lo, hi = j_lo, j_hi
    else:
        logger.warning("Unimodality audit failed for y=%g; refining around the grid minimum", y)
        i = int(np.argmin(samples))
        lo, hi = grid[max(i - 1, 0)], grid[min(i + 1, grid.size - 1)]

    res = optimize.minimize_scalar(
        objective, bounds=(lo, hi), method="bounded", options={"xatol": xatol}
    )
    s_min, i_min = float(res.x), float(res.fun)

    # endpoint checks
    edge_lo, edge_hi = samples[0], samples[-1]
    if edge_lo < i_min:
        s_min, i_min = j_lo, float(edge_lo)
    if edge_hi < i_min:
        s_min, i_min = j_hi, float(edge_hi)
    interior = j_lo + 10 * xatol < s_min < j_hi - 10 * xatol
    if not interior:
        logger.warning("Minimizer of I(%g, .) sits at the edge of J (s=%g)", y, s_min)

    _, error, _ = integral_with_error(y, s_min, tol, settings)
    logger.info("Integral estimate for t=%g: s_min=%.8g, %d panels", t, s_min, panels)
    return IntegralEstimate(
        y=y, j_lo=j_lo, j_hi=j_hi, s_min=s_min, I_min=i_min, log_value=-y + i_min,
        quadrature_error=error, panels=panels, interior=interior, audit_passed=audit_passed,
    )


def thm2_prime_form(t: float, s: float, settings: Settings | None = None) -> float:
    """Prime-sum counterpart of -y + I(y, s): the e^(-s/p) product form at
    u = y, v = y log y, minus s log t."""
    y = y_of_t(t)
    if y < 2:
        raise DomainError(f"t={t} gives y={y} < 2")
    return log_w_we(s, y, y * math.log(y), settings, check_cutoff=False) - s * math.log(t)
