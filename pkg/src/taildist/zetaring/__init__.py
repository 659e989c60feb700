from taildist.zetaring.ratfunc import (
    K,
    RationalFunc,
    alternating_sum,
    alternating_sum_numeric,
)
from taildist.zetaring.ring import ZetaExpr, eta_value, numeric_eval, sum_exprs
from taildist.zetaring.series import (
    FormalSeries,
    series_add,
    series_compose,
    series_exp,
    series_mul,
    series_reciprocal,
    series_revert,
    series_scale,
    series_sub,
)

__all__ = [
    "K",
    "FormalSeries",
    "RationalFunc",
    "ZetaExpr",
    "alternating_sum",
    "alternating_sum_numeric",
    "eta_value",
    "numeric_eval",
    "series_add",
    "series_compose",
    "series_exp",
    "series_mul",
    "series_reciprocal",
    "series_revert",
    "series_scale",
    "series_sub",
    "sum_exprs",
]
