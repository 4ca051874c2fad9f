import logging
import math
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

import numpy as np
from scipy import stats

from cauchytool.errors import InvalidParameterError
from cauchytool.overlap.table import OverlapTable
from cauchytool.walk.law import IncrementLaw
from cauchytool.walk.llt import DEFAULT_WINDOW_MULTIPLIER
from cauchytool.walk.pmf import iter_pmfs
from cauchytool.walk.scaling import scaling_constants


LOG = logging.getLogger(__name__)

# Relative tolerance of the restricted <= full comparison
BOUND_TOLERANCE = 1e-12


@dataclass(frozen=True, eq=False)
class RecurrenceReport:
    """
    Partial sums of 1 / (n L(n)) and of 1 / a_n at dyadic n, with log-slope fits.
    """
    n: List[int]
    inverse_nl: List[float]
    inverse_a: List[float]
    slope_nl: float
    slope_a: float
    recurrent_type: bool = field(default=False)

    def rows(self) -> List[Dict[str, float]]:
        return [
            {'n': n, 'log_n': math.log(n), 'sum_inv_nL': s1, 'sum_inv_a': s2}
            for n, s1, s2 in zip(self.n, self.inverse_nl, self.inverse_a)
        ]


def _not_flattening(values: List[float]) -> bool:
    """
    The last dyadic increment is at least half of the one before it.
    """
    if len(values) < 3:
        return False
    last = values[-1] - values[-2]
    before = values[-2] - values[-3]
    return last > 0 and last >= 0.5 * before


def recurrence_diagnostic(law: IncrementLaw, n_max: int) -> RecurrenceReport:
    """
    Compare the growth of sum 1 / (n L(n)) and sum 1 / a_n up to n_max.

    L(n) vanishes at the support edge of a truncated law, so n_max must stay
    below X_max.
    """
    if n_max < 2:
        raise InvalidParameterError("Recurrence diagnostic needs n_max >= 2, got {}".format(n_max))
    if n_max >= law.support_radius:
        raise InvalidParameterError(
            "n_max={} must be below X_max={} where L(n) > 0".format(n_max, law.support_radius)
        )

    n = np.arange(1, n_max + 1)
    slowly = law.slowly_varying_value(n)
    a = scaling_constants(law, n_max).a[1:].astype(np.float64)

    partial_nl = np.cumsum(1.0 / (n * slowly))
    partial_a = np.cumsum(1.0 / a)

    points = [1 << k for k in range(n_max.bit_length()) if (1 << k) <= n_max]
    inverse_nl = [float(partial_nl[p - 1]) for p in points]
    inverse_a = [float(partial_a[p - 1]) for p in points]

    upper = points[len(points) // 2:]
    slope_nl = slope_a = 0.0
    if len(upper) >= 2:
        slope_nl = float(stats.linregress(np.log(upper), partial_nl[np.array(upper) - 1]).slope)
        slope_a = float(stats.linregress(np.log(upper), partial_a[np.array(upper) - 1]).slope)

    recurrent = slope_nl > 0 and slope_a > 0 and _not_flattening(inverse_nl) and _not_flattening(inverse_a)
    LOG.debug("Recurrence slopes: 1/(nL)=%.6g 1/a_n=%.6g recurrent=%s", slope_nl, slope_a, recurrent)
    return RecurrenceReport(points, inverse_nl, inverse_a, slope_nl, slope_a, recurrent)


def _restricted_radius(multiplier: float, a_t: int, window_radius: int) -> int:
    if math.isinf(multiplier):
        return window_radius
    return min(window_radius, int(math.floor(multiplier * a_t)))


def _pmf_window(law: IncrementLaw, t_max: int, reach: int) -> int:
    """
    Window wide enough that pmfs are exact inside `reach` up to negligible returning mass.
    """
    wide = t_max * law.support_radius
    a_t = scaling_constants(law, t_max).a_n(t_max)
    return max(law.support_radius, min(wide, reach + DEFAULT_WINDOW_MULTIPLIER * a_t))


def restricted_overlap(law: IncrementLaw,
                       u: int,
                       multiplier: float,
                       window_radius: Optional[int] = None) -> float:
    """
    Dhat(u) = sum_{t <= u} sum_{|x| <= R a_t} p_t(x)^2 = sum_t P(S_2t = 0, |S_t| <= R a_t).
    """
    if u < 1:
        raise InvalidParameterError("u must be >= 1, got {}".format(u))
    if not multiplier > 0:
        raise InvalidParameterError("R must be positive, got {}".format(multiplier))

    scaling = scaling_constants(law, u)
    if window_radius is None:
        reach = u * law.support_radius if math.isinf(multiplier) else int(multiplier * scaling.a_n(u))
        window_radius = _pmf_window(law, u, reach)

    total = 0.0
    for pmf in iter_pmfs(law, u, window_radius):
        radius = _restricted_radius(multiplier, scaling.a_n(pmf.n), pmf.radius)
        inner = pmf.window(radius)
        total += float(np.dot(inner, inner))

    return total


def d_ratio_check(table: OverlapTable, q: int, u: int) -> float:
    """
    D(q u) / D(u).
    """
    if q < 1 or u < 1:
        raise InvalidParameterError("Need q >= 1 and u >= 1, got q={} u={}".format(q, u))
    if q * u > table.n_max:
        raise InvalidParameterError("q*u={} exceeds table length {}".format(q * u, table.n_max))
    return float(table.d[q * u] / table.d[u])


@dataclass(frozen=True)
class CollisionBound:
    """
    Both sides of sum_{s <= n} sum_{x in I} p_s(x)^2 <= D(n).
    """
    restricted: float
    full: float

    @property
    def slack(self) -> float:
        return self.full - self.restricted


def window_collision_bound(law: IncrementLaw,
                           n: int,
                           sites: Tuple[int, int],
                           table: Optional[OverlapTable] = None,
                           window_radius: Optional[int] = None) -> CollisionBound:
    """
    Restricted collision sum over the site range `sites` = (lo, hi) against D(n).

    D(n) is taken from `table` when given, otherwise summed from the same pmfs.
    """
    lo, hi = sites
    if n < 1 or hi < lo:
        raise InvalidParameterError("Need n >= 1 and lo <= hi, got n={} sites={}".format(n, sites))

    if window_radius is None:
        window_radius = _pmf_window(law, n, max(abs(lo), abs(hi)))

    restricted = 0.0
    full = 0.0
    for pmf in iter_pmfs(law, n, window_radius):
        a = max(lo, -pmf.radius)
        b = min(hi, pmf.radius)
        if a <= b:
            inner = pmf.probs[a + pmf.radius:b + pmf.radius + 1]
            restricted += float(np.dot(inner, inner))
        full += pmf.collision()

    if table is not None:
        full = table.d_value(n)

    if restricted > full * (1.0 + BOUND_TOLERANCE):
        raise AssertionError(
            "Restricted collision sum {:.15g} exceeds D({})={:.15g}".format(restricted, n, full)
        )

    return CollisionBound(restricted, full)
