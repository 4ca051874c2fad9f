import logging
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy import fft, integrate, optimize, special

from cauchytool.errors import EmptyRangeError, InvalidParameterError
from cauchytool.walk.law import IncrementLaw
from cauchytool.walk.pmf import NStepPmf, n_step_pmf
from cauchytool.walk.scaling import scaling_constants


LOG = logging.getLogger(__name__)

# Window radius in units of a_n used for the local-limit diagnostics
DEFAULT_WINDOW_MULTIPLIER = 32

# n at which the limit density peak is fitted when no value is supplied
DEFAULT_FIT_N = 4096

# The reference density is inverted on a cycle of at least this many a_n
ALIAS_SPAN = 1024


def diagnostic_pmf(law: IncrementLaw, n: int, window_radius: Optional[int] = None) -> NStepPmf:
    """
    Pmf of S_n on the default diagnostic window max(X_max, 32 * a_n).
    """
    if window_radius is None:
        a_n = scaling_constants(law, n).a_n(n)
        window_radius = max(law.support_radius, DEFAULT_WINDOW_MULTIPLIER * a_n)
    return n_step_pmf(law, n, window_radius)


def estimate_g0(law: IncrementLaw, n: int, window_radius: Optional[int] = None) -> float:
    """
    a_n * P(S_n = 0), the finite-n value of the limit density at the origin.
    """
    if n < 1:
        raise InvalidParameterError("Step count must be >= 1, got {}".format(n))

    a_n = scaling_constants(law, n).a_n(n)
    if a_n < 10:
        LOG.warning("a_n=%d < 10 at n=%d, g(0) estimate is far from the limit", a_n, n)

    pmf = diagnostic_pmf(law, n, window_radius)
    return a_n * pmf.prob(0)


def cauchy_peak_density(g0: float, y: np.ndarray) -> np.ndarray:
    """
    Symmetric Cauchy density with peak value g0, the limit of `tempered_density`
    as X_max / a_n grows.
    """
    return g0 / (1.0 + (math.pi * g0 * y) ** 2)


def truncation_tempering(t: np.ndarray, ratio: float) -> np.ndarray:
    """
    Characteristic exponent of the rescaled walk per unit scale, with the jumps
    beyond X_max removed: |t| - 2 / (pi r) * (1 - cos(r t) + r t (pi/2 - Si(r t))),
    r = X_max / a_n. Tends to |t| as r grows and to r t^2 / pi near 0.
    """
    t = np.abs(np.asarray(t, dtype=np.float64))
    a = ratio * t
    si, _ = special.sici(a)
    removed = 1.0 - np.cos(a) + a * (0.5 * math.pi - si)
    return t - 2.0 / (math.pi * ratio) * removed


def tempered_peak(scale: float, ratio: float) -> float:
    """
    Density of the tempered limit at the origin, (1 / pi) int_0^inf exp(-scale tau_r(t)) dt.
    """
    integral, _ = integrate.quad(
        lambda t: math.exp(-scale * float(truncation_tempering(t, ratio))), 0.0, np.inf, limit=400
    )
    return integral / math.pi


def fit_tempered_scale(g0: float, ratio: float) -> float:
    """
    Scale whose tempered density has peak g0. Without tempering it is 1 / (pi g0).
    """
    if not g0 > 0:
        raise InvalidParameterError("Peak density must be positive, got {}".format(g0))

    lo = 1.0 / (math.pi * g0)
    if tempered_peak(lo, ratio) <= g0:
        return lo

    hi = 2.0 * lo
    while tempered_peak(hi, ratio) > g0:
        hi *= 2.0
    return optimize.brentq(lambda scale: tempered_peak(scale, ratio) - g0, lo, hi, xtol=1e-14, rtol=1e-13)


def tempered_density(scale: float, ratio: float, a_n: int, offsets: np.ndarray) -> np.ndarray:
    """
    g(x / a_n) of the tempered limit at integer offsets x, by inverse FFT of its
    characteristic function on a cycle long enough that periodic images are negligible.
    """
    offsets = np.asarray(offsets, dtype=np.int64)
    radius = int(np.max(np.abs(offsets))) if offsets.size else 0
    length = 1 << int(math.ceil(math.log2(max(2 * radius + 1, ALIAS_SPAN * a_n))))

    theta = 2.0 * math.pi * np.arange(length // 2 + 1) / length
    transform = np.exp(-scale * truncation_tempering(theta * a_n, ratio))
    density = fft.irfft(transform, n=length) * a_n
    return density[offsets % length]


@dataclass(frozen=True, eq=False)
class LltProfile:
    """
    Pointwise local-limit deviation a_n * P(S_n = x) - g(x / a_n) over the reachable window.
    """
    n: int
    a_n: int
    g0: float
    scale: float
    offsets: np.ndarray
    deviation: np.ndarray

    @property
    def sup_error(self) -> float:
        return float(np.max(np.abs(self.deviation)))


def llt_profile(law: IncrementLaw,
                n: int,
                g0: Optional[float] = None,
                fit_n: int = DEFAULT_FIT_N,
                window_radius: Optional[int] = None) -> LltProfile:
    """
    Deviation profile of the rescaled pmf from the limit density fitted at fit_n.

    g0 = a_m P(S_m = 0) at m = fit_n fixes one scale constant. At every n the
    reference is the symmetric Cauchy law with that constant carried over by
    n / a_n, tempered by the truncation ratio X_max / a_n. For X_max >> a_n it
    is the Cauchy density with peak g0.
    """
    if n < 2:
        raise InvalidParameterError("LLT profile needs n >= 2, got {}".format(n))

    if g0 is None:
        fit_n = max(n, fit_n)
        g0 = estimate_g0(law, fit_n)
        LOG.debug("Fitted g0=%.8f at n=%d", g0, fit_n)

    scaling = scaling_constants(law, max(n, fit_n))
    a_n = scaling.a_n(n)
    a_fit = scaling.a_n(fit_n)

    fit_scale = fit_tempered_scale(g0, law.support_radius / a_fit)
    scale = fit_scale * (n / a_n) / (fit_n / a_fit)

    pmf = diagnostic_pmf(law, n, window_radius)
    reference = tempered_density(scale, law.support_radius / a_n, a_n, pmf.offsets)
    LOG.debug("LLT reference at n=%d: scale=%.8f ratio=%.4g", n, scale, law.support_radius / a_n)
    return LltProfile(n, a_n, g0, scale, pmf.offsets, a_n * pmf.probs - reference)


def llt_error_profile(law: IncrementLaw,
                      n: int,
                      g0: Optional[float] = None,
                      fit_n: int = DEFAULT_FIT_N,
                      window_radius: Optional[int] = None) -> float:
    """
    sup_x |a_n * P(S_n = x) - g(x / a_n)| with g fitted from estimate_g0 at fit_n.
    """
    return llt_profile(law, n, g0, fit_n, window_radius).sup_error


def berger_ratio(law: IncrementLaw,
                 n: int,
                 c1: float,
                 k_max: Optional[int] = None,
                 window_radius: Optional[int] = None) -> float:
    """
    Empirical c2 of the local bound P(S_n = k) <= c2 * n * L(k) * k^-2, scanned over c1 * a_n <= |k| <= k_max.

    k_max defaults to X_max // 2; closer to the truncation edge L(k) collapses to 0.
    """
    if c1 <= 0:
        raise InvalidParameterError("c1 must be positive, got {}".format(c1))
    if n < 1:
        raise InvalidParameterError("Step count must be >= 1, got {}".format(n))

    k_max = law.support_radius // 2 if k_max is None else k_max
    a_n = scaling_constants(law, n).a_n(n)
    pmf = diagnostic_pmf(law, n, window_radius)

    k_lo = max(1, int(math.ceil(c1 * a_n)))
    k_hi = min(k_max, pmf.radius, law.support_radius - 1)
    if k_lo > k_hi:
        raise EmptyRangeError(
            "No k with {} <= |k| <= {} for n={} (a_n={})".format(k_lo, k_hi, n, a_n)
        )

    k = np.arange(k_lo, k_hi + 1)
    slowly = law.slowly_varying_value(k)
    probs = pmf.probs[pmf.radius + k]
    ratio = probs * k.astype(np.float64) ** 2 / (n * slowly)
    return float(np.max(ratio))


def spike_ratio(law: IncrementLaw, k_max: Optional[int] = None) -> float:
    """
    sup_k k * P(S_1 = k) / P(S_1 > k) over 1 <= k <= k_max (default X_max // 2).
    """
    k_max = max(1, law.support_radius // 2) if k_max is None else k_max
    k_max = min(k_max, law.support_radius - 1)
    if k_max < 1:
        raise EmptyRangeError("Law with X_max={} has no interior tail".format(law.support_radius))

    k = np.arange(1, k_max + 1)
    right_tail = 0.5 * law.tail_prob(k)
    return float(np.max(k * law.probs[law.support_radius + k] / right_tail))
