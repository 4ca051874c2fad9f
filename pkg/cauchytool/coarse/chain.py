import functools
import logging
import math
from dataclasses import dataclass, field
from typing import Dict, Tuple

import numpy as np
from scipy import ndimage, signal

from cauchytool.coarse.plan import CoarseGrainPlan
from cauchytool.env.field import FieldView
from cauchytool.errors import InvalidParameterError, InvalidPlanError
from cauchytool.walk.law import IncrementLaw
from cauchytool.walk.llt import DEFAULT_WINDOW_MULTIPLIER
from cauchytool.walk.pmf import n_step_pmf
from cauchytool.walk.scaling import scaling_constants


LOG = logging.getLogger(__name__)

# Kernels up to this length are applied directly, longer ones by FFT
DIRECT_KERNEL_LIMIT = 65

# Distinct (law, u, R) kernel sets kept in memory
KERNEL_CACHE_SIZE = 16


@dataclass(frozen=True, eq=False)
class ChainKernels:
    """
    Truncated kernels K_d(z) = P(S_d = z) 1{|z| <= R a_d} for gaps d = 1..u.

    `kernels[d]` is indexed by z + radii[d].
    """
    u: int
    radii: Dict[int, int]
    kernels: Dict[int, np.ndarray] = field(repr=False)

    def value(self, d: int, z: np.ndarray) -> np.ndarray:
        """
        K_d evaluated at integer offsets z (vectorized).
        """
        radius = self.radii[d]
        inside = np.abs(z) <= radius
        out = np.zeros(np.shape(z))
        out[inside] = self.kernels[d][np.asarray(z)[inside] + radius]
        return out

    @property
    def restricted_overlap(self) -> float:
        """
        sum_d sum_z K_d(z) P(S_d = z), the restricted overlap Dhat(u) of these kernels.
        """
        return float(sum(np.dot(kernel, kernel) for kernel in self.kernels.values()))


def chain_kernels(plan: CoarseGrainPlan) -> ChainKernels:
    """
    Kernels of the chain sums, shared by every evaluation with the same law, u and R.
    """
    return _build_kernels(plan.law, plan.u, plan.multiplier)


# IncrementLaw hashes by identity
@functools.lru_cache(maxsize=KERNEL_CACHE_SIZE)
def _build_kernels(law: IncrementLaw, u: int, multiplier: float) -> ChainKernels:
    LOG.debug("Building chain kernels for %s u=%d R=%g", law.fingerprint()[:12], u, multiplier)
    scaling = scaling_constants(law, u)
    radii: Dict[int, int] = {}
    kernels: Dict[int, np.ndarray] = {}
    for d in range(1, u + 1):
        a_d = scaling.a_n(d)
        reach = min(int(math.floor(multiplier * a_d)), d * law.support_radius)
        window = max(law.support_radius, min(d * law.support_radius, reach + DEFAULT_WINDOW_MULTIPLIER * a_d))
        radii[d] = reach
        kernels[d] = n_step_pmf(law, d, window).window(reach)
        kernels[d].setflags(write=False)

    return ChainKernels(u, radii, kernels)


def _spread_sites(values: np.ndarray, kernel: np.ndarray) -> np.ndarray:
    """
    Convolve every row with the kernel along the site axis, dropping mass outside.
    """
    width = values.shape[1]
    radius = (kernel.size - 1) // 2
    if radius >= width:
        # offsets beyond the row width cannot connect two sites of the row
        kernel = kernel[radius - width + 1:radius + width]
    if kernel.size <= DIRECT_KERNEL_LIMIT:
        return ndimage.convolve1d(values, kernel, axis=1, mode='constant', cval=0.0)
    return signal.fftconvolve(values, kernel[np.newaxis, :], mode='same', axes=1)


def _chain_step(previous: np.ndarray, kernels: ChainKernels, gap_limit: int) -> np.ndarray:
    """
    out(t, x) = sum_{d=1..gap_limit} sum_x' previous(t - d, x') K_d(x - x').

    Row 0 stands for time 0 and stays empty.
    """
    out = np.zeros_like(previous)
    rows = previous.shape[0]
    for d in range(1, min(gap_limit, rows - 1) + 1):
        spread = _spread_sites(previous[:rows - d], kernels.kernels[d])
        out[d:] += spread
    return out


def x_statistic(plan: CoarseGrainPlan,
                view: FieldView,
                origin: Tuple[int, int] = (1, 0)) -> float:
    """
    Chain statistic X of the block (i, y): a normalized sum over chains
    t_0 < ... < t_q in [1, l] with gaps at most u and sites in |x| < R a_l of
    prod K_{t_i - t_(i-1)}(x_i - x_(i-1)) * prod omega(t_i, x_i).

    The block (i, y) reads the field shifted by ((i - 1) l, y a_l).
    """
    if plan.q < 1:
        raise InvalidPlanError("X statistic needs q >= 1, got {}".format(plan.q))

    i, y = origin
    if i < 1:
        raise InvalidParameterError("Block time index must be >= 1, got {}".format(i))
    if (i, y) != (1, 0):
        view = view.shifted((i - 1) * plan.l, y * plan.a_l)

    reach = plan.site_reach
    kernels = chain_kernels(plan)

    omega = np.zeros((plan.l + 1, 2 * reach + 1))
    omega[1:] = view.block(1, plan.l, -reach, reach)

    h = omega.copy()
    for _ in range(plan.q):
        h = omega * _chain_step(h, kernels, plan.u)

    return plan.normalization * float(np.sum(h))


def w_statistic(plan: CoarseGrainPlan, path: np.ndarray) -> float:
    """
    W_l = (l D(u)^q)^-1 sum over chains with 1 <= t_0 <= l/2 of prod K(S_(t_i) - S_(t_(i-1))).

    `path` holds S_0..S_l, or a 2-D array of such trajectories (one per row), in
    which case an array of values is returned.
    """
    plan.check_w_window()

    paths = np.atleast_2d(np.asarray(path, dtype=np.int64))
    if paths.shape[1] < plan.l + 1:
        raise InvalidParameterError(
            "Trajectory has {} points, need {}".format(paths.shape[1], plan.l + 1)
        )
    paths = paths[:, :plan.l + 1]
    kernels = chain_kernels(plan)

    # weights between times s and s + d along each trajectory
    links = {
        d: kernels.value(d, paths[:, d:] - paths[:, :-d])
        for d in range(1, plan.u + 1)
    }

    f = np.zeros((paths.shape[0], plan.l + 1))
    f[:, 1:plan.l // 2 + 1] = 1.0
    for _ in range(plan.q):
        nxt = np.zeros_like(f)
        for d in range(1, plan.u + 1):
            nxt[:, d:] += f[:, :-d] * links[d]
        f = nxt

    values = np.sum(f, axis=1) / (plan.l * plan.d_u ** plan.q)
    return float(values[0]) if np.ndim(path) == 1 else values


def w_exact_mean(plan: CoarseGrainPlan) -> float:
    """
    E[W_l] = (floor(l/2) / l) (Dhat(u) / D(u))^q.
    """
    plan.check_w_window()
    d_hat = chain_kernels(plan).restricted_overlap
    return (plan.l // 2) / plan.l * (d_hat / plan.d_u) ** plan.q


def g_function(plan: CoarseGrainPlan, x_value: float) -> float:
    """
    exp(-K) when X >= exp(K^2), else 1.
    """
    return math.exp(-plan.k_penalty) if x_value >= math.exp(plan.k_penalty ** 2) else 1.0
