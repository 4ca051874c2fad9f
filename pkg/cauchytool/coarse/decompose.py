import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple, Union

import numpy as np
from scipy.special import logsumexp

from cauchytool.coarse.cells import cell_index
from cauchytool.env.field import FieldView
from cauchytool.env.spec import EnvSpec
from cauchytool.errors import InvalidParameterError, ResourceLimitError
from cauchytool.polymer.run import run_polymer
from cauchytool.polymer.transfer import LayerPropagator
from cauchytool.polymer.window import WindowSpec, wide_window
from cauchytool.walk.law import IncrementLaw
from cauchytool.walk.scaling import scaling_constants


LOG = logging.getLogger(__name__)

# Largest number of branch sites kept at once
DEFAULT_BRANCH_BUDGET = 1 << 22


@dataclass(frozen=True, eq=False)
class Decomposition:
    """
    Partition function split over coarse trajectories Y = (y_1, ..., y_m), the
    cells visited at times l, 2l, ..., ml.
    """
    blocks: int
    block_length: int
    a_l: int
    parts: Dict[Tuple[int, ...], float] = field(repr=False)
    z_hat: float

    @property
    def total(self) -> float:
        return float(sum(self.parts.values()))

    @property
    def residual(self) -> float:
        return self.total - self.z_hat


def _split(log_weights: np.ndarray, offsets: np.ndarray, a_l: int) -> Dict[int, np.ndarray]:
    """
    Restrict the layer to each cell that carries mass.
    """
    cells = cell_index(offsets, a_l)
    alive = np.isfinite(log_weights)
    out = {}
    for y in np.unique(cells[alive]):
        part = np.where(cells == y, log_weights, -np.inf)
        out[int(y)] = part
    return out


def coarse_decompose(law: IncrementLaw,
                     env: Union[EnvSpec, FieldView],
                     beta: float,
                     blocks: int,
                     block_length: int,
                     window: Optional[WindowSpec] = None,
                     budget: int = DEFAULT_BRANCH_BUDGET) -> Decomposition:
    """
    Z_Y = exp(-ml lambda) E[exp(beta sum omega(n, S_n)); S_il in I_{y_i} for i = 1..m].

    With the default wide window the parts sum to the unrestricted Zhat_ml.
    """
    if blocks < 1 or block_length < 1:
        raise InvalidParameterError(
            "Need m >= 1 and l >= 1, got m={} l={}".format(blocks, block_length)
        )

    horizon = blocks * block_length
    window = wide_window(law, horizon) if window is None else window
    window.check(law)

    view = env if isinstance(env, FieldView) else FieldView(env)
    lam = view.disorder.log_mgf(beta)
    a_l = scaling_constants(law, block_length).a_n(block_length)

    radius = window.radius
    propagator = LayerPropagator(law, radius)
    offsets = propagator.offsets

    branches: Dict[Tuple[int, ...], np.ndarray] = {(): propagator.origin()}
    for n in range(1, horizon + 1):
        potential = beta * view.row(n, -radius, radius) - lam
        branches = {key: propagator.apply(layer, potential) for key, layer in branches.items()}

        if n % block_length == 0:
            split: Dict[Tuple[int, ...], np.ndarray] = {}
            for key, layer in branches.items():
                for y, part in _split(layer, offsets, a_l).items():
                    split[key + (y,)] = part
            branches = split

            if len(branches) * window.width > budget:
                raise ResourceLimitError(
                    "Decomposition holds {} branches of width {}, budget is {}".format(
                        len(branches), window.width, budget
                    )
                )
            LOG.debug("Block %d: %d coarse trajectories", n // block_length, len(branches))

    parts = {key: float(np.exp(logsumexp(layer))) for key, layer in branches.items()}
    z_hat = run_polymer(law, view, beta, horizon, window, keep_layers=False).z_bar
    return Decomposition(blocks, block_length, a_l, parts, z_hat)


def trajectory_of(path: List[int], block_length: int, a_l: int) -> Tuple[int, ...]:
    """
    Coarse trajectory of an explicit path S_0..S_ml.
    """
    return tuple(cell_index(int(path[i]), a_l) for i in range(block_length, len(path), block_length))
