import logging
from types import MappingProxyType
from typing import Dict, Mapping, Optional, Sequence, Tuple

import numpy as np

from cauchytool.env.spec import EnvSpec
from cauchytool.errors import InvalidParameterError


LOG = logging.getLogger(__name__)

# Site x is generated from counter block x + COUNTER_ORIGIN + 1
COUNTER_ORIGIN = 1 << 63


def _raw_row(seed: int, n: int, lo: int, hi: int) -> np.ndarray:
    """
    Philox4x64 output for sites lo..hi of row n, one 4-word block per site.

    The generator pre-increments its counter, so starting at lo + origin makes
    site x read block x + origin + 1 regardless of the queried range.
    """
    count = hi - lo + 1
    bitgen = np.random.Philox(counter=lo + COUNTER_ORIGIN, key=seed | (n << 64))
    return bitgen.random_raw(4 * count).reshape(count, 4)


class FieldView:
    """
    Read-only access to the environment omega(n, x) over the unbounded lattice.

    Values are produced on demand by a counter-based generator keyed on
    (seed, n, x), so they never depend on query order. Derived views apply a
    space-time shift and additive perturbations on top of the same draws.
    """

    def __init__(self,
                 spec: EnvSpec,
                 shift: Tuple[int, int] = (0, 0),
                 deltas: Optional[Mapping[int, Mapping[int, float]]] = None) -> None:
        """
        Initialize instance.
        """
        self.spec = spec
        self.disorder = spec.disorder()
        self.shift = shift
        self._deltas: Mapping[int, Mapping[int, float]] = MappingProxyType(
            {n: MappingProxyType(dict(row)) for n, row in (deltas or {}).items()}
        )

    def row(self, n: int, lo: int, hi: int) -> np.ndarray:
        """
        Values omega(n, x) for x = lo..hi.
        """
        if hi < lo:
            return np.zeros(0)

        dt, dx = self.shift
        if n + dt < 1:
            raise InvalidParameterError("Field time must be >= 1, got {}".format(n + dt))

        values = self.disorder.transform(_raw_row(self.spec.seed, n + dt, lo + dx, hi + dx))
        row_deltas = self._deltas.get(n)
        if row_deltas:
            for x, delta in row_deltas.items():
                if lo <= x <= hi:
                    values[x - lo] += delta

        return values

    def block(self, n_lo: int, n_hi: int, lo: int, hi: int) -> np.ndarray:
        """
        Values for times n_lo..n_hi (rows) and sites lo..hi (columns).
        """
        if n_hi < n_lo:
            return np.zeros((0, max(0, hi - lo + 1)))
        return np.stack([self.row(n, lo, hi) for n in range(n_lo, n_hi + 1)])

    def __call__(self, n: int, x: int) -> float:
        """
        omega(n, x) as a float, shifts and perturbations applied.
        """
        return float(self.row(n, x, x)[0])

    def shifted(self, dt: int, dx: int) -> 'FieldView':
        """
        View with omega'(n, x) = omega(n + dt, x + dx).
        """
        deltas: Dict[int, Dict[int, float]] = {}
        for n, row in self._deltas.items():
            deltas[n - dt] = {x - dx: delta for x, delta in row.items()}

        return FieldView(self.spec, (self.shift[0] + dt, self.shift[1] + dx), deltas)

    def perturbed(self, overrides: Mapping[Tuple[int, int], float]) -> 'FieldView':
        """
        View with `overrides[(n, x)]` added to the value at (n, x).
        """
        deltas: Dict[int, Dict[int, float]] = {n: dict(row) for n, row in self._deltas.items()}
        for (n, x), delta in overrides.items():
            row = deltas.setdefault(n, {})
            row[x] = row.get(x, 0.0) + delta

        return FieldView(self.spec, self.shift, deltas)

    def tilted(self, path: Sequence[int], shift: float) -> 'FieldView':
        """
        View with `shift` added along the path, at (n, path[n]) for n = 1..len(path) - 1.
        """
        return self.perturbed({(n, int(path[n])): shift for n in range(1, len(path))})

    def __str__(self) -> str:
        return 'FieldView({}, shift={})'.format(self.spec, self.shift)


def field(spec: EnvSpec) -> FieldView:
    """
    Lazily evaluated environment for the given spec.
    """
    LOG.debug("Opening field %s", spec)
    return FieldView(spec)
