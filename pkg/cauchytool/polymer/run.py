import logging
from dataclasses import dataclass, field as dataclass_field
from typing import List, Optional, Union

import numpy as np
from scipy.special import logsumexp

from cauchytool.env.field import FieldView, field
from cauchytool.env.spec import EnvSpec
from cauchytool.errors import InvalidParameterError
from cauchytool.polymer.transfer import LayerPropagator
from cauchytool.polymer.window import WindowSpec
from cauchytool.walk.law import IncrementLaw


LOG = logging.getLogger(__name__)


@dataclass(eq=False)
class PolymerRun:
    """
    Window-restricted partition function for one environment realization.

    `layers[n]` holds log w_n(x) for x in [-radius, radius]; `potentials[n - 1]`
    holds beta * omega(n, x) on the same sites. Both are only kept when the run
    was made with keep_layers=True.
    """
    law: IncrementLaw
    env: FieldView
    beta: float
    horizon: int
    window: WindowSpec
    log_mgf: float
    log_zbar: float
    layers: List[np.ndarray] = dataclass_field(default_factory=list, repr=False)
    potentials: List[np.ndarray] = dataclass_field(default_factory=list, repr=False)
    _marginals: Optional[np.ndarray] = dataclass_field(default=None, repr=False)

    @property
    def z_bar(self) -> float:
        return float(np.exp(self.log_zbar))

    @property
    def offsets(self) -> np.ndarray:
        return np.arange(-self.window.radius, self.window.radius + 1)

    def layer(self, n: int) -> np.ndarray:
        """
        Unnormalized weights w_n(x) (not log).
        """
        self._require_layers()
        return np.exp(self.layers[n])

    def _require_layers(self) -> None:
        if not self.layers:
            raise InvalidParameterError("Run was made without keep_layers, layers are unavailable")


def run_polymer(law: IncrementLaw,
                env: Union[EnvSpec, FieldView],
                beta: float,
                horizon: int,
                window: WindowSpec,
                keep_layers: bool = True) -> PolymerRun:
    """
    Evaluate Zbar_N = exp(-N lambda(beta)) E[exp(beta sum_n omega(n, S_n)); S in T].

    Walks leaving the window are killed. The recursion runs in log space and
    raises NumericOverflowError on non-finite weights.
    """
    window.check(law)
    view = env if isinstance(env, FieldView) else field(env)
    lam = view.disorder.log_mgf(beta)

    radius = window.radius
    propagator = LayerPropagator(law, radius)
    current = propagator.origin()

    layers = [current] if keep_layers else []
    potentials = []
    for n in range(1, horizon + 1):
        potential = beta * view.row(n, -radius, radius) if beta != 0 else np.zeros(2 * radius + 1)
        current = propagator.apply(current, potential)
        if keep_layers:
            layers.append(current)
            potentials.append(potential)

    log_zbar = float(logsumexp(current)) - horizon * lam
    LOG.debug("Run beta=%g N=%d radius=%d: log Zbar=%.10g", beta, horizon, radius, log_zbar)
    return PolymerRun(law, view, beta, horizon, window, lam, log_zbar, layers, potentials)


def _backward_layers(run: PolymerRun) -> List[np.ndarray]:
    """
    log b_k(x): total weight of the continuations of a path at (k, x) up to time N.
    """
    propagator = LayerPropagator(run.law, run.window.radius)
    current = np.zeros(run.window.width)
    backward = [current]
    for k in range(run.horizon - 1, 0, -1):
        current = propagator.step(current + run.potentials[k])
        backward.append(current)

    backward.reverse()
    return backward


def gibbs_marginals(run: PolymerRun) -> np.ndarray:
    """
    Array of shape (N, width): row k - 1 is the polymer law of S_k restricted to the window.
    """
    if run._marginals is None:
        run._require_layers()
        backward = _backward_layers(run)
        rows = []
        for k in range(1, run.horizon + 1):
            joint = run.layers[k] + backward[k - 1]
            rows.append(np.exp(joint - logsumexp(joint)))
        run._marginals = np.stack(rows)
        run._marginals.setflags(write=False)

    return run._marginals


def gibbs_marginal(run: PolymerRun, k: int) -> np.ndarray:
    """
    Probability that the polymer measure puts S_k = x, for x = -radius..radius.
    """
    if not 1 <= k <= run.horizon:
        raise InvalidParameterError("Time k={} outside 1..{}".format(k, run.horizon))
    return gibbs_marginals(run)[k - 1]


def grad_log_partition(run: PolymerRun, k: int, x: int) -> float:
    """
    d log Zbar / d omega(k, x) = beta * P_polymer(S_k = x).
    """
    if not 1 <= k <= run.horizon or not run.window.contains(x):
        raise InvalidParameterError("Site ({}, {}) is outside the window {}".format(k, x, run.window))
    return run.beta * float(gibbs_marginal(run, k)[x + run.window.radius])


def grad_norm_sq(run: PolymerRun) -> float:
    """
    Squared Euclidean norm of the gradient of log Zbar over all window sites.
    """
    if run.beta == 0:
        return 0.0

    total = 0.0
    for row in gibbs_marginals(run):
        total += float(np.dot(row, row))
    return run.beta * run.beta * total
