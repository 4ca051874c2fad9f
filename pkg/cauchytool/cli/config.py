import json
import logging
import math
from dataclasses import asdict, dataclass, field, fields
from typing import Any, Dict, List, Optional, Union, get_args, get_origin, get_type_hints

from cauchytool.env.spec import DEFAULT_BETA_MAX, EnvSpec, KINDS
from cauchytool.errors import CauchyToolError, ConfigError
from cauchytool.util import SEED_MASK, HashUtil
from cauchytool.walk.law import IncrementLaw, build_canonical_law, build_log_power_law


LOG = logging.getLogger(__name__)

COMMANDS = ('llt', 'overlap', 'free-energy', 'xstat', 'fracmoment', 'bounds', 'decompose')

# Step support used when the config does not set X_max
DEFAULT_X_MAX = {
    'llt': 1 << 16,
    'overlap': 1 << 16,
    'bounds': 1 << 16,
    'free-energy': 64,
    'fracmoment': 64,
    'xstat': 64,
    'decompose': 2,
}

# Fields that do not change results and stay out of the fingerprint
RUNTIME_FIELDS = ('out', 'cache', 'threads', 'log_level')


@dataclass
class RunConfig:
    """
    Parameters of one command run, loaded from JSON and overridden by flags.
    """
    x_max: Optional[int] = None
    law: str = 'canonical'
    law_exponent: float = 0.0

    env_kind: str = 'gaussian-unit'
    seed: int = 0
    beta_max: float = DEFAULT_BETA_MAX
    bound: Optional[float] = None

    betas: List[float] = field(default_factory=lambda: [1.0])
    epsilon: float = 0.1
    n_grid: List[int] = field(default_factory=lambda: [256, 1024, 4096])
    n_max: int = 4096
    overlap_window: Optional[int] = None
    replicas: int = 32
    window_r: float = 8.0
    theta: float = 0.7
    k_penalty: float = 3.0
    c1: float = 2.0

    plan_l: Optional[int] = 64
    plan_u: Optional[int] = 8
    plan_q: Optional[int] = 3
    blocks: int = 2
    block_length: int = 8
    dump_pmf: bool = False

    out: str = 'out'
    cache: Optional[str] = None
    threads: int = 1
    log_level: str = 'INFO'

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> 'RunConfig':
        known = {f.name for f in fields(cls)}
        values = dict(data)
        if 'X_max' in values:
            values['x_max'] = values.pop('X_max')
        unknown = set(values) - known
        if unknown:
            raise ConfigError(sorted(unknown)[0], "unknown config field")
        config = cls(**values)
        config.check_types()
        return config

    @classmethod
    def load(cls, path: str) -> 'RunConfig':
        try:
            with open(path, 'r') as src:
                data = json.load(src)
        except (OSError, ValueError) as e:
            raise ConfigError('config', "could not read {}: {}".format(path, e)) from e

        if not isinstance(data, dict):
            raise ConfigError('config', "expected a JSON object in {}".format(path))
        return cls.from_dict(data)

    def resolved_x_max(self, command: str) -> int:
        return DEFAULT_X_MAX[command] if self.x_max is None else self.x_max

    def build_law(self, command: str) -> IncrementLaw:
        x_max = self.resolved_x_max(command)
        if self.law == 'canonical':
            return build_canonical_law(x_max)
        return build_log_power_law(x_max, self.law_exponent)

    def env_spec(self) -> EnvSpec:
        return EnvSpec(self.env_kind, self.seed, self.beta_max, self.bound)

    @property
    def manual_plan(self) -> bool:
        return self.plan_l is not None

    def result_fields(self) -> Dict[str, Any]:
        """
        Every field that influences results.
        """
        data = asdict(self)
        for key in RUNTIME_FIELDS:
            data.pop(key)
        return data

    def fingerprint(self) -> str:
        return HashUtil.fingerprint(self.result_fields())

    def check_types(self) -> None:
        """
        Check every field against its annotation. Ints are accepted where floats are expected.
        """
        for name, annotation in get_type_hints(type(self)).items():
            value = getattr(self, name)
            _require(
                _matches(value, annotation), 'X_max' if name == 'x_max' else name,
                "expected {}, got {!r}".format(_describe(annotation), value),
            )

    def validate(self, command: str) -> None:
        """
        Check every parameter the command uses before any computation starts.
        """
        if command not in COMMANDS:
            raise ConfigError('command', "unknown command {}".format(command))
        self.check_types()

        x_max = self.resolved_x_max(command)
        _require(isinstance(x_max, int) and x_max >= 1, 'X_max', "must be a positive integer, got {}".format(x_max))
        _require(self.law in ('canonical', 'log-power'), 'law', "must be canonical or log-power")
        _require(self.env_kind in KINDS, 'env_kind', "must be one of {}".format(', '.join(KINDS)))
        _require(0 <= self.seed <= SEED_MASK, 'seed', "must be an unsigned 64-bit integer")
        _require(self.threads >= 1, 'threads', "must be >= 1")
        _require(self.beta_max > 0, 'beta_max', "must be positive")
        _require(len(self.betas) > 0, 'betas', "must not be empty")
        _require(all(isinstance(n, int) and n >= 1 for n in self.n_grid), 'n_grid', "entries must be integers >= 1")

        getattr(self, '_validate_{}'.format(command.replace('-', '_')))()

        # environment construction checks bound and beta range
        try:
            self.env_spec()
        except CauchyToolError as e:
            raise ConfigError('env_kind', str(e)) from e

    def _validate_llt(self) -> None:
        _require(all(n >= 2 for n in self.n_grid), 'n_grid', "LLT diagnostics need n >= 2")
        _require(self.c1 > 0, 'c1', "must be positive")

    def _validate_overlap(self) -> None:
        _require(self.n_max >= 1, 'n_max', "must be >= 1")
        if self.overlap_window is not None:
            _require(self.overlap_window >= self.resolved_x_max('overlap'), 'overlap_window', "must be >= X_max")

    def _validate_bounds(self) -> None:
        self._validate_overlap()
        _require(0 < self.epsilon < 1, 'epsilon', "must lie in (0, 1)")
        _require(all(b > 0 for b in self.betas), 'betas', "must be positive")

    def _validate_polymer(self) -> None:
        _require(self.replicas >= 2, 'replicas', "must be >= 2")
        _require(self.window_r > 0 and math.isfinite(self.window_r), 'window_r', "must be positive")
        _require(all(abs(b) <= self.beta_max for b in self.betas), 'betas', "must lie within beta_max")

    def _validate_free_energy(self) -> None:
        self._validate_polymer()

    def _validate_fracmoment(self) -> None:
        self._validate_polymer()
        _require(0 < self.theta < 1, 'theta', "must lie in (0, 1)")

    def _validate_xstat(self) -> None:
        _require(self.replicas >= 2, 'replicas', "must be >= 2")
        _require(0.5 < self.theta < 1, 'theta', "must lie in (1/2, 1)")
        _require(self.k_penalty > 0, 'k_penalty', "must be positive")
        _require(self.window_r > 0, 'window_r', "must be positive")
        if self.manual_plan:
            l, u, q = self.plan_l, self.plan_u, self.plan_q
            _require(u is not None and q is not None, 'plan_u', "manual plans need plan_l, plan_u and plan_q")
            _require(1 <= q < u < l, 'plan_q', "manual plan needs 1 <= q < u < l")
        else:
            self._validate_bounds()

    def _validate_decompose(self) -> None:
        _require(self.blocks >= 1, 'blocks', "must be >= 1")
        _require(self.block_length >= 1, 'block_length', "must be >= 1")
        _require(all(abs(b) <= self.beta_max for b in self.betas), 'betas', "must lie within beta_max")


def _require(condition: bool, name: str, message: str) -> None:
    if not condition:
        raise ConfigError(name, message)


def _matches(value: Any, annotation: Any) -> bool:
    origin = get_origin(annotation)
    if origin is Union:
        return any(_matches(value, arg) for arg in get_args(annotation))
    if origin is list:
        item, = get_args(annotation)
        return isinstance(value, list) and all(_matches(v, item) for v in value)
    if annotation is type(None):
        return value is None
    # bool is an int subclass but never a valid number here
    if isinstance(value, bool):
        return annotation is bool
    if annotation is float:
        return isinstance(value, (int, float))
    return isinstance(value, annotation)


def _describe(annotation: Any) -> str:
    origin = get_origin(annotation)
    if origin is Union:
        return ' or '.join(_describe(arg) for arg in get_args(annotation))
    if origin is list:
        return 'list of {}'.format(_describe(get_args(annotation)[0]))
    return 'null' if annotation is type(None) else annotation.__name__
