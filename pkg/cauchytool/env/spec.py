import functools
from dataclasses import asdict, dataclass
from typing import Any, Dict, Optional

from cauchytool.env.providers.base import Disorder
from cauchytool.env.providers.gaussian import GaussianDisorder
from cauchytool.env.providers.rademacher import RademacherDisorder
from cauchytool.env.providers.truncated import TruncatedGaussianDisorder
from cauchytool.errors import InvalidParameterError
from cauchytool.util import SEED_MASK


GAUSSIAN = 'gaussian-unit'
RADEMACHER = 'rademacher'
TRUNCATED = 'truncated-gaussian'

KINDS = (GAUSSIAN, RADEMACHER, TRUNCATED)

DEFAULT_BETA_MAX = 8.0
DEFAULT_BOUND = 3.0


@dataclass(frozen=True)
class EnvSpec:
    """
    Description of an i.i.d. site environment: the disorder law and the master seed.
    """
    kind: str = GAUSSIAN
    seed: int = 0
    beta_max: float = DEFAULT_BETA_MAX
    bound: Optional[float] = None

    def __post_init__(self) -> None:
        if self.kind not in KINDS:
            raise InvalidParameterError(
                "Unknown environment kind '{}', expected one of {}".format(self.kind, ', '.join(KINDS))
            )
        if not 0 <= self.seed <= SEED_MASK:
            raise InvalidParameterError("Seed must be an unsigned 64-bit integer, got {}".format(self.seed))
        if self.kind == TRUNCATED and self.bound is None:
            object.__setattr__(self, 'bound', DEFAULT_BOUND)

    def disorder(self) -> Disorder:
        """
        The provider implementing this law.
        """
        return _build_disorder(self.kind, self.beta_max, self.bound)

    def with_seed(self, seed: int) -> 'EnvSpec':
        return EnvSpec(self.kind, seed & SEED_MASK, self.beta_max, self.bound)

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> 'EnvSpec':
        unknown = set(data) - {'kind', 'seed', 'beta_max', 'bound'}
        if unknown:
            raise InvalidParameterError("Unknown environment fields: {}".format(', '.join(sorted(unknown))))
        return cls(**data)

    def __str__(self) -> str:
        return '{}(seed={})'.format(self.disorder(), self.seed)


@functools.lru_cache(maxsize=32)
def _build_disorder(kind: str, beta_max: float, bound: Optional[float]) -> Disorder:
    if kind == GAUSSIAN:
        return GaussianDisorder(beta_max)
    if kind == RADEMACHER:
        return RademacherDisorder(beta_max)
    return TruncatedGaussianDisorder(beta_max, bound if bound is not None else DEFAULT_BOUND)
