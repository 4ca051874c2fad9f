import math
from dataclasses import dataclass

from cauchytool.errors import InvalidParameterError
from cauchytool.walk.law import IncrementLaw
from cauchytool.walk.scaling import scaling_constants


DEFAULT_R = 8.0


@dataclass(frozen=True)
class WindowSpec:
    """
    Space-time window T = {|S_n| <= radius for 1 <= n <= N}, radius = R * a_N.
    """
    multiplier: float
    horizon: int
    radius: int

    @property
    def width(self) -> int:
        return 2 * self.radius + 1

    def check(self, law: IncrementLaw) -> None:
        """
        Raise unless the window can hold a single step of the law.
        """
        if self.horizon < 1:
            raise InvalidParameterError("Horizon N must be >= 1, got {}".format(self.horizon))
        if self.radius < law.support_radius:
            raise InvalidParameterError(
                "Window radius {} is smaller than the step support {}".format(self.radius, law.support_radius)
            )

    def contains(self, x: int) -> bool:
        return abs(x) <= self.radius

    def __str__(self) -> str:
        return 'Window(R={:g}, N={}, radius={})'.format(self.multiplier, self.horizon, self.radius)


def window_for(law: IncrementLaw, multiplier: float, horizon: int) -> WindowSpec:
    """
    Window of radius max(floor(R * a_N), X_max).
    """
    if multiplier <= 0:
        raise InvalidParameterError("Window multiplier R must be positive, got {}".format(multiplier))
    if horizon < 1:
        raise InvalidParameterError("Horizon N must be >= 1, got {}".format(horizon))

    a_n = scaling_constants(law, horizon).a_n(horizon)
    radius = max(int(math.floor(multiplier * a_n)), law.support_radius)
    return WindowSpec(multiplier, horizon, radius)


def wide_window(law: IncrementLaw, horizon: int) -> WindowSpec:
    """
    Window of radius N * X_max, which no walk of length N can leave.
    """
    radius = horizon * law.support_radius
    return WindowSpec(float('inf'), horizon, radius)


def explicit_window(law: IncrementLaw, radius: int, horizon: int) -> WindowSpec:
    window = WindowSpec(float('nan'), horizon, radius)
    window.check(law)
    return window
