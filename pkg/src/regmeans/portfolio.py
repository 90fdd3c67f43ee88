"""Average investment returns as a geometric mean.

With period returns r1..rn, terminal wealth is w0 * prod(1 + rt), and the
average gross return per period is the geometric mean of the gross returns
— the quasi-arithmetic mean under the log generator.  The mean-variance
shortcut exp(rbar - (rbar**2 + s2)/2) approximates that geometric mean for
small returns.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from .errors import ConfigurationError, DomainError, InvalidParameterError

__all__ = [
    "ReturnSeries",
    "wealth_path",
    "geometric_average_return",
    "markowitz_approximation",
]


@dataclass(frozen=True)
class ReturnSeries:
    """Period returns as unitless fractions (0.05 means +5%) plus initial
    wealth.  Every gross return 1 + rt must be positive."""

    returns: tuple
    w0: float = 1.0

    def __post_init__(self):
        returns = tuple(float(r) for r in self.returns)
        object.__setattr__(self, "returns", returns)
        if len(returns) == 0:
            raise ConfigurationError("return series must be nonempty")
        if not self.w0 > 0:
            raise InvalidParameterError(f"initial wealth must be positive, got {self.w0}")
        for r in returns:
            if not 1.0 + r > 0.0:
                raise DomainError(f"gross return 1 + ({r}) is not positive")


def _series(series: ReturnSeries | Sequence[float]) -> ReturnSeries:
    return series if isinstance(series, ReturnSeries) else ReturnSeries(tuple(series))


def wealth_path(series: ReturnSeries | Sequence[float]) -> float:
    """Terminal wealth w0 * (1+r1) * ... * (1+rn)."""
    s = _series(series)
    return s.w0 * math.prod(1.0 + r for r in s.returns)


def geometric_average_return(series: ReturnSeries | Sequence[float]) -> float:
    """Average gross return per period: (prod(1+rt))**(1/n), in log-space."""
    s = _series(series)
    return math.exp(math.fsum(math.log1p(r) for r in s.returns) / len(s.returns))


def markowitz_approximation(series: ReturnSeries | Sequence[float], ddof: int = 0) -> float:
    """exp(rbar - (rbar**2 + s2)/2), the mean-variance approximation of the
    geometric average gross return.

    s2 uses divisor n - ddof; the default ddof=0 (population form) is the
    convention under which the approximation identity is derived.  A single
    period has s2 = 0 under either convention.
    """
    s = _series(series)
    n = len(s.returns)
    if ddof not in (0, 1):
        raise InvalidParameterError("ddof must be 0 or 1")
    rbar = math.fsum(s.returns) / n
    if n - ddof <= 0:
        s2 = 0.0
    else:
        s2 = math.fsum((r - rbar) ** 2 for r in s.returns) / (n - ddof)
    return math.exp(rbar - (rbar * rbar + s2) / 2.0)
