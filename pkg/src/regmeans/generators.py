"""Generator functions for quasi-arithmetic means.

A generator is a continuous, strictly monotone function g on an interval
domain, carried together with its inverse and derivative.  The built-ins
cover the classical means:

    identity    arithmetic mean         domain (-inf, inf)
    log         geometric mean          domain (0, inf)
    reciprocal  harmonic mean           domain (0, inf), decreasing
    power       power mean, p > 0       domain (0, inf)
    exp         exponential mean        domain (-inf, inf)

All three callables are elementwise: they accept floats or numpy arrays.
Generators are immutable; every operation here is pure.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import (
    ConfigurationError,
    ConvergenceError,
    DegenerateSlopeError,
    DomainError,
    InvalidParameterError,
    OutOfRangeError,
)

__all__ = [
    "Interval",
    "Generator",
    "make_builtin",
    "parse_generator",
    "register_generator",
    "invert",
    "estimate_lipschitz",
    "min_slope",
    "normalize_increasing",
    "affine_transform",
    "numeric_derivative",
]

BUILTIN_KINDS = ("identity", "log", "reciprocal", "power", "exp")

# Below this, a grid slope is treated as zero (strict monotonicity lost).
_DEGENERATE_TOL = 1e-12


@dataclass(frozen=True)
class Interval:
    """A numeric interval (lo, hi), lo < hi.  Endpoints may be infinite;
    both must be finite wherever an interval is used as a compact
    evaluation domain."""

    lo: float
    hi: float

    def __post_init__(self) -> None:
        if not self.lo < self.hi:
            raise InvalidParameterError(f"interval requires lo < hi, got ({self.lo}, {self.hi})")

    @property
    def width(self) -> float:
        return self.hi - self.lo

    @property
    def is_finite(self) -> bool:
        return math.isfinite(self.lo) and math.isfinite(self.hi)

    def contains(self, x: float) -> bool:
        return self.lo <= x <= self.hi

    def interior_contains(self, x) -> bool:
        """Strict containment at finite endpoints (open-interval semantics).
        Elementwise: returns a bool (or bool array) for scalar (or array) x."""
        return np.all((x > self.lo) & (x < self.hi))

    def encloses(self, other: "Interval") -> bool:
        """Does the *interior* of this interval contain ``other``?"""
        lo_ok = self.lo == -math.inf or other.lo > self.lo
        hi_ok = self.hi == math.inf or other.hi < self.hi
        return lo_ok and hi_ok

    def grid(self, points: int) -> np.ndarray:
        if points < 2:
            raise InvalidParameterError("grid needs at least 2 points")
        if not self.is_finite:
            raise InvalidParameterError("cannot grid an unbounded interval")
        return np.linspace(self.lo, self.hi, points)


@dataclass(frozen=True)
class Generator:
    """A strictly monotone generator g with inverse and derivative.

    ``kind`` is one of the built-in kind names or "custom"; closed-form
    moment shortcuts key off it.  ``param`` is the exponent for power
    generators, None otherwise.
    """

    name: str
    domain: Interval
    forward: Callable
    inverse: Callable
    derivative: Callable
    monotone_direction: str  # "increasing" | "decreasing"
    kind: str = "custom"
    param: float | None = None

    @property
    def increasing(self) -> bool:
        return self.monotone_direction == "increasing"

    def require_in_domain(self, x) -> None:
        """Raise DomainError unless every element of x lies strictly inside
        the domain (the built-in domains are open at finite endpoints)."""
        arr = np.asarray(x, dtype=float)
        ok = (arr > self.domain.lo) & (arr < self.domain.hi)
        if not np.all(ok):
            offender = float(arr.flat[int(np.argmin(np.ravel(ok)))])
            raise DomainError(
                f"value {offender} outside domain ({self.domain.lo}, {self.domain.hi}) "
                f"of generator {self.name!r}")


def _ones_like(x):
    if isinstance(x, np.ndarray):
        return np.ones_like(x, dtype=float)
    return 1.0


_REAL_LINE = Interval(-math.inf, math.inf)
_POSITIVE = Interval(0.0, math.inf)


def make_builtin(kind: str, p: float | None = None) -> Generator:
    """Construct one of the built-in generators.

    ``p`` is only meaningful for kind="power" and must be positive there.
    """
    if kind == "power":
        if p is None or not p > 0:
            raise InvalidParameterError(f"power generator requires p > 0, got {p}")
    elif p is not None:
        raise InvalidParameterError(f"generator kind {kind!r} takes no parameter")

    if kind == "identity":
        return Generator("identity", _REAL_LINE, lambda x: x * 1.0, lambda y: y * 1.0,
                         _ones_like, "increasing", kind="identity")
    if kind == "log":
        return Generator("log", _POSITIVE, np.log, np.exp,
                         lambda x: 1.0 / x, "increasing", kind="log")
    if kind == "reciprocal":
        return Generator("reciprocal", _POSITIVE, lambda x: 1.0 / x, lambda y: 1.0 / y,
                         lambda x: -1.0 / (x * x), "decreasing", kind="reciprocal")
    if kind == "power":
        pf = float(p)
        return Generator(f"power:{pf:g}", _POSITIVE, lambda x: x ** pf,
                         lambda y: y ** (1.0 / pf),
                         lambda x: pf * x ** (pf - 1.0), "increasing",
                         kind="power", param=pf)
    if kind == "exp":
        return Generator("exp", _REAL_LINE, np.exp, np.log, np.exp, "increasing", kind="exp")
    raise ConfigurationError(f"unknown generator kind {kind!r}")


_REGISTRY: dict[str, Generator] = {}


def register_generator(name: str, gen: Generator) -> None:
    """Register a programmatic generator so parse_generator can find it."""
    if name.split(":")[0] in BUILTIN_KINDS:
        raise InvalidParameterError(f"cannot shadow built-in kind in {name!r}")
    _REGISTRY[name] = gen


def parse_generator(spec: str) -> Generator:
    """Parse a generator spec string: "identity", "log", "reciprocal",
    "power:2.0", "exp", or the name of a registered generator."""
    spec = spec.strip()
    head, _, tail = spec.partition(":")
    if head in BUILTIN_KINDS:
        if head == "power":
            if not tail:
                raise InvalidParameterError("power generator spec needs an exponent, e.g. power:2.0")
            try:
                p = float(tail)
            except ValueError:
                raise InvalidParameterError(f"bad power exponent {tail!r}") from None
            return make_builtin("power", p)
        if tail:
            raise InvalidParameterError(f"generator {head!r} takes no parameter (got {spec!r})")
        return make_builtin(head)
    if spec in _REGISTRY:
        return _REGISTRY[spec]
    raise InvalidParameterError(f"unknown generator spec {spec!r}")


def invert(g: Generator, y: float, bracket: Interval, tol: float = 1e-12,
           max_iter: int = 200) -> float:
    """Numerically invert g at y by bisection on the bracket.

    Returns x with |g(x) - y| <= tol, or the midpoint of the final bracket
    once its width is exhausted at float resolution (the residual is then as
    small as the arithmetic allows).  The bracket must straddle y.
    """
    if not bracket.is_finite:
        raise InvalidParameterError("invert needs a finite bracket")
    if not (g.domain.interior_contains(bracket.lo) and g.domain.interior_contains(bracket.hi)):
        raise DomainError(f"bracket {bracket} not inside domain of {g.name!r}")
    a, b = bracket.lo, bracket.hi
    fa, fb = float(g.forward(a)), float(g.forward(b))
    if (fa - y) * (fb - y) > 0:
        raise OutOfRangeError(f"y={y} outside the image [{min(fa, fb)}, {max(fa, fb)}] of the bracket")
    rising = fb >= fa
    for _ in range(max_iter):
        mid = 0.5 * (a + b)
        fm = float(g.forward(mid))
        if abs(fm - y) <= tol:
            return mid
        if b - a <= 4.0 * np.finfo(float).eps * max(1.0, abs(mid)):
            return mid
        if (fm < y) == rising:
            a = mid
        else:
            b = mid
    raise ConvergenceError(f"bisection failed to reach tol={tol} in {max_iter} iterations")


def _abs_slopes(g: Generator, B: Interval, grid_points: int) -> np.ndarray:
    if grid_points < 2:
        raise InvalidParameterError("grid_points must be >= 2")
    if not B.is_finite:
        raise InvalidParameterError("slope estimation needs a compact interval")
    if not g.domain.encloses(B):
        raise DomainError(f"interval {B} not inside domain of generator {g.name!r}")
    return np.abs(np.asarray(g.derivative(B.grid(grid_points)), dtype=float))


def estimate_lipschitz(g: Generator, B: Interval, grid_points: int = 10001) -> float:
    """Grid estimate of sup |g'| on B (a lower bound of the true sup)."""
    return float(np.max(_abs_slopes(g, B, grid_points)))


def min_slope(g: Generator, B: Interval, grid_points: int = 10001) -> float:
    """Grid estimate of inf |g'| on B (an upper bound of the true inf)."""
    m = float(np.min(_abs_slopes(g, B, grid_points)))
    if m <= _DEGENERATE_TOL:
        raise DegenerateSlopeError(
            f"generator {g.name!r} has vanishing slope on [{B.lo}, {B.hi}] (min |g'| = {m:g})")
    return m


def normalize_increasing(g: Generator) -> Generator:
    """Return g itself if increasing, else the negated (increasing) form.

    The quasi-arithmetic mean is invariant under g -> -g, so the negated
    generator defines exactly the same mean.
    """
    if g.increasing:
        return g
    fwd, inv, der = g.forward, g.inverse, g.derivative
    return Generator(
        name=f"neg_{g.name}",
        domain=g.domain,
        forward=lambda x: -fwd(x),
        inverse=lambda y: inv(-y),
        derivative=lambda x: -der(x),
        monotone_direction="increasing",
        kind="custom",
    )


def affine_transform(g: Generator, a: float, b: float) -> Generator:
    """The generator a*g + b (a != 0); defines the same mean as g."""
    if a == 0:
        raise InvalidParameterError("affine transform requires a != 0")
    fwd, inv, der = g.forward, g.inverse, g.derivative
    direction = g.monotone_direction if a > 0 else (
        "decreasing" if g.increasing else "increasing")
    return Generator(
        name=f"{a:g}*{g.name}{b:+g}",
        domain=g.domain,
        forward=lambda x: a * fwd(x) + b,
        inverse=lambda y: inv((y - b) / a),
        derivative=lambda x: a * der(x),
        monotone_direction=direction,
        kind="custom",
    )


def numeric_derivative(f: Callable) -> Callable:
    """Central-difference derivative with step h = cbrt(eps)*max(1, |x|)."""
    step = float(np.finfo(float).eps) ** (1.0 / 3.0)

    def deriv(x):
        h = step * np.maximum(1.0, np.abs(x))
        return (f(x + h) - f(x - h)) / (2.0 * h)

    return deriv
