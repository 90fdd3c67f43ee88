"""Population-level quantities for quasi-arithmetic means.

For X ~ dist and a generator g, the population counterpart of the mean is

    E_g(X) = g_inv( E[g(X)] )

and the scaled estimation error sqrt(n)*(M_g - E_g) is asymptotically normal
with variance var(g(X)) / g'(E_g)**2.  This module computes those quantities
(closed forms where the distribution provides them, adaptive quadrature
otherwise), plus the Edgeworth refinement of the normal CDF driven by the
skewness and excess kurtosis of g(X).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.integrate import quad
from scipy.special import erfc

from .distributions import Gamma, LogNormal, Pareto, Uniform
from .errors import (
    ConfigurationError,
    ConvergenceError,
    DegenerateSlopeError,
    DivergenceError,
    InvalidParameterError,
)
from .generators import Generator

__all__ = [
    "GMoments",
    "AsymptoticSpec",
    "expect",
    "kolmogorov_expectation",
    "g_moments",
    "asymptotic_variance",
    "standardize",
    "hermite",
    "edgeworth_corrections",
    "edgeworth_cdf",
    "edgeworth_cdf_clamped",
    "phi_cdf",
    "phi_pdf",
]

_SQRT2 = math.sqrt(2.0)
_INV_SQRT2PI = 1.0 / math.sqrt(2.0 * math.pi)

# Quadrature targets (relative accuracy is what matters: values span e**16).
_QUAD_EPSABS = 1e-12
_QUAD_EPSREL = 1e-11
_QUAD_LIMIT = 200

_METHODS = ("auto", "closed_form", "quadrature", "monte_carlo")


@dataclass(frozen=True)
class GMoments:
    """First four moments of g(X): mean, variance, skewness, excess
    kurtosis, plus how they were computed.  Skewness/kurtosis are NaN for a
    degenerate (zero-variance) g(X)."""

    mean_g: float
    var_g: float
    skew_g: float
    exkurt_g: float
    method: str

    def __post_init__(self):
        if self.var_g < 0:
            raise InvalidParameterError(f"variance must be >= 0, got {self.var_g}")
        if self.method not in ("closed_form", "quadrature", "monte_carlo"):
            raise InvalidParameterError(f"unknown moments method {self.method!r}")


@dataclass(frozen=True)
class AsymptoticSpec:
    """E_g(X), g'(E_g(X)), and the limiting variance of sqrt(n)*(M_g - E_g)."""

    eg: float
    gprime_at_eg: float
    asym_var: float


# ---------------------------------------------------------------------------
# Quadrature

def _tail_divergent(dist, fn) -> bool:
    """Heuristic tail screen: fit the log-log slope of |fn(Q(u))| against the
    distance u to each support endpoint.  A slope <= -1 means the
    quantile-space integrand is non-integrable there.  Probes reach u=1e-60
    via quantile/isf closed forms, far beyond where quadrature samples."""
    for pick in (dist.quantile, dist.isf):
        u1, u2 = 1e-54, 1e-60
        try:
            # overflow to inf is the divergence signal, not an error
            with np.errstate(over="ignore", invalid="ignore"):
                h1 = abs(float(fn(float(pick(u1)))))
                h2 = abs(float(fn(float(pick(u2)))))
        except OverflowError:
            return True
        if not (math.isfinite(h1) and math.isfinite(h2)):
            return True
        if h1 == 0.0 or h2 == 0.0:
            continue
        slope = (math.log(h2) - math.log(h1)) / (math.log(u2) - math.log(u1))
        if slope <= -(1.0 - 1e-3):
            return True
    return False


def _run_quad(fn, lo, hi, **kwargs):
    out = quad(fn, lo, hi, epsabs=_QUAD_EPSABS, epsrel=_QUAD_EPSREL,
               limit=_QUAD_LIMIT, full_output=1, **kwargs)
    value = out[0]
    if len(out) > 3:  # QUADPACK attached a failure message
        raise ConvergenceError(f"quadrature did not converge: {out[3]}")
    if not math.isfinite(value):
        raise ConvergenceError("quadrature produced a non-finite value")
    return float(value)


def expect(dist, fn) -> float:
    """E[fn(X)] by adaptive quadrature.

    The integration variable is chosen per family (Gaussian z-space for
    LogNormal, a windowed x-space for Gamma, quantile space for Pareto,
    direct x-space for Uniform; quantile space for anything duck-typed).
    Because the windowed/z-space forms truncate tails that carry negligible
    probability mass, a tail-exponent screen runs first and raises
    DivergenceError for integrands those tails cannot absorb.
    """
    if _tail_divergent(dist, fn):
        raise DivergenceError(f"E[fn(X)] diverges for {getattr(dist, 'spec', dist)!r}")

    if isinstance(dist, LogNormal):
        mu, sig = dist.mu, dist.sigma

        def integrand(z):
            e = -0.5 * z * z
            if e < -745.0:  # Gaussian weight underflows first
                return 0.0
            return fn(math.exp(mu + sig * z)) * _INV_SQRT2PI * math.exp(e)

        return _run_quad(integrand, -np.inf, np.inf)

    if isinstance(dist, Gamma):
        lo = float(dist.quantile(1e-15))
        hi = float(dist.isf(1e-15))
        mode = dist.shape / dist.rate
        points = [mode] if lo < mode < hi else None
        return _run_quad(lambda x: fn(x) * dist.pdf(x), lo, hi, points=points)

    if isinstance(dist, Uniform):
        w = dist.hi - dist.lo
        return _run_quad(lambda x: fn(x) / w, dist.lo, dist.hi)

    # Pareto and any duck-typed distribution: integrate in quantile space,
    # where the density cancels; endpoints carry no mass.
    def qintegrand(u):
        if u <= 0.0 or u >= 1.0:
            return 0.0
        return fn(float(dist.quantile(u)))

    return _run_quad(qintegrand, 0.0, 1.0)


# ---------------------------------------------------------------------------
# Closed-form dispatch

def _has_closed_forms(g: Generator, dist) -> bool:
    if g.kind == "log":
        return hasattr(dist, "log_moments")
    if g.kind == "exp":
        return hasattr(dist, "mgf")
    if g.kind in ("identity", "reciprocal", "power"):
        return hasattr(dist, "power_moment")
    return False


def _closed_g_raw(g: Generator, dist, k: int) -> float:
    """E[g(X)**k] in closed form; math.inf when divergent.  Only for kinds
    other than log (log works from cumulants directly)."""
    if g.kind == "identity":
        return dist.power_moment(float(k))
    if g.kind == "reciprocal":
        return dist.power_moment(float(-k))
    if g.kind == "power":
        return dist.power_moment(g.param * k)
    if g.kind == "exp":
        v = dist.mgf(float(k))
        if v is None:
            raise ConfigurationError("no closed-form MGF here")
        return v
    raise ConfigurationError(f"no closed-form moments for generator {g.name!r}")


def _resolve_method(g: Generator, dist, method: str) -> str:
    if method not in _METHODS:
        raise InvalidParameterError(f"method must be one of {_METHODS}, got {method!r}")
    if method == "auto":
        return "closed_form" if _has_closed_forms(g, dist) else "quadrature"
    if method == "closed_form" and not _has_closed_forms(g, dist):
        raise ConfigurationError(
            f"no closed forms for generator {g.name!r} with this distribution")
    return method


def kolmogorov_expectation(g: Generator, dist, method: str = "auto") -> float:
    """E_g(X) = g_inv(E[g(X)]).

    Closed forms (when the distribution provides the needed moment):
    identity -> E[X]; log -> exp(E[ln X]); reciprocal -> 1/E[1/X];
    power p -> E[X**p]**(1/p); exp -> ln E[exp X].  Raises DivergenceError
    when E[g(X)] diverges.
    """
    how = _resolve_method(g, dist, method)
    if how == "monte_carlo":
        raise InvalidParameterError("use g_moments for the monte_carlo method")
    if how == "closed_form":
        if g.kind == "log":
            return math.exp(dist.log_moments()[0])
        m1 = _closed_g_raw(g, dist, 1)
        if math.isinf(m1):
            raise DivergenceError(f"E[g(X)] diverges for g={g.name!r}, dist={dist.spec!r}")
        return float(g.inverse(m1))
    m1 = expect(dist, g.forward)
    return float(g.inverse(m1))


def _g_mean_var(g: Generator, dist, how: str) -> tuple[float, float]:
    if how == "closed_form":
        if g.kind == "log":
            m, v, _, _ = dist.log_moments()
            return m, v
        r1 = _closed_g_raw(g, dist, 1)
        r2 = _closed_g_raw(g, dist, 2)
        if math.isinf(r1) or math.isinf(r2):
            order = 1 if math.isinf(r1) else 2
            raise DivergenceError(f"E[g(X)**{order}] diverges for g={g.name!r}")
        return r1, max(r2 - r1 * r1, 0.0)
    r1 = expect(dist, g.forward)
    r2 = expect(dist, lambda x: g.forward(x) ** 2)
    return r1, max(r2 - r1 * r1, 0.0)


def g_moments(g: Generator, dist, method: str = "auto",
              mc_samples: int = 10 ** 6, mc_seed: int = 0) -> GMoments:
    """Mean, variance, skewness, and excess kurtosis of g(X).

    Divergent moments raise DivergenceError naming the offending order.  A
    zero-variance g(X) yields NaN skewness/kurtosis.
    """
    how = _resolve_method(g, dist, method)
    if how == "monte_carlo":
        y = np.asarray(g.forward(dist.sample(mc_samples, np.random.default_rng(mc_seed))),
                       dtype=float)
        m = float(np.mean(y))
        d = y - m
        v = float(np.mean(d * d))
        if v == 0.0:
            return GMoments(m, 0.0, math.nan, math.nan, "monte_carlo")
        return GMoments(m, v, float(np.mean(d ** 3)) / v ** 1.5,
                        float(np.mean(d ** 4)) / (v * v) - 3.0, "monte_carlo")

    if how == "closed_form" and g.kind == "log":
        m, v, sk, ek = dist.log_moments()
        return GMoments(m, v, sk, ek, "closed_form")

    if how == "closed_form":
        raws = []
        for k in (1, 2, 3, 4):
            r = _closed_g_raw(g, dist, k)
            if math.isinf(r):
                raise DivergenceError(
                    f"E[g(X)**{k}] diverges for g={g.name!r}, dist={dist.spec!r}")
            raws.append(r)
    else:
        raws = [expect(dist, lambda x, k=k: g.forward(x) ** k) for k in (1, 2, 3, 4)]

    r1, r2, r3, r4 = raws
    var = r2 - r1 * r1
    if var <= 0.0:
        return GMoments(r1, max(var, 0.0), math.nan, math.nan, how)
    c3 = r3 - 3.0 * r1 * r2 + 2.0 * r1 ** 3
    c4 = r4 - 4.0 * r1 * r3 + 6.0 * r1 * r1 * r2 - 3.0 * r1 ** 4
    return GMoments(r1, var, c3 / var ** 1.5, c4 / (var * var) - 3.0, how)


def asymptotic_variance(g: Generator, dist, method: str = "auto") -> AsymptoticSpec:
    """E_g(X), g'(E_g(X)), and var(g(X)) / g'(E_g(X))**2."""
    eg = kolmogorov_expectation(g, dist, method)
    gp = float(g.derivative(eg))
    if not math.isfinite(gp) or gp == 0.0:
        raise DegenerateSlopeError(f"g'(E_g) = {gp} for generator {g.name!r}")
    how = _resolve_method(g, dist, method)
    _, var_g = _g_mean_var(g, dist, how)
    return AsymptoticSpec(eg=eg, gprime_at_eg=gp, asym_var=var_g / (gp * gp))


def standardize(spec: AsymptoticSpec, m_value: float, n: int) -> float:
    """sqrt(n) * (m_value - E_g) / sqrt(asymptotic variance)."""
    if n < 1:
        raise InvalidParameterError("n must be >= 1")
    if not spec.asym_var > 0:
        raise DegenerateSlopeError("asymptotic variance must be positive to standardize")
    return math.sqrt(n) * (m_value - spec.eg) / math.sqrt(spec.asym_var)


# ---------------------------------------------------------------------------
# Edgeworth expansion

def phi_cdf(x):
    """Standard normal CDF via the complementary error function."""
    out = 0.5 * erfc(-np.asarray(x, dtype=float) / _SQRT2)
    return float(out) if np.ndim(x) == 0 else out


def phi_pdf(x):
    out = _INV_SQRT2PI * np.exp(-0.5 * np.square(np.asarray(x, dtype=float)))
    return float(out) if np.ndim(x) == 0 else out


def hermite(k: int, x):
    """The polynomial factors of the first three Edgeworth corrections:
    p1 = x^2-1, p2 = x^3-3x, p3 = x^5-10x^3+15x."""
    if k == 1:
        return x * x - 1.0
    if k == 2:
        return x ** 3 - 3.0 * x
    if k == 3:
        return x ** 5 - 10.0 * x ** 3 + 15.0 * x
    raise InvalidParameterError(f"hermite order must be 1, 2, or 3, got {k}")


def _check_expansion_inputs(n: int, mom: GMoments, third_order: str) -> float:
    if n < 1:
        raise InvalidParameterError("n must be >= 1")
    if not (math.isfinite(mom.skew_g) and math.isfinite(mom.exkurt_g)):
        raise ConfigurationError("Edgeworth expansion needs finite skewness and kurtosis")
    if third_order == "skew_sq":
        return mom.skew_g * mom.skew_g
    if third_order == "kurt_sq":
        return mom.exkurt_g * mom.exkurt_g
    raise InvalidParameterError(f"third_order must be 'skew_sq' or 'kurt_sq', got {third_order!r}")


def edgeworth_corrections(x, n: int, mom: GMoments, third_order: str = "skew_sq"):
    """The three subtracted terms phi(x)*t_k, in expansion order.

    third_order selects the coefficient of the O(1/n) p3 term: the squared
    skewness ("skew_sq", the classical choice and the default) or the squared
    excess kurtosis ("kurt_sq", kept for comparison).
    """
    c3 = _check_expansion_inputs(n, mom, third_order)
    w = phi_pdf(x)
    rn = math.sqrt(n)
    return (
        w * mom.skew_g * hermite(1, x) / (6.0 * rn),
        w * mom.exkurt_g * hermite(2, x) / (24.0 * n),
        w * c3 * hermite(3, x) / (72.0 * n),
    )


def edgeworth_cdf(x, n: int, mom: GMoments, third_order: str = "skew_sq"):
    """Edgeworth-corrected CDF approximation at x (raw, not clamped to [0,1]):

        Phi(x) - phi(x) * [ skew*p1/(6 sqrt(n)) + exkurt*p2/(24 n) + c3*p3/(72 n) ]
    """
    c1, c2, c3 = edgeworth_corrections(x, n, mom, third_order)
    return phi_cdf(x) - (c1 + c2 + c3)


def edgeworth_cdf_clamped(x, n: int, mom: GMoments, third_order: str = "skew_sq"):
    """edgeworth_cdf clipped into [0, 1] (convenience for plotting/tables)."""
    out = np.clip(edgeworth_cdf(x, n, mom, third_order), 0.0, 1.0)
    return float(out) if np.ndim(x) == 0 else out
