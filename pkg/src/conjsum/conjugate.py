"""Truncated and full conjugate function via singular quadrature.

The full conjugate is the eps -> 0+ limit of the truncated integral; it is
made operational by walking a fixed halving eps sequence and Richardson
extrapolation of the linear-in-eps truncation error, with a Cauchy stop.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .functions import (
    DEFAULT_GRID,
    PI,
    DomainError,
    GridSpec,
    PeriodicFunction,
    eval_psi,
    integrate_graded,
    psi_breakpoints,
)
from .kernels import conj_dirichlet_matrix
from .summability import TriangularMatrix, ab_weights


class ConvergenceError(RuntimeError):
    """The truncation sequence was exhausted before the tolerance was met."""

    def __init__(self, message, last_values):
        super().__init__(message)
        self.last_values = tuple(last_values)


def _default_eps() -> tuple[float, ...]:
    return tuple(PI * 2.0 ** (-j) for j in range(1, 21))


@dataclass(frozen=True)
class ConjugateSettings:
    eps_sequence: tuple[float, ...] = field(default_factory=_default_eps)
    extrapolation_tol: float = 1e-7

    def __post_init__(self):
        eps = self.eps_sequence
        if len(eps) < 2:
            raise DomainError("eps_sequence needs at least two entries")
        if any(e2 >= e1 for e1, e2 in zip(eps, eps[1:])):
            raise DomainError("eps_sequence must be strictly decreasing")
        if eps[0] > PI or eps[-1] <= 0.0:
            raise DomainError("eps_sequence must lie in (0, pi]")
        if self.extrapolation_tol <= 0.0:
            raise DomainError("extrapolation_tol must be positive")


DEFAULT_SETTINGS = ConjugateSettings()


def default_x_grid() -> list[float]:
    """Evaluation points {+-j*pi/16 : j=1..15}; avoids all corpus singularities."""
    pos = [j * PI / 16.0 for j in range(1, 16)]
    return sorted(-v for v in pos) + pos


@lru_cache(maxsize=100000)
def _truncated_cached(f: PeriodicFunction, x: float, eps: float, grid: GridSpec) -> float:
    cuts = [b for b in psi_breakpoints(f, x) if b > eps]

    def integrand(t):
        return eval_psi(f, x, t) * 0.5 / np.tan(0.5 * t)

    return -integrate_graded(integrand, eps, PI, grid, breakpoints=cuts).value / PI


def conjugate_truncated(
    f: PeriodicFunction, x: float, eps: float, grid: GridSpec = DEFAULT_GRID
) -> float:
    """-(1/pi) int_eps^pi psi_x(t) (1/2) cot(t/2) dt."""
    if not (0.0 < eps <= PI):
        raise DomainError(f"eps must lie in (0, pi], got {eps}")
    if eps == PI:
        return 0.0
    return _truncated_cached(f, x, float(eps), grid)


def truncation_sequence(
    f: PeriodicFunction,
    x: float,
    settings: ConjugateSettings = DEFAULT_SETTINGS,
    grid: GridSpec = DEFAULT_GRID,
) -> list[tuple[float, float]]:
    """The (eps, truncated value) pairs conjugate_at walks through."""
    return [(eps, conjugate_truncated(f, x, eps, grid)) for eps in settings.eps_sequence]


@lru_cache(maxsize=100000)
def _conjugate_cached(
    f: PeriodicFunction, x: float, settings: ConjugateSettings, grid: GridSpec
) -> float:
    eps = settings.eps_sequence
    vals: list[float] = []
    extrapolated: list[float] = []
    for j, e in enumerate(eps):
        vals.append(conjugate_truncated(f, x, e, grid))
        if j == 0:
            continue
        # truncation error is c*eps + O(eps^3); eliminate the linear term
        e0, e1 = eps[j - 1], e
        r = (e0 * vals[j] - e1 * vals[j - 1]) / (e0 - e1)
        extrapolated.append(r)
        if len(extrapolated) >= 2 and abs(extrapolated[-1] - extrapolated[-2]) < settings.extrapolation_tol:
            return r
    raise ConvergenceError(
        f"conjugate at x={x} did not converge to {settings.extrapolation_tol} "
        f"within {len(eps)} truncations",
        extrapolated[-2:] if len(extrapolated) >= 2 else vals[-2:],
    )


def conjugate_at(
    f: PeriodicFunction,
    x: float,
    settings: ConjugateSettings = DEFAULT_SETTINGS,
    grid: GridSpec = DEFAULT_GRID,
) -> float:
    """The conjugate function at x, as the extrapolated limit of truncations."""
    if f.is_singular_at(x):
        raise DomainError(f"x={x} is a known singular point of {f.name}")
    return _conjugate_cached(f, float(x), settings, grid)


def deviation_kernel_form(
    f: PeriodicFunction,
    A: TriangularMatrix,
    B: TriangularMatrix,
    n: int,
    x: float,
    grid: GridSpec = DEFAULT_GRID,
) -> tuple[float, float]:
    """Both transform deviations straight from their kernel-integral forms.

    Returns (T - truncated conjugate, T - full conjugate), each computed as
    integrals of psi_x against the matrix means of D~_k and its complement,
    never as the operator value minus a conjugate value.
    """
    weights = ab_weights(A, B, n)
    h = PI / (n + 1)
    cuts = psi_breakpoints(f, x)

    def mean_kernel(t):
        return weights @ conj_dirichlet_matrix(n, np.asarray(t, dtype=float))

    def inner_part(t):
        return eval_psi(f, x, t) * mean_kernel(t)

    def outer_part(t):
        t = np.asarray(t, dtype=float)
        complement = 0.5 / np.tan(0.5 * t) - mean_kernel(t)
        return eval_psi(f, x, t) * complement

    inner = integrate_graded(inner_part, 0.0, h, grid, breakpoints=[c for c in cuts if c < h])
    outer = integrate_graded(outer_part, h, PI, grid, breakpoints=[c for c in cuts if c > h])
    full = integrate_graded(outer_part, 0.0, PI, grid, breakpoints=cuts)
    for q in (inner, outer, full):
        if not math.isfinite(q.value):
            raise DomainError("kernel-form deviation integral is not finite")
    dev_truncated = (-inner.value + outer.value) / PI
    dev_full = full.value / PI
    return dev_truncated, dev_full


__all__ = [
    "ConjugateSettings",
    "ConvergenceError",
    "DEFAULT_SETTINGS",
    "conjugate_truncated",
    "conjugate_at",
    "truncation_sequence",
    "deviation_kernel_form",
    "default_x_grid",
]
