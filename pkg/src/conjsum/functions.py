"""2*pi-periodic test functions, the shared quadrature engine and the corpus.

Every other module integrates through the two entry points here:
``integrate_periodic`` (smooth integrands, full periods get the spectrally
accurate uniform trapezoid) and ``integrate_graded`` (integrands with a
1/t-type feature at the left endpoint, handled by a dyadically graded mesh).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional, Sequence

import numpy as np

PI = math.pi
TWO_PI = 2.0 * math.pi

_GL_POINTS = 8
_gl_nodes, _gl_weights = np.polynomial.legendre.leggauss(_GL_POINTS)


class SingularIntegrandError(ValueError):
    """The integrand produced a non-finite value at a quadrature node."""


class DomainError(ValueError):
    """An argument fell outside the operation's stated domain."""


@dataclass(frozen=True)
class GridSpec:
    """Quadrature resolution: m nodes per period, dyadic grading depth."""

    m: int = 1024
    refinement: int = 24

    def __post_init__(self):
        if self.m < 16:
            raise DomainError(f"grid m must be >= 16, got {self.m}")
        if self.m % 2 != 0:
            raise DomainError(f"grid m must be even, got {self.m}")
        if self.refinement < 1:
            raise DomainError(f"refinement must be positive, got {self.refinement}")


DEFAULT_GRID = GridSpec()


@dataclass(frozen=True)
class QuadratureResult:
    value: float
    est_error: float

    def __post_init__(self):
        if self.est_error < 0:
            raise ValueError("est_error must be nonnegative")


@dataclass(frozen=True)
class KnownCoefficients:
    """Closed-form Fourier coefficients: a0 plus a generator nu -> (a_nu, b_nu)."""

    a0: float
    pair: Callable[[int], tuple[float, float]]


@dataclass(frozen=True)
class KnownConjugate:
    eval: Callable[[np.ndarray], np.ndarray]
    singular_points: tuple[float, ...] = ()   # mod 2*pi


@dataclass(eq=False)
class PeriodicFunction:
    """A named, evaluable 2*pi-periodic real function.

    ``breakpoints`` lists the points in (-pi, pi] where f or f' is
    discontinuous; the quadrature engine splits panels there.
    """

    name: str
    eval: Callable[[np.ndarray], np.ndarray]
    known_coeffs: Optional[KnownCoefficients] = None
    known_conjugate: Optional[KnownConjugate] = None
    breakpoints: tuple[float, ...] = ()

    def __call__(self, x):
        return self.eval(np.asarray(x, dtype=float))

    def is_singular_at(self, x: float, tol: float = 1e-12) -> bool:
        if self.known_conjugate is None:
            return False
        for s in self.known_conjugate.singular_points:
            d = (x - s) % TWO_PI
            if min(d, TWO_PI - d) < tol:
                return True
        return False


def eval_psi(f: PeriodicFunction, x: float, t):
    """Odd increment f(x+t) - f(x-t)."""
    t = np.asarray(t, dtype=float)
    out = f(x + t) - f(x - t)
    return float(out) if out.ndim == 0 else out


def eval_phi(f: PeriodicFunction, x: float, t):
    """Even second difference f(x+t) + f(x-t) - 2 f(x)."""
    t = np.asarray(t, dtype=float)
    out = f(x + t) + f(x - t) - 2.0 * float(f(x))
    return float(out) if out.ndim == 0 else out


# ---------------------------------------------------------------------------
# quadrature engine


def gl_rule(boundaries: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Gauss-Legendre nodes and weights for the panels between boundaries."""
    lo = boundaries[:-1, None]
    hi = boundaries[1:, None]
    half = 0.5 * (hi - lo)
    mid = 0.5 * (hi + lo)
    nodes = (mid + half * _gl_nodes).ravel()
    weights = (half * _gl_weights).ravel()
    return nodes, weights


def _check_finite(values: np.ndarray):
    if not np.all(np.isfinite(values)):
        raise SingularIntegrandError(
            "integrand is not finite at a quadrature node; "
            "use the graded integrator for endpoint singularities"
        )


def _subdivide(boundaries: np.ndarray, parts: int) -> np.ndarray:
    steps = np.linspace(0.0, 1.0, parts + 1)[:-1]
    lo = boundaries[:-1, None]
    hi = boundaries[1:, None]
    pts = (lo + (hi - lo) * steps).ravel()
    return np.append(pts, boundaries[-1])


def _insert_points(boundaries: np.ndarray, points: Sequence[float]) -> np.ndarray:
    if not len(points):
        return boundaries
    a, b = boundaries[0], boundaries[-1]
    extra = [p for p in points if a < p < b]
    if not extra:
        return boundaries
    merged = np.unique(np.concatenate([boundaries, np.asarray(extra, dtype=float)]))
    # drop near-duplicates that would create zero-width panels
    keep = np.concatenate([[True], np.diff(merged) > 1e-15 * max(1.0, abs(b - a))])
    return merged[keep]


def _composite_value(g, boundaries: np.ndarray) -> float:
    nodes, weights = gl_rule(boundaries)
    values = np.asarray(g(nodes), dtype=float)
    _check_finite(values)
    return float(np.dot(weights, values))


def _trapezoid_period(g, a: float, m: int) -> float:
    h = TWO_PI / m
    nodes = a + h * np.arange(m)
    values = np.asarray(g(nodes), dtype=float)
    _check_finite(values)
    return h * float(np.sum(values))


def integrate_periodic(
    g: Callable[[np.ndarray], np.ndarray],
    grid: GridSpec = DEFAULT_GRID,
    a: float = -PI,
    b: float = PI,
    breakpoints: Sequence[float] = (),
) -> QuadratureResult:
    """Composite-rule integral of g over [a, b].

    A full period without breakpoints uses the uniform trapezoid rule, which
    is spectrally accurate for smooth periodic integrands; any other interval
    uses composite Gauss-Legendre panels split at the given breakpoints.
    The error estimate comes from comparing against a halved mesh.
    """
    if b <= a:
        raise DomainError("integration interval is empty")
    full_period = abs((b - a) - TWO_PI) < 1e-12
    if full_period and not breakpoints:
        fine = _trapezoid_period(g, a, grid.m)
        coarse = _trapezoid_period(g, a, grid.m // 2)
        return QuadratureResult(fine, abs(fine - coarse))
    panels = max(2, grid.m // _GL_POINTS)
    base = np.linspace(a, b, panels + 1)
    base = _insert_points(base, breakpoints)
    coarse = _composite_value(g, base)
    fine = _composite_value(g, _subdivide(base, 2))
    return QuadratureResult(fine, abs(fine - coarse))


def graded_boundaries(a: float, b: float, grid: GridSpec) -> np.ndarray:
    """Panel boundaries on [a, b] graded dyadically toward a.

    Gap j spans [a + (b-a) 2^-(j+1), a + (b-a) 2^-j]; wide gaps get
    proportionally more panels so oscillatory integrands stay resolved.
    """
    length = b - a
    pieces = [np.array([b])]
    per_gap_budget = max(2, grid.m // (2 * _GL_POINTS))
    for j in range(grid.refinement):
        hi = a + length * 2.0 ** (-j)
        lo = a + length * 2.0 ** (-(j + 1))
        parts = max(2, int(math.ceil(per_gap_budget * 2.0 ** (-j))))
        pieces.append(np.linspace(hi, lo, parts + 1)[1:])
    pieces.append(np.array([a]))
    bounds = np.concatenate(pieces)[::-1]
    return np.unique(bounds)


def integrate_graded(
    g: Callable[[np.ndarray], np.ndarray],
    a: float,
    b: float,
    grid: GridSpec = DEFAULT_GRID,
    breakpoints: Sequence[float] = (),
) -> QuadratureResult:
    """Integral of g over [a, b] with nodes accumulating toward a.

    g must be finite on (a, b]; the Gauss nodes never touch the endpoints.
    """
    if not (0.0 <= a < b <= PI + 1e-12):
        raise DomainError(f"graded integration requires 0 <= a < b <= pi, got [{a}, {b}]")
    base = _insert_points(graded_boundaries(a, b, grid), breakpoints)
    coarse = _composite_value(g, base)
    fine = _composite_value(g, _subdivide(base, 2))
    return QuadratureResult(fine, abs(fine - coarse))


# ---------------------------------------------------------------------------
# corpus


def _wrap_symmetric(x: np.ndarray) -> np.ndarray:
    """Reduce to (-pi, pi]."""
    return PI - np.mod(PI - x, TWO_PI)


def _sawtooth(x: np.ndarray) -> np.ndarray:
    y = np.mod(x, TWO_PI)
    return np.where(y == 0.0, 0.0, 0.5 * (PI - y))


def _sawtooth_conjugate(x: np.ndarray) -> np.ndarray:
    y = np.mod(x, TWO_PI)
    return np.log(2.0 * np.sin(0.5 * y))


_HAT_HALF_WIDTH = PI / 2.0


def _hat(x: np.ndarray) -> np.ndarray:
    y = _wrap_symmetric(x)
    return np.maximum(0.0, 1.0 - np.abs(y) / _HAT_HALF_WIDTH)


def _hat_pair(nu: int) -> tuple[float, float]:
    w = _HAT_HALF_WIDTH
    return 2.0 * (1.0 - math.cos(nu * w)) / (PI * w * nu * nu), 0.0


def _single_mode_pair(mode: int, sine: bool):
    def pair(nu: int) -> tuple[float, float]:
        if nu != mode:
            return 0.0, 0.0
        return (0.0, 1.0) if sine else (1.0, 0.0)

    return pair


def _build_corpus() -> list[PeriodicFunction]:
    funcs = [
        PeriodicFunction(
            name="const",
            eval=lambda x: np.ones_like(np.asarray(x, dtype=float)),
            known_coeffs=KnownCoefficients(a0=2.0, pair=lambda nu: (0.0, 0.0)),
            known_conjugate=KnownConjugate(eval=lambda x: np.zeros_like(np.asarray(x, dtype=float))),
        ),
        PeriodicFunction(
            name="sin",
            eval=np.sin,
            known_coeffs=KnownCoefficients(a0=0.0, pair=_single_mode_pair(1, sine=True)),
            known_conjugate=KnownConjugate(eval=lambda x: -np.cos(x)),
        ),
        PeriodicFunction(
            name="cos",
            eval=np.cos,
            known_coeffs=KnownCoefficients(a0=0.0, pair=_single_mode_pair(1, sine=False)),
            known_conjugate=KnownConjugate(eval=np.sin),
        ),
        PeriodicFunction(
            name="sin3",
            eval=lambda x: np.sin(3.0 * x),
            known_coeffs=KnownCoefficients(a0=0.0, pair=_single_mode_pair(3, sine=True)),
            known_conjugate=KnownConjugate(eval=lambda x: -np.cos(3.0 * x)),
        ),
        PeriodicFunction(
            name="sawtooth",
            eval=_sawtooth,
            known_coeffs=KnownCoefficients(a0=0.0, pair=lambda nu: (0.0, 1.0 / nu)),
            known_conjugate=KnownConjugate(eval=_sawtooth_conjugate, singular_points=(0.0,)),
            breakpoints=(0.0,),
        ),
        PeriodicFunction(
            name="hat",
            eval=_hat,
            known_coeffs=KnownCoefficients(a0=0.5, pair=_hat_pair),
            breakpoints=(-_HAT_HALF_WIDTH, 0.0, _HAT_HALF_WIDTH),
        ),
    ]
    return funcs


_CORPUS = _build_corpus()
_REGISTRY = {f.name: f for f in _CORPUS}


def corpus() -> list[PeriodicFunction]:
    """The built-in test functions (shared instances, safe to cache against)."""
    return list(_CORPUS)


def registry() -> dict[str, PeriodicFunction]:
    return dict(_REGISTRY)


def by_name(name: str) -> PeriodicFunction:
    try:
        return _REGISTRY[name]
    except KeyError:
        known = ", ".join(sorted(_REGISTRY))
        raise KeyError(f"unknown function {name!r}; registry has: {known}") from None


def psi_breakpoints(f: PeriodicFunction, x: float, lo: float = 0.0, hi: float = PI) -> list[float]:
    """t in (lo, hi) where u -> f(x+u) or u -> f(x-u) hits a breakpoint of f."""
    out = set()
    for b in f.breakpoints:
        for t0 in ((b - x) % TWO_PI, (x - b) % TWO_PI):
            for cand in (t0, t0 - TWO_PI, TWO_PI - t0):
                if lo < cand < hi:
                    out.add(cand)
    return sorted(out)
