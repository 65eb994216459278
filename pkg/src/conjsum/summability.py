"""Lower-triangular row-stochastic matrices, AB-transforms and condition checkers.

The paper-style "<<" conditions hide an absolute constant; over a finite
matrix a checker can only report the smallest empirical constant together
with the index tuple attaining it, so that is what ConditionReport carries.
A ratio whose denominator vanishes while the numerator does not makes the
condition unsatisfiable; the report then carries an infinite constant.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .functions import (
    DEFAULT_GRID,
    PI,
    GridSpec,
    PeriodicFunction,
    eval_psi,
    integrate_graded,
    psi_breakpoints,
)
from .kernels import partial_sum_table
from .moduli import w_tilde

ROW_SUM_TOL = 1e-9
DEFAULT_CHECKER_N_MAX = 128


class MatrixValidationError(ValueError):
    pass


class TriangularMatrix:
    """Finite lower-triangular nonnegative matrix with unit row sums."""

    def __init__(self, rows: Sequence[Sequence[float]], name: str = "matrix"):
        self.name = name
        stored = []
        for i, raw in enumerate(rows):
            row = np.asarray(raw, dtype=float)
            if row.ndim != 1 or len(row) != i + 1:
                raise MatrixValidationError(
                    f"{name}: row {i} must have {i + 1} entries, got shape {row.shape}"
                )
            if np.any(row < 0.0):
                raise MatrixValidationError(f"{name}: row {i} has a negative entry")
            total = math.fsum(row.tolist())
            if abs(total - 1.0) > ROW_SUM_TOL:
                raise MatrixValidationError(
                    f"{name}: row {i} sums to {total!r}, expected 1 within {ROW_SUM_TOL}"
                )
            row.flags.writeable = False
            stored.append(row)
        if not stored:
            raise MatrixValidationError(f"{name}: needs at least one row")
        self._rows = tuple(stored)

    @property
    def n_max(self) -> int:
        return len(self._rows) - 1

    def row(self, n: int) -> np.ndarray:
        return self._rows[n]

    def entry(self, n: int, k: int) -> float:
        if k > n:
            return 0.0
        return float(self._rows[n][k])

    def to_dict(self) -> dict:
        return {"name": self.name, "rows": [r.tolist() for r in self._rows]}

    def __repr__(self):
        return f"TriangularMatrix({self.name!r}, n_max={self.n_max})"


def cesaro(n_max: int) -> TriangularMatrix:
    return TriangularMatrix(
        [np.full(n + 1, 1.0 / (n + 1)) for n in range(n_max + 1)], name="cesaro"
    )


def identity_matrix(n_max: int) -> TriangularMatrix:
    rows = []
    for n in range(n_max + 1):
        row = np.zeros(n + 1)
        row[n] = 1.0
        rows.append(row)
    return TriangularMatrix(rows, name="identity")


def delta_at_zero(n_max: int) -> TriangularMatrix:
    rows = []
    for n in range(n_max + 1):
        row = np.zeros(n + 1)
        row[0] = 1.0
        rows.append(row)
    return TriangularMatrix(rows, name="delta0")


def nordlund(p: Sequence[float], n_max: int) -> TriangularMatrix:
    """Weighted mean rows a_{n,k} = p_{n-k} / (p_0 + ... + p_n)."""
    w = np.asarray(p, dtype=float)
    if len(w) < n_max + 1:
        raise MatrixValidationError(f"nordlund needs {n_max + 1} weights, got {len(w)}")
    if np.any(w <= 0.0):
        raise MatrixValidationError("nordlund weights must be positive")
    rows = []
    for n in range(n_max + 1):
        total = math.fsum(w[: n + 1].tolist())
        rows.append(w[: n + 1][::-1] / total)
    return TriangularMatrix(rows, name="nordlund")


def from_rows(rows: Sequence[Sequence[float]], name: str = "custom") -> TriangularMatrix:
    return TriangularMatrix(rows, name=name)


def load_matrix_json(path: str) -> TriangularMatrix:
    with open(path, "r", encoding="utf-8") as fh:
        data = json.load(fh)
    if not isinstance(data, dict) or "rows" not in data:
        raise MatrixValidationError(f"{path}: expected an object with a 'rows' field")
    return TriangularMatrix(data["rows"], name=str(data.get("name", path)))


# ---------------------------------------------------------------------------
# AB-transform


def ab_weights(A: TriangularMatrix, B: TriangularMatrix, n: int) -> np.ndarray:
    """Collapsed weights c_k = sum_{r=k}^{n} a_{n,r} b_{r,k} of the double mean."""
    if n > A.n_max or n > B.n_max:
        raise MatrixValidationError(
            f"transform order n={n} exceeds matrix size (A: {A.n_max}, B: {B.n_max})"
        )
    a_row = A.row(n)
    weights = np.zeros(n + 1)
    for r in range(n + 1):
        weights[: r + 1] += a_row[r] * B.row(r)
    return weights


def ab_transform(
    coeffs,
    A: TriangularMatrix,
    B: TriangularMatrix,
    n: int,
    x: float,
    conjugate: bool = True,
) -> float:
    """Double matrix mean of the (conjugate) partial sums at x."""
    weights = ab_weights(A, B, n)
    sums = partial_sum_table(coeffs, n, x, conjugate=conjugate)
    return math.fsum((weights * sums).tolist())


# ---------------------------------------------------------------------------
# condition checkers


@dataclass(frozen=True)
class ConditionReport:
    condition_id: str
    min_constant: float
    witness: tuple[int, ...]

    @property
    def satisfied(self) -> bool:
        return math.isfinite(self.min_constant)


def check_condition_2_1(A: TriangularMatrix) -> ConditionReport:
    """Smallest K with a_{n,n} <= K/(n+1) over all rows."""
    best, witness = -1.0, (0,)
    for n in range(A.n_max + 1):
        val = (n + 1) * A.entry(n, n)
        if val > best:
            best, witness = val, (n,)
    return ConditionReport("2.1", best, witness)


def check_condition_2_2(A: TriangularMatrix) -> ConditionReport:
    """Smallest K with (1/(s+1)) sum_{r<=s} a_{n,r} <= K a_{n,s}."""
    best, witness = 0.0, (0, 0)
    for n in range(A.n_max + 1):
        row = A.row(n).tolist()
        for s in range(n + 1):
            prefix = math.fsum(row[: s + 1])
            denom = (s + 1) * row[s]
            if denom == 0.0:
                if prefix > 0.0:
                    return ConditionReport("2.2", math.inf, (n, s))
                continue
            val = prefix / denom
            if val > best:
                best, witness = val, (n, s)
    return ConditionReport("2.2", best, witness)


def check_condition_2_21(A: TriangularMatrix, B: TriangularMatrix) -> ConditionReport:
    """Smallest K with |a_{n,r} b_{r,r-l} - a_{n,r+1} b_{r+1,r+1-l}| <= K a_{n,r}/(r+1)^2."""
    n_hi = min(A.n_max, B.n_max)
    best, witness = 0.0, (0, 0, 0)
    for n in range(1, n_hi + 1):
        a_row = A.row(n)
        for r in range(n):
            b_r = B.row(r)[::-1]
            b_r1 = B.row(r + 1)[::-1][: r + 1]
            nums = np.abs(a_row[r] * b_r - a_row[r + 1] * b_r1) * (r + 1) ** 2
            if a_row[r] == 0.0:
                if np.any(nums > 0.0):
                    return ConditionReport("2.21", math.inf, (n, r, int(np.argmax(nums))))
                continue
            l = int(np.argmax(nums))
            val = nums[l] / a_row[r]
            if val > best:
                best, witness = val, (n, r, l)
    return ConditionReport("2.21", best, witness)


def check_condition_3_2(B: TriangularMatrix) -> ConditionReport:
    """Smallest K with |b_{r,r-l} - b_{r+1,r+1-l}| <= K/(r+1)^2."""
    best, witness = 0.0, (0, 0)
    for r in range(B.n_max):
        diffs = np.abs(B.row(r)[::-1] - B.row(r + 1)[::-1][: r + 1]) * (r + 1) ** 2
        l = int(np.argmax(diffs))
        if diffs[l] > best:
            best, witness = diffs[l], (r, l)
    return ConditionReport("3.2", float(best), witness)


def check_remark1_condition(A: TriangularMatrix, n: int) -> float:
    """sum_{r=0}^{n} sum_{k=0}^{r} a_{n,k}/(r+1); bounded in n for the weak estimate."""
    row = A.row(n).tolist()
    return math.fsum(math.fsum(row[: r + 1]) / (r + 1) for r in range(n + 1))


def check_remark2_condition(B: TriangularMatrix, n_max: int | None = None) -> float:
    """max over 0 < s <= n-1 of sum_{r=s}^{n-1} sum_{k=s}^{r} |b_{r,r-k} - b_{r+1,r+1-k}|."""
    n = B.n_max if n_max is None else n_max
    if n > B.n_max:
        raise MatrixValidationError(f"remark2 scan needs rows up to {n}, have {B.n_max}")
    if n < 2:
        return 0.0
    suffix = []
    for r in range(n):
        diffs = np.abs(B.row(r)[::-1] - B.row(r + 1)[::-1][: r + 1])
        suffix.append(np.concatenate([np.cumsum(diffs[::-1])[::-1], [0.0]]))
    best = 0.0
    for s in range(1, n):
        total = math.fsum(float(suffix[r][s]) for r in range(s, n))
        best = max(best, total)
    return best


def check_condition_2_511(
    f: PeriodicFunction, x: float, n: int, grid: GridSpec = DEFAULT_GRID
) -> float:
    """Ratio of (1/pi) int_0^{pi/(n+1)} |psi_x(t)|/t dt to the plain modulus there.

    0/0 is reported as 1; a vanishing modulus against a positive integral
    means the condition fails and the ratio is infinite.
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    h = PI / (n + 1)
    cuts = [b for b in psi_breakpoints(f, x) if b < h]

    def integrand(t):
        t = np.asarray(t, dtype=float)
        return np.abs(eval_psi(f, x, t)) / t

    lhs = integrate_graded(integrand, 0.0, h, grid, breakpoints=cuts).value / PI
    rhs = w_tilde(f, x, h, grid)
    tiny = 1e-13
    if rhs < tiny:
        return 1.0 if lhs < tiny else math.inf
    return lhs / rhs


__all__ = [
    "TriangularMatrix",
    "MatrixValidationError",
    "ConditionReport",
    "cesaro",
    "identity_matrix",
    "delta_at_zero",
    "nordlund",
    "from_rows",
    "load_matrix_json",
    "ab_weights",
    "ab_transform",
    "check_condition_2_1",
    "check_condition_2_2",
    "check_condition_2_21",
    "check_condition_3_2",
    "check_remark1_condition",
    "check_remark2_condition",
    "check_condition_2_511",
    "DEFAULT_CHECKER_N_MAX",
]
