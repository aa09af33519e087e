"""Ground-truth engine: exact dense elimination over rationals.

Deliberately independent of the banded factorization code — it only sees
DenseMatrix and plain rationals — so it can serve as the oracle for every
test in the repository.  O(n^3), unoptimized on purpose.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .errors import SingularMatrixError
from .matrix import DenseMatrix


@dataclass(frozen=True)
class OracleReport:
    det: Fraction
    inverse: Optional[DenseMatrix]
    nonsingular: bool


@dataclass(frozen=True)
class CompareReport:
    positions: tuple  # (i, j) 1-based positions of exact inequality
    max_abs_diff: float

    @property
    def equal(self) -> bool:
        return not self.positions and self.max_abs_diff == 0.0


def dense_det(M: DenseMatrix) -> Fraction:
    """Exact determinant by row reduction, pivoting on the first nonzero."""
    n = M.n
    rows = [[Fraction(v) for v in row] for row in M.rows]
    det = Fraction(1)
    for col in range(n):
        pivot_row = next((r for r in range(col, n) if rows[r][col] != 0), None)
        if pivot_row is None:
            return Fraction(0)
        if pivot_row != col:
            rows[col], rows[pivot_row] = rows[pivot_row], rows[col]
            det = -det
        pivot = rows[col][col]
        det *= pivot
        for r in range(col + 1, n):
            if rows[r][col] != 0:
                factor = rows[r][col] / pivot
                rows[r] = [u - factor * v for u, v in zip(rows[r], rows[col])]
    return det


def dense_inverse(M: DenseMatrix) -> DenseMatrix:
    """Exact inverse by Gauss-Jordan elimination on [M | I]."""
    n = M.n
    aug = [
        [Fraction(v) for v in row]
        + [Fraction(1) if k == i else Fraction(0) for k in range(n)]
        for i, row in enumerate(M.rows)
    ]
    for col in range(n):
        pivot_row = next((r for r in range(col, n) if aug[r][col] != 0), None)
        if pivot_row is None:
            raise SingularMatrixError("singular")
        if pivot_row != col:
            aug[col], aug[pivot_row] = aug[pivot_row], aug[col]
        pivot = aug[col][col]
        aug[col] = [v / pivot for v in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                factor = aug[r][col]
                aug[r] = [u - factor * v for u, v in zip(aug[r], aug[col])]
    return DenseMatrix([row[n:] for row in aug])


def oracle_report(M: DenseMatrix) -> OracleReport:
    det = dense_det(M)
    if det == 0:
        return OracleReport(det=det, inverse=None, nonsingular=False)
    return OracleReport(det=det, inverse=dense_inverse(M), nonsingular=True)


def compare(Sa: DenseMatrix, Sb: DenseMatrix) -> CompareReport:
    """Positions of exact inequality, plus the max |difference| for floats."""
    if Sa.n != Sb.n:
        raise ValueError(f"dimension mismatch: {Sa.n} vs {Sb.n}")
    positions = []
    max_diff = 0.0
    for i in range(Sa.n):
        for j in range(Sa.n):
            u, v = Sa.rows[i][j], Sb.rows[i][j]
            if isinstance(u, float) or isinstance(v, float):
                diff = abs(float(u) - float(v))
                if diff > max_diff:
                    max_diff = diff
                if diff != 0.0:
                    positions.append((i + 1, j + 1))
            elif u != v:
                positions.append((i + 1, j + 1))
    return CompareReport(positions=tuple(positions), max_abs_diff=max_diff)
