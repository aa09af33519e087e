"""Exact inversion from the bordered factors.

The last five columns of the inverse come straight from the factor vectors:
each one is a closed-form pass down the border entries followed by an upward
five-term sweep.  They are mutually independent, so they may be computed
concurrently.  The remaining n-5 columns follow from the band identity
S @ H = I, peeled column by column: column j is obtained from columns
j+1..j+6 by dividing through the band entry C_j.

Zero entries are handled by substitution: every zero C_i with i <= n-5 is
replaced by the shared indeterminate ``t`` before factoring (so the division
is by ``t`` rather than by zero), every zero pivot is replaced by ``t``
inside the factorization, and the finished entries are evaluated at t = 0.
The evaluation is exact: removable factors of t cancel during rational
function reduction.

One combination is unsound in the recursion and is detected explicitly: a
pivot override at index i together with a band substitution at C_{i-3}
couples the two uses of ``t``, and the division by ``t`` then keeps an
order-one error term alive at t=0 (the affected column comes out finite but
wrong).  When that happens the back columns are recovered by per-column
substitution through the factors instead, which only ever divides by
pivots; the seed columns are unaffected.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

from . import kernels
from .errors import InternalContractError
from .factor import FactorData, factorize, lu_substitute, require_nonsingular
from .matrix import CyclicHeptaMatrix, DenseMatrix
from .scalars import T, eval_at_zero, is_zero

_ONE = Fraction(1)

SEED_COLUMN_COUNT = 5


@dataclass(frozen=True)
class InverseResult:
    """Exact inverse plus provenance of the substitutions that fired."""

    S: DenseMatrix
    c_substitutions: tuple
    pivot_overrides: tuple
    b_substitutions: tuple = ()
    back_path: str = "recursion"


def _upper_sweep(col, fd: FactorData, Cv):
    """Rows n-5 down to 1 of one seed column (five-term recurrence)."""
    n = fd.n
    al, g, z, v, w = fd.alpha, fd.g, fd.z, fd.v, fd.w
    for i in range(n - 5, 0, -1):
        col[i] = -(
            g[i] * col[i + 1]
            + z[i] * col[i + 2]
            + Cv[i] * col[i + 3]
            + w[i] * col[n - 1]
            + v[i] * col[n]
        ) / al[i]


def _fill_closure_rows(col, fd: FactorData):
    """Rows n-2, n-3, n-4 for whichever of them the column head left open."""
    n = fd.n
    al, g, z, v, w = fd.alpha, fd.g, fd.z, fd.v, fd.w
    if col[n - 2] is None:
        col[n - 2] = -(w[n - 2] * col[n - 1] + v[n - 2] * col[n]) / al[n - 2]
    if col[n - 3] is None:
        col[n - 3] = -(
            g[n - 3] * col[n - 2] + w[n - 3] * col[n - 1] + v[n - 3] * col[n]
        ) / al[n - 3]
    if col[n - 4] is None:
        col[n - 4] = -(
            g[n - 4] * col[n - 3]
            + z[n - 4] * col[n - 2]
            + w[n - 4] * col[n - 1]
            + v[n - 4] * col[n]
        ) / al[n - 4]


def _seed_column(fd: FactorData, Cv, j: int):
    """Column j of the inverse for j in {n, n-1, n-2, n-3, n-4}."""
    n = fd.n
    al, f, e, k, h, v, w, g = fd.alpha, fd.f, fd.e, fd.k, fd.h, fd.v, fd.w, fd.g
    c = [None] * (n + 1)
    if j == n:
        c[n] = _ONE / al[n]
        c[n - 1] = -v[n - 1] * c[n] / al[n - 1]
    elif j == n - 1:
        c[n] = -h[n - 1] / al[n]
        c[n - 1] = (_ONE - v[n - 1] * c[n]) / al[n - 1]
    elif j == n - 2:
        c[n] = (-h[n - 2] + h[n - 1] * k[n - 2]) / al[n]
        c[n - 1] = -(k[n - 2] + v[n - 1] * c[n]) / al[n - 1]
        c[n - 2] = (_ONE - w[n - 2] * c[n - 1] - v[n - 2] * c[n]) / al[n - 2]
    elif j == n - 3:
        c[n] = (-h[n - 3] + h[n - 2] * f[n - 2] - h[n - 1] * (k[n - 2] * f[n - 2] - k[n - 3])) / al[n]
        c[n - 1] = (k[n - 2] * f[n - 2] - k[n - 3] - v[n - 1] * c[n]) / al[n - 1]
        c[n - 2] = -(f[n - 2] + w[n - 2] * c[n - 1] + v[n - 2] * c[n]) / al[n - 2]
        c[n - 3] = (_ONE - g[n - 3] * c[n - 2] - w[n - 3] * c[n - 1] - v[n - 3] * c[n]) / al[n - 3]
    elif j == n - 4:
        # the forward pass through row n-2 leaves e[n-2] - f[n-2]*f[n-3];
        # the same grouping must appear inside the k and h folds
        emff = e[n - 2] - f[n - 2] * f[n - 3]
        c[n] = (
            -h[n - 4]
            + h[n - 3] * f[n - 3]
            + h[n - 2] * emff
            + h[n - 1] * (k[n - 4] - k[n - 3] * f[n - 3] - k[n - 2] * emff)
        ) / al[n]
        c[n - 1] = (-k[n - 4] + k[n - 3] * f[n - 3] + k[n - 2] * emff - v[n - 1] * c[n]) / al[n - 1]
        c[n - 2] = -(emff + w[n - 2] * c[n - 1] + v[n - 2] * c[n]) / al[n - 2]
        c[n - 3] = -(f[n - 3] + g[n - 3] * c[n - 2] + w[n - 3] * c[n - 1] + v[n - 3] * c[n]) / al[n - 3]
        c[n - 4] = (
            _ONE
            - g[n - 4] * c[n - 3]
            - fd.z[n - 4] * c[n - 2]
            - w[n - 4] * c[n - 1]
            - v[n - 4] * c[n]
        ) / al[n - 4]
    else:
        raise ValueError(f"not a seed column index: {j}")
    _fill_closure_rows(c, fd)
    _upper_sweep(c, fd, Cv)
    return c


def seed_columns(fd: FactorData, H: CyclicHeptaMatrix, parallel: bool = False) -> tuple:
    """The five rightmost columns of the inverse: (Col_n, ..., Col_{n-4}).

    Independent given the factor data; with ``parallel`` they run on a small
    thread pool.  Results are identical either way.
    """
    n = fd.n
    Cv = (None, *H.band("C"))
    indices = [n, n - 1, n - 2, n - 3, n - 4]
    if parallel:
        with ThreadPoolExecutor(max_workers=SEED_COLUMN_COUNT) as pool:
            cols = list(pool.map(lambda j: _seed_column(fd, Cv, j), indices))
    else:
        cols = [_seed_column(fd, Cv, j) for j in indices]
    return tuple(cols)


def _padded_bands(H: CyclicHeptaMatrix) -> dict:
    return {k: (None, *H.band(k)) for k in ("D", "B", "b", "d", "a", "A", "C")}


def _back_column(bands: dict, cols: dict, j: int, n: int) -> list:
    """Column j from columns j+1..j+6 and column j+3 of the matrix.

    Reads nothing below j, so earlier columns cannot influence it; for
    j = n-5 the D-band term falls off the matrix and is skipped.
    """
    Cv = bands["C"]
    if is_zero(Cv[j]):
        raise InternalContractError(f"zero divisor C_{j} reached the back recursion")
    Av, av, dv, bv, Bv, Dv = (bands[k] for k in ("A", "a", "d", "b", "B", "D"))
    col = [None] * (n + 1)
    with_D = j + 6 <= n
    for i in range(1, n + 1):
        acc = _ONE if i == j + 3 else 0
        acc = (
            acc
            - Av[j + 1] * cols[j + 1][i]
            - av[j + 2] * cols[j + 2][i]
            - dv[j + 3] * cols[j + 3][i]
            - bv[j + 4] * cols[j + 4][i]
            - Bv[j + 5] * cols[j + 5][i]
        )
        if with_D:
            acc = acc - Dv[j + 6] * cols[j + 6][i]
        col[i] = acc / Cv[j]
    return col


def back_columns(H: CyclicHeptaMatrix, seeds: tuple) -> dict:
    """Columns n-5 down to 1 via the band identity, dividing by C_j.

    Precondition: any C_j that was exactly zero (j <= n-5) has already been
    replaced by the indeterminate, so every divisor here is nonzero.
    """
    n = H.n
    bands = _padded_bands(H)
    cols = {n: seeds[0], n - 1: seeds[1], n - 2: seeds[2], n - 3: seeds[3], n - 4: seeds[4]}
    for j in range(n - 5, 0, -1):
        cols[j] = _back_column(bands, cols, j, n)
    return {j: cols[j] for j in range(1, n - 4)}


def _substitute_zero_bands(H: CyclicHeptaMatrix, apply_b: bool):
    """Replace zero C_i (i <= n-5) — and optionally zero B_i (i >= 6) — by t."""
    n = H.n
    c_subs, b_subs = [], []
    Cnew = list(H.band("C"))
    for i in range(1, n - 4):
        if is_zero(Cnew[i - 1]):
            Cnew[i - 1] = T
            c_subs.append(i)
    out = H.replace_band("C", Cnew) if c_subs else H
    if apply_b:
        Bnew = list(out.band("B"))
        for i in range(6, n + 1):
            if is_zero(Bnew[i - 1]):
                Bnew[i - 1] = T
                b_subs.append(i)
        if b_subs:
            out = out.replace_band("B", Bnew)
    return out, tuple(c_subs), tuple(b_subs)


def _basis_vector(n: int, j: int) -> list:
    return [_ONE if i == j else Fraction(0) for i in range(1, n + 1)]


def invert(
    H: CyclicHeptaMatrix,
    parallel_seeds: bool = False,
    apply_b_substitution: bool = False,
) -> InverseResult:
    """Exact inverse of H, or SingularMatrixError.

    Pipeline: substitute zero bands, check the determinant, factor, build
    the five seed columns, recover the remaining columns, evaluate at t=0.
    The result is the inverse of the original (unperturbed) matrix.
    """
    n = H.n
    Hp, c_subs, b_subs = _substitute_zero_bands(H, apply_b_substitution)
    fd = factorize(Hp)
    require_nonsingular(fd)
    seeds = seed_columns(fd, Hp, parallel=parallel_seeds)

    colliding = {i for i in fd.overrides if (i - 3) in set(c_subs)}
    if colliding:
        back_path = "bordered-solve"
        back = {
            j: [None, *lu_substitute(fd, _basis_vector(n, j))]
            for j in range(1, n - 4)
        }
    else:
        back_path = "recursion"
        back = back_columns(Hp, seeds)

    cols = dict(back)
    for offset, col in enumerate(seeds):
        cols[n - offset] = col
    rows = [
        [eval_at_zero(cols[j][i]) for j in range(1, n + 1)]
        for i in range(1, n + 1)
    ]
    return InverseResult(
        S=DenseMatrix(rows),
        c_substitutions=c_subs,
        pivot_overrides=fd.overrides,
        b_substitutions=b_subs,
        back_path=back_path,
    )


def inverse_float(H: CyclicHeptaMatrix, tol: float = 1e-12):
    """Float64 inverse (kernel lane); near-singular pivots are refused."""
    return kernels.inverse_float(H, tol)
