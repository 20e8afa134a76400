"""Exact linear algebra over the rationals and the integers.

Matrices are handled as sequences of column vectors (tuples of Fractions or
ints).  Everything is fraction-free where it matters: determinants use the
Bareiss scheme and lattice canonicalization uses an integer Hermite normal
form, so no result ever depends on floating point.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Sequence

from .errors import InternalError, InvalidBasisError
from .norms import Vec


def vadd(a: Vec, b: Vec) -> Vec:
    return tuple(x + y for x, y in zip(a, b, strict=True))


def vsub(a: Vec, b: Vec) -> Vec:
    return tuple(x - y for x, y in zip(a, b, strict=True))


def vneg(a: Vec) -> Vec:
    return tuple(-x for x in a)


def vscale(c: Fraction | int, a: Vec) -> Vec:
    return tuple(c * x for x in a)


def sign_representative(v: Vec) -> Vec:
    """The lexicographically larger of {v, -v}; deterministic +/- dedup key."""
    neg = vneg(v)
    return v if v >= neg else neg


def columns_to_rows(cols: Sequence[Sequence]) -> list[list]:
    n = len(cols[0])
    return [[col[i] for col in cols] for i in range(n)]


def rank_of_columns(cols: Sequence[Vec]) -> int:
    """Exact rank via rational Gaussian elimination."""
    rows = [list(map(Fraction, r)) for r in columns_to_rows(cols)]
    k = len(cols)
    rank = 0
    for col in range(k):
        pivot = None
        for r in range(rank, len(rows)):
            if rows[r][col] != 0:
                pivot = r
                break
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        prow = rows[rank]
        inv = 1 / prow[col]
        for r in range(rank + 1, len(rows)):
            f = rows[r][col]
            if f == 0:
                continue
            f *= inv
            row = rows[r]
            for c in range(col, k):
                row[c] -= f * prow[c]
        rank += 1
    return rank


def solve_columns(cols: Sequence[Vec], targets: Sequence[Vec]) -> list[tuple[Fraction, ...] | None]:
    """Solve cols * c = t for each target; None when t is outside the span.

    Columns must be linearly independent, so a solution, when it exists, is
    unique.  A single forward elimination serves all targets.
    """
    k = len(cols)
    n = len(cols[0])
    rows = [list(map(Fraction, r)) for r in columns_to_rows(cols)]
    aug = [[Fraction(t[i]) for t in targets] for i in range(n)]
    pivots: list[tuple[int, int]] = []
    rank = 0
    for col in range(k):
        pivot = None
        for r in range(rank, n):
            if rows[r][col] != 0:
                pivot = r
                break
        if pivot is None:
            raise InvalidBasisError("columns are linearly dependent")
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        aug[rank], aug[pivot] = aug[pivot], aug[rank]
        prow, paug = rows[rank], aug[rank]
        inv = 1 / prow[col]
        for r in range(rank + 1, n):
            f = rows[r][col]
            if f == 0:
                continue
            f *= inv
            row, arow = rows[r], aug[r]
            for c in range(col, k):
                row[c] -= f * prow[c]
            for c in range(len(targets)):
                arow[c] -= f * paug[c]
        pivots.append((rank, col))
        rank += 1
    results: list[tuple[Fraction, ...] | None] = []
    for t_idx in range(len(targets)):
        # Consistency: rows below the pivot block must have zero rhs.
        if any(aug[r][t_idx] != 0 for r in range(rank, n)):
            results.append(None)
            continue
        coeffs = [Fraction(0)] * k
        for r, col in reversed(pivots):
            acc = aug[r][t_idx]
            for c in range(col + 1, k):
                if rows[r][c] != 0 and coeffs[c] != 0:
                    acc -= rows[r][c] * coeffs[c]
            coeffs[col] = acc / rows[r][col]
        results.append(tuple(coeffs))
    return results


def integral_coeffs(coeffs: tuple[Fraction, ...] | None) -> tuple[int, ...] | None:
    if coeffs is None:
        return None
    if any(c.denominator != 1 for c in coeffs):
        return None
    return tuple(int(c) for c in coeffs)


def det_int(cols: Sequence[Sequence[int]]) -> int:
    """Determinant of a square integer matrix (fraction-free Bareiss).

    Columns holding a single +/-1 entry are expanded first; the structured
    coefficient matrices this package produces usually collapse entirely.
    """
    k = len(cols)
    if any(len(c) != k for c in cols):
        raise InternalError("determinant needs a square matrix")
    m = [list(c) for c in cols]
    sign = 1
    active_rows = list(range(k))
    active_cols = list(range(k))
    progress = True
    while progress and len(active_rows) > 1:
        progress = False
        for cj in list(active_cols):
            col = m[cj]
            nonzero = [ri for ri in active_rows if col[ri] != 0]
            if len(nonzero) == 0:
                return 0
            if len(nonzero) == 1 and col[nonzero[0]] in (1, -1):
                ri = nonzero[0]
                # Laplace expansion along this column.
                r_pos = active_rows.index(ri)
                c_pos = active_cols.index(cj)
                if (r_pos + c_pos) % 2 == 1:
                    sign = -sign
                sign *= col[ri]
                active_rows.remove(ri)
                active_cols.remove(cj)
                progress = True
        if not active_rows:
            return sign
    if not active_rows:
        return sign
    sub = [[m[cj][ri] for ri in active_rows] for cj in active_cols]
    return sign * _bareiss_det(sub)


def _bareiss_det(cols: list[list[int]]) -> int:
    k = len(cols)
    if k == 0:
        return 1
    a = [[cols[c][r] for c in range(k)] for r in range(k)]
    sign = 1
    prev = 1
    for i in range(k - 1):
        if a[i][i] == 0:
            swap = next((r for r in range(i + 1, k) if a[r][i] != 0), None)
            if swap is None:
                return 0
            a[i], a[swap] = a[swap], a[i]
            sign = -sign
        piv = a[i][i]
        for r in range(i + 1, k):
            arow, irow = a[r], a[i]
            lead = arow[i]
            for c in range(i + 1, k):
                arow[c] = (arow[c] * piv - lead * irow[c]) // prev
            arow[i] = 0
        prev = piv
    return sign * a[k - 1][k - 1]


def invert_fraction_matrix(cols: Sequence[Vec]) -> list[Vec]:
    """Inverse of a square rational matrix, as columns."""
    k = len(cols)
    if any(len(c) != k for c in cols):
        raise InternalError("inverse needs a square matrix")
    a = [[Fraction(cols[c][r]) for c in range(k)] for r in range(k)]
    inv = [[Fraction(1) if r == c else Fraction(0) for c in range(k)] for r in range(k)]
    for i in range(k):
        pivot = next((r for r in range(i, k) if a[r][i] != 0), None)
        if pivot is None:
            raise InvalidBasisError("matrix is singular")
        a[i], a[pivot] = a[pivot], a[i]
        inv[i], inv[pivot] = inv[pivot], inv[i]
        piv = a[i][i]
        a[i] = [x / piv for x in a[i]]
        inv[i] = [x / piv for x in inv[i]]
        for r in range(k):
            if r == i or a[r][i] == 0:
                continue
            f = a[r][i]
            a[r] = [x - f * y for x, y in zip(a[r], a[i])]
            inv[r] = [x - f * y for x, y in zip(inv[r], inv[i])]
    return [tuple(inv[r][c] for r in range(k)) for c in range(k)]


def row_hnf(rows: Sequence[Sequence[int]]) -> list[tuple[int, ...]]:
    """Unique Hermite normal form of the lattice generated by integer rows.

    Output rows are in echelon order with positive pivots; entries above a
    pivot are reduced into [0, pivot).  Zero rows are dropped, so dependent
    generator sets are fine.
    """
    work = [list(r) for r in rows if any(r)]
    if not work:
        return []
    ncols = len(rows[0])
    done: list[list[int]] = []
    pivot_cols: list[int] = []
    for col in range(ncols):
        live = [r for r in work if r[col] != 0]
        if not live:
            continue
        # gcd-reduce until a single row has a nonzero entry in this column
        while len(live) > 1:
            live.sort(key=lambda r: abs(r[col]))
            base = live[0]
            for r in live[1:]:
                qf = r[col] // base[col]
                if qf:
                    for c in range(col, ncols):
                        r[c] -= qf * base[c]
            live = [r for r in live if r[col] != 0]
        pivot_row = live[0]
        work.remove(pivot_row)
        work = [r for r in work if any(r)]
        if pivot_row[col] < 0:
            pivot_row = [-x for x in pivot_row]
        piv = pivot_row[col]
        for r in done:
            qf = r[col] // piv
            if qf:
                for c in range(col, ncols):
                    r[c] -= qf * pivot_row[c]
        done.append(list(pivot_row))
        pivot_cols.append(col)
    return [tuple(r) for r in done]


def lcm_of_denominators(cols: Sequence[Vec]) -> int:
    d = 1
    for col in cols:
        for x in col:
            d = lcm(d, Fraction(x).denominator)
    return d


def gcd_of_entries(cols: Sequence[Sequence[int]]) -> int:
    g = 0
    for col in cols:
        for x in col:
            g = gcd(g, abs(x))
    return g
