"""Independent brute-force oracles the fast paths are checked against.

These deliberately share no code with the enumeration module: membership in
the ball is decided by iterating a coefficient grid whose per-coordinate
bounds come from Cramer-style inversion, and every norm is summed directly.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from math import ceil

from latforge import Basis
from latforge.enumeration import BallSpec, ShortVector
from latforge.linalg import invert_fraction_matrix, sign_representative
from latforge.rational import root_ceil


def grid_bounds(basis: Basis, spec: BallSpec) -> list[int]:
    """Per-coefficient bounds from the inverse-matrix rows (Cramer style)."""
    assert basis.rank == basis.ambient_dim, "oracle handles full-rank square bases"
    inv_cols = invert_fraction_matrix(basis.columns)
    coord_bound = root_ceil(spec.bound_pow, spec.q)
    bounds = []
    for i in range(basis.rank):
        row_l1 = sum(abs(inv_cols[c][i]) for c in range(basis.rank))
        bounds.append(ceil(row_l1 * coord_bound))
    return bounds


def grid_size(basis: Basis, spec: BallSpec) -> int:
    size = 1
    for b in grid_bounds(basis, spec):
        size *= 2 * b + 1
    return size


def grid_enumerate(basis: Basis, spec: BallSpec) -> list[ShortVector]:
    """Coefficient-grid enumeration for square bases (exact, exhaustive)."""
    bounds = grid_bounds(basis, spec)
    integral = all(x.denominator == 1 for col in basis.columns for x in col)
    cols = (
        [[int(x) for x in col] for col in basis.columns]
        if integral
        else list(basis.columns)
    )
    found = {}
    for coeffs in itertools.product(*(range(-b, b + 1) for b in bounds)):
        if all(c == 0 for c in coeffs):
            continue
        x = [0 if integral else Fraction(0)] * basis.ambient_dim
        for c, col in zip(coeffs, cols):
            if c:
                for t, entry in enumerate(col):
                    x[t] += c * entry
        pw = Fraction(sum(abs(e) ** spec.q for e in x))
        if spec.admits(pw):
            rep = sign_representative(tuple(Fraction(e) for e in x))
            found.setdefault(rep, pw)
    return sorted(
        (ShortVector(coords, pw) for coords, pw in found.items()),
        key=lambda sv: (sv.norm_pow, sv.coords),
    )


def coset_min_bruteforce(p: int, u: tuple[int, ...], q: int, k: int) -> Fraction:
    """Minimum of ||k*u + p*z||_q^q, brute-forcing each coordinate's shift.

    The norm is a sum of per-coordinate terms, so the grid minimization
    splits; each shift is scanned over a range wide enough to bracket the
    closest multiple of p.
    """
    total = Fraction(0)
    for ui in u:
        width = abs(k * ui) // p + 2
        total += min(
            Fraction(abs(k * ui + p * z)) ** q for z in range(-width, width + 1)
        )
    return total
