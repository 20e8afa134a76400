from __future__ import annotations

import random
from fractions import Fraction

import pytest

from latforge import Basis


def random_integer_basis(rng: random.Random, dim: int, entry_bound: int) -> Basis:
    """Full-rank integer basis with entries in [-entry_bound, entry_bound]."""
    while True:
        cols = [
            tuple(Fraction(rng.randint(-entry_bound, entry_bound)) for _ in range(dim))
            for _ in range(dim)
        ]
        try:
            return Basis(cols)
        except Exception:
            continue


def random_unimodular(rng: random.Random, dim: int, ops: int = 10) -> list[list[int]]:
    """Product of elementary integer column operations, as columns."""
    u = [[1 if r == c else 0 for r in range(dim)] for c in range(dim)]
    for _ in range(ops):
        kind = rng.randrange(3)
        i, j = rng.sample(range(dim), 2) if dim > 1 else (0, 0)
        if kind == 0 and i != j:
            u[i], u[j] = u[j], u[i]
        elif kind == 1:
            u[i] = [-x for x in u[i]]
        elif i != j:
            f = rng.randint(-3, 3)
            u[i] = [x + f * y for x, y in zip(u[i], u[j])]
    return u


def apply_unimodular(basis: Basis, u_cols: list[list[int]]) -> Basis:
    cols = []
    for ucol in u_cols:
        acc = [Fraction(0)] * basis.ambient_dim
        for coeff, bcol in zip(ucol, basis.columns):
            if coeff:
                for t, entry in enumerate(bcol):
                    acc[t] += coeff * entry
        cols.append(tuple(acc))
    return Basis(tuple(cols))


@pytest.fixture
def rng():
    return random.Random(0xC0FFEE)
