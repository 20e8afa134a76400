"""Lattice bases, canonical forms, exact equality and membership.

A lattice is given by a basis of linearly independent rational columns.
Equality of lattices is decided exactly, either through the change-of-basis
certificate (an integer matrix with determinant +/-1) or through the scaled
Hermite-normal-form canonicalization; the two agree and the tests check it.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Literal, Sequence

from .errors import DimensionMismatchError, InputError, InvalidBasisError
from .linalg import (
    det_int,
    integral_coeffs,
    lcm_of_denominators,
    rank_of_columns,
    row_hnf,
    solve_columns,
)
from .norms import QNormPower, Vec, qnorm_pow, vec
from .rational import format_rational, parse_rational

AggregationExponent = int | Literal["inf"]


@dataclass(frozen=True)
class Basis:
    """Rational column basis; columns are checked for independence."""

    columns: tuple[Vec, ...]

    def __post_init__(self):
        if not self.columns:
            raise InvalidBasisError("a basis needs at least one column")
        n = len(self.columns[0])
        if any(len(c) != n for c in self.columns):
            raise InvalidBasisError("columns have inconsistent dimensions")
        if len(self.columns) > n:
            raise InvalidBasisError("more columns than ambient dimensions")
        if rank_of_columns(self.columns) != len(self.columns):
            raise InvalidBasisError("columns are linearly dependent")

    @property
    def ambient_dim(self) -> int:
        return len(self.columns[0])

    @property
    def rank(self) -> int:
        return len(self.columns)

    @staticmethod
    def from_entries(cols: Sequence[Sequence]) -> "Basis":
        return Basis(tuple(vec(c) for c in cols))


@dataclass(frozen=True)
class CanonicalForm:
    """Scale-normalized integer HNF; equal lattices yield equal forms."""

    scale: int
    hnf: tuple[tuple[int, ...], ...]


def canonicalize(basis: Basis) -> CanonicalForm:
    """Deterministic canonical form: HNF of the denominator-cleared basis.

    The denominator lcm of a basis is a lattice invariant (it is the least D
    with D*L integral), so equal lattices get equal scales; the gcd reduction
    below is a belt-and-braces guard.
    """
    d = lcm_of_denominators(basis.columns)
    generator_rows = [[int(x * d) for x in col] for col in basis.columns]
    hnf_rows = row_hnf(generator_rows)
    g = d
    for row in hnf_rows:
        for x in row:
            g = gcd(g, abs(x))
    if g > 1:
        d //= g
        hnf_rows = [tuple(x // g for x in row) for row in hnf_rows]
    # column-major storage: one column per canonical generator
    return CanonicalForm(scale=d, hnf=tuple(tuple(row) for row in hnf_rows))


def same_lattice(b1: Basis, b2: Basis) -> tuple[bool, tuple[tuple[int, ...], ...] | None]:
    """Exact lattice equality with a unimodular certificate.

    When equal, returns U (integer columns, |det U| = 1) with b2 = b1 * U.
    """
    if b1.ambient_dim != b2.ambient_dim:
        raise DimensionMismatchError("ambient dimensions differ")
    if b1.rank != b2.rank:
        raise DimensionMismatchError("ranks differ")
    coeffs = solve_columns(b1.columns, b2.columns)
    u_cols = []
    for c in coeffs:
        ic = integral_coeffs(c)
        if ic is None:
            return False, None
        u_cols.append(ic)
    if abs(det_int(u_cols)) != 1:
        return False, None
    return True, tuple(u_cols)


@dataclass(frozen=True)
class Membership:
    status: Literal["member", "non-member", "not-in-span"]
    coeffs: tuple[int, ...] | None = None
    rational_coeffs: tuple[Fraction, ...] | None = None

    def __bool__(self) -> bool:
        return self.status == "member"


def member(basis: Basis, x: Sequence) -> Membership:
    """Decide whether x lies in the lattice; recover integer coefficients."""
    target = vec(x)
    if len(target) != basis.ambient_dim:
        raise DimensionMismatchError("vector dimension does not match basis")
    sol = solve_columns(basis.columns, [target])[0]
    if sol is None:
        return Membership("not-in-span")
    ic = integral_coeffs(sol)
    if ic is None:
        return Membership("non-member", rational_coeffs=sol)
    return Membership("member", coeffs=ic, rational_coeffs=sol)


def members_batch(basis: Basis, xs: Sequence[Vec]) -> list[Membership]:
    """member() over many vectors with a single elimination."""
    sols = solve_columns(basis.columns, [vec(x) for x in xs])
    out = []
    for sol in sols:
        if sol is None:
            out.append(Membership("not-in-span"))
            continue
        ic = integral_coeffs(sol)
        if ic is None:
            out.append(Membership("non-member", rational_coeffs=sol))
        else:
            out.append(Membership("member", coeffs=ic, rational_coeffs=sol))
    return out


def column_norm_pows(basis: Basis, q: int) -> tuple[Fraction, ...]:
    return tuple(qnorm_pow(c, q).value for c in basis.columns)


def aggregate_length_pow(
    basis: Basis, q: int, s: AggregationExponent
) -> QNormPower | Fraction | tuple[QNormPower, ...]:
    """Basis length under the chosen aggregation, kept rational.

    * s == "inf": the largest per-column q-th norm power (QNormPower).
    * finite s divisible by q: sum of (||v||_q^q)^(s/q), an exact Fraction.
    * other finite s: the per-column powers are returned as the comparison
      form; order decisions then go through compare_power_sums.
    """
    pows = column_norm_pows(basis, q)
    if s == "inf":
        return QNormPower(max(pows), q)
    if not isinstance(s, int) or s < 1:
        raise InputError(f"aggregation exponent must be a positive integer or 'inf', got {s!r}")
    if s % q == 0:
        e = s // q
        return sum((v**e for v in pows), Fraction(0))
    return tuple(QNormPower(v, q) for v in pows)


def basis_from_generators(generators: Sequence[Vec]) -> Basis:
    """Canonical basis of the lattice generated by (possibly dependent) vectors."""
    gens = [vec(g) for g in generators if any(Fraction(x) != 0 for x in g)]
    if not gens:
        raise InvalidBasisError("no nonzero generators")
    n = len(gens[0])
    if any(len(g) != n for g in gens):
        raise InvalidBasisError("generators have inconsistent dimensions")
    d = lcm_of_denominators(gens)
    rows = [[int(x * d) for x in g] for g in gens]
    hnf_rows = row_hnf(rows)
    cols = tuple(tuple(Fraction(x, d) for x in row) for row in hnf_rows)
    return Basis(cols)


def lattice_to_dict(basis: Basis) -> dict:
    """The JSON wire form: {"ambient_dim", "rank", "columns"}."""
    return {
        "ambient_dim": basis.ambient_dim,
        "rank": basis.rank,
        "columns": [[format_rational(x) for x in col] for col in basis.columns],
    }


def lattice_from_dict(data: dict) -> Basis:
    try:
        cols = data["columns"]
        ambient = data["ambient_dim"]
        rank = data["rank"]
    except (KeyError, TypeError) as exc:
        raise InputError("lattice JSON needs ambient_dim, rank and columns") from exc
    basis = Basis(tuple(tuple(parse_rational(x) for x in col) for col in cols))
    if basis.ambient_dim != ambient or basis.rank != rank:
        raise InputError("lattice JSON dimensions do not match its columns")
    return basis
