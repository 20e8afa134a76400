"""Exact enumeration of short lattice vectors.

Two routes exist.  The generic route is a rational branch-and-bound on an
integer-scaled basis: the q-norm bound is converted into an exact rational
Euclidean pruning radius, the tree is explored with exact Gram-Schmidt data,
and every emitted vector is re-checked against the exact q-th-power bound.
The structured route handles the grid-plus-one-generator lattices this
package constructs: per-residue-class minima are computed coordinate-wise,
which certifies ball contents at dimensions far beyond the generic limit.

Outputs are deduplicated by sign (keeping the lexicographically larger of
each +/- pair), sorted by (norm power, lexicographic), and therefore
bit-stable across runs.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import ceil, floor, isqrt
from typing import NamedTuple, Sequence

from .config import DEFAULT_SUBSET_LIMIT, resolve_rank_limit
from .errors import (
    ConstructionInvalidError,
    DeskScaleError,
    InputError,
    InternalError,
    RadiusExceededError,
    WrongCosetError,
)
from .lattices import AggregationExponent, Basis, members_batch
from .linalg import det_int, lcm_of_denominators, sign_representative
from .norms import Vec, qnorm_pow, vec
from .rational import compare_power_sums, root_ceil


@dataclass(frozen=True)
class BallSpec:
    """A q-norm ball given by the q-th power of its radius."""

    q: int
    bound_pow: Fraction
    closed: bool = True

    def __post_init__(self):
        if self.q < 1:
            raise InputError("norm exponent must be >= 1")
        if self.bound_pow < 0:
            raise InputError("ball bound cannot be negative")

    def admits(self, norm_pow: Fraction) -> bool:
        return norm_pow <= self.bound_pow if self.closed else norm_pow < self.bound_pow


class ShortVector(NamedTuple):
    coords: Vec
    norm_pow: Fraction


@dataclass(frozen=True)
class MinimaProfile:
    q: int
    lambda_pows: tuple[Fraction, ...]
    witnesses: tuple[Vec, ...]


def _l2_radius_pow(bound_pow: Fraction, q: int, dim: int) -> Fraction:
    """Rational R2 with ||x||_2^2 <= R2 whenever ||x||_q^q <= bound_pow."""
    if q == 1:
        return bound_pow * bound_pow
    if q == 2:
        return bound_pow
    # ||x||_2^2 <= n * (bound_pow)^(2/q); round the root up to stay rational.
    return dim * root_ceil(bound_pow**2, q)


def _gram_schmidt(cols: Sequence[Sequence[int]]):
    k = len(cols)
    bstar: list[list[Fraction]] = []
    mu = [[Fraction(0)] * k for _ in range(k)]
    norms: list[Fraction] = []
    for j, col in enumerate(cols):
        cur = [Fraction(x) for x in col]
        for i in range(j):
            dot = sum(Fraction(col[t]) * bstar[i][t] for t in range(len(col)))
            mu[j][i] = dot / norms[i]
            if mu[j][i] != 0:
                cur = [c - mu[j][i] * b for c, b in zip(cur, bstar[i])]
        bstar.append(cur)
        norms.append(sum(c * c for c in cur))
    return mu, norms


def _integer_interval(center: Fraction, limit: Fraction) -> range:
    """Integers c with (c + center)^2 <= limit, conservatively bracketed."""
    if limit < 0:
        return range(0)
    r_hi = Fraction(isqrt(limit.numerator * limit.denominator) + 1, limit.denominator)
    lo = ceil(-center - r_hi)
    hi = floor(-center + r_hi)
    return range(lo, hi + 1)


def enumerate_ball(basis: Basis, spec: BallSpec, rank_limit: int | None = None) -> list[ShortVector]:
    """All nonzero lattice vectors in the ball, one per +/- pair.

    Rank is capped by the configured desk-scale limit; structured lattices
    should use the coset route instead of raising it.
    """
    limit = resolve_rank_limit(rank_limit)
    if basis.rank > limit:
        raise DeskScaleError(
            f"rank {basis.rank} exceeds the generic enumeration limit {limit}; "
            "use structured (coset) enumeration"
        )
    d = lcm_of_denominators(basis.columns)
    int_cols = [tuple(int(x * d) for x in col) for col in basis.columns]
    bound_scaled = spec.bound_pow * d**spec.q
    r2 = _l2_radius_pow(bound_scaled, spec.q, basis.ambient_dim)
    mu, norms = _gram_schmidt(int_cols)
    k = basis.rank
    found: dict[Vec, Fraction] = {}

    coeffs = [0] * k

    def descend(j: int, used: Fraction) -> None:
        center = sum((mu[i][j] * coeffs[i] for i in range(j + 1, k)), Fraction(0))
        if norms[j] == 0:
            raise InternalError("zero Gram-Schmidt norm on an independent basis")
        for c in _integer_interval(center, (r2 - used) / norms[j]):
            coeffs[j] = c
            term = (c + center) ** 2 * norms[j]
            if term > r2 - used:
                continue
            if j == 0:
                _emit()
            else:
                descend(j - 1, used + term)
        coeffs[j] = 0

    def _emit() -> None:
        if all(c == 0 for c in coeffs):
            return
        x = [0] * basis.ambient_dim
        for ci, col in zip(coeffs, int_cols):
            if ci:
                for t, entry in enumerate(col):
                    x[t] += ci * entry
        pw_scaled = Fraction(sum(abs(e) ** spec.q for e in x))
        if not (pw_scaled <= bound_scaled if spec.closed else pw_scaled < bound_scaled):
            return
        coords = tuple(Fraction(e, d) for e in x)
        rep = sign_representative(coords)
        if rep not in found:
            found[rep] = pw_scaled / d**spec.q

    descend(k - 1, Fraction(0))
    return sorted(
        (ShortVector(coords, pw) for coords, pw in found.items()),
        key=lambda sv: (sv.norm_pow, sv.coords),
    )


def _greedy_independent(
    vectors: Sequence[ShortVector], count: int
) -> tuple[list[ShortVector], bool]:
    """First `count` linearly independent vectors in the given order."""
    echelon: list[list[Fraction]] = []
    picked: list[ShortVector] = []
    for sv in vectors:
        row = [Fraction(x) for x in sv.coords]
        for base in echelon:
            lead = next(i for i, x in enumerate(base) if x != 0)
            if row[lead] != 0:
                f = row[lead] / base[lead]
                row = [a - f * b for a, b in zip(row, base)]
        if any(x != 0 for x in row):
            echelon.append(row)
            echelon.sort(key=lambda r: next(i for i, x in enumerate(r) if x != 0))
            picked.append(sv)
            if len(picked) == count:
                return picked, True
    return picked, False


def successive_minima(basis: Basis, q: int, rank_limit: int | None = None) -> MinimaProfile:
    """Exact successive minima with independent witnesses, greedy by norm."""
    col_pows = sorted(qnorm_pow(c, q).value for c in basis.columns)
    bound = col_pows[0]
    max_bound = col_pows[-1]
    while True:
        shorts = enumerate_ball(basis, BallSpec(q, bound, closed=True), rank_limit)
        picked, ok = _greedy_independent(shorts, basis.rank)
        if ok:
            return MinimaProfile(
                q=q,
                lambda_pows=tuple(sv.norm_pow for sv in picked),
                witnesses=tuple(sv.coords for sv in picked),
            )
        if bound >= max_bound:
            raise InternalError("basis columns not found inside their own ball")
        bound = min(bound * 2, max_bound)


# ---------------------------------------------------------------------------
# Structured (coset) enumeration for lattices of the form p*Z^n + Z*u.
# ---------------------------------------------------------------------------


def coset_min_plus(p: int, u: Sequence[int], q: int, k: int) -> tuple[Fraction, list[Vec]]:
    """Minimum q-th norm power over the residue class {k*u + p*z : z in Z^n}.

    The norm is separable, so the minimum is attained by independently
    centering each coordinate of k*u modulo p; for odd p and integer entries
    the minimizer is unique up to nothing at all (ties need p even).
    """
    if k % p == 0:
        raise WrongCosetError("k = 0 mod p is the scaled-grid coset, not a u-coset")
    total = Fraction(0)
    coords: list[list[int]] = []
    for ui in u:
        r = (k * ui) % p
        a = min(r, p - r)
        total += Fraction(a) ** q
        if r == 0:
            coords.append([0])
        elif 2 * r < p:
            coords.append([r])
        elif 2 * r > p:
            coords.append([r - p])
        else:
            coords.append([r, r - p])
    minimizers = [vec(c) for c in itertools.product(*coords)]
    return total, minimizers


@dataclass(frozen=True)
class PlusBallAnalysis:
    """Exact short-vector analysis of p*Z^n + Z*u.

    ``ok`` means the closed ball of radius max(||W_i||, ||u||) contains
    exactly the 2(n+1) designated vectors; otherwise ``counterexample`` holds
    an offending lattice vector at or below that radius.
    """

    p: int
    q: int
    u: tuple[int, ...]
    ok: bool
    u_pow: Fraction
    grid_pow: Fraction
    max_short_pow: Fraction
    second_min_pow: Fraction | None
    coset_minima: dict[int, Fraction]
    counterexample: tuple[Vec, Fraction] | None
    reason: str


def analyze_plus_short_set(p: int, u: Sequence[int], q: int) -> PlusBallAnalysis:
    n = len(u)
    ut = tuple(int(x) for x in u)
    if any(2 * abs(x) > p - 1 for x in ut):
        raise InputError("generator entries must be centered modulo p")
    if all(x % p == 0 for x in ut):
        raise InputError("generator lies in the scaled grid")
    grid_pow = Fraction(p) ** q
    u_pow = qnorm_pow(ut, q).value
    max_short = max(grid_pow, u_pow)

    # Vectors of the scaled-grid coset beyond the unit multiples.
    grid_second = (Fraction(2) ** q if n == 1 else Fraction(2)) * grid_pow
    if grid_second <= max_short:
        witness = vec([p, p] + [0] * (n - 2)) if n >= 2 else vec([2 * p])
        return PlusBallAnalysis(
            p, q, ut, False, u_pow, grid_pow, max_short, None, {},
            (witness, grid_second), "scaled-grid vector inside the short ball",
        )

    # Second minimum of the +/-u cosets: cheapest single-coordinate recentering.
    bump_idx = min(range(n), key=lambda i: (Fraction(p - abs(ut[i])) ** q - Fraction(abs(ut[i])) ** q, i))
    bump = Fraction(p - abs(ut[bump_idx])) ** q - Fraction(abs(ut[bump_idx])) ** q
    u_second = u_pow + bump
    if u_second <= max_short:
        shifted = list(ut)
        step = -p if shifted[bump_idx] > 0 else p
        shifted[bump_idx] += step
        return PlusBallAnalysis(
            p, q, ut, False, u_pow, grid_pow, max_short, None, {},
            (vec(shifted), u_second), "a second vector of the u-coset is short",
        )

    coset_minima: dict[int, Fraction] = {}
    for k in range(2, p - 1):
        pow_k, mins = coset_min_plus(p, ut, q, k)
        coset_minima[k] = pow_k
        if pow_k <= max_short:
            witness = sign_representative(mins[0])
            k_label = k if witness == mins[0] else p - k
            return PlusBallAnalysis(
                p, q, ut, False, u_pow, grid_pow, max_short, None, coset_minima,
                (witness, pow_k), f"coset k={k_label} holds a short vector",
            )
    inner = [grid_second, u_second]
    inner.extend(coset_minima.values())
    second_min = min(inner)
    return PlusBallAnalysis(
        p, q, ut, True, u_pow, grid_pow, max_short, second_min, coset_minima,
        None, "short ball holds exactly the designated vectors",
    )


def second_min_radius_plus(p: int, u: Sequence[int], q: int) -> tuple[Fraction, Fraction]:
    """(N2, R^q) where N2 is the smallest norm power beyond the short set and
    R^q the midpoint separating the two; fails when no gap exists."""
    analysis = analyze_plus_short_set(p, u, q)
    if not analysis.ok or analysis.second_min_pow is None:
        raise ConstructionInvalidError(
            f"short set is not isolated: {analysis.reason}"
        )
    n2 = analysis.second_min_pow
    r_pow = (analysis.max_short_pow + n2) / 2
    return n2, r_pow


def plus_short_vectors(p: int, u: Sequence[int], q: int) -> list[ShortVector]:
    """Sign representatives of the designated short set of p*Z^n + Z*u."""
    n = len(u)
    out = []
    for i in range(n):
        w = [Fraction(0)] * n
        w[i] = Fraction(p)
        out.append(ShortVector(tuple(w), Fraction(p) ** q))
    out.append(ShortVector(sign_representative(vec(u)), qnorm_pow(u, q).value))
    return sorted(out, key=lambda sv: (sv.norm_pow, sv.coords))


def successive_minima_plus(p: int, u: Sequence[int], q: int) -> MinimaProfile:
    """Successive minima of p*Z^n + Z*u via the coset analysis."""
    analysis = analyze_plus_short_set(p, u, q)
    if not analysis.ok:
        raise ConstructionInvalidError(
            "structured minima need an isolated short set: " + analysis.reason
        )
    shorts = plus_short_vectors(p, u, q)
    picked, ok = _greedy_independent(shorts, len(u))
    if not ok:
        raise InternalError("short set of an isolated construction must span")
    return MinimaProfile(
        q=q,
        lambda_pows=tuple(sv.norm_pow for sv in picked),
        witnesses=tuple(sv.coords for sv in picked),
    )


# ---------------------------------------------------------------------------
# Lift enumeration and exhaustive basis sweeps.
# ---------------------------------------------------------------------------


def lift_through_projection(
    plus_basis: Basis, lifted_basis: Basis, points: Sequence[Vec]
) -> list[Vec]:
    """Map lattice points through the column-wise basis correspondence.

    ``lifted_basis`` columns must project to ``plus_basis`` columns (drop the
    last coordinate); each point's integer coefficients are recovered against
    the projection basis and replayed against the lift.
    """
    for lo, hi in zip(plus_basis.columns, lifted_basis.columns, strict=True):
        if tuple(hi[:-1]) != tuple(lo):
            raise InputError("lifted basis does not project onto the base basis")
    memberships = members_batch(plus_basis, points)
    lifts = []
    for pt, ms in zip(points, memberships):
        if ms.coeffs is None:
            raise InputError(f"point {pt} is not a lattice member of the projection")
        acc = [Fraction(0)] * lifted_basis.ambient_dim
        for c, col in zip(ms.coeffs, lifted_basis.columns):
            if c:
                for t, entry in enumerate(col):
                    acc[t] += c * entry
        lifts.append(tuple(acc))
    return lifts


def enumerate_tilde_ball(tilde, bound_pow: Fraction, closed: bool = True) -> list[ShortVector]:
    """Exact ball contents of a noised lift, via drop-last-coordinate lifting.

    The projection maps the lift's basis columns onto the base lattice's
    columns, so it is a lattice bijection: every lift vector inside the ball
    projects into the base ball, whose contents are certified by the coset
    analysis.  Lifting those members and filtering exactly yields the ball.
    ``bound_pow`` may not exceed the certified isolation radius.
    """
    if bound_pow > tilde.r_pow:
        raise RadiusExceededError(
            f"bound {bound_pow} exceeds the certified radius power {tilde.r_pow}"
        )
    plus = tilde.plus
    base_shorts = plus_short_vectors(plus.p, plus.u, tilde.q)
    points = [sv.coords for sv in base_shorts]
    lifts = lift_through_projection(plus.basis, tilde.basis, points)
    spec = BallSpec(tilde.q, bound_pow, closed)
    out = []
    for lift in lifts:
        pw = qnorm_pow(lift, tilde.q).value
        if spec.admits(pw):
            out.append(ShortVector(sign_representative(lift), pw))
    return sorted(out, key=lambda sv: (sv.norm_pow, sv.coords))


@dataclass(frozen=True)
class SpanningSubset:
    indices: tuple[int, ...]
    vectors: tuple[Vec, ...]
    column_pows: tuple[Fraction, ...]
    aggregate: Fraction | None


@dataclass(frozen=True)
class ShortestBasisSearch:
    minimal: tuple[SpanningSubset, ...]
    spanning: tuple[SpanningSubset, ...]
    subsets_checked: int
    unresolved: bool


def shortest_bases_from_set(
    basis: Basis,
    q: int,
    s: AggregationExponent,
    candidates: Sequence[Vec],
    subset_limit: int = DEFAULT_SUBSET_LIMIT,
) -> ShortestBasisSearch:
    """Exhaustive sweep of rank-sized candidate subsets for minimal bases.

    Every subset is tested for generating exactly the input lattice (integer
    coefficients with determinant +/-1); survivors are ranked under the
    requested aggregation.  An empty result is legal and means no candidate
    subset spans.
    """
    reps = []
    seen = set()
    for cand in candidates:
        rep = sign_representative(vec(cand))
        if rep not in seen:
            seen.add(rep)
            reps.append(rep)
    k = basis.rank
    total = _n_choose_k(len(reps), k)
    if total > subset_limit:
        raise DeskScaleError(
            f"{total} candidate subsets exceed the sweep limit {subset_limit}"
        )
    memberships = members_batch(basis, reps)
    coeff_cols: list[tuple[int, ...]] = []
    for rep, ms in zip(reps, memberships):
        if ms.coeffs is None:
            raise InputError(f"candidate {rep} is not a member of the lattice")
        coeff_cols.append(ms.coeffs)
    pows = [qnorm_pow(rep, q).value for rep in reps]

    def aggregate_value(idx: tuple[int, ...]) -> Fraction | None:
        if s == "inf":
            return max(pows[i] for i in idx)
        if isinstance(s, int) and s % q == 0:
            e = s // q
            return sum((pows[i] ** e for i in idx), Fraction(0))
        return None

    def better(a_idx: tuple[int, ...], b_idx: tuple[int, ...]) -> int | None:
        if s == "inf":
            av, bv = max(pows[i] for i in a_idx), max(pows[i] for i in b_idx)
            return (av > bv) - (av < bv)
        return compare_power_sums([pows[i] for i in a_idx], [pows[i] for i in b_idx], q, s)

    spanning: list[SpanningSubset] = []
    best: list[tuple[int, ...]] = []
    unresolved = False
    checked = 0
    for idx in itertools.combinations(range(len(reps)), k):
        checked += 1
        sub_cols = [coeff_cols[i] for i in idx]
        if abs(det_int(sub_cols)) != 1:
            continue
        subset = SpanningSubset(
            indices=idx,
            vectors=tuple(reps[i] for i in idx),
            column_pows=tuple(pows[i] for i in idx),
            aggregate=aggregate_value(idx),
        )
        spanning.append(subset)
        if not best:
            best = [idx]
            continue
        cmp = better(idx, best[0])
        if cmp is None:
            unresolved = True
            best.append(idx)
        elif cmp < 0:
            best = [idx]
        elif cmp == 0:
            best.append(idx)
    by_index = {sub.indices: sub for sub in spanning}
    minimal = tuple(by_index[i] for i in best)
    return ShortestBasisSearch(
        minimal=minimal,
        spanning=tuple(spanning),
        subsets_checked=checked,
        unresolved=unresolved,
    )


def _n_choose_k(n: int, k: int) -> int:
    from math import comb

    if k > n:
        return 0
    return comb(n, k)
