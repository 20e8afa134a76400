"""Two-stage construction of lattices whose short bases avoid the shortest vector.

Stage I adjoins a verified seed vector u to the scaled grid p*Z^n, giving a
lattice whose shortest vectors are exactly the n scaled unit vectors and u
itself.  Stage II appends one coordinate of carefully bounded noise so that a
single designated vector becomes the unique shortest one while every basis
made of short vectors is forced to omit it.  All bounds are enforced on q-th
powers, keeping the arithmetic rational end to end.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from fractions import Fraction

from .certificates import FAIL, PASS, Certificate, VectorWitness
from .enumeration import (
    analyze_plus_short_set,
    plus_short_vectors,
    second_min_radius_plus,
)
from .errors import (
    ConstructionInvalidError,
    InputError,
    InternalError,
    InvalidSigmaError,
    InvalidSpecialIndexError,
)
from .lattices import Basis
from .norms import Vec, qnorm_pow, vec
from .rational import format_rational
from .sigma import SigmaVector, build_sigma_23, is_odd_prime, random_sigma_search, verify_sigma


@dataclass(frozen=True)
class PlusLattice:
    """p*Z^n + Z*u, with the redundant scaled unit at u's unit coordinate dropped."""

    p: int
    n: int
    u: tuple[int, ...]
    unit_index: int
    basis: Basis
    sigma: SigmaVector | None = None

    def __post_init__(self):
        if len(self.u) != self.n:
            raise InputError("generator length does not match the dimension")
        if abs(self.u[self.unit_index]) != 1:
            raise InputError("unit coordinate does not hold +/-1")
        if all(x % self.p == 0 for x in self.u):
            raise InputError("generator lies in the scaled grid")
        half = (self.p - 1) // 2
        if any(abs(x) > half for x in self.u):
            raise InputError("generator entries must be centered modulo p")


def build_plus(
    sigma: SigmaVector, *, unit_position: str = "first", check: bool = True
) -> PlusLattice:
    """Adjoin u = (1, sigma) (or (sigma, 1)) to the grid p*Z^(len(sigma)+1).

    The spanning set {p*e_1, ..., p*e_n, u} is reduced to a basis by dropping
    the scaled unit at u's +/-1 coordinate.  With ``check`` the seed vector
    must pass its exhaustive multiplier verification first.
    """
    if check and not verify_sigma(sigma).passed:
        raise InvalidSigmaError(
            "seed vector failed its multiplier check; pass check=False to build anyway"
        )
    if unit_position == "first":
        u = (1,) + sigma.entries
        unit_index = 0
    elif unit_position == "last":
        u = sigma.entries + (1,)
        unit_index = len(sigma.entries)
    else:
        raise InputError("unit_position must be 'first' or 'last'")
    n = len(u)
    p = sigma.p
    cols: list[Vec] = []
    for i in range(n):
        if i == unit_index:
            continue
        col = [Fraction(0)] * n
        col[i] = Fraction(p)
        cols.append(tuple(col))
    cols.append(vec(u))
    return PlusLattice(p=p, n=n, u=u, unit_index=unit_index, basis=Basis(tuple(cols)), sigma=sigma)


def verify_plus(plus: PlusLattice, q: int) -> Certificate:
    """Certify that the closed ball at the designated radius holds exactly
    the 2(n+1) designated vectors, by exact per-coset minimization."""
    analysis = analyze_plus_short_set(plus.p, plus.u, q)
    details = {
        "p": plus.p,
        "q": q,
        "n": plus.n,
        "u": list(plus.u),
        "u_pow": analysis.u_pow,
        "grid_pow": analysis.grid_pow,
        "max_short_pow": analysis.max_short_pow,
        "second_min_pow": analysis.second_min_pow,
        "coset_minima": dict(sorted(analysis.coset_minima.items())),
    }
    if not analysis.ok:
        witness_vec, witness_pow = analysis.counterexample
        return Certificate(
            claim_id="lemma-4.4",
            verdict=FAIL,
            counterexample=VectorWitness(witness_vec, witness_pow, label=analysis.reason),
            narrative=(
                f"{analysis.reason}: norm power {format_rational(witness_pow)} <= "
                f"{format_rational(analysis.max_short_pow)}"
            ),
            details=details,
        )
    shorts = plus_short_vectors(plus.p, plus.u, q)
    return Certificate(
        claim_id="lemma-4.4",
        verdict=PASS,
        witnesses=tuple(
            VectorWitness(sv.coords, sv.norm_pow, label=f"short[{i}]")
            for i, sv in enumerate(shorts)
        ),
        narrative=(
            f"ball at power {format_rational(analysis.max_short_pow)} holds exactly "
            f"{2 * (plus.n + 1)} vectors; next power is "
            f"{format_rational(analysis.second_min_pow)}"
        ),
        details=details,
    )


def _epsilon_bounds(plus: PlusLattice, q: int, r_pow: Fraction) -> tuple[Fraction, Fraction]:
    """(bound on eps**q, r_pow) for the two stage-II constraints."""
    p, n = plus.p, plus.n
    grid_pow = Fraction(p) ** q
    if r_pow <= grid_pow:
        raise ConstructionInvalidError("isolation radius does not exceed the grid scale")
    denom = Fraction((n - 1) * (p - 1) + 1) ** q
    return grid_pow * (r_pow - grid_pow) / denom, r_pow


def epsilon_is_admissible(plus: PlusLattice, q: int, eps: Fraction, r_pow: Fraction) -> bool:
    if eps <= 0:
        return False
    bound_a, _ = _epsilon_bounds(plus, q, r_pow)
    return eps**q < bound_a and (2 * eps + plus.p) ** q < r_pow


def choose_epsilon(plus: PlusLattice, q: int, r_pow: Fraction) -> Fraction:
    """Largest admissible power of 1/2, then halved once for margin."""
    _epsilon_bounds(plus, q, r_pow)  # raises when no positive noise exists
    t = 0
    while not epsilon_is_admissible(plus, q, Fraction(1, 2**t), r_pow):
        t += 1
        if t > 4096:
            raise InternalError("no admissible dyadic noise found")
    return Fraction(1, 2 ** (t + 1))


@dataclass(frozen=True)
class TildeLattice:
    """The noised lift: every stage-I generator gains one noise coordinate.

    ``lifts[i]`` is the unique lattice vector projecting onto p*e_i; the
    basis keeps the lifts at all coordinates except the unit one, plus the
    lifted generator u_tilde.  Structural identities are revalidated here so
    externally loaded instances (fixtures, files) are held to the same
    contract as built ones.
    """

    plus: PlusLattice
    q: int
    eps: Fraction
    special_index: int
    r_pow: Fraction
    lifts: tuple[Vec, ...]
    u_tilde: Vec
    basis: Basis

    def __post_init__(self):
        n, p, u = self.plus.n, self.plus.p, self.plus.u
        if len(self.lifts) != n:
            raise InputError("need one lift per stage-I coordinate")
        for i, lift in enumerate(self.lifts):
            if len(lift) != n + 1:
                raise InputError("lifts must carry exactly one extra coordinate")
            expected = [Fraction(0)] * n
            expected[i] = Fraction(p)
            if tuple(lift[:-1]) != tuple(expected):
                raise InputError(f"lift {i} does not project onto the scaled unit")
        if tuple(self.u_tilde[:-1]) != tuple(Fraction(x) for x in u):
            raise InputError("lifted generator does not project onto the generator")
        combo = [Fraction(0)] * (n + 1)
        for ui, lift in zip(u, self.lifts):
            for t, entry in enumerate(lift):
                combo[t] += ui * entry
        if tuple(x / p for x in combo) != tuple(self.u_tilde):
            raise InputError("lifted generator is not the u-combination of the lifts")
        expected_basis = tuple(
            self.lifts[i] for i in range(n) if i != self.plus.unit_index
        ) + (self.u_tilde,)
        if self.basis.columns != expected_basis:
            raise InputError("basis must be the lifts minus the unit coordinate, plus u_tilde")
        if not (0 <= self.special_index < n):
            raise InputError("special index out of range")

    def designated_short_set(self) -> list[tuple[Vec, Fraction]]:
        """Sign representatives of {+/-lifts, +/-u_tilde} with norm powers."""
        from .linalg import sign_representative

        out = [
            (sign_representative(lift), qnorm_pow(lift, self.q).value) for lift in self.lifts
        ]
        out.append(
            (sign_representative(self.u_tilde), qnorm_pow(self.u_tilde, self.q).value)
        )
        return sorted(out, key=lambda t: (t[1], t[0]))


def build_tilde(
    plus: PlusLattice,
    q: int,
    eps: Fraction,
    special_index: int | None = None,
    r_pow: Fraction | None = None,
) -> TildeLattice:
    """Stage II: add the noise coordinate (eps at the special index, 2*eps
    elsewhere) and lift the generator accordingly.

    The special index defaults to u's unit coordinate and must hold +/-1 so
    the noised lattice keeps rank n.  The noise must satisfy both stage-II
    bounds; the resulting norm ordering of the designated short set is
    checked, not assumed.
    """
    n, p, u = plus.n, plus.p, plus.u
    if special_index is None:
        special_index = plus.unit_index
    if not (0 <= special_index < n) or abs(u[special_index]) != 1:
        raise InvalidSpecialIndexError(
            f"special index must hold a +/-1 entry of the generator, got index {special_index}"
        )
    if r_pow is None:
        _, r_pow = second_min_radius_plus(p, u, q)
    if not epsilon_is_admissible(plus, q, Fraction(eps), r_pow):
        raise ConstructionInvalidError("noise violates the stage-II bounds; refused")
    eps = Fraction(eps)
    lifts = []
    for i in range(n):
        col = [Fraction(0)] * (n + 1)
        col[i] = Fraction(p)
        col[n] = eps if i == special_index else 2 * eps
        lifts.append(tuple(col))
    noise = (
        eps
        * (u[special_index] + 2 * sum(u[i] for i in range(n) if i != special_index))
        / p
    )
    u_tilde = vec(u) + (noise,)
    basis_cols = tuple(lifts[i] for i in range(n) if i != plus.unit_index) + (u_tilde,)
    tilde = TildeLattice(
        plus=plus,
        q=q,
        eps=eps,
        special_index=special_index,
        r_pow=r_pow,
        lifts=tuple(lifts),
        u_tilde=u_tilde,
        basis=Basis(basis_cols),
    )
    _check_norm_ordering(tilde)
    return tilde


def _check_norm_ordering(tilde: TildeLattice) -> None:
    q = tilde.q
    special_pow = qnorm_pow(tilde.lifts[tilde.special_index], q).value
    other_pows = [
        qnorm_pow(lift, q).value
        for i, lift in enumerate(tilde.lifts)
        if i != tilde.special_index
    ]
    u_pow = qnorm_pow(tilde.u_tilde, q).value
    if q == 1:
        ok = all(special_pow < u_pow < op for op in other_pows) and all(
            op < tilde.r_pow for op in other_pows
        )
    else:
        ok = all(special_pow < op < u_pow for op in other_pows) and u_pow < tilde.r_pow
    if not ok:
        raise ConstructionInvalidError(
            "designated short vectors do not satisfy the expected norm ordering"
        )


@dataclass
class PipelineResult:
    ok: bool
    failed_stage: str | None
    sigma: SigmaVector | None
    tilde: TildeLattice | None
    certificates: list[Certificate] = field(default_factory=list)
    timings: dict[str, float] = field(default_factory=dict)
    message: str = ""


def generate_counterexample(
    q: int,
    s: int | str = "inf",
    strategy: str = "deterministic-23",
    p: int | None = None,
    seed: int = 0,
    budget: int = 2000,
    prime_cap: int = 1000,
) -> PipelineResult:
    """Full pipeline: seed search, stage I + its certificate, radius and
    noise selection, stage II, then all lattice-level certificates.

    Failures surface as a structured result naming the failed stage, never
    as a bare exception, so callers can report and exit deterministically.
    """
    from .verify import verify_aggregate, verify_main, verify_tilde

    result = PipelineResult(ok=False, failed_stage=None, sigma=None, tilde=None)

    def timed(stage, fn):
        start = time.perf_counter()
        out = fn()
        result.timings[stage] = time.perf_counter() - start
        return out

    # --- seed vector ---
    def find_sigma() -> SigmaVector | None:
        if strategy == "deterministic-23":
            if p is not None:
                return build_sigma_23(p, q)
            candidate = 7
            while candidate <= prime_cap:
                if is_odd_prime(candidate):
                    found = build_sigma_23(candidate, q)
                    if found is not None:
                        return found
                candidate += 2
            return None
        if strategy == "randomized":
            if p is None:
                raise InputError("randomized strategy needs an explicit prime")
            return random_sigma_search(
                p, q, entry_max=(p - 1) // 2, target_pow=p**q - 1, seed=seed, budget=budget
            )
        raise InputError(f"unknown strategy {strategy!r}")

    sigma = timed("sigma", find_sigma)
    if sigma is None:
        result.failed_stage = "sigma"
        result.message = "no seed vector found under the given strategy and budget"
        return result
    result.sigma = sigma
    sigma_cert = timed("verify-sigma", lambda: verify_sigma(sigma))
    result.certificates.append(sigma_cert)
    if not sigma_cert.passed:
        result.failed_stage = "verify-sigma"
        return result

    plus = timed("build-plus", lambda: build_plus(sigma))
    plus_cert = timed("verify-plus", lambda: verify_plus(plus, q))
    result.certificates.append(plus_cert)
    if not plus_cert.passed:
        result.failed_stage = "verify-plus"
        return result

    try:
        _, r_pow = timed("radius", lambda: second_min_radius_plus(plus.p, plus.u, q))
        eps = timed("epsilon", lambda: choose_epsilon(plus, q, r_pow))
        tilde = timed("build-tilde", lambda: build_tilde(plus, q, eps, r_pow=r_pow))
    except ConstructionInvalidError as exc:
        result.failed_stage = "build-tilde"
        result.message = str(exc)
        return result
    result.tilde = tilde

    tilde_cert = timed("verify-tilde", lambda: verify_tilde(tilde))
    result.certificates.append(tilde_cert)
    if not tilde_cert.passed:
        result.failed_stage = "verify-tilde"
        return result
    main_cert = timed("verify-main", lambda: verify_main(tilde))
    result.certificates.append(main_cert)
    if not main_cert.passed:
        result.failed_stage = "verify-main"
        return result
    agg_cert = timed("verify-aggregate", lambda: verify_aggregate(tilde, s))
    result.certificates.append(agg_cert)
    if not agg_cert.passed:
        result.failed_stage = "verify-aggregate"
        return result

    result.ok = True
    return result
