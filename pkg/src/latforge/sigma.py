"""Seed vectors that stay shortest under every nontrivial multiplier mod p.

A sigma vector sigma has centered integer entries and the property that for
every k outside {0, 1, -1} the residue vector k*sigma is strictly longer
modulo p than sigma itself.  Such vectors drive the grid-plus-one-generator
construction.  Two producers exist: the deterministic 2/3-entry route via
the Frobenius-style decomposition of p**q - 1, and a seeded stochastic
search over bounded-entry multisets.  Every produced vector is re-verified
exhaustively; nothing is trusted by construction.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from .certificates import FAIL, PASS, Certificate, VectorWitness
from .errors import InputError, InvalidSigmaError
from .norms import qnorm_mod_pow, qnorm_pow, vec
from .rational import format_rational


def is_odd_prime(p: int) -> bool:
    if p < 3 or p % 2 == 0:
        return False
    f = 3
    while f * f <= p:
        if p % f == 0:
            return False
        f += 2
    return True


@dataclass(frozen=True)
class SigmaVector:
    """Centered entries modulo an odd prime, plus the norm exponent in use."""

    entries: tuple[int, ...]
    p: int
    q: int

    def __post_init__(self):
        if not is_odd_prime(self.p):
            raise InvalidSigmaError(f"{self.p} is not an odd prime")
        if self.q < 1:
            raise InvalidSigmaError("norm exponent must be >= 1")
        half = (self.p - 1) // 2
        for e in self.entries:
            if not isinstance(e, int) or abs(e) > half:
                raise InvalidSigmaError(
                    f"entry {e} is outside the centered range [-{half}, {half}]"
                )

    @property
    def norm_pow(self) -> Fraction:
        return qnorm_pow(self.entries, self.q).value


@dataclass(frozen=True)
class FrobeniusDecomposition:
    n1: int
    n2: int
    target: int
    q: int

    def __post_init__(self):
        if self.n1 < 0 or self.n2 < 0:
            raise InputError("counts cannot be negative")
        if self.n1 * 2**self.q + self.n2 * 3**self.q != self.target:
            raise InputError("decomposition does not hit its target")

    @property
    def total_entries(self) -> int:
        return self.n1 + self.n2


def frobenius_23(target: int, q: int, min_count: int) -> FrobeniusDecomposition | None:
    """target = n1*2**q + n2*3**q with n1, n2 >= min_count, largest n2 first.

    Maximizing n2 minimizes n1 + n2 and therefore the construction
    dimension.  None is a legal answer.
    """
    if target < 0 or min_count < 0 or q < 1:
        raise InputError("target, min_count and q must be non-negative (q >= 1)")
    two, three = 2**q, 3**q
    n2_max = (target - min_count * two) // three
    for n2 in range(n2_max, min_count - 1, -1):
        rest = target - n2 * three
        if rest % two == 0:
            n1 = rest // two
            if n1 >= min_count:
                return FrobeniusDecomposition(n1=n1, n2=n2, target=target, q=q)
    return None


def verify_sigma(sigma: SigmaVector) -> Certificate:
    """Exhaustive multiplier check: k*sigma mod p is longer for all k not in {0,+/-1}.

    Also records, as a non-fatal flag, whether the centered norm power equals
    p**q - 1 exactly (the normalization the deterministic route aims for).
    """
    p, q = sigma.p, sigma.q
    base_pow = qnorm_mod_pow(sigma.entries, q, p).value
    plain_pow = qnorm_pow(sigma.entries, q).value
    details: dict = {
        "p": p,
        "q": q,
        "norm_pow": base_pow,
        "normalized": base_pow == Fraction(p) ** q - 1,
        "multiplier_pows": {},
    }
    if plain_pow != base_pow:
        return Certificate(
            claim_id="sigma-shortest-multiplier",
            verdict=FAIL,
            narrative="entries are not centered: plain and modular norms differ",
            details=details,
        )
    worst_k = None
    worst_pow = None
    for k in range(2, p - 1):
        kpow = qnorm_mod_pow([k * e for e in sigma.entries], q, p).value
        details["multiplier_pows"][k] = kpow
        if worst_pow is None or kpow < worst_pow:
            worst_pow, worst_k = kpow, k
        if kpow <= base_pow:
            witness = vec([_centered(k * e, p) for e in sigma.entries])
            return Certificate(
                claim_id="sigma-shortest-multiplier",
                verdict=FAIL,
                counterexample=VectorWitness(witness, kpow, label=f"k={k}"),
                narrative=(
                    f"multiplier k={k} gives modular norm power "
                    f"{format_rational(kpow)} <= {format_rational(base_pow)}"
                ),
                details=details,
            )
    details["min_multiplier_pow"] = worst_pow
    details["min_multiplier_k"] = worst_k
    return Certificate(
        claim_id="sigma-shortest-multiplier",
        verdict=PASS,
        witnesses=(VectorWitness(vec(sigma.entries), base_pow, label="sigma"),),
        narrative=(
            f"all multipliers k in 2..{p - 2} give modular norm power "
            f"> {format_rational(base_pow)}; minimum "
            f"{format_rational(worst_pow)} at k={worst_k}"
            if worst_pow is not None
            else "no nontrivial multipliers to check"
        ),
        details=details,
    )


def _centered(x: int, p: int) -> int:
    r = x % p
    return r if 2 * r < p else r - p


def build_sigma_23(p: int, q: int) -> SigmaVector | None:
    """Deterministic 2s-and-3s seed vector for p**q - 1, verified before return."""
    if not is_odd_prime(p):
        raise InputError(f"{p} is not an odd prime")
    if p < 7:
        return None  # 3 must sit inside the centered range
    target = p**q - 1
    decomp = frobenius_23(target, q, min_count=2 * 3**q)
    if decomp is None:
        return None
    sigma = SigmaVector(entries=(2,) * decomp.n1 + (3,) * decomp.n2, p=p, q=q)
    if not verify_sigma(sigma).passed:
        return None
    return sigma


def random_sigma_search(
    p: int,
    q: int,
    entry_max: int,
    target_pow: int | Fraction,
    seed: int,
    budget: int,
) -> SigmaVector | None:
    """Seeded stochastic search over entry multisets with exact power sum.

    Candidates are built by randomized greedy fill with a single-swap repair,
    verified exhaustively, and the shortest passing candidate (fewest
    entries, then lexicographically smallest) found within the budget is
    returned.  For the two-valued entry space the feasible multisets are
    scanned outright.  Deterministic given (seed, budget).
    """
    target = Fraction(target_pow)
    if target.denominator != 1 or target < 0:
        raise InputError("target power must be a non-negative integer")
    target = int(target)
    if not is_odd_prime(p):
        raise InputError(f"{p} is not an odd prime")
    if entry_max < 2 or 2 * entry_max > p - 1:
        raise InputError("entry bound must satisfy 2 <= entry_max <= (p-1)/2")

    best: SigmaVector | None = None

    def consider(entries: tuple[int, ...]) -> None:
        nonlocal best
        cand = SigmaVector(entries=entries, p=p, q=q)
        if not verify_sigma(cand).passed:
            return
        if (
            best is None
            or len(cand.entries) < len(best.entries)
            or (len(cand.entries) == len(best.entries) and cand.entries < best.entries)
        ):
            best = cand

    if entry_max == 3:
        # One-dimensional space: walk n2 from the fewest-entries end.
        two, three = 2**q, 3**q
        spent = 0
        for n2 in range(target // three, -1, -1):
            rest = target - n2 * three
            if rest % two:
                continue
            if spent >= budget:
                break
            spent += 1
            consider((2,) * (rest // two) + (3,) * n2)
            if best is not None:
                break
        return best

    rng = random.Random(seed)
    values = list(range(2, entry_max + 1))
    powers = {v: v**q for v in values}
    for _ in range(budget):
        entries = _random_fill(rng, values, powers, target)
        if entries is None:
            continue
        consider(tuple(sorted(entries, reverse=True)))
    return best


def _random_fill(rng: random.Random, values, powers, target: int) -> list[int] | None:
    remaining = target
    entries: list[int] = []
    while remaining > 0:
        feasible = [v for v in values if powers[v] <= remaining]
        if not feasible:
            break
        v = rng.choice(feasible)
        entries.append(v)
        remaining -= powers[v]
    if remaining == 0:
        return entries
    # single-swap repair: replace one entry a by b with b^q - a^q == remaining
    for i, a in enumerate(entries):
        for b in values:
            if powers[b] - powers[a] == remaining:
                entries[i] = b
                return entries
    return None
