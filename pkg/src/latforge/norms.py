"""Vector norms in q-th-power form, plain and modulo a positive rational.

Storing ``sum |x_i|**q`` instead of the norm itself keeps every quantity
rational; order comparisons on powers agree with comparisons on lengths.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import InputError, InvalidModulusError

Vec = tuple[Fraction, ...]


def vec(entries: Iterable[Fraction | int | str]) -> Vec:
    """Coerce a sequence of ints / Fractions / rational strings to a vector."""
    from .rational import parse_rational

    out = []
    for e in entries:
        if isinstance(e, str):
            out.append(parse_rational(e))
        else:
            out.append(Fraction(e))
    return tuple(out)


@dataclass(frozen=True, order=False)
class QNormPower:
    """A norm raised to its own exponent: value == ||x||_q ** q."""

    value: Fraction
    q: int

    def __post_init__(self):
        if self.q < 1:
            raise InputError("norm exponent must be >= 1")
        if self.value < 0:
            raise InputError("norm power cannot be negative")

    def _check(self, other: "QNormPower") -> None:
        if not isinstance(other, QNormPower):
            raise TypeError("can only compare against another QNormPower")
        if other.q != self.q:
            raise InputError(f"norm exponent mismatch: {self.q} vs {other.q}")

    def __lt__(self, other):
        self._check(other)
        return self.value < other.value

    def __le__(self, other):
        self._check(other)
        return self.value <= other.value

    def __gt__(self, other):
        self._check(other)
        return self.value > other.value

    def __ge__(self, other):
        self._check(other)
        return self.value >= other.value


def qnorm_pow(v: Sequence[Fraction | int], q: int) -> QNormPower:
    """sum |v_i|**q, exactly."""
    if q < 1:
        raise InputError("norm exponent must be >= 1")
    total = Fraction(0)
    for x in v:
        total += abs(Fraction(x)) ** q
    return QNormPower(total, q)


def mod_abs(a: Fraction | int, m: Fraction | int) -> Fraction:
    """Distance from ``a`` to the nearest multiple of ``m`` (m > 0).

    Always in [0, m/2]; exactly m/2 on ties, which only happen when a is an
    odd multiple of m/2.
    """
    m = Fraction(m)
    if m <= 0:
        raise InvalidModulusError(f"modulus must be positive, got {m}")
    r = Fraction(a) % m
    return min(r, m - r)


def qnorm_mod_pow(v: Sequence[Fraction | int], q: int, m: Fraction | int) -> QNormPower:
    """q-th power of the distance of ``v`` from the grid m*Z^n."""
    if q < 1:
        raise InputError("norm exponent must be >= 1")
    total = Fraction(0)
    for x in v:
        total += mod_abs(x, m) ** q
    return QNormPower(total, q)
