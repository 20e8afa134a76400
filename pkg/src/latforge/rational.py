"""Exact rational scalars and root bounds.

Scalars are :class:`fractions.Fraction` throughout the package; this module
adds the wire format ("num/den" strings), integer q-th roots, and rational
interval bounds for q-th roots.  Nothing here ever touches floating point.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .config import MAX_ROOT_PRECISION_BITS
from .errors import InputError

_RATIONAL_RE = re.compile(r"^[+-]?\d+(/\d+)?$")


def parse_rational(text: str) -> Fraction:
    """Parse a "num/den" or bare-integer string into a Fraction."""
    if not isinstance(text, str) or not _RATIONAL_RE.match(text.strip()):
        raise InputError(f"not a rational literal: {text!r}")
    value = text.strip()
    if "/" in value:
        num, den = value.split("/")
        if int(den) == 0:
            raise InputError(f"zero denominator: {text!r}")
        return Fraction(int(num), int(den))
    return Fraction(int(value))


def format_rational(value: Fraction | int) -> str:
    """Format as "num/den", omitting "/1" for integers."""
    frac = Fraction(value)
    if frac.denominator == 1:
        return str(frac.numerator)
    return f"{frac.numerator}/{frac.denominator}"


def iroot(n: int, q: int) -> int:
    """Floor of the q-th root of a non-negative integer."""
    if n < 0:
        raise InputError("iroot of a negative integer")
    if q < 1:
        raise InputError("root exponent must be positive")
    if q == 1 or n in (0, 1):
        return n
    x = 1 << ((n.bit_length() + q - 1) // q)
    while True:
        y = ((q - 1) * x + n // x ** (q - 1)) // q
        if y >= x:
            break
        x = y
    while x**q > n:
        x -= 1
    while (x + 1) ** q <= n:
        x += 1
    return x


def root_interval(x: Fraction, q: int, prec_bits: int) -> tuple[Fraction, Fraction]:
    """Rational [lo, hi] with lo <= x**(1/q) <= hi and hi - lo <= 2**-prec_bits."""
    if x < 0:
        raise InputError("root of a negative rational")
    scale = 1 << prec_bits
    lo_int = iroot((x.numerator * scale**q) // x.denominator, q)
    return Fraction(lo_int, scale), Fraction(lo_int + 1, scale)


def root_ceil(x: Fraction, q: int) -> Fraction:
    """A rational upper bound on x**(1/q) (exact when x is a perfect power)."""
    if x < 0:
        raise InputError("root of a negative rational")
    r = iroot(x.numerator, q)
    if r**q == x.numerator:
        s = iroot(x.denominator, q)
        if s**q == x.denominator:
            return Fraction(r, s)
    lo, hi = root_interval(x, q, 32)
    return hi


def compare_power_sums(
    avals: list[Fraction],
    bvals: list[Fraction],
    q: int,
    s: int,
    max_bits: int = MAX_ROOT_PRECISION_BITS,
) -> int | None:
    """Compare sum(a**(s/q)) with sum(b**(s/q)) exactly where possible.

    Returns -1, 0 or 1, or None when interval refinement up to ``max_bits``
    of precision cannot separate the two sums (equal-or-unresolved).
    Inputs are the q-th powers of the underlying lengths, so a**(s/q) is the
    s-th power of the length.
    """
    if any(v < 0 for v in avals) or any(v < 0 for v in bvals):
        raise InputError("power sums need non-negative terms")
    if s % q == 0:
        e = s // q
        left = sum((v**e for v in avals), Fraction(0))
        right = sum((v**e for v in bvals), Fraction(0))
        return (left > right) - (left < right)
    if sorted(avals) == sorted(bvals):
        return 0
    apows = [v**s for v in avals]
    bpows = [v**s for v in bvals]
    bits = 64
    while bits <= max_bits:
        alo = ahi = Fraction(0)
        for v in apows:
            lo, hi = root_interval(v, q, bits)
            alo += lo
            ahi += hi
        blo = bhi = Fraction(0)
        for v in bpows:
            lo, hi = root_interval(v, q, bits)
            blo += lo
            bhi += hi
        if ahi < blo:
            return -1
        if alo > bhi:
            return 1
        bits *= 2
    return None
