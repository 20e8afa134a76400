"""Desk-scale limits for the exhaustive searches.

All limits are configuration values, not hard constants: callers may pass
explicit overrides, and ``LATFORGE_LIMIT_RANK`` overrides the generic
enumeration rank limit process-wide.
"""

from __future__ import annotations

import os

from .errors import InputError

# Generic branch-and-bound enumeration refuses bases of rank above this;
# structured lattices go through the coset/lift paths instead.
DEFAULT_RANK_LIMIT = 8

# Cap on the number of sign-representative candidates fed to the exhaustive
# basis searches (standardness check, shortest-basis sweep).
DEFAULT_CANDIDATE_LIMIT = 64

# Cap on the number of subsets a basis sweep may visit.
DEFAULT_SUBSET_LIMIT = 2_000_000

# Interval-refinement precision ceiling (bits) for comparisons between sums
# of q-th roots that are not structurally equal.
MAX_ROOT_PRECISION_BITS = 4096

RANK_LIMIT_ENV = "LATFORGE_LIMIT_RANK"


def resolve_rank_limit(override: int | None = None) -> int:
    if override is not None:
        if override < 1:
            raise InputError("rank limit must be positive")
        return override
    raw = os.environ.get(RANK_LIMIT_ENV)
    if raw is not None:
        try:
            value = int(raw)
        except ValueError as exc:
            raise InputError(f"{RANK_LIMIT_ENV} must be an integer, got {raw!r}") from exc
        if value < 1:
            raise InputError(f"{RANK_LIMIT_ENV} must be positive")
        return value
    return DEFAULT_RANK_LIMIT
