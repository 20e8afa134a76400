"""Machine-checkable verdict records.

A certificate carries enough data (witness vectors with their norm powers,
coset minima tables, subset verdicts) for an independent checker to replay
the claim without re-running the search that produced it.  Serialization is
deterministic: rationals become "num/den" strings and keys are emitted
sorted.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

from .norms import Vec
from .rational import format_rational, parse_rational

PASS = "pass"
FAIL = "fail"
UNRESOLVED = "unresolved"


@dataclass(frozen=True)
class VectorWitness:
    vector: Vec
    norm_pow: Fraction
    label: str = ""

    def to_dict(self) -> dict:
        return {
            "label": self.label,
            "norm_pow": format_rational(self.norm_pow),
            "vector": [format_rational(x) for x in self.vector],
        }

    @staticmethod
    def from_dict(data: dict) -> "VectorWitness":
        return VectorWitness(
            vector=tuple(parse_rational(x) for x in data["vector"]),
            norm_pow=parse_rational(data["norm_pow"]),
            label=data.get("label", ""),
        )


@dataclass
class Certificate:
    claim_id: str
    verdict: str
    witnesses: tuple[VectorWitness, ...] = ()
    counterexample: VectorWitness | None = None
    narrative: str = ""
    details: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.verdict == PASS

    def to_dict(self) -> dict:
        return {
            "claim_id": self.claim_id,
            "verdict": self.verdict,
            "witnesses": [w.to_dict() for w in self.witnesses],
            "counterexample": self.counterexample.to_dict() if self.counterexample else None,
            "narrative": self.narrative,
            "details": jsonable(self.details),
        }


def jsonable(value: Any) -> Any:
    """Recursively convert Fractions (and tuples) into JSON-safe values."""
    if isinstance(value, Fraction):
        return format_rational(value)
    if isinstance(value, dict):
        return {str(k): jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [jsonable(v) for v in value]
    return value


def dumps_canonical(payload: Any) -> str:
    """Byte-deterministic JSON: sorted keys, no whitespace variation."""
    return json.dumps(jsonable(payload), sort_keys=True, separators=(",", ":"))
