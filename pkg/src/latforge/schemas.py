"""Wire formats for the service and the CLI.

Rational numbers always travel as "num/den" strings (integers may omit the
denominator); no float ever enters a payload.  The lattice JSON layout is
{"ambient_dim": n, "rank": k, "columns": [[...]]} and round-trips
byte-deterministically through the canonical serializer.
"""

from __future__ import annotations

from typing import Literal

from pydantic import BaseModel, Field, field_validator, model_validator

from .certificates import Certificate
from .lattices import Basis, lattice_from_dict, lattice_to_dict
from .rational import parse_rational


class LatticePayload(BaseModel):
    ambient_dim: int = Field(ge=1)
    rank: int = Field(ge=1)
    columns: list[list[str]]

    @field_validator("columns")
    @classmethod
    def _rationals(cls, columns):
        for col in columns:
            for entry in col:
                parse_rational(entry)
        return columns

    @model_validator(mode="after")
    def _consistent(self):
        if len(self.columns) != self.rank:
            raise ValueError("rank must equal the number of columns")
        if any(len(col) != self.ambient_dim for col in self.columns):
            raise ValueError("every column must have ambient_dim entries")
        return self

    def to_basis(self) -> Basis:
        return lattice_from_dict(self.model_dump())

    @staticmethod
    def from_basis(basis: Basis) -> "LatticePayload":
        return LatticePayload(**lattice_to_dict(basis))


class WitnessPayload(BaseModel):
    label: str = ""
    norm_pow: str
    vector: list[str]


class CertificatePayload(BaseModel):
    claim_id: str
    verdict: Literal["pass", "fail", "unresolved"]
    witnesses: list[WitnessPayload] = []
    counterexample: WitnessPayload | None = None
    narrative: str = ""
    details: dict = {}

    @staticmethod
    def from_certificate(cert: Certificate) -> "CertificatePayload":
        return CertificatePayload(**cert.to_dict())


class ConstructRequest(BaseModel):
    q: int = Field(default=2, ge=1)
    s: str = "inf"
    strategy: Literal["deterministic-23", "randomized"] = "deterministic-23"
    prime: int | None = None
    seed: int = 0
    budget: int = Field(default=2000, ge=0)
    fixture: str | None = None

    @field_validator("s")
    @classmethod
    def _aggregation(cls, s):
        if s != "inf":
            if not s.isdigit() or int(s) < 1:
                raise ValueError("s must be a positive integer or 'inf'")
        return s


class ConstructResponse(BaseModel):
    ok: bool
    failed_stage: str | None = None
    message: str = ""
    lattice: LatticePayload | None = None
    certificates: list[CertificatePayload] = []
    timings: dict[str, float] = {}


class VerifyRequest(BaseModel):
    lattice: LatticePayload | None = None
    fixture: str | None = None
    q: int = Field(default=2, ge=1)
    s: str = "inf"
    claims: list[str] | None = None

    @field_validator("s")
    @classmethod
    def _aggregation(cls, s):
        if s != "inf":
            if not s.isdigit() or int(s) < 1:
                raise ValueError("s must be a positive integer or 'inf'")
        return s

    @model_validator(mode="after")
    def _one_source(self):
        if (self.lattice is None) == (self.fixture is None):
            raise ValueError("provide exactly one of lattice or fixture")
        return self


class VerifyResponse(BaseModel):
    certificates: list[CertificatePayload]
    all_passed: bool
    any_unresolved: bool


class SigmaSearchRequest(BaseModel):
    prime: int = Field(ge=3)
    q: int = Field(default=2, ge=1)
    entry_max: int = Field(ge=2)
    target_pow: str
    seed: int = 0
    budget: int = Field(default=2000, ge=0)

    @field_validator("target_pow")
    @classmethod
    def _rational(cls, value):
        parse_rational(value)
        return value


class SigmaSearchResponse(BaseModel):
    found: bool
    sigma: list[int] | None = None
    certificate: CertificatePayload | None = None


class ScaledVectorPayload(BaseModel):
    vector: list[str]
    divisor: int


class DecomposeRequest(BaseModel):
    lattice: LatticePayload | None = None
    fixture: str | None = None
    q: int = Field(default=2, ge=1)

    @model_validator(mode="after")
    def _one_source(self):
        if (self.lattice is None) == (self.fixture is None):
            raise ValueError("provide exactly one of lattice or fixture")
        return self


class DecomposeResponse(BaseModel):
    standard: bool
    std_basis: LatticePayload
    scaled: list[ScaledVectorPayload]
    certificate: CertificatePayload


class EnumerateRequest(BaseModel):
    lattice: LatticePayload
    q: int = Field(default=2, ge=1)
    bound_pow: str
    closed: bool = True
    rank_limit: int | None = None

    @field_validator("bound_pow")
    @classmethod
    def _rational(cls, value):
        parse_rational(value)
        return value


class EnumerateResponse(BaseModel):
    vectors: list[WitnessPayload]


class FixtureListResponse(BaseModel):
    fixtures: list[str]


class ErrorPayload(BaseModel):
    code: str
    message: str


def aggregation_from_str(s: str):
    return "inf" if s == "inf" else int(s)
