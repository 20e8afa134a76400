"""HTTP service wrapping the toolkit.

Every endpoint is a pure function of its request body: construction is
seeded, verification is exact, and responses are deterministic, so the
service can sit behind any number of clients (the bundled CLI talks to it
in-process through the same ASGI app).
"""

from __future__ import annotations

from fastapi import FastAPI, Request
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse

from . import __version__
from .construction import generate_counterexample
from .errors import LatforgeError
from .fixtures import FIXTURE_IDS, fixture_18dim, load_fixture
from .rational import format_rational, parse_rational
from .schemas import (
    CertificatePayload,
    ConstructRequest,
    ConstructResponse,
    DecomposeRequest,
    DecomposeResponse,
    EnumerateRequest,
    EnumerateResponse,
    FixtureListResponse,
    LatticePayload,
    ScaledVectorPayload,
    SigmaSearchRequest,
    SigmaSearchResponse,
    VerifyRequest,
    VerifyResponse,
    WitnessPayload,
    aggregation_from_str,
)
from .sigma import random_sigma_search, verify_sigma
from .verify import decomposition_claim, run_claims


def create_app() -> FastAPI:
    app = FastAPI(
        title="latforge",
        version=__version__,
        description=(
            "Exact-arithmetic lattice certification: counterexample construction, "
            "short-vector enumeration and replayable certificates"
        ),
    )

    @app.exception_handler(LatforgeError)
    async def _domain_error(request: Request, exc: LatforgeError):
        return JSONResponse(status_code=400, content=exc.payload())

    @app.exception_handler(RequestValidationError)
    async def _validation_error(request: Request, exc: RequestValidationError):
        return JSONResponse(
            status_code=422,
            content={"code": "invalid-input", "message": str(exc.errors())},
        )

    @app.get("/healthz")
    def healthz():
        return {"status": "ok", "version": __version__}

    @app.get("/fixtures", response_model=FixtureListResponse)
    def fixtures_index():
        return FixtureListResponse(fixtures=list(FIXTURE_IDS))

    @app.get("/fixtures/{fixture_id}", response_model=LatticePayload)
    def fixture_lattice(fixture_id: str):
        loaded = load_fixture(fixture_id)
        basis = loaded.basis if hasattr(loaded, "basis") else loaded
        return LatticePayload.from_basis(basis)

    @app.post("/construct", response_model=ConstructResponse)
    def construct(req: ConstructRequest):
        if req.fixture is not None:
            return _construct_fixture(req)
        result = generate_counterexample(
            q=req.q,
            s=aggregation_from_str(req.s),
            strategy=req.strategy,
            p=req.prime,
            seed=req.seed,
            budget=req.budget,
        )
        return ConstructResponse(
            ok=result.ok,
            failed_stage=result.failed_stage,
            message=result.message,
            lattice=(
                LatticePayload.from_basis(result.tilde.basis) if result.tilde else None
            ),
            certificates=[CertificatePayload.from_certificate(c) for c in result.certificates],
            timings=result.timings,
        )

    def _construct_fixture(req: ConstructRequest) -> ConstructResponse:
        if req.fixture == "18dim":
            tilde = fixture_18dim()
            certs = run_claims(tilde, q=req.q, s=aggregation_from_str(req.s))
            return ConstructResponse(
                ok=all(c.passed for c in certs),
                failed_stage=None,
                lattice=LatticePayload.from_basis(tilde.basis),
                certificates=[CertificatePayload.from_certificate(c) for c in certs],
            )
        basis = load_fixture(req.fixture)
        cert = decomposition_claim(basis, req.q)
        return ConstructResponse(
            ok=cert.passed,
            failed_stage=None,
            lattice=LatticePayload.from_basis(basis),
            certificates=[CertificatePayload.from_certificate(cert)],
        )

    @app.post("/verify", response_model=VerifyResponse)
    def verify(req: VerifyRequest):
        if req.fixture is not None:
            target = load_fixture(req.fixture, q=req.q)
        else:
            target = req.lattice.to_basis()
        certs = run_claims(target, q=req.q, s=aggregation_from_str(req.s), claims=req.claims)
        return VerifyResponse(
            certificates=[CertificatePayload.from_certificate(c) for c in certs],
            all_passed=all(c.verdict == "pass" for c in certs),
            any_unresolved=any(c.verdict == "unresolved" for c in certs),
        )

    @app.post("/search-sigma", response_model=SigmaSearchResponse)
    def search_sigma(req: SigmaSearchRequest):
        found = random_sigma_search(
            p=req.prime,
            q=req.q,
            entry_max=req.entry_max,
            target_pow=parse_rational(req.target_pow),
            seed=req.seed,
            budget=req.budget,
        )
        if found is None:
            return SigmaSearchResponse(found=False)
        return SigmaSearchResponse(
            found=True,
            sigma=list(found.entries),
            certificate=CertificatePayload.from_certificate(verify_sigma(found)),
        )

    @app.post("/decompose", response_model=DecomposeResponse)
    def decompose(req: DecomposeRequest):
        from .verify import decompose_nonstandard, is_standard

        if req.fixture is not None:
            loaded = load_fixture(req.fixture, q=req.q)
            basis = loaded.basis if hasattr(loaded, "basis") else loaded
        else:
            basis = req.lattice.to_basis()
        result = is_standard(basis, req.q)
        decomposition = decompose_nonstandard(basis, req.q)
        return DecomposeResponse(
            standard=result.standard,
            std_basis=LatticePayload.from_basis(decomposition.std_basis),
            scaled=[
                ScaledVectorPayload(
                    vector=[format_rational(x) for x in v], divisor=divisor
                )
                for v, divisor in decomposition.scaled
            ],
            certificate=CertificatePayload.from_certificate(decomposition.certificate),
        )

    @app.post("/enumerate", response_model=EnumerateResponse)
    def enumerate_short(req: EnumerateRequest):
        from .enumeration import BallSpec, enumerate_ball

        basis = req.lattice.to_basis()
        spec = BallSpec(q=req.q, bound_pow=parse_rational(req.bound_pow), closed=req.closed)
        shorts = enumerate_ball(basis, spec, rank_limit=req.rank_limit)
        return EnumerateResponse(
            vectors=[
                WitnessPayload(
                    label=f"short[{i}]",
                    norm_pow=format_rational(sv.norm_pow),
                    vector=[format_rational(x) for x in sv.coords],
                )
                for i, sv in enumerate(shorts)
            ]
        )

    return app


app = create_app()
