"""Command-line client.

Every subcommand is a thin wrapper over the HTTP service: requests are built
here, executed either against a remote server (``--server`` or
``LATFORGE_SERVER``) or against the bundled ASGI app in-process, and the
responses are written to disk as canonical JSON (sorted keys, no whitespace
variation).  Outputs are byte-identical across runs given identical flags
and seeds.

Exit codes: 0 all checks passed / command succeeded, 1 a claim was falsified
or the search came up empty, 2 malformed input, limits, or unresolved
comparisons.
"""

from __future__ import annotations

import asyncio
import json
import sys
from pathlib import Path

import click
import httpx

from .certificates import dumps_canonical

VERIFY_STAGES = {
    "verify-sigma",
    "verify-plus",
    "verify-tilde",
    "verify-main",
    "verify-aggregate",
}


class ServiceClient:
    """One-shot request runner: remote HTTP or in-process ASGI."""

    def __init__(self, server: str | None):
        self.server = server

    def request(self, method: str, path: str, payload: dict | None = None) -> httpx.Response:
        if self.server:
            with httpx.Client(base_url=self.server, timeout=600.0) as client:
                return client.request(method, path, json=payload)
        from .service import app as service_app

        async def go():
            transport = httpx.ASGITransport(app=service_app)
            async with httpx.AsyncClient(
                transport=transport, base_url="http://latforge.local", timeout=600.0
            ) as client:
                return await client.request(method, path, json=payload)

        return asyncio.run(go())


def _fail(code: str, message: str) -> None:
    sys.stderr.write(dumps_canonical({"code": code, "message": message}) + "\n")
    sys.exit(2)


def _call(ctx, method: str, path: str, payload: dict | None = None) -> dict:
    client: ServiceClient = ctx.obj["client"]
    try:
        resp = client.request(method, path, payload)
    except httpx.HTTPError as exc:
        _fail("service-unreachable", str(exc))
    if resp.status_code >= 400:
        try:
            body = resp.json()
        except json.JSONDecodeError:
            body = {"code": "service-error", "message": resp.text}
        _fail(body.get("code", "service-error"), body.get("message", ""))
    return resp.json()


def _write(path: str | None, payload) -> None:
    text = dumps_canonical(payload) + "\n"
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text, encoding="utf-8")


def _read_lattice(path: str) -> dict:
    try:
        return json.loads(Path(path).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        _fail("invalid-input", f"cannot read lattice file {path}: {exc}")


@click.group()
@click.option(
    "--server",
    envvar="LATFORGE_SERVER",
    default=None,
    help="Base URL of a running latforge service; defaults to in-process execution.",
)
@click.option(
    "--threads",
    type=int,
    default=0,
    show_default="all cores",
    help="Worker threads for internal sweeps; results are independent of this value.",
)
@click.pass_context
def main(ctx, server, threads):
    """Exact lattice construction and certification."""
    ctx.ensure_object(dict)
    ctx.obj["client"] = ServiceClient(server)
    ctx.obj["threads"] = threads


@main.command()
@click.option("--q", type=int, default=2, show_default=True, help="Norm exponent.")
@click.option("--s", default="inf", show_default=True, help="Aggregation exponent or 'inf'.")
@click.option("--prime", type=int, default=None, help="Grid prime; searched when omitted.")
@click.option(
    "--strategy",
    type=click.Choice(["deterministic-23", "randomized"]),
    default="deterministic-23",
    show_default=True,
)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--budget", type=int, default=2000, show_default=True)
@click.option("--fixture", default=None, help="Emit a built-in instance: 18dim or halfint:N.")
@click.option("--out", default="lattice.json", show_default=True, help="Lattice output path.")
@click.option(
    "--certs", default="certificates.json", show_default=True, help="Certificates output path."
)
@click.option("--profile", is_flag=True, help="Print per-stage timings to stderr.")
@click.pass_context
def construct(ctx, q, s, prime, strategy, seed, budget, fixture, out, certs, profile):
    """Build a counterexample lattice and certify every claim about it."""
    payload = {
        "q": q,
        "s": s,
        "strategy": strategy,
        "prime": prime,
        "seed": seed,
        "budget": budget,
        "fixture": fixture,
    }
    body = _call(ctx, "POST", "/construct", payload)
    if body.get("lattice") is not None:
        _write(out, body["lattice"])
    _write(certs, body.get("certificates", []))
    if profile:
        for stage, seconds in body.get("timings", {}).items():
            sys.stderr.write(f"{stage}: {seconds:.3f}s\n")
    if body["ok"]:
        return
    stage = body.get("failed_stage")
    message = body.get("message", "")
    sys.stderr.write(
        dumps_canonical({"code": "construct-failed", "failed_stage": stage, "message": message})
        + "\n"
    )
    sys.exit(1)


@main.command()
@click.option("--lattice", "lattice_path", default=None, help="Lattice JSON file to verify.")
@click.option("--fixture", default=None, help="Built-in instance id instead of a file.")
@click.option("--q", type=int, default=2, show_default=True)
@click.option("--s", default="inf", show_default=True)
@click.option(
    "--claims",
    default=None,
    help="Comma-separated claim ids (lemma4.4,lemma4.5,lemma4.6,cor4.7,thm3.1).",
)
@click.option("--out", default="-", show_default=True, help="Certificates output path or '-'.")
@click.pass_context
def verify(ctx, lattice_path, fixture, q, s, claims, out):
    """Certify claims about a lattice; exit 0 pass, 1 fail, 2 error/unresolved."""
    if (lattice_path is None) == (fixture is None):
        _fail("invalid-input", "provide exactly one of --lattice or --fixture")
    payload = {
        "lattice": _read_lattice(lattice_path) if lattice_path else None,
        "fixture": fixture,
        "q": q,
        "s": s,
        "claims": [c for c in claims.split(",") if c] if claims else None,
    }
    body = _call(ctx, "POST", "/verify", payload)
    _write(out, body["certificates"])
    verdicts = [c["verdict"] for c in body["certificates"]]
    if any(v == "fail" for v in verdicts):
        sys.exit(1)
    if any(v == "unresolved" for v in verdicts):
        sys.exit(2)


@main.command("search-sigma")
@click.option("--prime", type=int, required=True)
@click.option("--q", type=int, default=2, show_default=True)
@click.option("--entry-max", type=int, required=True)
@click.option("--target-pow", required=True, help="Exact power-sum target, rational string.")
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--budget", type=int, default=2000, show_default=True)
@click.option("--out", default="-", show_default=True)
@click.pass_context
def search_sigma(ctx, prime, q, entry_max, target_pow, seed, budget, out):
    """Search for a seed vector whose every nontrivial multiple mod p is longer."""
    payload = {
        "prime": prime,
        "q": q,
        "entry_max": entry_max,
        "target_pow": target_pow,
        "seed": seed,
        "budget": budget,
    }
    body = _call(ctx, "POST", "/search-sigma", payload)
    _write(out, body)
    if not body["found"]:
        sys.exit(1)


@main.command()
@click.option("--lattice", "lattice_path", default=None)
@click.option("--fixture", default=None)
@click.option("--q", type=int, default=2, show_default=True)
@click.option("--out", default="-", show_default=True)
@click.pass_context
def decompose(ctx, lattice_path, fixture, q, out):
    """Standard-sublattice decomposition with an exact span re-verification."""
    if (lattice_path is None) == (fixture is None):
        _fail("invalid-input", "provide exactly one of --lattice or --fixture")
    payload = {
        "lattice": _read_lattice(lattice_path) if lattice_path else None,
        "fixture": fixture,
        "q": q,
    }
    body = _call(ctx, "POST", "/decompose", payload)
    _write(out, body)


@main.command()
@click.option("--lattice", "lattice_path", required=True)
@click.option("--q", type=int, default=2, show_default=True)
@click.option("--bound", required=True, help="Bound on the q-th power of the norm, rational.")
@click.option("--closed/--open", "closed", default=True, show_default=True)
@click.option("--rank-limit", type=int, default=None)
@click.option("--out", default="-", show_default=True)
@click.pass_context
def enumerate(ctx, lattice_path, q, bound, closed, rank_limit, out):
    """List every nonzero lattice vector in the ball, one per +/- pair."""
    payload = {
        "lattice": _read_lattice(lattice_path),
        "q": q,
        "bound_pow": bound,
        "closed": closed,
        "rank_limit": rank_limit,
    }
    body = _call(ctx, "POST", "/enumerate", payload)
    _write(out, body["vectors"])


@main.command()
@click.option("--id", "fixture_id", default=None, help="Emit this fixture's lattice JSON.")
@click.option("--out", default="-", show_default=True)
@click.pass_context
def fixtures(ctx, fixture_id, out):
    """List built-in instances, or emit one as lattice JSON."""
    if fixture_id is None:
        body = _call(ctx, "GET", "/fixtures")
        _write(out, body)
        return
    body = _call(ctx, "GET", f"/fixtures/{fixture_id}")
    _write(out, body)


if __name__ == "__main__":
    main()
