import json

import pytest
from fastapi.testclient import TestClient

from latforge import lattice_to_dict
from latforge.certificates import dumps_canonical
from latforge.fixtures import fixture_halfint
from latforge.service import create_app


@pytest.fixture(scope="module")
def client():
    return TestClient(create_app())


def test_healthz(client):
    body = client.get("/healthz").json()
    assert body["status"] == "ok"


def test_fixture_listing_and_lattices(client):
    assert client.get("/fixtures").json() == {"fixtures": ["18dim", "halfint:<n>"]}
    body = client.get("/fixtures/halfint:3").json()
    assert body["rank"] == 3 and body["columns"][2] == ["1/2", "1/2", "1/2"]
    body = client.get("/fixtures/18dim").json()
    assert body["ambient_dim"] == 18 and body["rank"] == 17


def test_fixture_unknown_id_maps_to_error_payload(client):
    resp = client.get("/fixtures/nonesuch")
    assert resp.status_code == 400
    assert resp.json()["code"] == "invalid-input"


def test_construct_deterministic_pipeline(client):
    req = {"q": 2, "prime": 13, "strategy": "randomized", "seed": 7, "budget": 500}
    body = client.post("/construct", json=req).json()
    assert body["ok"] is True
    assert body["lattice"]["rank"] + 1 == body["lattice"]["ambient_dim"]
    assert [c["claim_id"] for c in body["certificates"]] == [
        "sigma-shortest-multiplier",
        "lemma-4.4",
        "lemma-4.5",
        "lemma-4.6",
        "cor-4.7",
    ]
    again = client.post("/construct", json=req).json()
    assert again["lattice"] == body["lattice"]
    assert again["certificates"] == body["certificates"]


def test_construct_failure_is_structured_not_http_error(client):
    body = client.post(
        "/construct", json={"q": 1, "strategy": "deterministic-23", "prime": 7}
    ).json()
    assert body["ok"] is False and body["failed_stage"] == "sigma"


def test_construct_fixture_route(client):
    body = client.post("/construct", json={"fixture": "halfint:5"}).json()
    assert body["ok"] is True
    assert body["certificates"][0]["claim_id"] == "thm-3.1"


def test_verify_round_trip_from_constructed_lattice(client):
    built = client.post(
        "/construct", json={"q": 2, "prime": 13, "strategy": "randomized", "seed": 7}
    ).json()
    verified = client.post(
        "/verify", json={"lattice": built["lattice"], "q": 2}
    ).json()
    assert verified["all_passed"] is True
    assert [c["claim_id"] for c in verified["certificates"]] == [
        "lemma-4.4",
        "lemma-4.5",
        "lemma-4.6",
        "cor-4.7",
    ]
    # in-memory pipeline and file round trip agree certificate-for-certificate
    by_id = {c["claim_id"]: c for c in built["certificates"]}
    for cert in verified["certificates"]:
        assert cert == by_id[cert["claim_id"]]


def test_verify_validates_source_choice(client):
    resp = client.post("/verify", json={"q": 2})
    assert resp.status_code == 422
    assert resp.json()["code"] == "invalid-input"


def test_verify_with_sum_aggregation(client):
    built = client.post(
        "/construct", json={"q": 2, "prime": 13, "strategy": "randomized", "seed": 7}
    ).json()
    for s in ("1", "2"):
        body = client.post(
            "/verify",
            json={"lattice": built["lattice"], "q": 2, "s": s, "claims": ["cor4.7"]},
        ).json()
        assert body["all_passed"] is True, s


def test_verify_fixture_claims_selection(client):
    body = client.post(
        "/verify", json={"fixture": "18dim", "q": 2, "claims": ["lemma4.5"]}
    ).json()
    assert body["all_passed"] is True
    body = client.post(
        "/verify", json={"fixture": "18dim", "q": 2, "claims": ["lemma4.6"]}
    ).json()
    assert body["all_passed"] is False
    assert body["certificates"][0]["verdict"] == "fail"


def test_search_sigma_endpoint(client):
    req = {
        "prime": 13,
        "q": 2,
        "entry_max": 3,
        "target_pow": "168",
        "seed": 0,
        "budget": 50,
    }
    body = client.post("/search-sigma", json=req).json()
    assert body["found"] is True
    assert sorted(body["sigma"], reverse=True) == [3] * 12 + [2] * 15
    assert body["certificate"]["verdict"] == "pass"
    empty = client.post("/search-sigma", json={**req, "budget": 0}).json()
    assert empty == {"found": False, "sigma": None, "certificate": None}


def test_decompose_endpoint(client):
    body = client.post("/decompose", json={"fixture": "halfint:5", "q": 2}).json()
    assert body["standard"] is False
    assert body["scaled"][0]["divisor"] == 2
    assert body["certificate"]["claim_id"] == "thm-3.1"


def test_enumerate_endpoint(client):
    lattice = lattice_to_dict(fixture_halfint(3))
    body = client.post(
        "/enumerate",
        json={"lattice": lattice, "q": 2, "bound_pow": "1", "closed": True},
    ).json()
    assert [v["norm_pow"] for v in body["vectors"]] == ["3/4"] * 4 + ["1"] * 3
    opened = client.post(
        "/enumerate",
        json={"lattice": lattice, "q": 2, "bound_pow": "3/4", "closed": False},
    ).json()
    assert opened["vectors"] == []


def test_enumerate_rank_limit_maps_to_error(client):
    lattice = lattice_to_dict(fixture_halfint(3))
    resp = client.post(
        "/enumerate",
        json={"lattice": lattice, "q": 2, "bound_pow": "1", "rank_limit": 2},
    )
    assert resp.status_code == 400
    assert resp.json()["code"] == "desk-scale-limit"


def test_openapi_schema_is_generated(client):
    schema = client.get("/openapi.json").json()
    paths = set(schema["paths"])
    assert {
        "/construct",
        "/verify",
        "/search-sigma",
        "/decompose",
        "/enumerate",
        "/fixtures",
        "/fixtures/{fixture_id}",
        "/healthz",
    } <= paths


def test_verify_output_identical_across_calls(client):
    req = {"fixture": "18dim", "q": 2, "claims": ["lemma4.4", "lemma4.5"]}
    first = client.post("/verify", json=req).json()
    second = client.post("/verify", json=req).json()
    assert first == second
    assert dumps_canonical(first) == dumps_canonical(second)


def test_responses_serialize_canonically(client):
    body = client.get("/fixtures/halfint:3").json()
    canon = dumps_canonical(body)
    assert json.loads(canon) == body
    assert canon == dumps_canonical(json.loads(canon))
