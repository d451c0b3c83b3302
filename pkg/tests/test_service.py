import json
from importlib import resources

import jsonschema
import pytest
from fastapi.testclient import TestClient

from koecher.service.app import app


@pytest.fixture(scope="module")
def client():
    return TestClient(app)


@pytest.fixture(scope="module")
def report_schema():
    ref = resources.files("koecher") / "schemas" / "identity_report.schema.json"
    return json.loads(ref.read_text())


def test_healthz(client):
    assert client.get("/healthz").json() == {"status": "ok"}


def test_identities_lists_registry(client):
    body = client.get("/identities").json()
    ids = {entry["identity_id"] for entry in body}
    assert {"eq1.1", "eq1.3", "eq1.4", "thm41", "thm42", "lemma43", "lemma24",
            "thm51", "eq5.3", "eq5.4", "eq6.2", "eq6.3", "eq6.4", "lemma63",
            "leshchiner"} <= ids


def test_verify_pass_and_schema(client, report_schema):
    resp = client.post("/verify", json={"identity_id": "eq1.1", "digits": 20})
    assert resp.status_code == 200
    body = resp.json()
    assert body["status"] == "pass"
    jsonschema.validate(body["report"], report_schema)
    assert body["report"]["pass"] is True
    assert body["report"]["identity_id"] == "eq1.1"


def test_every_identity_roundtrips(client, report_schema):
    for entry in client.get("/identities").json():
        ident = entry["identity_id"]
        resp = client.post("/verify", json={"identity_id": ident, "digits": 12})
        assert resp.status_code == 200, ident
        body = resp.json()
        assert body["status"] == "pass", (ident, body)
        jsonschema.validate(body["report"], report_schema)
        assert body["report"]["identity_id"] == ident


def test_verify_unknown_identity(client):
    resp = client.post("/verify", json={"identity_id": "nope"})
    assert resp.status_code == 400


def test_verify_bad_param(client):
    resp = client.post("/verify", json={"identity_id": "thm51", "params": {"c": "99"}})
    assert resp.status_code == 400
    resp = client.post("/verify", json={"identity_id": "thm51", "params": {"zzz": "1"}})
    assert resp.status_code == 400


def test_verify_n2_diagnostic(client):
    resp = client.post("/verify", json={"identity_id": "thm41", "params": {"n": "2"},
                                        "digits": 12})
    assert resp.status_code == 400
    assert "pi^2/3" in resp.json()["detail"]


def test_verify_rational_param(client):
    resp = client.post("/verify", json={"identity_id": "lemma43",
                                        "params": {"z": "3.7"}, "digits": 12})
    assert resp.status_code == 200
    assert resp.json()["status"] == "pass"
    assert resp.json()["report"]["parameters"] == {"z": "37/10"}


def test_expand_endpoint(client):
    resp = client.post("/expand", json={"sequence": "sqshift:c=0", "alpha": "0.5",
                                        "order": 1, "digits": 20})
    assert resp.status_code == 200
    rows = resp.json()["rows"]
    assert len(rows) == 2
    assert rows[0]["coefficient"].startswith("1.2020569031595942")
    assert rows[1]["coefficient"].startswith("1.03692775514336")
    for row in rows:
        assert float(row["abs_diff"].replace("e", "E")) < 1e-18


def test_expand_unsupported(client):
    resp = client.post("/expand", json={"sequence": "power:c=0.5,d=1,beta=2.5",
                                        "alpha": "0.3", "order": 1, "digits": 8})
    assert resp.status_code == 400


def test_table_endpoint(client):
    resp = client.post("/table", json={"cmax": 5})
    assert resp.status_code == 200
    body = resp.json()
    assert body["all_confirmed"] is True
    assert body["rows"][0]["coefficients"] == ["5"]
    assert body["rows"][1]["coefficients"] == ["2", "4", "12", "5"]
    assert body["rows"][5]["constant"] == str(435456000)


def test_bench_endpoint(client):
    resp = client.post("/bench", json={"identity_id": "eq1.1", "digits": 30})
    assert resp.status_code == 200
    body = resp.json()
    assert body["accelerated_terms"] <= 80
    assert int(body["direct_terms_estimate"]) > 10**14
    assert body["direct_feasible"] is False

    resp = client.post("/bench", json={"identity_id": "eq1.1", "digits": 10})
    body = resp.json()
    assert body["direct_feasible"] is True
    assert body["direct_terms"] > 10**4

    resp = client.post("/bench", json={"identity_id": "eq1.3", "digits": 10})
    assert resp.status_code == 400  # no direct/accelerated pairing bound


def test_reports_deterministic(client):
    def run():
        body = client.post("/verify", json={"identity_id": "thm51",
                                            "params": {"c": "2"}, "digits": 20}).json()
        rep = body["report"]
        rep["elapsed_ms"] = 0
        return json.dumps(rep, sort_keys=True)

    assert run() == run()
