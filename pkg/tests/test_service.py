import pytest
from fastapi.testclient import TestClient

from secantkit import __version__
from secantkit.service import app


@pytest.fixture(scope="module")
def client():
    return TestClient(app)


class TestEndpoints:
    def test_health(self, client):
        r = client.get("/health")
        assert r.status_code == 200
        assert r.json() == {"status": "ok", "engine_version": __version__}

    def test_commands_listing(self, client):
        r = client.get("/commands")
        assert "check-k2" in r.json()["commands"]
        assert "report-all" in r.json()["commands"]

    def test_run_check_k2(self, client):
        r = client.post("/run", json={
            "command": "check-k2",
            "family": "rational-normal-curve:3",
        })
        assert r.status_code == 200
        body = r.json()
        assert body["payload"]["holds"] is True
        assert body["ok"] is True
        assert body["seed"] == "0"

    def test_run_with_input_text(self, client):
        text = ("ring R vars x0 x1 x2 x3;\n"
                "ideal TC = x0*x2-x1^2, x1*x3-x2^2, x0*x3-x1*x2;\n")
        r = client.post("/run", json={"command": "betti", "input_text": text})
        assert r.status_code == 200
        assert r.json()["payload"]["betti"] == {"0,2": "3", "1,3": "2"}

    def test_run_thresholds_params(self, client):
        r = client.post("/run", json={
            "command": "thresholds",
            "params": {"variant": "little", "d": 2, "e": 2, "a": 1, "n": 3},
        })
        assert r.status_code == 200
        assert r.json()["payload"]["bound"] == "0"

    def test_identical_requests_identical_payloads(self, client):
        req = {"command": "deficiency", "family": "rational-normal-curve:4"}
        a = client.post("/run", json=req).json()
        b = client.post("/run", json=req).json()
        assert a == b

    def test_bad_command_400(self, client):
        r = client.post("/run", json={"command": "nope"})
        assert r.status_code == 400

    def test_syntax_error_400_with_position(self, client):
        r = client.post("/run", json={
            "command": "gb",
            "input_text": "ring R vars x;\nideal I = x^-1;\n",
        })
        assert r.status_code == 400
        assert "2:" in r.json()["detail"]

    def test_missing_ideal_400(self, client):
        r = client.post("/run", json={"command": "gb"})
        assert r.status_code == 400

    def test_corpus_endpoint(self, client):
        r = client.post("/corpus", json={"family": "segre:1:1"})
        assert r.status_code == 200
        assert r.json()["input_text"].startswith("ring R vars w00 w01 w10 w11;")

    def test_corpus_unknown_family(self, client):
        r = client.post("/corpus", json={"family": "mystery:9"})
        assert r.status_code == 400

    def test_validation_error_422(self, client):
        r = client.post("/run", json={"seed": 0})
        assert r.status_code == 422
