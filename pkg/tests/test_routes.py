"""Tests for the Flask JSON routes."""


def test_index(client):
    response = client.get("/")
    assert response.status_code == 200
    assert "/range?eta=" in response.get_json()["endpoints"]


def test_range(client):
    response = client.get("/range?eta=0.6666666666666666")
    assert response.status_code == 200
    body = response.get_json()
    assert body["command"] == "range"
    nonlocal_row = body["rows"][0]
    assert abs(nonlocal_row["lo"] - 0.1096876) < 1e-7
    assert abs(nonlocal_row["hi"] - 0.8903124) < 1e-7


def test_range_errors(client):
    assert client.get("/range?eta=1.5").status_code == 400
    assert client.get("/range?eta=abc").status_code == 400
    missing = client.get("/range")
    assert missing.status_code == 400
    assert "eta" in missing.get_json()["error"]


def test_nonlocal(client):
    body = client.get("/nonlocal?max_m=8").get_json()
    assert body["summary"]["max_entangled_copies"] == 6
    assert body["rows"][6]["verdict"] == "Separable"
    assert len(client.get("/nonlocal").get_json()["rows"]) == 10
    assert client.get("/nonlocal?max_m=0").status_code == 400


def test_clone3(client):
    body = client.get("/clone3?alpha_sq=0.5").get_json()
    row = body["rows"][0]
    assert row["verdict"] == "Separable"
    assert abs(row["s"] - 25 / 81) < 1e-10
    assert body["summary"]["nonlocal_pairs"][:2] == ["a1-b2", "a1-c2"]
    assert client.get("/clone3?alpha_sq=-1").status_code == 400


def test_threshold(client):
    body = client.get("/threshold").get_json()
    assert abs(body["rows"][0]["eta_empty"] - 0.576667) < 1e-6


def test_work_limits(client):
    assert client.get("/nonlocal?max_m=1000").status_code == 200
    too_many = client.get("/nonlocal?max_m=1001")
    assert too_many.status_code == 400
    assert "max_m" in too_many.get_json()["error"]
    for step in ("1e-9", "0", "nan"):
        response = client.get(f"/threshold?step={step}")
        assert response.status_code == 400
        assert "step" in response.get_json()["error"]


def test_server_error(client, monkeypatch):
    from app import reports

    def explode(eta, timestamp=None):
        raise RuntimeError("boom")

    monkeypatch.setattr(reports, "range_report", explode)
    response = client.get("/range?eta=0.6")
    assert response.status_code == 500
    assert "boom" in response.get_json()["error"]
