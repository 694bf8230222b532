import pytest
from fastapi.testclient import TestClient

from gpdlab import groups, io as gio
from gpdlab.fixtures import fixture
from gpdlab.groupoids import (GroupoidFunctor, arrow_name, delooping, discrete,
                              identity_functor, pair_mor, pair_obj, product,
                              codiscrete)
from gpdlab.service import app


@pytest.fixture(scope="module")
def client():
    with TestClient(app) as c:
        yield c


B1 = discrete(["*"])
BZ2 = delooping(groups.cyclic(2))
C2 = codiscrete(["a", "b"])
Z2xC2 = product(BZ2, C2)


def test_health(client):
    assert client.get("/health").json() == {"status": "ok"}


def test_fixture_listing(client):
    names = client.get("/fixtures").json()["names"]
    assert "BZ2" in names and "C2" in names


def test_openapi_document_lists_routes(client):
    doc = client.get("/openapi.json").json()
    for route in ("/validate", "/factor", "/morita", "/nerve-suite"):
        assert route in doc["paths"]


class TestValidateEndpoint:
    def test_valid_groupoid(self, client):
        r = client.post("/validate",
                        json={"payload": gio.groupoid_to_dict(fixture("C2"))})
        assert r.status_code == 200
        assert r.json() == {"ok": True, "kind": "groupoid",
                            "structural": [], "axioms": []}

    def test_axiom_violation_names_the_morphism(self, client):
        payload = gio.groupoid_to_dict(fixture("C2"))
        payload["inverses"].pop("a>b")
        r = client.post("/validate", json={"payload": payload})
        body = r.json()
        assert not body["ok"]
        assert any("a>b" in msg for msg in body["axioms"])

    def test_malformed_payload_is_400(self, client):
        r = client.post("/validate", json={"payload": {"bogus": 1}})
        assert r.status_code == 400

    def test_functor_payload(self, client):
        F = identity_functor(fixture("BZ2"))
        r = client.post("/validate", json={"payload": gio.functor_to_dict(F)})
        assert r.json()["ok"] and r.json()["kind"] == "functor"

    def test_presented_payload(self, client):
        payload = {"objects": ["x"], "generators": [
            {"id": "s", "src": "x", "dst": "x"}],
            "relations": [[["s", "s"], []]]}
        r = client.post("/validate", json={"payload": payload})
        assert r.json()["ok"] and r.json()["kind"] == "presented"


class TestFactorEndpoint:
    def test_collapse_of_z2(self, client):
        F = GroupoidFunctor(BZ2, B1, {"*": "*"},
                            {m: arrow_name("*", "*") for m in BZ2.morphism_ids})
        r = client.post("/factor", json={"functor": gio.functor_to_dict(F)})
        body = r.json()
        assert body["checks"] == {"first_cofibration": "pass",
                                  "composite": "pass",
                                  "second_equivalence": "pass"}
        assert len(body["middle"]["objects"]) == 2
        assert not body["warnings"]

    def test_bound_exhaustion_warns_but_succeeds(self, client):
        F = identity_functor(BZ2)
        r = client.post("/factor", json={"functor": gio.functor_to_dict(F),
                                         "bound": 1})
        body = r.json()
        assert body["checks"]["second_equivalence"] == "unverified"
        assert body["warnings"]
        assert body["middle"] is None


class TestMoritaEndpoint:
    def test_acyclic_cofibration(self, client):
        inc = GroupoidFunctor(BZ2, Z2xC2, {"*": pair_obj("*", "a")},
                              {m: pair_mor(m, "a>a") for m in BZ2.morphism_ids})
        r = client.post("/morita", json={"functor": gio.functor_to_dict(inc)})
        body = r.json()
        assert body["ok"] and body["acyclic_cofibration"] and body["k0_iso"]
        assert body["full_corner_witnesses"][0]["full"]

    def test_non_cofibration_reports_functoriality_error(self, client):
        F = GroupoidFunctor(C2, B1, {"a": "*", "b": "*"},
                            {m: arrow_name("*", "*") for m in C2.morphism_ids})
        r = client.post("/morita", json={"functor": gio.functor_to_dict(F)})
        body = r.json()
        assert not body["ok"]
        assert body["error_kind"] == "functoriality"

    def test_invalid_functor_is_400(self, client):
        F = GroupoidFunctor(BZ2, B1, {"*": "*"}, {"g0": "*>*", "g1": "*>*"})
        payload = gio.functor_to_dict(F)
        payload["onMorphisms"]["g1"] = "ghost"
        r = client.post("/morita", json={"functor": payload})
        assert r.status_code == 400


class TestNerveSuiteEndpoint:
    def test_single_point_all_pass(self, client):
        r = client.post("/nerve-suite", json={"fixtures": ["B1"], "max_k": 1})
        body = r.json()
        assert body["ok"]
        assert all(lv["h0_isomorphic"] and lv["h1_isomorphic"]
                   for lv in body["levels"])
        assert body["margin_checks"] == {"column0_equals_wc_nerve": True,
                                         "row0_equals_wg_nerve": True}
        assert body["retraction_identity"]

    def test_unknown_fixture_is_400(self, client):
        r = client.post("/nerve-suite", json={"fixtures": ["nope"]})
        assert r.status_code == 400

    def test_budget_overflow_reports_estimate(self, client):
        r = client.post("/nerve-suite",
                        json={"fixtures": ["B1", "BZ2", "C2"], "max_k": 1,
                              "budget": 10})
        body = r.json()
        assert not body["ok"]
        assert body["error_kind"] == "budget"
        assert body["estimate"] > 10

    def test_pair_sample_reports_torsion_mismatch(self, client):
        # the wc-nerve of {B1, C2} carries an order-2 torsion class in degree
        # one that the w-nerve kills with the extra equivalences, so the
        # honest verdict at this sample size is a mismatch
        r = client.post("/nerve-suite", json={"fixtures": ["B1", "C2"],
                                              "max_k": 0})
        body = r.json()
        assert not body["ok"]
        lv = body["levels"][0]
        assert lv["h0_isomorphic"] and not lv["h1_isomorphic"]
        assert "Z/2" in lv["marked_profile"]
