"""HTTP session API, exercised through the ASGI test client."""

import pytest
from fastapi.testclient import TestClient

from eqproof.seed import seed_stack
from eqproof.service import create_app


@pytest.fixture
def client():
    return TestClient(create_app(seed_stack()))


def start_intsct_comm(client):
    r = client.post(
        "/proofs",
        json={"theory": "Sets", "conjecture": "intsct-comm", "strategy": "Reduce"},
    )
    assert r.status_code == 200
    return r.json()


TRANSCRIPT_STEPS = [
    ("set-extensionality", "L-to-R", "@"),
    ("in-intersect", "L-to-R", "@1.1"),
    ("in-intersect", "L-to-R", "@1.2"),
    ("/\\-comm", "R-to-L", "@1.2"),
    ("Ax-==-id", "R-to-L", "@1"),
    ("forall-vac", "L-to-R", "@"),
]


class TestTheories:
    def test_stack_summary(self, client):
        body = client.get("/theories").json()
        assert [t["name"] for t in body["theories"]] == [
            "_ROOT", "Logic", "Equality", "Sets",
        ]
        assert body["theories"][3]["display"] == "Sets$0"

    def test_laws_table_columns(self, client):
        rows = client.get("/theories/Sets/laws").json()["rows"]
        ext = next(r for r in rows if r["name"] == "set-extensionality")
        assert ext["provenance"] == "axiom"
        assert {"notFreeIn": ["x", "S"]} in ext["sideConditions"]
        assert "forall x @" in ext["schema"]

    def test_unknown_theory_404(self, client):
        assert client.get("/theories/Bags/laws").status_code == 404

    def test_edit_endpoint(self, client):
        r = client.post(
            "/theories/Sets/conjectures",
            json={"action": "add", "row": {"name": "new-c", "schema": "TRUE"}},
        )
        assert r.status_code == 200
        names = [row["name"] for row in r.json()["rows"]]
        assert "new-c" in names

    def test_edit_duplicate_rejected(self, client):
        r = client.post(
            "/theories/Sets/laws",
            json={"action": "add", "row": {"name": "in-intersect", "schema": "P == P"}},
        )
        assert r.status_code == 400
        assert r.json()["code"] == "duplicate-name"


class TestProofSession:
    def test_initial_view(self, client):
        view = start_intsct_comm(client)
        assert view["goal"] == "e1 intsct e2 = e2 intsct e1"
        assert view["focusPath"] == "@"
        assert view["freeVars"] == ["e1", "e2"]
        assert not view["complete"]
        root_span = next(s for s in view["spans"] if s["path"] == "@")
        assert root_span["start"] == 0 and root_span["end"] == len(view["goal"])

    def test_focus_blocked_at_root(self, client):
        view = start_intsct_comm(client)
        r = client.post(f"/proofs/{view['id']}/focus", json={"move": "up"})
        body = r.json()
        assert body["blocked"] is True
        assert body["focusPath"] == "@"

    def test_matches_include_extensionality_with_unbound_x(self, client):
        view = start_intsct_comm(client)
        matches = client.get(f"/proofs/{view['id']}/matches").json()["matches"]
        assert len(matches) <= 20
        ext = next(m for m in matches if m["lawName"] == "set-extensionality")
        assert ext["direction"] == "L-to-R"
        assert ext["unbound"] == ["x"]
        assert ext["defaults"] == {"x": "x"}
        assert ext["preview"] == (
            "forall x @ (x in (e1 intsct e2)) == (x in (e2 intsct e1))"
        )

    def test_apply_needs_instantiation(self, client):
        view = start_intsct_comm(client)
        r = client.post(
            f"/proofs/{view['id']}/apply",
            json={"lawName": "set-extensionality", "direction": "L-to-R"},
        )
        body = r.json()
        assert body["needsInstantiation"] == [
            {"name": "x", "kind": "binder", "default": "x"}
        ]

    def test_full_replay_over_api(self, client, golden_transcript):
        view = start_intsct_comm(client)
        pid = view["id"]
        for law, direction, path in TRANSCRIPT_STEPS:
            r = client.post(f"/proofs/{pid}/focus", json={"path": path})
            assert r.status_code == 200
            r = client.post(
                f"/proofs/{pid}/apply",
                json={"lawName": law, "direction": direction, "instantiation": {}},
            )
            assert r.status_code == 200, r.text
            view = r.json()
        assert view["complete"]
        transcript = client.get(f"/proofs/{pid}/transcript")
        assert transcript.headers["content-type"].startswith("text/plain")
        assert transcript.text == golden_transcript

        r = client.post(f"/proofs/{pid}/promote")
        assert r.status_code == 200
        rows = client.get("/theories/Sets/theorems").json()["rows"]
        assert rows and rows[0]["name"] == "intsct-comm"
        t = client.get("/theories/Sets/theorems/intsct-comm/transcript")
        assert t.text == golden_transcript

    def test_status_line_at_membership(self, client):
        view = start_intsct_comm(client)
        pid = view["id"]
        client.post(
            f"/proofs/{pid}/apply",
            json={
                "lawName": "set-extensionality",
                "direction": "L-to-R",
                "instantiation": {},
            },
        )
        client.post(f"/proofs/{pid}/focus", json={"path": "@"})
        down = {"move": "down"}
        client.post(f"/proofs/{pid}/focus", json=down)
        view = client.post(f"/proofs/{pid}/focus", json=down).json()
        assert view["focusPath"] == "@1.1"
        assert view["focusClass"] == "EXPR"
        assert view["focusType"] == "B"

    def test_undo_and_conflict_statuses(self, client):
        view = start_intsct_comm(client)
        pid = view["id"]
        r = client.post(f"/proofs/{pid}/undo")
        assert r.status_code == 400
        assert r.json()["code"] == "nothing-to-undo"
        r = client.post(f"/proofs/{pid}/promote")
        assert r.status_code == 400
        assert r.json()["code"] == "not-complete"

    def test_apply_on_complete_proof_409(self, client):
        pid = start_intsct_comm(client)["id"]
        for law, direction, path in TRANSCRIPT_STEPS:
            client.post(f"/proofs/{pid}/focus", json={"path": path})
            client.post(
                f"/proofs/{pid}/apply",
                json={"lawName": law, "direction": direction, "instantiation": {}},
            )
        r = client.post(
            f"/proofs/{pid}/apply",
            json={"lawName": "Ax-==-id", "direction": "L-to-R", "instantiation": {}},
        )
        assert r.status_code == 409

    def test_unknown_session_404(self, client):
        assert client.get("/proofs/nope").status_code == 404

    def test_get_idempotent(self, client):
        pid = start_intsct_comm(client)["id"]
        a = client.get(f"/proofs/{pid}").json()
        b = client.get(f"/proofs/{pid}").json()
        assert a == b
