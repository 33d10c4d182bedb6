import threading
from datetime import datetime, timedelta, timezone

import pytest

from helpers import make_element
from knohub.errors import (
    AccessError,
    AuthError,
    ConflictError,
    NotFoundError,
    ValidationError,
)
from knohub.server import Hub, ServerConfig
from knohub.store import export_xml

T0 = datetime(2010, 8, 31, 10, 0, 0, tzinfo=timezone.utc)

CREATE_1 = {
    "title": "definition de ligne neutre",
    "kind": "Design experience",
    "keywords": ["ligne neutre", "formage"],
    "description": "definir la ligne neutre",
    "source": "Secome",
    "content": {"explicitness": 2, "novelty": 3, "importance": 4, "usability": 4},
}
CREATE_2 = {
    "title": "arrangement de etape de formage",
    "kind": "Design experience",
    "keywords": ["etape", "formage"],
    "description": "comment definir les etapes de formage!",
    "source": "Secome",
    "content": {"explicitness": 2, "novelty": 3, "importance": 4, "usability": 4},
}

TASKS_XML = """<?xml version="1.0" encoding="utf-8"?>
<Tasks>
  <Task id="T1" project="P1" title="pre-study of feasibility" innovative="true" assignee="jab">
    <Input>customer order</Input>
  </Task>
</Tasks>
"""


@pytest.fixture
def hub(tmp_path):
    instance = Hub(ServerConfig(data_dir=str(tmp_path / "data")))
    yield instance
    instance.close()


def login(hub, name="admin", password="admin"):
    return hub.login(name, password)["token"]


def make_user(hub, name, password="pw", team=""):
    admin = login(hub)
    hub.add_user(admin, name, password, team=team)
    return hub.login(name, password)["token"]


class TestAccounts:
    def test_bootstrap_admin_can_login(self, hub):
        session = hub.login("admin", "admin")
        assert session["is_admin"] is True
        assert session["token"]

    def test_wrong_password_rejected(self, hub):
        with pytest.raises(AuthError):
            hub.login("admin", "nope")
        with pytest.raises(AuthError):
            hub.login("ghost", "admin")

    def test_every_call_needs_a_valid_token(self, hub):
        with pytest.raises(AuthError):
            hub.search("bogus-token", {"terms": ["x"]})
        with pytest.raises(AuthError):
            hub.list_users(None)

    def test_tokens_expire(self, tmp_path):
        now = {"t": T0}
        hub = Hub(
            ServerConfig(data_dir=str(tmp_path / "d"), token_ttl_hours=8),
            clock=lambda: now["t"],
        )
        try:
            token = hub.login("admin", "admin")["token"]
            now["t"] = T0 + timedelta(hours=7, minutes=59)
            hub.whoami(token)
            now["t"] = T0 + timedelta(hours=8, minutes=1)
            with pytest.raises(AuthError, match="expired"):
                hub.whoami(token)
        finally:
            hub.close()

    def test_only_admin_adds_users(self, hub):
        token = make_user(hub, "jab")
        with pytest.raises(AccessError):
            hub.add_user(token, "lg", "pw")

    def test_duplicate_user_conflicts(self, hub):
        admin = login(hub)
        hub.add_user(admin, "jab", "pw")
        with pytest.raises(ConflictError):
            hub.add_user(admin, "jab", "other")

    def test_bad_user_names_rejected(self, hub):
        admin = login(hub)
        for name in ("", "has space", "-leading", "a" * 99):
            with pytest.raises(ValidationError):
                hub.add_user(admin, name, "pw")

    def test_users_survive_restart(self, tmp_path):
        data = str(tmp_path / "data")
        hub = Hub(ServerConfig(data_dir=data))
        admin = login(hub)
        hub.add_user(admin, "jab", "secret", team="design")
        hub.close()

        reborn = Hub(ServerConfig(data_dir=data))
        try:
            session = reborn.login("jab", "secret")
            assert session["team"] == "design"
            assert session["is_admin"] is False
        finally:
            reborn.close()

    def test_password_file_stores_no_plaintext(self, hub):
        admin = login(hub)
        hub.add_user(admin, "jab", "hunter2hunter2")
        raw = (hub.data / "users.json").read_text()
        assert "hunter2" not in raw

    def test_logout_invalidates(self, hub):
        token = login(hub)
        hub.logout(token)
        with pytest.raises(AuthError):
            hub.whoami(token)


class TestElementFlow:
    def test_create_publish_search_across_users(self, hub):
        jab = make_user(hub, "jab", team="design")
        lg = make_user(hub, "lg")

        created = hub.create_element(jab, CREATE_2)["element"]
        assert created["id"] == "1001"
        assert created["creator"] == "jab"

        hub.publish_element(jab, created["id"])
        hits = hub.search(lg, {"terms": ["formage"], "scope": "shared"})["hits"]
        assert [h["id"] for h in hits] == ["1001"]

    def test_get_prefers_own_draft_over_shared_copy(self, hub):
        jab = make_user(hub, "jab")
        created = hub.create_element(jab, CREATE_1)["element"]
        hub.publish_element(jab, created["id"])
        assert hub.get_element(jab, created["id"])["scope"] == "personal"
        lg = make_user(hub, "lg")
        assert hub.get_element(lg, created["id"])["scope"] == "shared"

    def test_unpublished_drafts_stay_private(self, hub):
        jab = make_user(hub, "jab")
        lg = make_user(hub, "lg")
        draft = hub.create_element(lg, CREATE_2)["element"]

        with pytest.raises(NotFoundError):
            hub.get_element(jab, draft["id"])
        hits = hub.search(jab, {"terms": ["formage"], "scope": "both"})["hits"]
        assert hits == []
        exported = hub.export_elements(jab, scope="shared")
        assert draft["id"] not in exported

    def test_evaluate_and_rank(self, hub):
        jab = make_user(hub, "jab")
        lg = make_user(hub, "lg")
        created = hub.create_element(jab, CREATE_2)["element"]
        hub.publish_element(jab, created["id"])
        hub.evaluate_element(jab, created["id"], 5)
        result = hub.evaluate_element(lg, created["id"], 5)
        assert result["ranking"] == 10

    def test_concurrent_evaluations_sum_exactly(self, hub):
        jab = make_user(hub, "jab")
        created = hub.create_element(jab, CREATE_2)["element"]
        hub.publish_element(jab, created["id"])

        tokens = [make_user(hub, f"user{i}") for i in range(8)]
        scores = [1 + (i % 5) for i in range(40)]
        errors = []

        def evaluate(i, score):
            try:
                hub.evaluate_element(tokens[i % 8], created["id"], score)
            except Exception as exc:  # pragma: no cover - failure reporting
                errors.append(exc)

        threads = [
            threading.Thread(target=evaluate, args=(i, s)) for i, s in enumerate(scores)
        ]
        for t in threads:
            t.start()
        for t in threads:
            t.join()
        assert errors == []

        audit = hub.element_evaluations(jab, created["id"])
        assert len(audit) == 40
        assert sum(r["score"] for r in audit) == sum(scores)
        shared_copy = hub.get_element(make_user(hub, "reader"), created["id"])
        assert shared_copy["element"]["ranking"] == sum(scores)

    def test_derive_from_shared_parent(self, hub):
        jab = make_user(hub, "jab")
        lg = make_user(hub, "lg")
        created = hub.create_element(jab, CREATE_1)["element"]
        hub.publish_element(jab, created["id"])

        derived = hub.derive_element(
            lg, {"parent_id": created["id"], "changes": {"description": "raffinee"}}
        )["element"]
        assert derived["parent"] == created["id"]
        assert derived["version"] == "1.1"
        assert derived["creator"] == "lg"
        assert derived["published"] is False
        # The derivation is lg's draft; jab cannot see it.
        with pytest.raises(NotFoundError):
            hub.get_element(jab, derived["id"])

    def test_delete_shared_needs_creator_or_admin(self, hub):
        jab = make_user(hub, "jab")
        lg = make_user(hub, "lg")
        created = hub.create_element(jab, CREATE_1)["element"]
        hub.publish_element(jab, created["id"])

        with pytest.raises(AccessError):
            hub.delete_element(lg, created["id"], scope="shared")
        removed = hub.delete_element(jab, created["id"], scope="shared")
        assert removed["element"]["logical"] is False
        assert hub.search(lg, {"terms": ["ligne"], "scope": "shared"})["hits"] == []

    def test_use_records_context_from_situation(self, hub):
        jab = make_user(hub, "jab", team="design")
        created = hub.create_element(jab, CREATE_1)["element"]
        hub.publish_element(jab, created["id"])

        lg = make_user(hub, "lg")
        hub.open_situation(lg, "P1", "T2", place="atelier")
        used = hub.use_element(lg, created["id"])["element"]
        usage = used["context"]["usages"][-1]
        assert usage["task"] == "T2"
        assert usage["place"] == "atelier"
        assert usage["actor"]["user"] == "lg"


class TestDurability:
    def test_elements_evaluations_and_tasks_survive_restart(self, tmp_path):
        data = str(tmp_path / "data")
        hub = Hub(ServerConfig(data_dir=data))
        jab = make_user(hub, "jab")
        created = hub.create_element(jab, CREATE_2)["element"]
        hub.publish_element(jab, created["id"])
        hub.evaluate_element(jab, created["id"], 4)
        hub.import_tasks(jab, TASKS_XML)
        hub.add_solution(jab, "T1", created["id"])
        hub.step_task(jab, "T1", "start")
        hub.close()

        reborn = Hub(ServerConfig(data_dir=data))
        try:
            token = reborn.login("jab", "pw")["token"]
            element = reborn.get_element(token, created["id"])
            assert element["element"]["ranking"] in (0, 4)  # personal draft vs shared
            shared = reborn.search(token, {"terms": ["formage"], "scope": "shared"})
            assert shared["hits"][0]["element"]["ranking"] == 4
            task = reborn.get_task(token, "T1")
            assert task["state"] == "Searching"
            assert task["partial_solutions"] == [
                {"element_id": created["id"], "note": ""}
            ]
        finally:
            reborn.close()

    def test_restart_does_not_reissue_draft_ids(self, tmp_path):
        data = str(tmp_path / "data")
        hub = Hub(ServerConfig(data_dir=data))
        jab = make_user(hub, "jab")
        draft = hub.create_element(jab, CREATE_1)["element"]  # stays unpublished
        hub.close()

        reborn = Hub(ServerConfig(data_dir=data))
        try:
            lg = make_user(reborn, "lg")
            fresh = reborn.create_element(lg, CREATE_2)["element"]
            assert fresh["id"] != draft["id"]
        finally:
            reborn.close()


class TestPeerQuery:
    def test_answers_come_from_online_peers_published_work(self, hub):
        jab = make_user(hub, "jab")
        lg = make_user(hub, "lg")
        mine = hub.create_element(jab, CREATE_1)["element"]
        hub.publish_element(jab, mine["id"])
        theirs = hub.create_element(lg, CREATE_2)["element"]
        hub.publish_element(lg, theirs["id"])
        hub.create_element(lg, CREATE_2)  # unpublished: must never appear

        answer = hub.peer_query(jab, ["formage"])
        assert answer["peers"] == [
            {"agent_id": "agent-lg", "owner": "lg", "element_ids": [theirs["id"]]}
        ]

    def test_stale_peers_drop_out(self, tmp_path):
        now = {"t": T0}
        hub = Hub(
            ServerConfig(data_dir=str(tmp_path / "d"), staleness_timeout=30),
            clock=lambda: now["t"],
        )
        try:
            jab = make_user(hub, "jab")
            lg = make_user(hub, "lg")
            theirs = hub.create_element(lg, CREATE_2)["element"]
            hub.publish_element(lg, theirs["id"])
            assert hub.peer_query(jab, ["formage"])["peers"] != []
            now["t"] = T0 + timedelta(minutes=5)  # lg's agent goes silent
            assert hub.peer_query(jab, ["formage"])["peers"] == []
        finally:
            hub.close()


class TestTasksAndProjects:
    def test_import_step_to_solved(self, hub):
        token = make_user(hub, "jab")
        assert hub.import_tasks(token, TASKS_XML) == {"imported": ["T1"]}
        assert hub.task_events(token, "T1") == ["start"]
        hub.step_task(token, "T1", "start")
        hub.step_task(token, "T1", "knowledge_found")
        created = hub.create_element(token, CREATE_1)["element"]
        hub.add_solution(token, "T1", created["id"], note="applied directly")
        task = hub.step_task(token, "T1", "assessed_total")
        assert task["state"] == "Solved"
        assert [h["event"] for h in task["history"]] == [
            "start", "knowledge_found", "assessed_total",
        ]

    def test_reimport_conflicts(self, hub):
        token = make_user(hub, "jab")
        hub.import_tasks(token, TASKS_XML)
        with pytest.raises(ConflictError):
            hub.import_tasks(token, TASKS_XML)

    def test_projects_autoregister_from_tasks(self, hub):
        token = make_user(hub, "jab")
        hub.import_tasks(token, TASKS_XML)
        assert {"id": "P1", "title": "P1"} in hub.list_projects(token)

    def test_task_export_round_trip(self, hub):
        token = make_user(hub, "jab")
        hub.import_tasks(token, TASKS_XML)
        document = hub.export_tasks(token, project="P1")
        assert 'id="T1"' in document
        assert "customer order" in document

    def test_unknown_task(self, hub):
        token = make_user(hub, "jab")
        with pytest.raises(NotFoundError):
            hub.get_task(token, "T99")


class TestViewsAndInterchange:
    def test_tree_and_network_views(self, hub):
        jab = make_user(hub, "jab")
        parent = hub.create_element(jab, CREATE_1)["element"]
        hub.derive_element(
            jab, {"parent_id": parent["id"], "changes": {"description": "v2"}}
        )
        tree = hub.tree_view(jab, scope="personal")
        assert tree["node_count"] == 2
        assert tree["roots"][0]["children"][0]["version"] == "1.1"

        network = hub.network_view(jab, scope="personal")
        assert {n["id"] for n in network["nodes"]} == {"1001", "1002"}
        assert network["edges"] == [
            {"source": "1001", "target": "1002", "kind": "parent-child"}
        ]

    def test_network_view_accepts_id_selector(self, hub):
        jab = make_user(hub, "jab")
        parent = hub.create_element(jab, CREATE_1)["element"]
        hub.derive_element(
            jab, {"parent_id": parent["id"], "changes": {"description": "v2"}}
        )
        hub.create_element(jab, CREATE_2)

        # Selecting the child pulls in its one-hop lineage neighbor, and
        # nothing else: the unrelated third element stays out.
        network = hub.network_view(jab, scope="personal", selector=["1002"])
        assert {n["id"] for n in network["nodes"]} == {"1001", "1002"}

        unrelated = hub.network_view(jab, scope="personal", selector=["1003"])
        assert {n["id"] for n in unrelated["nodes"]} == {"1003"}
        assert unrelated["edges"] == []

    def test_import_into_personal_respects_allocator(self, hub):
        jab = make_user(hub, "jab")
        document = export_xml([make_element(element_id="1005", ranking=0)])
        assert hub.import_elements(jab, document, scope="personal")["imported"] == ["1005"]
        fresh = hub.create_element(jab, CREATE_1)["element"]
        assert int(fresh["id"]) > 1005

    def test_shared_import_is_admin_only(self, hub):
        jab = make_user(hub, "jab")
        document = export_xml([make_element(element_id="1005")])
        with pytest.raises(AccessError):
            hub.import_elements(jab, document, scope="shared")
        admin = login(hub)
        hub.import_elements(admin, document, scope="shared")
        assert hub.get_element(jab, "1005")["element"]["published"] is True

    def test_labels_table_shape(self, hub):
        table = hub.labels()
        assert table["novelty"][5] == "New to World"
        assert set(table) == {"explicitness", "novelty", "importance", "usability"}


class TestDirectory:
    def test_agents_come_online_at_login(self, hub):
        jab = make_user(hub, "jab")
        listing = hub.agents_listing(jab)
        entries = {(e["agent_id"], e["owner"]) for e in listing}
        assert ("agent-jab", "jab") in entries
        assert ("agent-admin", "admin") in entries
        assert all(e["status"] in ("idle", "busy") for e in listing)

    def test_tick_all_heartbeats_every_agent(self, hub):
        jab = make_user(hub, "jab")
        lg = make_user(hub, "lg")
        hub.create_element(jab, CREATE_1)
        hub.create_element(lg, CREATE_2)
        reports = hub.tick_all()
        assert set(reports) == {"admin", "jab", "lg"}
        assert all("heartbeat" in actions for actions in reports.values())
