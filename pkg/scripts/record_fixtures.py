#!/usr/bin/env python3
"""Record protocol fixtures for the web UI's contract tests.

Boots a hub in a temp directory, drives it through the HTTP app (no
sockets), and saves the JSON responses the UI is tested against into
frontend/fixtures/. Re-run after any protocol change, then re-run the
frontend tests.
"""
from __future__ import annotations

import json
import sys
import tempfile
from pathlib import Path

from fastapi.testclient import TestClient

from knohub.server import Hub, ServerConfig
from knohub.server.http import create_app

OUT = Path(__file__).resolve().parent.parent / "frontend" / "fixtures"

TASKS_XML = """<?xml version="1.0" encoding="utf-8"?>
<Tasks>
  <Task id="T1" project="P-die" title="reception of order" innovative="false" assignee="secome">
    <Input>customer order</Input>
  </Task>
  <Task id="T2" project="P-die" title="pre-study of feasibility" innovative="false" assignee="secome">
    <Input>part geometry</Input>
  </Task>
  <Task id="T3" project="P-die" title="unfolding of the part" innovative="false" assignee="secome">
    <Input>part geometry</Input>
  </Task>
  <Task id="T4" project="P-die" title="estimation of power and dimensions" innovative="false" assignee="secome">
    <Input>unfolded part</Input>
  </Task>
  <Task id="T5" project="P-die" title="technical solution for the rolling feature" innovative="true" assignee="secome">
    <Input>rolling feature geometry</Input>
  </Task>
  <Task id="T6" project="P-die" title="detailed study of the die layout" innovative="true" assignee="secome">
    <Input>forming steps</Input>
  </Task>
  <Task id="T7" project="P-die" title="choice of press and tooling" innovative="false" assignee="secome">
    <Input>press catalogue</Input>
  </Task>
</Tasks>
"""


class Recorder:
    def __init__(self, client: TestClient):
        self.client = client
        self.tokens: dict[str, str] = {}
        self.saved: list[str] = []

    def login(self, user: str, password: str) -> None:
        r = self.client.post("/api/login", json={"user": user, "password": password})
        r.raise_for_status()
        self.tokens[user] = r.json()["token"]

    def call(self, user: str, method: str, path: str, **kw):
        headers = kw.pop("headers", {})
        if user:
            headers["Authorization"] = f"Bearer {self.tokens[user]}"
        r = self.client.request(method, path, headers=headers, **kw)
        return r

    def ok(self, user: str, method: str, path: str, **kw) -> dict | list:
        r = self.call(user, method, path, **kw)
        if r.status_code >= 400:
            raise SystemExit(f"{method} {path} -> {r.status_code}: {r.text}")
        return r.json()

    def save(self, name: str, payload) -> None:
        OUT.mkdir(parents=True, exist_ok=True)
        (OUT / f"{name}.json").write_text(json.dumps(payload, indent=2) + "\n")
        self.saved.append(name)


def element_payload(title, kind, keywords, description, slug, content, links=None):
    body = {
        "title": title,
        "kind": kind,
        "keywords": keywords,
        "description": description,
        "source": "Secome",
        "slug": slug,
        "content": content,
    }
    if links:
        body["links"] = links
    return body


def main() -> int:
    tmp = tempfile.TemporaryDirectory(prefix="fixture-hub-")
    hub = Hub(ServerConfig(data_dir=Path(tmp.name)))
    client = TestClient(create_app(hub))
    rec = Recorder(client)

    # --- accounts ------------------------------------------------------
    rec.login("admin", "admin")
    rec.ok("admin", "POST", "/api/users",
           json={"name": "secome", "password": "forming", "team": "design"})
    rec.ok("admin", "POST", "/api/users",
           json={"name": "vtissier", "password": "plieuse", "team": "methods"})
    login_resp = client.post("/api/login",
                             json={"user": "vtissier", "password": "plieuse"})
    rec.save("login", login_resp.json())
    rec.tokens["vtissier"] = login_resp.json()["token"]
    rec.login("secome", "forming")

    # --- project, tasks, situation -------------------------------------
    rec.ok("secome", "POST", "/api/projects",
           json={"id": "P-die", "title": "Progressive die for a sheet metal part"})
    rec.ok("secome", "POST", "/api/tasks/import",
           content=TASKS_XML, headers={"Content-Type": "application/xml"})
    situation = rec.ok("secome", "POST", "/api/situation",
                       json={"project": "P-die", "task": "T4",
                             "place": "design office", "resources": ["CATIA"]})
    rec.save("situation", situation)

    # --- knowledge elements --------------------------------------------
    e1001 = rec.ok("secome", "POST", "/api/elements", json=element_payload(
        "definition de ligne neutre", "Procedure",
        ["formage", "tole", "ligne neutre"],
        "position de la fibre neutre pour le depliage",
        "define_neutral_line",
        {"explicitness": 2, "novelty": 3, "importance": 4, "usability": 4},
    ))["element"]
    e1002 = rec.ok("secome", "POST", f"/api/elements/{e1001['id']}/derive", json={
        "parent_id": e1001["id"],
        "changes": {"description": "rayon minimal ajuste pour tole epaisse",
                    "keywords": ["formage", "tole", "rayon"]},
    })["element"]
    e1003 = rec.ok("secome", "POST", "/api/elements", json=element_payload(
        "arrangement de etape de formage", "Design experience",
        ["etape", "formage", "design experience", "ferrure"],
        "comment definir les etapes de formage!",
        "layout_forming_step",
        {"explicitness": 2, "novelty": 3, "importance": 4, "usability": 4},
        links=[{"target": e1001["id"], "kind": "association"}],
    ))["element"]
    draft = rec.ok("secome", "POST", "/api/elements", json=element_payload(
        "butee reglable pour presse", "Idea",
        ["butee", "presse"],
        "esquisse d'une butee reglable, a valider",
        "adjustable_stop",
        {"explicitness": 1, "novelty": 4, "importance": 2, "usability": 1},
    ))["element"]

    for eid in (e1001["id"], e1002["id"], e1003["id"]):
        rec.ok("secome", "POST", f"/api/elements/{eid}/publish")

    e1005 = rec.ok("vtissier", "POST", "/api/elements", json=element_payload(
        "gamme de pliage standard", "Procedure",
        ["pliage", "gamme"],
        "sequence de pliage pour ferrures minces",
        "bending_sequence",
        {"explicitness": 3, "novelty": 2, "importance": 3, "usability": 4},
        links=[{"target": e1003["id"], "kind": "dependency"}],
    ))["element"]
    rec.ok("vtissier", "POST", f"/api/elements/{e1005['id']}/publish")

    rec.ok("vtissier", "POST", f"/api/elements/{e1001['id']}/evaluate", json={"score": 4})
    rec.ok("admin", "POST", f"/api/elements/{e1001['id']}/evaluate", json={"score": 5})
    rec.ok("vtissier", "POST", f"/api/elements/{e1002['id']}/evaluate", json={"score": 3})
    use = rec.ok("vtissier", "POST", f"/api/elements/{e1001['id']}/use")
    rec.save("use", use)

    # --- tasks into every state ----------------------------------------
    def step(task, event):
        return rec.ok("secome", "POST", f"/api/tasks/{task}/step", json={"event": event})

    def solution(task, element_id, note=None):
        body = {"element_id": element_id}
        if note:
            body["note"] = note
        return rec.ok("secome", "POST", f"/api/tasks/{task}/solution", json=body)

    step("T2", "start")                                   # Searching
    step("T3", "start"); step("T3", "knowledge_found")    # Using
    step("T4", "start"); step("T4", "knowledge_not_found")  # Creating
    step("T5", "start"); step("T5", "knowledge_found")
    solution("T5", e1001["id"], "covers the straight sections")
    step("T5", "assessed_partial")                        # Integrating
    step("T6", "start"); step("T6", "knowledge_not_found")
    solution("T6", e1002["id"], "derived radius rule closes the gap")
    solved = step("T6", "assessed_total")                 # Solved
    step("T7", "start"); step("T7", "knowledge_found")
    solution("T7", e1005["id"])
    step("T7", "assessed_none")                           # Reformulating
    rec.save("task_solved", solved)

    # --- recorded views --------------------------------------------------
    rec.save("whoami", rec.ok("secome", "GET", "/api/whoami"))
    rec.save("users", rec.ok("admin", "GET", "/api/users"))
    rec.save("labels", rec.ok("secome", "GET", "/api/meta/labels"))
    rec.save("task_events", rec.ok("secome", "GET", "/api/meta/task-events"))
    rec.save("projects", rec.ok("secome", "GET", "/api/projects"))
    rec.save("tasks", rec.ok("secome", "GET", "/api/tasks", params={"project": "P-die"}))
    rec.save("task_legal_events", rec.ok("secome", "GET", "/api/tasks/T3/events"))
    rec.save("element", rec.ok("vtissier", "GET", f"/api/elements/{e1001['id']}"))
    rec.save("element_draft", rec.ok("secome", "GET", f"/api/elements/{draft['id']}"))
    rec.save("evaluations",
             rec.ok("secome", "GET", f"/api/elements/{e1001['id']}/evaluations"))
    rec.save("search", rec.ok("vtissier", "POST", "/api/search",
                              json={"terms": ["formage"], "scope": "shared"}))
    rec.save("tree", rec.ok("vtissier", "GET", "/api/views/tree",
                            params={"scope": "shared"}))
    rec.save("network", rec.ok("vtissier", "GET", "/api/views/network",
                               params={"scope": "shared"}))
    rec.save("agents", rec.ok("admin", "GET", "/api/agents"))
    rec.save("peers", rec.ok("vtissier", "POST", "/api/peer-query",
                             json={"terms": ["formage"]}))

    # --- error envelopes -------------------------------------------------
    bad_auth = client.get("/api/views/tree",
                          headers={"Authorization": "Bearer nonsense"})
    illegal = rec.call("secome", "POST", "/api/tasks/T6/step", json={"event": "start"})
    unknown = rec.call("secome", "POST", "/api/tasks/T6/step", json={"event": "frobnicate"})
    rec.save("errors", {
        "auth": {"status": bad_auth.status_code, "body": bad_auth.json()},
        "transition": {"status": illegal.status_code, "body": illegal.json()},
        "validation": {"status": unknown.status_code, "body": unknown.json()},
    })

    hub.close()
    tmp.cleanup()
    print(f"recorded {len(rec.saved)} fixtures into {OUT}")
    for name in rec.saved:
        print(f"  {name}.json")
    return 0


if __name__ == "__main__":
    sys.exit(main())
