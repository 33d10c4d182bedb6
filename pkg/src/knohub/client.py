"""Client-side access to a hub: over HTTP or embedded in-process.

Both backends expose the same method surface, so the CLI (or any other
front end) never cares where the hub actually runs. Server errors come
back as the same exception classes the hub raises, rebuilt from the
{"error", "detail"} wire shape.
"""

from __future__ import annotations

from typing import Any

import httpx

from .errors import ServerUnavailable, error_by_name
from .server.service import Hub


class RemoteBackend:
    """Talks to a running server over HTTP."""

    def __init__(self, base_url: str, *, token: str | None = None, timeout: float = 30.0) -> None:
        self.base_url = base_url.rstrip("/")
        self.token = token
        self._http = httpx.Client(base_url=self.base_url, timeout=timeout)

    def close(self) -> None:
        self._http.close()

    # -- plumbing -------------------------------------------------------------

    def _headers(self, extra: dict[str, str] | None = None) -> dict[str, str]:
        headers = dict(extra or {})
        if self.token:
            headers["Authorization"] = f"Bearer {self.token}"
        return headers

    def _request(self, method: str, path: str, **kwargs: Any) -> httpx.Response:
        try:
            response = self._http.request(method, path, **kwargs)
        except httpx.HTTPError as exc:
            raise ServerUnavailable(f"cannot reach {self.base_url}: {exc}") from exc
        if response.status_code >= 400:
            try:
                body = response.json()
            except ValueError:
                raise ServerUnavailable(
                    f"server returned {response.status_code} with no error body"
                ) from None
            raise error_by_name(body.get("error", ""))(
                body.get("detail", f"server returned {response.status_code}")
            )
        return response

    def _get(self, path: str, **params: Any) -> Any:
        cleaned = {k: v for k, v in params.items() if v not in (None, [], ())}
        return self._request("GET", path, params=cleaned, headers=self._headers()).json()

    def _post(self, path: str, payload: dict | None = None) -> Any:
        return self._request("POST", path, json=payload or {}, headers=self._headers()).json()

    def _xml_get(self, path: str, **params: Any) -> str:
        cleaned = {k: v for k, v in params.items() if v not in (None, [], ())}
        return self._request("GET", path, params=cleaned, headers=self._headers()).text

    def _xml_post(self, path: str, document: str, **params: Any) -> Any:
        return self._request(
            "POST",
            path,
            params=params,
            content=document.encode("utf-8"),
            headers=self._headers({"Content-Type": "application/xml"}),
        ).json()

    # -- sessions and accounts --------------------------------------------------

    def login(self, user: str, password: str) -> dict:
        session = self._post("/api/login", {"user": user, "password": password})
        self.token = session["token"]
        return session

    def logout(self) -> None:
        self._post("/api/logout")
        self.token = None

    def whoami(self) -> dict:
        return self._get("/api/whoami")

    def add_user(self, name: str, password: str, *, team: str = "", is_admin: bool = False) -> dict:
        return self._post(
            "/api/users",
            {"name": name, "password": password, "team": team, "is_admin": is_admin},
        )

    def list_users(self) -> list:
        return self._get("/api/users")

    # -- elements ---------------------------------------------------------------

    def create_element(self, payload: dict) -> dict:
        return self._post("/api/elements", payload)

    def search(self, payload: dict) -> dict:
        return self._post("/api/search", payload)

    def get_element(self, element_id: str) -> dict:
        return self._get(f"/api/elements/{element_id}")

    def export_element(self, element_id: str) -> str:
        return self._request(
            "GET",
            f"/api/elements/{element_id}",
            headers=self._headers({"Accept": "application/xml"}),
        ).text

    def publish_element(self, element_id: str) -> dict:
        return self._post(f"/api/elements/{element_id}/publish")

    def evaluate_element(self, element_id: str, score: int) -> dict:
        return self._post(f"/api/elements/{element_id}/evaluate", {"score": score})

    def element_evaluations(self, element_id: str) -> list:
        return self._get(f"/api/elements/{element_id}/evaluations")

    def use_element(self, element_id: str) -> dict:
        return self._post(f"/api/elements/{element_id}/use")

    def derive_element(self, payload: dict) -> dict:
        parent_id = payload["parent_id"]
        return self._post(
            f"/api/elements/{parent_id}/derive",
            {
                "changes": payload.get("changes", {}),
                "new_generation": payload.get("new_generation", False),
            },
        )

    def delete_element(self, element_id: str, scope: str = "personal") -> dict:
        return self._request(
            "DELETE",
            f"/api/elements/{element_id}",
            params={"scope": scope},
            headers=self._headers(),
        ).json()

    # -- views and interchange -----------------------------------------------------

    def tree_view(self, scope: str = "shared", roots: list[str] | None = None) -> dict:
        return self._get("/api/views/tree", scope=scope, root=roots)

    def network_view(self, scope: str = "shared", selector: list[str] | None = None) -> dict:
        return self._get("/api/views/network", scope=scope, id=selector)

    def export_elements(self, scope: str = "shared") -> str:
        return self._xml_get("/api/kb/export", scope=scope)

    def import_elements(self, document: str, scope: str = "personal") -> dict:
        return self._xml_post("/api/kb/import", document, scope=scope)

    # -- agents -------------------------------------------------------------------

    def agents_listing(self) -> list:
        return self._get("/api/agents")

    def peer_query(self, terms: list[str]) -> dict:
        return self._post("/api/peer-query", {"terms": terms})

    # -- projects and tasks ---------------------------------------------------------

    def add_project(self, project_id: str, title: str = "") -> dict:
        return self._post("/api/projects", {"id": project_id, "title": title})

    def list_projects(self) -> list:
        return self._get("/api/projects")

    def import_tasks(self, document: str) -> dict:
        return self._xml_post("/api/tasks/import", document)

    def export_tasks(self, project: str | None = None) -> str:
        return self._xml_get("/api/tasks/export", project=project)

    def list_tasks(self, project: str | None = None) -> list:
        return self._get("/api/tasks", project=project)

    def get_task(self, task_id: str) -> dict:
        return self._get(f"/api/tasks/{task_id}")

    def task_events(self, task_id: str) -> list:
        return self._get(f"/api/tasks/{task_id}/events")

    def step_task(self, task_id: str, event: str) -> dict:
        return self._post(f"/api/tasks/{task_id}/step", {"event": event})

    def add_solution(self, task_id: str, element_id: str, note: str = "") -> dict:
        return self._post(
            f"/api/tasks/{task_id}/solution", {"element_id": element_id, "note": note}
        )

    # -- situations and metadata -----------------------------------------------------

    def open_situation(
        self,
        project: str,
        task: str,
        *,
        place: str = "",
        resources: list[str] | None = None,
    ) -> dict:
        return self._post(
            "/api/situation",
            {"project": project, "task": task, "place": place, "resources": resources or []},
        )

    def close_situation(self) -> dict:
        return self._request("DELETE", "/api/situation", headers=self._headers()).json()

    def active_situation(self) -> dict | None:
        return self._get("/api/situation")["situation"]

    def labels(self) -> dict:
        return self._get("/api/meta/labels")

    def task_machine(self) -> list:
        return self._get("/api/meta/task-events")


class EmbeddedBackend:
    """Runs the hub in-process; same surface as RemoteBackend.

    Hub methods take the session token as their first argument; the
    proxy injects the one obtained at login. A handful of methods whose
    hub signatures differ are written out explicitly.
    """

    _NO_TOKEN = {"labels"}

    def __init__(self, hub: Hub, *, owns_hub: bool = False) -> None:
        self.hub = hub
        self.token: str | None = None
        self._owns_hub = owns_hub

    def close(self) -> None:
        if self._owns_hub:
            self.hub.close()

    def login(self, user: str, password: str) -> dict:
        session = self.hub.login(user, password)
        self.token = session["token"]
        return session

    def logout(self) -> None:
        self.hub.logout(self.token or "")
        self.token = None

    def export_element(self, element_id: str) -> str:
        return self.hub.export_element(self.token, element_id)

    def derive_element(self, payload: dict) -> dict:
        return self.hub.derive_element(self.token, payload)

    def delete_element(self, element_id: str, scope: str = "personal") -> dict:
        return self.hub.delete_element(self.token, element_id, scope=scope)

    def evaluate_element(self, element_id: str, score: int) -> dict:
        return self.hub.evaluate_element(self.token, element_id, score)

    def add_solution(self, task_id: str, element_id: str, note: str = "") -> dict:
        return self.hub.add_solution(self.token, task_id, element_id, note)

    def open_situation(
        self,
        project: str,
        task: str,
        *,
        place: str = "",
        resources: list[str] | None = None,
    ) -> dict:
        return self.hub.open_situation(
            self.token, project, task, place=place, resources=resources or []
        )

    def task_machine(self) -> list:
        from .lifecycle import TASK_TRANSITIONS

        return [
            {"state": state.value, "event": event.value, "next": target.value}
            for (state, event), target in TASK_TRANSITIONS.items()
        ]

    def __getattr__(self, name: str):
        method = getattr(self.hub, name)  # AttributeError propagates naturally
        if name in self._NO_TOKEN:
            return method

        def call(*args: Any, **kwargs: Any) -> Any:
            return method(self.token, *args, **kwargs)

        return call
