"""HTTP front end: a thin JSON/XML skin over the hub.

Every route under /api except /api/login requires a bearer token; the
hub re-checks the token on each call, so this layer holds no authority
of its own. Errors surface as {"error", "detail"} with the status the
error class carries.
"""

from __future__ import annotations

from pathlib import Path
from typing import Any

from fastapi import Body, Depends, FastAPI, Header, Query, Request
from fastapi.responses import JSONResponse, Response
from fastapi.staticfiles import StaticFiles

from ..errors import AuthError, KnohubError
from ..lifecycle import TASK_TRANSITIONS
from .service import Hub

XML_TYPES = ("application/xml", "text/xml")


def _xml_response(document: str) -> Response:
    return Response(content=document, media_type="application/xml")


def create_app(hub: Hub, *, static_dir: str | Path | None = None) -> FastAPI:
    app = FastAPI(title="knohub", docs_url=None, redoc_url=None, openapi_url=None)

    @app.exception_handler(KnohubError)
    async def knohub_error(request: Request, err: KnohubError) -> JSONResponse:
        return JSONResponse(
            status_code=err.http_status,
            content={"error": type(err).__name__, "detail": str(err)},
        )

    def bearer(authorization: str = Header(default="")) -> str:
        scheme, _, token = authorization.partition(" ")
        if scheme.lower() != "bearer" or not token:
            raise AuthError("expected an Authorization: Bearer <token> header")
        hub.resolve(token)
        return token

    # -- sessions and accounts ------------------------------------------------

    @app.post("/api/login")
    def login(payload: dict = Body(...)) -> dict:
        return hub.login(payload.get("user", ""), payload.get("password", ""))

    @app.post("/api/logout")
    def logout(token: str = Depends(bearer)) -> dict:
        hub.logout(token)
        return {"ok": True}

    @app.get("/api/whoami")
    def whoami(token: str = Depends(bearer)) -> dict:
        return hub.whoami(token)

    @app.get("/api/users")
    def list_users(token: str = Depends(bearer)) -> list:
        return hub.list_users(token)

    @app.post("/api/users")
    def add_user(payload: dict = Body(...), token: str = Depends(bearer)) -> dict:
        return hub.add_user(
            token,
            payload.get("name", ""),
            payload.get("password", ""),
            team=payload.get("team", ""),
            is_admin=bool(payload.get("is_admin", False)),
        )

    # -- knowledge elements -----------------------------------------------------

    @app.post("/api/elements")
    def create_element(payload: dict = Body(...), token: str = Depends(bearer)) -> dict:
        return hub.create_element(token, payload)

    @app.post("/api/search")
    def search(payload: dict = Body(...), token: str = Depends(bearer)) -> dict:
        return hub.search(token, payload)

    @app.get("/api/elements/{element_id}")
    def get_element(
        element_id: str,
        token: str = Depends(bearer),
        accept: str = Header(default="application/json"),
    ) -> Any:
        if any(kind in accept for kind in XML_TYPES):
            return _xml_response(hub.export_element(token, element_id))
        return hub.get_element(token, element_id)

    @app.post("/api/elements/{element_id}/publish")
    def publish_element(element_id: str, token: str = Depends(bearer)) -> dict:
        return hub.publish_element(token, element_id)

    @app.post("/api/elements/{element_id}/evaluate")
    def evaluate_element(
        element_id: str, payload: dict = Body(...), token: str = Depends(bearer)
    ) -> dict:
        return hub.evaluate_element(token, element_id, payload.get("score"))

    @app.get("/api/elements/{element_id}/evaluations")
    def element_evaluations(element_id: str, token: str = Depends(bearer)) -> list:
        return hub.element_evaluations(token, element_id)

    @app.post("/api/elements/{element_id}/use")
    def use_element(element_id: str, token: str = Depends(bearer)) -> dict:
        return hub.use_element(token, element_id)

    @app.post("/api/elements/{element_id}/derive")
    def derive_element(
        element_id: str, payload: dict = Body(...), token: str = Depends(bearer)
    ) -> dict:
        return hub.derive_element(
            token,
            {
                "parent_id": element_id,
                "changes": payload.get("changes", {}),
                "new_generation": payload.get("new_generation", False),
            },
        )

    @app.delete("/api/elements/{element_id}")
    def delete_element(
        element_id: str,
        scope: str = Query(default="personal"),
        token: str = Depends(bearer),
    ) -> dict:
        return hub.delete_element(token, element_id, scope=scope)

    # -- views and interchange ----------------------------------------------------

    @app.get("/api/views/tree")
    def tree_view(
        scope: str = Query(default="shared"),
        root: list[str] = Query(default=()),
        token: str = Depends(bearer),
    ) -> dict:
        return hub.tree_view(token, scope=scope, roots=list(root) or None)

    @app.get("/api/views/network")
    def network_view(
        scope: str = Query(default="shared"),
        id: list[str] = Query(default=()),
        token: str = Depends(bearer),
    ) -> dict:
        return hub.network_view(token, scope=scope, selector=list(id) or None)

    @app.get("/api/kb/export")
    def export_elements(
        scope: str = Query(default="shared"), token: str = Depends(bearer)
    ) -> Response:
        return _xml_response(hub.export_elements(token, scope=scope))

    @app.post("/api/kb/import")
    async def import_elements(
        request: Request,
        scope: str = Query(default="personal"),
        token: str = Depends(bearer),
    ) -> dict:
        document = (await request.body()).decode("utf-8")
        return hub.import_elements(token, document, scope=scope)

    # -- agents ---------------------------------------------------------------

    @app.get("/api/agents")
    def agents(token: str = Depends(bearer)) -> list:
        return hub.agents_listing(token)

    @app.post("/api/peer-query")
    def peer_query(payload: dict = Body(...), token: str = Depends(bearer)) -> dict:
        return hub.peer_query(token, payload.get("terms", []))

    # -- projects and tasks -----------------------------------------------------

    @app.get("/api/projects")
    def list_projects(token: str = Depends(bearer)) -> list:
        return hub.list_projects(token)

    @app.post("/api/projects")
    def add_project(payload: dict = Body(...), token: str = Depends(bearer)) -> dict:
        return hub.add_project(token, payload.get("id", ""), payload.get("title", ""))

    @app.get("/api/tasks")
    def list_tasks(
        project: str | None = Query(default=None), token: str = Depends(bearer)
    ) -> list:
        return hub.list_tasks(token, project=project)

    @app.post("/api/tasks/import")
    async def import_tasks(request: Request, token: str = Depends(bearer)) -> dict:
        document = (await request.body()).decode("utf-8")
        return hub.import_tasks(token, document)

    @app.get("/api/tasks/export")
    def export_tasks(
        project: str | None = Query(default=None), token: str = Depends(bearer)
    ) -> Response:
        return _xml_response(hub.export_tasks(token, project=project))

    @app.get("/api/tasks/{task_id}")
    def get_task(task_id: str, token: str = Depends(bearer)) -> dict:
        return hub.get_task(token, task_id)

    @app.get("/api/tasks/{task_id}/events")
    def task_events(task_id: str, token: str = Depends(bearer)) -> list:
        return hub.task_events(token, task_id)

    @app.post("/api/tasks/{task_id}/step")
    def step_task(
        task_id: str, payload: dict = Body(...), token: str = Depends(bearer)
    ) -> dict:
        return hub.step_task(token, task_id, payload.get("event", ""))

    @app.post("/api/tasks/{task_id}/solution")
    def add_solution(
        task_id: str, payload: dict = Body(...), token: str = Depends(bearer)
    ) -> dict:
        return hub.add_solution(
            token, task_id, payload.get("element_id", ""), payload.get("note", "")
        )

    # -- working situations -------------------------------------------------------

    @app.get("/api/situation")
    def active_situation(token: str = Depends(bearer)) -> dict:
        return {"situation": hub.active_situation(token)}

    @app.post("/api/situation")
    def open_situation(payload: dict = Body(...), token: str = Depends(bearer)) -> dict:
        return hub.open_situation(
            token,
            payload.get("project", ""),
            payload.get("task", ""),
            place=payload.get("place", ""),
            resources=payload.get("resources", []),
        )

    @app.delete("/api/situation")
    def close_situation(token: str = Depends(bearer)) -> dict:
        return hub.close_situation(token)

    # -- metadata ----------------------------------------------------------------

    @app.get("/api/meta/labels")
    def labels(token: str = Depends(bearer)) -> dict:
        return hub.labels()

    @app.get("/api/meta/task-events")
    def task_machine(token: str = Depends(bearer)) -> list:
        return [
            {"state": state.value, "event": event.value, "next": target.value}
            for (state, event), target in TASK_TRANSITIONS.items()
        ]

    @app.get("/health")
    def health() -> dict:
        return {"status": "ok"}

    if static_dir is not None and Path(static_dir).is_dir():
        app.mount("/", StaticFiles(directory=str(static_dir), html=True), name="ui")

    return app
