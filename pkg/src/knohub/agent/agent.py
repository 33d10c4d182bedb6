"""The personal knowledge agent: one worker per user.

Every owner request flows through a bounded FIFO queue into a single
worker thread, so commands execute strictly in submission order and the
personal base never sees concurrent writers. The context snapshot is
taken at submission time (that is when the owner acted), not when the
worker gets around to the request.

Without a live server link the agent degrades rather than fails:
searches answer from the personal base with a degraded flag, publishes
queue up for retry on a later background tick.
"""

from __future__ import annotations

import queue
import threading
from concurrent.futures import Future
from dataclasses import replace
from datetime import timedelta
from typing import Any

from ..core.model import Link, utc_now
from ..core.ops import new_element
from ..errors import (
    BackpressureError,
    KnohubError,
    ServerUnavailable,
    StateError,
    ValidationError,
    error_by_name,
)
from ..lifecycle.situations import SituationRegistry
from ..store.base import DimensionFilter, KnowledgeBase, SearchHit, SearchQuery, id_sort_key
from ..store.serde import element_to_json
from .messages import AgentReport, AgentRequest, AgentResponse, RequestKind, next_request_id
from .session import ServerLink

_STOP = object()

IDLE, BUSY, OFFLINE = "idle", "busy", "offline"


def _query_from_payload(payload: dict[str, Any]) -> SearchQuery:
    return SearchQuery(
        terms=tuple(payload.get("terms", ())),
        kind=payload.get("kind"),
        dimensions=tuple(
            DimensionFilter(f["kind"], f.get("lo", 1), f.get("hi", 5))
            for f in payload.get("dimensions", ())
        ),
        include_unpublished=payload.get("include_unpublished", True),
    )


def _hit_json(hit: SearchHit) -> dict[str, Any]:
    return {"id": hit.id, "score": hit.score, "element": element_to_json(hit.element)}


class PersonalAgent:
    def __init__(
        self,
        owner: str,
        personal_kb: KnowledgeBase,
        *,
        team: str = "",
        link: ServerLink | None = None,
        situations: SituationRegistry | None = None,
        agent_id: str | None = None,
        queue_bound: int = 1024,
        retention_days: int = 365,
    ) -> None:
        self.owner = owner
        self.team = team
        self.kb = personal_kb
        self.link = link
        self.situations = situations if situations is not None else SituationRegistry()
        self.agent_id = agent_id or f"agent-{owner}"
        self.retention_days = retention_days
        self.queue_bound = queue_bound
        self._queue: queue.Queue = queue.Queue(maxsize=queue_bound)
        self._pending_lock = threading.Lock()
        self._pending_publishes: list[str] = []
        self._gc_flagged: set[str] = set()
        self._kb_seen = personal_kb.mutation_count
        self._summary: dict[str, Any] = {}
        self._busy = False
        self.processed_log: list[str] = []
        self._worker = threading.Thread(
            target=self._run, name=f"{self.agent_id}-worker", daemon=True
        )
        self._worker.start()

    # -- owner API ----------------------------------------------------------

    @property
    def status(self) -> str:
        if self.link is None or not self.link.live:
            return OFFLINE
        return BUSY if self._busy else IDLE

    def submit_async(
        self, kind: RequestKind | str, payload: dict[str, Any] | None = None
    ) -> tuple[AgentRequest, "Future[AgentResponse]"]:
        """Enqueue a request; the context snapshot is taken here, at submission."""
        context, captured = self.situations.capture(self.owner, team=self.team)
        request = AgentRequest(
            id=next_request_id(),
            kind=RequestKind(kind),
            payload=dict(payload or {}),
            context=context,
            context_captured=captured,
        )
        future: Future[AgentResponse] = Future()
        try:
            self._queue.put_nowait((request, future))
        except queue.Full:
            raise BackpressureError(
                f"agent {self.agent_id} queue is full ({self.queue_bound}); retry later"
            ) from None
        return request, future

    def submit(
        self,
        kind: RequestKind | str,
        payload: dict[str, Any] | None = None,
        *,
        timeout: float = 30.0,
        raise_on_error: bool = True,
    ) -> AgentResponse:
        _, future = self.submit_async(kind, payload)
        response = future.result(timeout=timeout)
        if raise_on_error and not response.ok:
            raise error_by_name(response.payload.get("error", ""))(
                response.payload.get("detail", "agent request failed")
            )
        return response

    def stop(self) -> None:
        self._queue.put(_STOP)
        self._worker.join(timeout=10)

    # -- worker -------------------------------------------------------------

    def _run(self) -> None:
        while True:
            item = self._queue.get()
            if item is _STOP:
                break
            request, future = item
            self._busy = True
            try:
                response = self._handle(request)
            except KnohubError as err:
                response = AgentResponse(
                    request.id,
                    "error",
                    {"error": type(err).__name__, "detail": str(err)},
                )
            except Exception as err:  # pragma: no cover - defensive
                response = AgentResponse(
                    request.id, "error", {"error": "KnohubError", "detail": repr(err)}
                )
            finally:
                self._busy = False
            self.processed_log.append(request.id)
            future.set_result(response)

    def _handle(self, request: AgentRequest) -> AgentResponse:
        handler = {
            RequestKind.CREATE: self._do_create,
            RequestKind.SEARCH: self._do_search,
            RequestKind.USE: self._do_use,
            RequestKind.PUBLISH: self._do_publish,
            RequestKind.EVALUATE: self._do_evaluate,
            RequestKind.PEER_QUERY: self._do_peer_query,
        }[request.kind]
        return handler(request)

    def _link_live(self) -> bool:
        return self.link is not None and self.link.live

    def _do_create(self, request: AgentRequest) -> AgentResponse:
        payload = request.payload
        element = new_element(
            title=payload["title"],
            kind=payload.get("kind", ""),
            keywords=tuple(payload.get("keywords", ())),
            description=payload.get("description", ""),
            creator=self.owner,
            source=payload.get("source", ""),
            content=payload["content"],
            creation_context=request.context,
            ids=self.kb.ids,
            slug=payload.get("slug"),
        )
        if payload.get("links"):
            element = replace(
                element,
                links=tuple(Link(l["target"], l["kind"]) for l in payload["links"]),
            )
        self.kb.store(element)
        return AgentResponse(
            request.id,
            "ok",
            {
                "element": element_to_json(element),
                "context_captured": request.context_captured,
            },
        )

    def _do_search(self, request: AgentRequest) -> AgentResponse:
        payload = request.payload
        scope = payload.get("scope", "both")
        if scope not in ("personal", "shared", "both"):
            raise ValidationError(f"unknown search scope {scope!r}")
        query = _query_from_payload(payload)
        degraded = False
        merged: dict[str, SearchHit] = {}
        if scope in ("personal", "both"):
            for hit in self.kb.search(query):
                merged[hit.id] = hit
        if scope in ("shared", "both"):
            if self._link_live():
                # Shared copies win id collisions: their ranking is the
                # organization-wide one.
                for hit in self.link.shared_search(query):
                    merged[hit.id] = hit
            else:
                degraded = True
        hits = sorted(merged.values(), key=lambda h: (-h.score, id_sort_key(h.id)))
        return AgentResponse(
            request.id,
            "ok",
            {"hits": [_hit_json(h) for h in hits], "degraded": degraded, "scope": scope},
        )

    def _do_use(self, request: AgentRequest) -> AgentResponse:
        element_id = request.payload["element_id"]
        if element_id in self.kb:
            updated = self.kb.record_usage(element_id, request.context)
            where = "personal"
        elif self._link_live():
            updated = self.link.record_shared_usage(element_id, request.context)
            where = "shared"
        else:
            return AgentResponse(
                request.id,
                "error",
                {
                    "error": "ServerUnavailable",
                    "detail": f"element {element_id} is not local and the server "
                    "link is down",
                    "degraded": True,
                },
            )
        return AgentResponse(
            request.id,
            "ok",
            {
                "element": element_to_json(updated),
                "scope": where,
                "context_captured": request.context_captured,
            },
        )

    def _publish_now(self, element_id: str) -> dict[str, Any]:
        draft = self.kb.get(element_id)
        if not draft.logical:
            raise StateError(f"element {element_id} is logically deleted; cannot publish")
        result = self.link.publish_snapshot(draft)
        if not draft.published:
            self.kb.replace(replace(draft, published=True))
        with self._pending_lock:
            if element_id in self._pending_publishes:
                self._pending_publishes.remove(element_id)
        return {
            "published": result.element_id,
            "version": result.version,
            "duplicate": result.duplicate,
        }

    def _do_publish(self, request: AgentRequest) -> AgentResponse:
        element_id = request.payload["element_id"]
        if not self._link_live():
            self.kb.get(element_id)  # fail fast on unknown ids
            with self._pending_lock:
                if element_id not in self._pending_publishes:
                    self._pending_publishes.append(element_id)
            return AgentResponse(
                request.id, "ok", {"queued": True, "degraded": True, "element_id": element_id}
            )
        return AgentResponse(request.id, "ok", self._publish_now(element_id))

    def _do_evaluate(self, request: AgentRequest) -> AgentResponse:
        if not self._link_live():
            raise ServerUnavailable("evaluation needs the shared server")
        ranking = self.link.evaluate(
            request.payload["element_id"], request.payload["score"]
        )
        return AgentResponse(
            request.id, "ok", {"element_id": request.payload["element_id"], "ranking": ranking}
        )

    def _do_peer_query(self, request: AgentRequest) -> AgentResponse:
        if not self._link_live():
            raise ServerUnavailable("peer query needs the shared server")
        answers = self.link.peer_query(tuple(request.payload.get("terms", ())))
        return AgentResponse(
            request.id,
            "ok",
            {
                "peers": [
                    {
                        "agent_id": a.agent_id,
                        "owner": a.owner,
                        "element_ids": list(a.element_ids),
                    }
                    for a in answers
                ]
            },
        )

    # -- background supporting activities ------------------------------------

    def background_tick(self) -> AgentReport:
        actions: list[str] = []
        if self._link_live():
            try:
                self.link.heartbeat(self.agent_id, self.owner, self.status)
                actions.append("heartbeat")
            except Exception as err:
                actions.append(f"heartbeat failed: {err}")
            with self._pending_lock:
                pending = list(self._pending_publishes)
            for element_id in pending:
                try:
                    outcome = self._publish_now(element_id)
                    suffix = " (duplicate)" if outcome["duplicate"] else ""
                    actions.append(f"published {element_id}{suffix}")
                except Exception as err:
                    actions.append(f"publish retry failed {element_id}: {err}")
        current = self.kb.mutation_count
        if current != self._kb_seen:
            self._kb_seen = current
            self._summary = self._reindex()
            actions.append("reindex")
        cutoff = (utc_now() - timedelta(days=self.retention_days)).date()
        for element in self.kb.elements():
            if (
                not element.logical
                and element.created_date < cutoff
                and element.id not in self._gc_flagged
            ):
                self._gc_flagged.add(element.id)
                actions.append(f"gc candidate {element.id}")
        return AgentReport(actions=tuple(actions))

    def _reindex(self) -> dict[str, Any]:
        elements = self.kb.elements()
        by_kind: dict[str, int] = {}
        for element in elements:
            by_kind[element.kind] = by_kind.get(element.kind, 0) + 1
        return {
            "elements": len(elements),
            "by_kind": by_kind,
            "pending_publishes": len(self._pending_publishes),
        }

    @property
    def summary(self) -> dict[str, Any]:
        return dict(self._summary)

