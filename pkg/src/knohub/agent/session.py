"""What a personal agent needs from the shared server.

The protocol is deliberately narrow: everything an agent does remotely
fits these six calls, whether the link is an in-process hub handle or
an HTTP client. ``live`` is consulted before every shared-scope
operation; a dead link downgrades the agent to local-only behavior.
"""

from __future__ import annotations

from typing import Protocol, runtime_checkable

from ..core.model import ContextRecord, KnowledgeElement
from ..store.base import PublishResult, SearchHit, SearchQuery
from .messages import PeerAnswer


@runtime_checkable
class ServerLink(Protocol):
    @property
    def live(self) -> bool: ...

    def heartbeat(self, agent_id: str, owner: str, status: str) -> None: ...

    def shared_search(self, query: SearchQuery) -> list[SearchHit]: ...

    def publish_snapshot(self, element: KnowledgeElement) -> PublishResult: ...

    def evaluate(self, element_id: str, score: int) -> int: ...

    def record_shared_usage(
        self, element_id: str, context: ContextRecord
    ) -> KnowledgeElement: ...

    def peer_query(self, terms: tuple[str, ...]) -> list[PeerAnswer]: ...
