"""Request/response envelopes exchanged with a personal agent."""

from __future__ import annotations

import itertools
import threading
from dataclasses import dataclass, field
from enum import Enum
from typing import Any

from ..core.model import ContextRecord


class RequestKind(str, Enum):
    CREATE = "create"
    SEARCH = "search"
    USE = "use"
    PUBLISH = "publish"
    EVALUATE = "evaluate"
    PEER_QUERY = "peer_query"


_sequence = itertools.count(1)
_sequence_lock = threading.Lock()


def next_request_id() -> str:
    with _sequence_lock:
        return f"req-{next(_sequence)}"


@dataclass(frozen=True)
class AgentRequest:
    id: str
    kind: RequestKind
    payload: dict[str, Any]
    context: ContextRecord
    context_captured: bool = True  # False: no working situation was open


@dataclass(frozen=True)
class AgentResponse:
    request_id: str
    status: str  # ok | error
    payload: dict[str, Any] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.status == "ok"


@dataclass(frozen=True)
class PeerAnswer:
    """One peer's contribution to a fan-out query."""

    agent_id: str
    owner: str
    element_ids: tuple[str, ...]


@dataclass(frozen=True)
class AgentReport:
    """What a background tick actually did."""

    actions: tuple[str, ...] = ()

    def __bool__(self) -> bool:
        return bool(self.actions)
