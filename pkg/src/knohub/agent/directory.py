"""Directory of personal agents known to the shared server.

Agents report in by heartbeat; an entry whose last heartbeat is older
than the staleness timeout is listed offline no matter what status it
last claimed. The clock is injectable so staleness is testable without
sleeping.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass, replace
from datetime import datetime, timedelta

from ..core.model import utc_now

OFFLINE = "offline"


@dataclass(frozen=True)
class AgentDirectoryEntry:
    agent_id: str
    owner: str
    status: str  # idle | busy | offline
    last_heartbeat: datetime


class AgentDirectory:
    def __init__(self, *, staleness_timeout: float = 30.0, clock=utc_now) -> None:
        self.staleness_timeout = staleness_timeout
        self._clock = clock
        self._lock = threading.Lock()
        self._entries: dict[str, AgentDirectoryEntry] = {}

    def heartbeat(self, agent_id: str, owner: str, status: str = "idle") -> None:
        with self._lock:
            self._entries[agent_id] = AgentDirectoryEntry(
                agent_id=agent_id, owner=owner, status=status, last_heartbeat=self._clock()
            )

    def _effective(self, entry: AgentDirectoryEntry) -> AgentDirectoryEntry:
        cutoff = self._clock() - timedelta(seconds=self.staleness_timeout)
        if entry.last_heartbeat < cutoff:
            return replace(entry, status=OFFLINE)
        return entry

    def get(self, agent_id: str) -> AgentDirectoryEntry | None:
        with self._lock:
            entry = self._entries.get(agent_id)
        return self._effective(entry) if entry else None

    def listing(self) -> tuple[AgentDirectoryEntry, ...]:
        with self._lock:
            entries = list(self._entries.values())
        return tuple(sorted(
            (self._effective(e) for e in entries), key=lambda e: e.agent_id
        ))

    def online_owners(self) -> dict[str, str]:
        """owner -> agent id, for every agent not currently offline."""
        return {
            entry.owner: entry.agent_id
            for entry in self.listing()
            if entry.status != OFFLINE
        }
