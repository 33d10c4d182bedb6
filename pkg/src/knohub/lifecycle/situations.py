"""Working situations: the frame context is auto-captured from.

Opening a situation binds a user to (project, task, place, resources);
creating or using knowledge while it is open stamps that frame into the
element's context records. A user has at most one active situation.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from datetime import datetime

from ..core.model import Actor, ContextRecord, utc_now


@dataclass(frozen=True)
class WorkingSituation:
    id: str
    project: str
    task: str
    user: str
    opened: datetime
    place: str = ""
    resources: tuple[str, ...] = ()


class SituationRegistry:
    """Tracks the single active working situation per user."""

    def __init__(self) -> None:
        self._lock = threading.Lock()
        self._active: dict[str, WorkingSituation] = {}
        self._counter = 0

    def open(
        self,
        user: str,
        project: str,
        task: str,
        *,
        place: str = "",
        resources: tuple[str, ...] = (),
    ) -> WorkingSituation:
        with self._lock:
            self._counter += 1
            situation = WorkingSituation(
                id=f"WS-{self._counter}",
                project=project,
                task=task,
                user=user,
                opened=utc_now(),
                place=place,
                resources=tuple(resources),
            )
            # Implicitly closes any previous situation for this user.
            self._active[user] = situation
        return situation

    def close(self, user: str) -> WorkingSituation | None:
        with self._lock:
            return self._active.pop(user, None)

    def active(self, user: str) -> WorkingSituation | None:
        with self._lock:
            return self._active.get(user)

    def capture(
        self, user: str, *, team: str = "", now: datetime | None = None
    ) -> tuple[ContextRecord, bool]:
        """Context snapshot for ``user`` plus whether a situation backed it.

        Without an active situation the record still identifies who/when,
        but task/place/resources stay empty and the flag comes back False
        so callers can warn.
        """
        situation = self.active(user)
        timestamp = now or utc_now()
        if situation is None:
            return ContextRecord(actor=Actor(user, team), timestamp=timestamp), False
        return (
            ContextRecord(
                actor=Actor(user, team),
                timestamp=timestamp,
                task=situation.task,
                place=situation.place,
                resources=situation.resources,
            ),
            True,
        )
