"""Design tasks and their transition machine.

A task starts Received, searches the knowledge bases, then either uses
found knowledge or creates new knowledge; the outcome assessment sends
it to Solved (total), Integrating (partial), or Reformulating (none),
and reformulation loops back into a new search. Solved is terminal.
Assessments require at least one recorded solution attempt.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field, replace
from datetime import datetime
from enum import Enum

from ..core.model import utc_now
from ..errors import StateError, TransitionError, ValidationError


class TaskState(str, Enum):
    RECEIVED = "Received"
    SEARCHING = "Searching"
    USING = "Using"
    CREATING = "Creating"
    INTEGRATING = "Integrating"
    SOLVED = "Solved"
    REFORMULATING = "Reformulating"


class TaskEvent(str, Enum):
    START = "start"
    KNOWLEDGE_FOUND = "knowledge_found"
    KNOWLEDGE_NOT_FOUND = "knowledge_not_found"
    ASSESSED_TOTAL = "assessed_total"
    ASSESSED_PARTIAL = "assessed_partial"
    ASSESSED_NONE = "assessed_none"
    REFORMULATED = "reformulated"


ASSESSMENT_EVENTS = frozenset(
    {TaskEvent.ASSESSED_TOTAL, TaskEvent.ASSESSED_PARTIAL, TaskEvent.ASSESSED_NONE}
)

S, E = TaskState, TaskEvent

TASK_TRANSITIONS: dict[tuple[TaskState, TaskEvent], TaskState] = {
    (S.RECEIVED, E.START): S.SEARCHING,
    (S.SEARCHING, E.KNOWLEDGE_FOUND): S.USING,
    (S.SEARCHING, E.KNOWLEDGE_NOT_FOUND): S.CREATING,
    (S.USING, E.ASSESSED_TOTAL): S.SOLVED,
    (S.USING, E.ASSESSED_PARTIAL): S.INTEGRATING,
    (S.USING, E.ASSESSED_NONE): S.REFORMULATING,
    (S.CREATING, E.ASSESSED_TOTAL): S.SOLVED,
    (S.CREATING, E.ASSESSED_PARTIAL): S.INTEGRATING,
    (S.CREATING, E.ASSESSED_NONE): S.REFORMULATING,
    (S.INTEGRATING, E.ASSESSED_TOTAL): S.SOLVED,
    (S.INTEGRATING, E.ASSESSED_PARTIAL): S.INTEGRATING,
    (S.INTEGRATING, E.ASSESSED_NONE): S.REFORMULATING,
    (S.REFORMULATING, E.REFORMULATED): S.SEARCHING,
}

del S, E


def parse_task_event(event: TaskEvent | str) -> TaskEvent:
    try:
        return TaskEvent(event)
    except ValueError:
        raise ValidationError(
            f"unknown task event {event!r}; expected one of "
            + ", ".join(e.value for e in TaskEvent)
        ) from None


def task_transition(state: TaskState | str, event: TaskEvent | str) -> TaskState:
    state = TaskState(state)
    event = parse_task_event(event)
    try:
        return TASK_TRANSITIONS[(state, event)]
    except KeyError:
        raise TransitionError(f"no transition from {state.value} on {event.value}") from None


def offered_events(state: TaskState | str) -> tuple[TaskEvent, ...]:
    """Events the machine accepts in this state, in declaration order."""
    state = TaskState(state)
    return tuple(e for (s, e) in TASK_TRANSITIONS if s is state)


def replay(events: "list[TaskEvent] | tuple[TaskEvent, ...]") -> TaskState:
    """Fold an event sequence from Received; raises where the live run would."""
    state = TaskState.RECEIVED
    for event in events:
        state = task_transition(state, event)
    return state


def can_reach_solved(state: TaskState | str) -> bool:
    state = TaskState(state)
    queue, seen = deque([state]), {state}
    while queue:
        current = queue.popleft()
        if current is TaskState.SOLVED:
            return True
        for (s, _), target in TASK_TRANSITIONS.items():
            if s is current and target not in seen:
                seen.add(target)
                queue.append(target)
    return False


@dataclass(frozen=True)
class Project:
    id: str
    title: str

    def __post_init__(self) -> None:
        if not self.id:
            raise ValidationError("project id must be non-empty")


@dataclass(frozen=True)
class Solution:
    """A (possibly partial) answer to a task: the element that carries it."""

    element_id: str
    note: str = ""


@dataclass(frozen=True)
class HistoryEntry:
    """One transition: the event taken and the state it produced."""

    state: TaskState
    event: TaskEvent
    timestamp: datetime


@dataclass(frozen=True)
class DesignTask:
    id: str
    project: str
    title: str
    inputs: tuple[str, ...] = ()
    innovative: bool = True
    assignee: str = ""
    state: TaskState = TaskState.RECEIVED
    partial_solutions: tuple[Solution, ...] = ()
    history: tuple[HistoryEntry, ...] = ()

    def __post_init__(self) -> None:
        if not self.id:
            raise ValidationError("task id must be non-empty")
        object.__setattr__(self, "inputs", tuple(self.inputs))
        object.__setattr__(self, "state", TaskState(self.state))
        object.__setattr__(self, "partial_solutions", tuple(self.partial_solutions))
        object.__setattr__(self, "history", tuple(self.history))


def task_step(task: DesignTask, event: TaskEvent | str, *, when: datetime | None = None) -> DesignTask:
    event = parse_task_event(event)
    if event in ASSESSMENT_EVENTS and not task.partial_solutions:
        raise StateError(
            f"task {task.id} has no recorded solution; nothing to assess"
        )
    state = task_transition(task.state, event)
    entry = HistoryEntry(state=state, event=event, timestamp=when or utc_now())
    return replace(task, state=state, history=task.history + (entry,))


def record_solution(task: DesignTask, element_id: str, note: str = "") -> DesignTask:
    if task.state is TaskState.SOLVED:
        raise StateError(f"task {task.id} is already solved")
    return replace(
        task, partial_solutions=task.partial_solutions + (Solution(element_id, note),)
    )
