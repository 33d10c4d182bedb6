"""Macro-process lifecycle of a knowledge element.

Five phases arranged in a cycle: prepared knowledge gets created,
organized into the repository, requested for use, evaluated after use,
and finally recycled as the seed of a new cycle. Two self-loops cover
re-organization (stored) and repeated evaluation.
"""

from __future__ import annotations

from enum import Enum

from ..errors import TransitionError


class ElementLifecycleState(str, Enum):
    PRE_CREATION = "PreCreation"
    CREATION = "Creation"
    INTERMEDIATE = "Intermediate"
    USAGE = "Usage"
    POST_USAGE = "PostUsage"


class ElementEvent(str, Enum):
    PREPARED = "prepared"
    CREATED = "created"
    STORED = "stored"
    REQUESTED = "requested"
    USED = "used"
    EVALUATED = "evaluated"
    RECYCLED = "recycled"


S, E = ElementLifecycleState, ElementEvent

ELEMENT_TRANSITIONS: dict[tuple[ElementLifecycleState, ElementEvent], ElementLifecycleState] = {
    (S.PRE_CREATION, E.PREPARED): S.CREATION,
    (S.CREATION, E.CREATED): S.INTERMEDIATE,
    (S.INTERMEDIATE, E.STORED): S.INTERMEDIATE,
    (S.INTERMEDIATE, E.REQUESTED): S.USAGE,
    (S.USAGE, E.USED): S.POST_USAGE,
    (S.POST_USAGE, E.EVALUATED): S.POST_USAGE,
    (S.POST_USAGE, E.RECYCLED): S.PRE_CREATION,
}

del S, E


def element_transition(
    state: ElementLifecycleState | str, event: ElementEvent | str
) -> ElementLifecycleState:
    state = ElementLifecycleState(state)
    event = ElementEvent(event)
    try:
        return ELEMENT_TRANSITIONS[(state, event)]
    except KeyError:
        raise TransitionError(
            f"no transition from {state.value} on {event.value}"
        ) from None
