"""Classification of knowledge activities against task innovativeness.

The two core activities (creating and using knowledge) split into four
classes depending on whether the surrounding task is innovative: the
innovative half produces and applies genuinely new knowledge, the
routine half grows and exploits the personal repository.
"""

from __future__ import annotations

from enum import Enum


class ActivityKind(str, Enum):
    CREATION = "creation"
    USAGE = "usage"


class ActivityClass(str, Enum):
    TRUE_CREATION = "TrueCreation"
    CREATIVE_USE = "CreativeUse"
    SELF_LEARNING = "SelfLearning"
    ROUTINE_USE = "RoutineUse"


_CLASSES: dict[tuple[ActivityKind, bool], ActivityClass] = {
    (ActivityKind.CREATION, True): ActivityClass.TRUE_CREATION,
    (ActivityKind.USAGE, True): ActivityClass.CREATIVE_USE,
    (ActivityKind.CREATION, False): ActivityClass.SELF_LEARNING,
    (ActivityKind.USAGE, False): ActivityClass.ROUTINE_USE,
}


def classify_activity(activity_kind: ActivityKind | str, task_innovative: bool) -> ActivityClass:
    """Map (activity kind, task innovativeness) onto its activity class.

    Total bijection from the 2 x 2 input space onto the four classes.
    """
    return _CLASSES[(ActivityKind(activity_kind), bool(task_innovative))]
