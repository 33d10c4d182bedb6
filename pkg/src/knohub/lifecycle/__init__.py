"""State machines, tasks, working situations, task XML interop."""

from .element_machine import (
    ELEMENT_TRANSITIONS,
    ElementEvent,
    ElementLifecycleState,
    element_transition,
)
from .situations import SituationRegistry, WorkingSituation
from .task_xml import export_tasks_xml, import_tasks_xml
from .tasks import (
    ASSESSMENT_EVENTS,
    TASK_TRANSITIONS,
    DesignTask,
    HistoryEntry,
    Project,
    Solution,
    TaskEvent,
    TaskState,
    can_reach_solved,
    offered_events,
    parse_task_event,
    record_solution,
    replay,
    task_step,
    task_transition,
)

__all__ = [
    "ASSESSMENT_EVENTS",
    "ELEMENT_TRANSITIONS",
    "DesignTask",
    "ElementEvent",
    "ElementLifecycleState",
    "HistoryEntry",
    "Project",
    "SituationRegistry",
    "Solution",
    "TASK_TRANSITIONS",
    "TaskEvent",
    "TaskState",
    "WorkingSituation",
    "can_reach_solved",
    "element_transition",
    "export_tasks_xml",
    "import_tasks_xml",
    "offered_events",
    "parse_task_event",
    "record_solution",
    "replay",
    "task_step",
    "task_transition",
]
