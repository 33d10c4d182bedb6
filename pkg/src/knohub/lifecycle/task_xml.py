"""Task interchange with PLM tooling.

    <Tasks>
      <Task id="T1" project="P1" title="reception of order"
            innovative="true" assignee="jab">
        <Input>client order A-113</Input>
        <Input>part drawing</Input>
      </Task>
    </Tasks>

Only the task definition travels: id, project, title, innovative flag,
assignee, inputs. State and history are runtime facts and stay home —
imported tasks always start Received with an empty history.
"""

from __future__ import annotations

import xml.etree.ElementTree as ET
from typing import Iterable

from ..errors import ParseError
from .tasks import DesignTask

ROOT_TAG = "Tasks"


def export_tasks_xml(tasks: Iterable[DesignTask]) -> str:
    root = ET.Element(ROOT_TAG)
    for task in tasks:
        node = ET.SubElement(
            root,
            "Task",
            {
                "id": task.id,
                "project": task.project,
                "title": task.title,
                "innovative": "true" if task.innovative else "false",
                "assignee": task.assignee,
            },
        )
        for text in task.inputs:
            ET.SubElement(node, "Input").text = text
    ET.indent(root, space="  ")
    body = ET.tostring(root, encoding="unicode")
    return f'<?xml version="1.0" encoding="UTF-8"?>\n{body}\n'


def import_tasks_xml(document: str) -> list[DesignTask]:
    try:
        root = ET.fromstring(document)
    except ET.ParseError as exc:
        raise ParseError(f"malformed task XML: {exc}") from exc
    if root.tag != ROOT_TAG:
        raise ParseError(f"expected <{ROOT_TAG}> root, got <{root.tag}>")
    tasks: list[DesignTask] = []
    for position, node in enumerate(root, start=1):
        if node.tag != "Task":
            raise ParseError(f"task #{position}: expected <Task>, got <{node.tag}>")
        task_id = node.get("id")
        if not task_id:
            raise ParseError(f"task #{position}: missing id attribute")
        innovative_raw = node.get("innovative", "true").strip().lower()
        if innovative_raw not in ("true", "false"):
            raise ParseError(
                f"task #{position}: innovative must be true or false, got {innovative_raw!r}"
            )
        tasks.append(
            DesignTask(
                id=task_id,
                project=node.get("project", ""),
                title=node.get("title", ""),
                inputs=tuple(i.text or "" for i in node.findall("Input")),
                innovative=innovative_raw == "true",
                assignee=node.get("assignee", ""),
            )
        )
    return tasks
