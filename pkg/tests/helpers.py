"""Factories shared across the test suite."""

from __future__ import annotations

from datetime import date, datetime, timezone
from typing import Any

from knohub.core import (
    Actor,
    ContextRecord,
    KnowledgeContent,
    KnowledgeContext,
    KnowledgeElement,
    Version,
    slugify,
)

A_DAY = date(2010, 8, 31)
AN_INSTANT = datetime(2010, 8, 31, 10, 0, 0, tzinfo=timezone.utc)


def make_context(
    user: str = "jab",
    team: str = "design",
    task: str | None = None,
    place: str = "ws-1",
    resources: tuple[str, ...] = ("CATIA",),
    when: datetime | None = None,
) -> ContextRecord:
    return ContextRecord(
        actor=Actor(user, team),
        timestamp=when or AN_INSTANT,
        task=task,
        place=place,
        resources=resources,
    )


def make_content(
    explicitness: int = 2, novelty: int = 3, importance: int = 4, usability: int = 4
) -> KnowledgeContent:
    return KnowledgeContent.from_degrees(
        explicitness=explicitness, novelty=novelty, importance=importance, usability=usability
    )


def make_element(element_id: str = "1002", **overrides: Any) -> KnowledgeElement:
    fields: dict[str, Any] = {
        "id": element_id,
        "title": "definition de ligne neutre",
        "kind": "Design experience",
        "keywords": ("ligne neutre", "depliage"),
        "description": "comment definir la ligne neutre sur la piece depliee",
        "creator": "Secome test",
        "created_date": A_DAY,
        "version": Version(1, 0),
        "source": "Secome",
        "content": make_content(),
        "context": KnowledgeContext(creation=make_context()),
    }
    fields.update(overrides)
    fields.setdefault("slug", slugify(fields["title"]))
    return KnowledgeElement(**fields)
