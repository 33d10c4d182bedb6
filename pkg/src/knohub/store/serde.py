"""JSON record codecs for elements, contexts, and evaluation audit entries.

These shapes are both the on-disk log format and the wire format the
server speaks, so changes here are protocol changes.
"""

from __future__ import annotations

from datetime import date, datetime
from typing import Any

from ..core.model import (
    Actor,
    ContextRecord,
    KnowledgeContent,
    KnowledgeContext,
    KnowledgeElement,
    Link,
    Version,
)


def parse_instant(text: str) -> datetime:
    # fromisoformat in 3.10 rejects the Z suffix; normalize it.
    return datetime.fromisoformat(text.replace("Z", "+00:00"))


def context_record_to_json(record: ContextRecord) -> dict[str, Any]:
    return {
        "actor": {"user": record.actor.user, "team": record.actor.team},
        "timestamp": record.timestamp.isoformat(),
        "task": record.task,
        "place": record.place,
        "resources": list(record.resources),
    }


def context_record_from_json(data: dict[str, Any]) -> ContextRecord:
    return ContextRecord(
        actor=Actor(user=data["actor"]["user"], team=data["actor"].get("team", "")),
        timestamp=parse_instant(data["timestamp"]),
        task=data.get("task"),
        place=data.get("place", ""),
        resources=tuple(data.get("resources", ())),
    )


def element_to_json(element: KnowledgeElement) -> dict[str, Any]:
    return {
        "id": element.id,
        "title": element.title,
        "kind": element.kind,
        "keywords": list(element.keywords),
        "description": element.description,
        "creator": element.creator,
        "created_date": element.created_date.isoformat(),
        "version": str(element.version),
        "parent": element.parent,
        "source": element.source,
        "published": element.published,
        "logical": element.logical,
        "ranking": element.ranking,
        "slug": element.slug,
        "content": element.content.degrees(),
        "context": {
            "creation": context_record_to_json(element.context.creation),
            "usages": [context_record_to_json(u) for u in element.context.usages],
        },
        "links": [{"target": link.target, "kind": link.kind.value} for link in element.links],
    }


def element_from_json(data: dict[str, Any]) -> KnowledgeElement:
    return KnowledgeElement(
        id=data["id"],
        title=data["title"],
        kind=data["kind"],
        keywords=tuple(data["keywords"]),
        description=data["description"],
        creator=data["creator"],
        created_date=date.fromisoformat(data["created_date"]),
        version=Version.parse(data["version"]),
        parent=data.get("parent"),
        source=data["source"],
        published=data["published"],
        logical=data["logical"],
        ranking=data["ranking"],
        slug=data["slug"],
        content=KnowledgeContent.from_degrees(**data["content"]),
        context=KnowledgeContext(
            creation=context_record_from_json(data["context"]["creation"]),
            usages=tuple(
                context_record_from_json(u) for u in data["context"].get("usages", ())
            ),
        ),
        links=tuple(Link(target=l["target"], kind=l["kind"]) for l in data.get("links", ())),
    )
