"""Element-level operations: creation, version derivation, usage recording.

These are pure except for id allocation, which goes through an explicit
IdAllocator so stores can own the numbering while tests stay
deterministic.
"""

from __future__ import annotations

import itertools
import threading
from dataclasses import replace
from datetime import date
from typing import Iterable, Mapping

from ..errors import LineageError, UsageError, ValidationError
from .model import (
    ROOT_VERSION,
    ContextRecord,
    KnowledgeContent,
    KnowledgeContext,
    KnowledgeElement,
    Link,
    slugify,
    utc_now,
)

# First id matches the numbering visible in shared exports (1001, 1002, ...).
FIRST_ELEMENT_ID = 1001


class IdAllocator:
    """Thread-safe monotone counter producing decimal string ids."""

    def __init__(self, start: int = FIRST_ELEMENT_ID) -> None:
        self._lock = threading.Lock()
        self._next = start

    def next_id(self) -> str:
        with self._lock:
            value = self._next
            self._next += 1
        return str(value)

    def bump_past(self, taken: str) -> None:
        """Never hand out ids at or below an externally observed one."""
        if not taken.isdigit():
            return
        with self._lock:
            self._next = max(self._next, int(taken) + 1)


def _coerce_content(content: KnowledgeContent | Mapping[str, int]) -> KnowledgeContent:
    if isinstance(content, KnowledgeContent):
        return content
    return KnowledgeContent.from_degrees(**dict(content))


def new_element(
    title: str,
    kind: str,
    keywords: Iterable[str],
    description: str,
    creator: str,
    source: str,
    content: KnowledgeContent | Mapping[str, int],
    creation_context: ContextRecord,
    *,
    ids: IdAllocator,
    slug: str | None = None,
    created_date: date | None = None,
) -> KnowledgeElement:
    """Build a fresh root element: version 1.0, no parent, unpublished, live."""
    if not title.strip():
        raise ValidationError("element title must be non-empty")
    return KnowledgeElement(
        id=ids.next_id(),
        title=title,
        kind=kind,
        keywords=tuple(keywords),
        description=description,
        creator=creator,
        created_date=created_date or utc_now().date(),
        version=ROOT_VERSION,
        source=source,
        content=_coerce_content(content),
        context=KnowledgeContext(creation=creation_context),
        slug=slug if slug is not None else slugify(title),
    )


# Fields derive_version lets the caller override; everything else is lineage-
# or state-controlled and copied from the parent.
_DERIVABLE_FIELDS = frozenset(
    {"title", "kind", "keywords", "description", "source", "content", "links", "slug"}
)


def derive_version(
    parent: KnowledgeElement,
    changes: Mapping[str, object] | None,
    creation_context: ContextRecord,
    *,
    ids: IdAllocator,
    creator: str | None = None,
    new_generation: bool = False,
    created_date: date | None = None,
) -> KnowledgeElement:
    """Derive a child version from a live parent.

    The child is a fresh unpublished element pointing back at the parent,
    with the minor version bumped (or the major one, when the caller marks
    the derivation as a new generation).
    """
    if not parent.logical:
        raise LineageError(f"cannot derive from logically deleted element {parent.id}")
    changes = dict(changes or {})
    unknown = set(changes) - _DERIVABLE_FIELDS
    if unknown:
        raise ValidationError(f"cannot change {sorted(unknown)} when deriving a version")
    if "content" in changes:
        changes["content"] = _coerce_content(changes["content"])  # type: ignore[arg-type]
    if "keywords" in changes:
        changes["keywords"] = tuple(changes["keywords"])  # type: ignore[arg-type]
    if "links" in changes:
        changes["links"] = tuple(
            link if isinstance(link, Link) else Link(**link)  # type: ignore[arg-type]
            for link in changes["links"]  # type: ignore[union-attr]
        )
    if "title" in changes and "slug" not in changes:
        changes["slug"] = slugify(str(changes["title"]))
    return replace(
        parent,
        **changes,
        id=ids.next_id(),
        parent=parent.id,
        version=parent.version.next_major() if new_generation else parent.version.next_minor(),
        published=False,
        logical=True,
        ranking=0,
        creator=creator if creator is not None else parent.creator,
        created_date=created_date or utc_now().date(),
        context=KnowledgeContext(creation=creation_context),
    )


def record_usage(element: KnowledgeElement, usage_context: ContextRecord) -> KnowledgeElement:
    """Append one usage record; the only mutation allowed on published elements."""
    if not element.logical:
        raise UsageError(f"element {element.id} is logically deleted; usage not recorded")
    return element.with_usage(usage_context)


def lineage_is_forest(elements: Iterable[KnowledgeElement]) -> bool:
    """Brute-force check that parent pointers form a forest over the ids."""
    by_id = {e.id: e for e in elements}
    for element in by_id.values():
        seen = {element.id}
        cursor = element.parent
        for _ in itertools.repeat(None, len(by_id) + 1):
            if cursor is None:
                break
            if cursor in seen:
                return False
            seen.add(cursor)
            cursor = by_id[cursor].parent if cursor in by_id else None
        else:
            return False
    return True
