"""Personal and shared knowledge bases.

A KnowledgeBase is an in-memory index over an append-only log: every
acknowledged write hits disk (fsynced) before the call returns, and a
restart replays the log to rebuild the exact index. Elements are frozen
values, so readers can hold results without copying while writers swap
whole entries under one lock.
"""

from __future__ import annotations

import re
import threading
from dataclasses import dataclass, replace
from datetime import datetime
from pathlib import Path
from typing import Iterable

from ..core.dimensions import MAX_DEGREE, MIN_DEGREE, DimensionKind, check_degree
from ..core.model import (
    KEYWORD_SEPARATOR,
    KnowledgeContent,
    KnowledgeElement,
    ContextRecord,
    published_mutation_allowed,
    utc_now,
)
from ..core.ops import IdAllocator, record_usage as _append_usage
from ..errors import (
    AccessError,
    ConflictError,
    ImmutabilityError,
    NotFoundError,
    StateError,
    ValidationError,
)
from .log import AppendLog
from .serde import element_from_json, element_to_json, parse_instant

PERSONAL = "personal"
SHARED = "shared"


@dataclass(frozen=True)
class DimensionFilter:
    """Keep elements whose dimension degree falls inside [lo, hi]."""

    kind: DimensionKind
    lo: int = MIN_DEGREE
    hi: int = MAX_DEGREE

    def __post_init__(self) -> None:
        object.__setattr__(self, "kind", DimensionKind(self.kind))
        check_degree(self.kind, self.lo)
        check_degree(self.kind, self.hi)
        if self.lo > self.hi:
            raise ValidationError(f"{self.kind.value} filter bounds inverted: {self.lo}>{self.hi}")

    def admits(self, content: KnowledgeContent) -> bool:
        degree = getattr(content, self.kind.value).degree
        return self.lo <= degree <= self.hi


@dataclass(frozen=True)
class SearchQuery:
    """What to look for: free-text terms and/or structured filters.

    ``include_unpublished`` is honored only when searching a personal
    base (the owner's drafts); shared-scope search never returns
    unpublished elements regardless of the flag.
    """

    terms: tuple[str, ...] = ()
    kind: str | None = None
    dimensions: tuple[DimensionFilter, ...] = ()
    include_unpublished: bool = True

    def __post_init__(self) -> None:
        object.__setattr__(self, "terms", tuple(t for t in self.terms if t.strip()))
        object.__setattr__(self, "dimensions", tuple(self.dimensions))
        if not (self.terms or self.kind or self.dimensions):
            raise ValidationError("search query needs at least one criterion")


@dataclass(frozen=True)
class SearchHit:
    id: str
    score: int
    element: KnowledgeElement


@dataclass(frozen=True)
class EvaluationRecord:
    element_id: str
    evaluator: str
    score: int
    timestamp: datetime


@dataclass(frozen=True)
class PublishResult:
    element_id: str
    version: str
    duplicate: bool


def term_hits(element: KnowledgeElement, terms: Iterable[str]) -> int:
    """Number of query terms with a whole-word, case-insensitive match."""
    haystack = "\n".join(
        (element.title, KEYWORD_SEPARATOR.join(element.keywords), element.description)
    )
    hits = 0
    for term in terms:
        if re.search(rf"\b{re.escape(term)}\b", haystack, re.IGNORECASE):
            hits += 1
    return hits


def score_element(element: KnowledgeElement, terms: Iterable[str]) -> int:
    return term_hits(element, terms) * 10 + element.ranking


def id_sort_key(element_id: str) -> tuple[int, int, str]:
    """Ascending-id tiebreak; numeric ids compare as numbers."""
    if element_id.isdigit():
        return (0, int(element_id), "")
    return (1, 0, element_id)


class KnowledgeBase:
    """One knowledge base: personal (owned by one user) or shared.

    Pass ``path`` for a durable base; omit it for an ephemeral in-memory
    one (tests, scratch work). ``ids`` may be shared between bases so a
    whole deployment draws from one id sequence.
    """

    def __init__(
        self,
        scope: str,
        *,
        owner: str | None = None,
        path: str | Path | None = None,
        ids: IdAllocator | None = None,
    ) -> None:
        if scope not in (PERSONAL, SHARED):
            raise ValidationError(f"unknown knowledge base scope {scope!r}")
        if scope == PERSONAL and not owner:
            raise ValidationError("personal knowledge bases need an owner")
        if scope == SHARED and owner:
            raise ValidationError("the shared knowledge base has no owner")
        self.scope = scope
        self.owner = owner
        self.ids = ids if ids is not None else IdAllocator()
        self._lock = threading.RLock()
        self._elements: dict[str, KnowledgeElement] = {}
        self._evaluations: dict[str, list[EvaluationRecord]] = {}
        self._mutations = 0
        self._log = AppendLog(path) if path is not None else None
        if self._log is not None:
            self._replay()

    @property
    def mutation_count(self) -> int:
        """Monotone write counter; lets callers notice changes cheaply."""
        with self._lock:
            return self._mutations

    # -- persistence ------------------------------------------------------

    def _replay(self) -> None:
        assert self._log is not None
        for record in self._log.replay():
            if record["op"] == "put":
                element = element_from_json(record["element"])
                self._elements[element.id] = element
                self.ids.bump_past(element.id)
            elif record["op"] == "evaluate":
                entry = EvaluationRecord(
                    element_id=record["id"],
                    evaluator=record["evaluator"],
                    score=record["score"],
                    timestamp=parse_instant(record["timestamp"]),
                )
                self._evaluations.setdefault(entry.element_id, []).append(entry)
                current = self._elements[entry.element_id]
                self._elements[entry.element_id] = replace(
                    current, ranking=current.ranking + entry.score
                )
            self._mutations += 1

    def _persist_put(self, element: KnowledgeElement) -> None:
        if self._log is not None:
            self._log.append({"op": "put", "element": element_to_json(element)})

    def _persist_evaluation(self, entry: EvaluationRecord) -> None:
        if self._log is not None:
            self._log.append(
                {
                    "op": "evaluate",
                    "id": entry.element_id,
                    "evaluator": entry.evaluator,
                    "score": entry.score,
                    "timestamp": entry.timestamp.isoformat(),
                }
            )

    def close(self) -> None:
        if self._log is not None:
            self._log.close()

    # -- authorization ----------------------------------------------------

    def _authorize(self, as_user: str | None) -> None:
        # None marks a trusted in-process caller (the owning agent / server
        # internals); anything else must match the personal owner.
        if as_user is None:
            return
        if self.scope == PERSONAL and as_user != self.owner:
            raise AccessError(
                f"knowledge base of {self.owner!r} is not accessible to {as_user!r}"
            )

    # -- element lifecycle --------------------------------------------------

    def store(self, element: KnowledgeElement, *, as_user: str | None = None) -> str:
        self._authorize(as_user)
        with self._lock:
            if element.id in self._elements:
                raise ConflictError(f"element id {element.id} already stored")
            self._persist_put(element)
            self._elements[element.id] = element
            self._mutations += 1
            self.ids.bump_past(element.id)
        return element.id

    def replace(self, element: KnowledgeElement, *, as_user: str | None = None) -> None:
        self._authorize(as_user)
        with self._lock:
            old = self._elements.get(element.id)
            if old is None:
                raise NotFoundError(f"element {element.id} not found")
            if self.scope == SHARED and old.published:
                if not published_mutation_allowed(old, element):
                    raise ImmutabilityError(
                        f"published element {element.id} only accepts ranking "
                        "updates and usage appends"
                    )
            self._persist_put(element)
            self._elements[element.id] = element
            self._mutations += 1

    def get(self, element_id: str, *, as_user: str | None = None) -> KnowledgeElement:
        self._authorize(as_user)
        with self._lock:
            element = self._elements.get(element_id)
        if element is None:
            raise NotFoundError(f"element {element_id} not found")
        return element

    def __contains__(self, element_id: str) -> bool:
        with self._lock:
            return element_id in self._elements

    def __len__(self) -> int:
        with self._lock:
            return len(self._elements)

    def elements(self, *, as_user: str | None = None) -> tuple[KnowledgeElement, ...]:
        self._authorize(as_user)
        with self._lock:
            values = list(self._elements.values())
        return tuple(sorted(values, key=lambda e: id_sort_key(e.id)))

    def delete(self, element_id: str, *, as_user: str | None = None) -> KnowledgeElement:
        """Logical deletion: the element stays stored but leaves search/views."""
        self._authorize(as_user)
        with self._lock:
            old = self._elements.get(element_id)
            if old is None:
                raise NotFoundError(f"element {element_id} not found")
            # Deliberate carve-out from published immutability: deletion is
            # administrative and reversible, the record itself never changes.
            hidden = replace(old, logical=False)
            self._persist_put(hidden)
            self._elements[element_id] = hidden
            self._mutations += 1
        return hidden

    def record_usage(
        self, element_id: str, record: ContextRecord, *, as_user: str | None = None
    ) -> KnowledgeElement:
        self._authorize(as_user)
        with self._lock:
            old = self._elements.get(element_id)
            if old is None:
                raise NotFoundError(f"element {element_id} not found")
            updated = _append_usage(old, record)
            self._persist_put(updated)
            self._elements[element_id] = updated
            self._mutations += 1
        return updated

    # -- evaluation ---------------------------------------------------------

    def evaluate(
        self,
        element_id: str,
        evaluator: str,
        score: int,
        *,
        as_user: str | None = None,
        timestamp: datetime | None = None,
    ) -> int:
        """Add an evaluation score; returns the new ranking total."""
        self._authorize(as_user)
        if isinstance(score, bool) or not isinstance(score, int):
            raise ValidationError(f"evaluation score must be an integer, got {score!r}")
        if not 1 <= score <= 5:
            raise ValidationError(f"evaluation score must be in [1, 5], got {score}")
        with self._lock:
            old = self._elements.get(element_id)
            if old is None:
                raise NotFoundError(f"element {element_id} not found")
            if not old.published:
                raise StateError(f"element {element_id} is not published; cannot evaluate")
            entry = EvaluationRecord(
                element_id=element_id,
                evaluator=evaluator,
                score=score,
                timestamp=timestamp or utc_now(),
            )
            updated = replace(old, ranking=old.ranking + score)
            self._persist_evaluation(entry)
            self._elements[element_id] = updated
            self._evaluations.setdefault(element_id, []).append(entry)
            self._mutations += 1
        return updated.ranking

    def evaluations(self, element_id: str) -> tuple[EvaluationRecord, ...]:
        with self._lock:
            return tuple(self._evaluations.get(element_id, ()))

    # -- search -------------------------------------------------------------

    def search(self, query: SearchQuery, *, as_user: str | None = None) -> list[SearchHit]:
        self._authorize(as_user)
        with self._lock:
            candidates = list(self._elements.values())
        hits: list[SearchHit] = []
        for element in candidates:
            if not element.logical:
                continue
            if not element.published:
                if self.scope == SHARED or not query.include_unpublished:
                    continue
            if query.kind is not None and element.kind.lower() != query.kind.lower():
                continue
            if not all(f.admits(element.content) for f in query.dimensions):
                continue
            matched = term_hits(element, query.terms)
            if query.terms and matched == 0:
                continue
            hits.append(SearchHit(element.id, matched * 10 + element.ranking, element))
        hits.sort(key=lambda h: (-h.score, id_sort_key(h.id)))
        return hits


def publish(
    personal_kb: KnowledgeBase,
    element_id: str,
    shared_kb: KnowledgeBase,
    *,
    as_user: str | None = None,
) -> PublishResult:
    """Copy a personal element into the shared base, marked published.

    Idempotent per (id, version): re-publishing the same version reports a
    duplicate and leaves the shared base untouched. The shared copy is a
    snapshot — later edits to the personal draft never propagate.
    """
    draft = personal_kb.get(element_id, as_user=as_user)
    if not draft.logical:
        raise StateError(f"element {element_id} is logically deleted; cannot publish")
    if element_id in shared_kb:
        existing = shared_kb.get(element_id)
        if existing.version != draft.version:
            raise ConflictError(
                f"shared base already holds element {element_id} "
                f"at version {existing.version}, got {draft.version}"
            )
        duplicate = True
    else:
        try:
            shared_kb.store(replace(draft, published=True))
            duplicate = False
        except ConflictError:
            # Lost a publish race; fine if the committed copy is our version.
            if shared_kb.get(element_id).version != draft.version:
                raise
            duplicate = True
    if not draft.published:
        personal_kb.replace(replace(draft, published=True), as_user=as_user)
    return PublishResult(element_id=element_id, version=str(draft.version), duplicate=duplicate)
