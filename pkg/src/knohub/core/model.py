"""Domain value types for knowledge elements.

Everything here is an immutable value: mutation is expressed as
constructing a new value (dataclasses.replace), and the stores own the
write serialization. That makes the types safe to share across threads
and trivial to snapshot when publishing.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field, replace
from datetime import date, datetime, timezone
from enum import Enum

from ..errors import ValidationError
from .dimensions import DimensionKind, label_of

# Serialization delimiter for the keyword list; keywords may not contain it.
KEYWORD_SEPARATOR = "; "


def utc_now() -> datetime:
    return datetime.now(timezone.utc)


def slugify(text: str) -> str:
    """Lowercase a title into an XML-name-safe underscore slug."""
    slug = re.sub(r"[^a-z0-9]+", "_", text.lower()).strip("_")
    return slug or "element"


@dataclass(frozen=True, order=True)
class Version:
    """Two-part element version; roots are 1.0 and derivations bump minor."""

    major: int
    minor: int

    def __post_init__(self) -> None:
        if self.major < 0 or self.minor < 0:
            raise ValidationError(f"version parts must be non-negative, got {self}")

    def __str__(self) -> str:
        return f"{self.major}.{self.minor}"

    @classmethod
    def parse(cls, text: str) -> "Version":
        m = re.fullmatch(r"(\d+)\.(\d+)", text.strip())
        if not m:
            raise ValidationError(f"version must look like '1.0', got {text!r}")
        return cls(int(m.group(1)), int(m.group(2)))

    def next_minor(self) -> "Version":
        return Version(self.major, self.minor + 1)

    def next_major(self) -> "Version":
        return Version(self.major + 1, 0)


ROOT_VERSION = Version(1, 0)


@dataclass(frozen=True)
class DimensionValue:
    """One content dimension: an integer degree paired with its derived label."""

    kind: DimensionKind
    degree: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "kind", DimensionKind(self.kind))
        # label_of validates the degree range and names the dimension on error
        label_of(self.kind, self.degree)

    @property
    def label(self) -> str:
        return label_of(self.kind, self.degree)


@dataclass(frozen=True)
class KnowledgeContent:
    """The four quality dimensions; all four are always present."""

    explicitness: DimensionValue
    novelty: DimensionValue
    importance: DimensionValue
    usability: DimensionValue

    def __post_init__(self) -> None:
        for slot in DimensionKind:
            value: DimensionValue = getattr(self, slot.value)
            if value.kind is not slot:
                raise ValidationError(
                    f"content slot {slot.value!r} holds a {value.kind.value} dimension"
                )

    @classmethod
    def from_degrees(
        cls, explicitness: int, novelty: int, importance: int, usability: int
    ) -> "KnowledgeContent":
        return cls(
            explicitness=DimensionValue(DimensionKind.EXPLICITNESS, explicitness),
            novelty=DimensionValue(DimensionKind.NOVELTY, novelty),
            importance=DimensionValue(DimensionKind.IMPORTANCE, importance),
            usability=DimensionValue(DimensionKind.USABILITY, usability),
        )

    def degrees(self) -> dict[str, int]:
        return {kind.value: getattr(self, kind.value).degree for kind in DimensionKind}


@dataclass(frozen=True)
class Actor:
    """Who acted: the user and the team they acted for."""

    user: str
    team: str = ""

    def __post_init__(self) -> None:
        if not self.user:
            raise ValidationError("context actor requires a user id")


@dataclass(frozen=True)
class ContextRecord:
    """Who/when/where/how snapshot attached at creation or at each usage."""

    actor: Actor
    timestamp: datetime
    task: str | None = None
    place: str = ""
    resources: tuple[str, ...] = ()

    def __post_init__(self) -> None:
        if self.timestamp.tzinfo is None:
            raise ValidationError("context timestamps must be timezone-aware UTC instants")
        object.__setattr__(self, "resources", tuple(self.resources))
        for resource in self.resources:
            if not resource:
                raise ValidationError("context resources must be non-empty strings")


@dataclass(frozen=True)
class KnowledgeContext:
    """Creation context set once, plus an append-only list of usage contexts."""

    creation: ContextRecord
    usages: tuple[ContextRecord, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "usages", tuple(self.usages))

    def with_usage(self, record: ContextRecord) -> "KnowledgeContext":
        return replace(self, usages=self.usages + (record,))


class LinkKind(str, Enum):
    ASSOCIATION = "association"
    DEPENDENCY = "dependency"


@dataclass(frozen=True)
class Link:
    """Typed relation from one element to another."""

    target: str
    kind: LinkKind

    def __post_init__(self) -> None:
        object.__setattr__(self, "kind", LinkKind(self.kind))
        if not self.target:
            raise ValidationError("link target must be a non-empty element id")


@dataclass(frozen=True)
class KnowledgeElement:
    """The versioned unit of knowledge: basic attributes + content + context.

    ``logical`` is the liveness flag: False marks a logically deleted
    element, which stays stored (traceability) but is excluded from
    search and views. ``slug`` is the short machine name used in export
    names; it defaults to a slugified title but can be set explicitly.
    """

    id: str
    title: str
    kind: str
    keywords: tuple[str, ...]
    description: str
    creator: str
    created_date: date
    version: Version
    source: str
    content: KnowledgeContent
    context: KnowledgeContext
    slug: str
    parent: str | None = None
    published: bool = False
    logical: bool = True
    ranking: int = 0
    links: tuple[Link, ...] = field(default=())

    def __post_init__(self) -> None:
        # No underscores in ids: the export name New_Kn_ele_{id}_{slug}_v{ver}
        # uses underscores as field separators and must parse back.
        if not re.fullmatch(r"[A-Za-z0-9.-]+", self.id or ""):
            raise ValidationError(f"element id {self.id!r} is not a safe identifier")
        if not self.title.strip():
            raise ValidationError("element title must be non-empty")
        object.__setattr__(self, "keywords", tuple(self.keywords))
        for keyword in self.keywords:
            if not keyword:
                raise ValidationError("keywords must be non-empty")
            if KEYWORD_SEPARATOR in keyword:
                raise ValidationError(
                    f"keyword {keyword!r} contains the reserved separator {KEYWORD_SEPARATOR!r}"
                )
        if not re.fullmatch(r"[A-Za-z0-9._-]+", self.slug or ""):
            raise ValidationError(f"slug {self.slug!r} is not a safe machine name")
        if self.ranking < 0:
            raise ValidationError("ranking must be non-negative")
        object.__setattr__(self, "links", tuple(self.links))

    @property
    def xml_name(self) -> str:
        """Export container name, e.g. ``New_Kn_ele_1002_define_neutral_line_v1.0``."""
        return f"New_Kn_ele_{self.id}_{self.slug}_v{self.version}"

    def with_usage(self, record: ContextRecord) -> "KnowledgeElement":
        return replace(self, context=self.context.with_usage(record))


def immutable_fingerprint(element: KnowledgeElement) -> KnowledgeElement:
    """Project out the fields a published element is still allowed to change.

    Two elements with equal fingerprints differ at most in ranking and
    appended usage records, which is exactly the mutation carve-out for
    published knowledge.
    """
    return replace(
        element,
        ranking=0,
        context=replace(element.context, usages=()),
    )


def published_mutation_allowed(old: KnowledgeElement, new: KnowledgeElement) -> bool:
    """True when ``old -> new`` only updates ranking or appends usage records."""
    if immutable_fingerprint(old) != immutable_fingerprint(new):
        return False
    old_usages = old.context.usages
    return new.context.usages[: len(old_usages)] == old_usages
