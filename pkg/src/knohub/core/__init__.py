"""Pure domain model: elements, dimensions, lineage, activity classes."""

from .activity import ActivityClass, ActivityKind, classify_activity
from .dimensions import (
    MAX_DEGREE,
    MIN_DEGREE,
    DimensionKind,
    check_degree,
    label_of,
    label_table,
)
from .model import (
    KEYWORD_SEPARATOR,
    ROOT_VERSION,
    Actor,
    ContextRecord,
    DimensionValue,
    KnowledgeContent,
    KnowledgeContext,
    KnowledgeElement,
    Link,
    LinkKind,
    Version,
    immutable_fingerprint,
    published_mutation_allowed,
    slugify,
    utc_now,
)
from .ops import (
    FIRST_ELEMENT_ID,
    IdAllocator,
    derive_version,
    lineage_is_forest,
    new_element,
    record_usage,
)

__all__ = [
    "ActivityClass",
    "ActivityKind",
    "Actor",
    "ContextRecord",
    "DimensionKind",
    "DimensionValue",
    "FIRST_ELEMENT_ID",
    "IdAllocator",
    "KEYWORD_SEPARATOR",
    "KnowledgeContent",
    "KnowledgeContext",
    "KnowledgeElement",
    "Link",
    "LinkKind",
    "MAX_DEGREE",
    "MIN_DEGREE",
    "ROOT_VERSION",
    "Version",
    "check_degree",
    "classify_activity",
    "derive_version",
    "immutable_fingerprint",
    "label_of",
    "label_table",
    "lineage_is_forest",
    "new_element",
    "published_mutation_allowed",
    "record_usage",
    "slugify",
    "utc_now",
]
