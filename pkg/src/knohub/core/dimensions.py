"""Content-dimension scales and their semantic labels.

Every knowledge element carries four quality dimensions. Each is a
five-point continuum between two extremes; the integer degree is the
stored value and the label is always derived from it, never stored on
its own.
"""

from __future__ import annotations

from enum import Enum

from ..errors import ValidationError

MIN_DEGREE = 1
MAX_DEGREE = 5


class DimensionKind(str, Enum):
    """The four content dimensions of a knowledge element."""

    EXPLICITNESS = "explicitness"
    NOVELTY = "novelty"
    IMPORTANCE = "importance"
    USABILITY = "usability"


# Canonical labels, indexed by degree - 1. Monotone continua from the
# "low" extreme to the "high" one.
_LABELS: dict[DimensionKind, tuple[str, str, str, str, str]] = {
    DimensionKind.EXPLICITNESS: (
        "Totally Tacit",
        "More Tacit",
        "Semi-Tacit",
        "More Explicit",
        "Totally Explicit",
    ),
    DimensionKind.NOVELTY: (
        "Known to All",
        "Known in Domain",
        "New to Creator",
        "New to Company",
        "New to World",
    ),
    DimensionKind.IMPORTANCE: (
        "Trivial",
        "Peripheral",
        "Supportive",
        "Core",
        "Strategic",
    ),
    DimensionKind.USABILITY: (
        "Unusable",
        "Personally Usable",
        "Team Usable",
        "Domain Usable",
        "Universally Usable",
    ),
}


def check_degree(kind: DimensionKind | str, degree: object) -> int:
    """Validate a degree value, returning it as a plain int.

    Raises ValidationError naming the dimension when the degree is not an
    integer in [1, 5]. Booleans are rejected even though they subclass int.
    """
    kind = DimensionKind(kind)
    if isinstance(degree, bool) or not isinstance(degree, int):
        raise ValidationError(f"{kind.value} degree must be an integer, got {degree!r}")
    if not MIN_DEGREE <= degree <= MAX_DEGREE:
        raise ValidationError(
            f"{kind.value} degree must be in [{MIN_DEGREE}, {MAX_DEGREE}], got {degree}"
        )
    return degree


def label_of(kind: DimensionKind | str, degree: int) -> str:
    """Return the canonical semantic label for (dimension kind, degree).

    Total over the 4 kinds x 5 degrees; anything else raises ValidationError.
    """
    kind = DimensionKind(kind)
    return _LABELS[kind][check_degree(kind, degree) - 1]


def label_table() -> dict[str, dict[int, str]]:
    """The full 4 x 5 label table, keyed by dimension kind value then degree."""
    return {
        kind.value: {degree: labels[degree - 1] for degree in range(MIN_DEGREE, MAX_DEGREE + 1)}
        for kind, labels in _LABELS.items()
    }
