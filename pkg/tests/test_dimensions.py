import pytest
from hypothesis import given
from hypothesis import strategies as st

from knohub.core import DimensionKind, check_degree, label_of, label_table
from knohub.errors import ValidationError

# Sample points observed in real exports; the rest of the tables are
# interpolated monotone scales.
ANCHORS = [
    (DimensionKind.EXPLICITNESS, 2, "More Tacit"),
    (DimensionKind.NOVELTY, 3, "New to Creator"),
    (DimensionKind.IMPORTANCE, 4, "Core"),
    (DimensionKind.USABILITY, 4, "Domain Usable"),
]


@pytest.mark.parametrize("kind,degree,label", ANCHORS)
def test_anchor_labels(kind, degree, label):
    assert label_of(kind, degree) == label


def test_full_explicitness_scale():
    scale = [label_of(DimensionKind.EXPLICITNESS, d) for d in range(1, 6)]
    assert scale == ["Totally Tacit", "More Tacit", "Semi-Tacit", "More Explicit", "Totally Explicit"]


def test_label_of_total_and_injective_per_kind():
    for kind in DimensionKind:
        labels = [label_of(kind, d) for d in range(1, 6)]
        assert len(set(labels)) == 5


@pytest.mark.parametrize("bad", [0, 6, -1, 100])
def test_degree_out_of_range_names_dimension(bad):
    with pytest.raises(ValidationError, match="novelty"):
        label_of(DimensionKind.NOVELTY, bad)


@pytest.mark.parametrize("bad", [1.5, "3", None, True])
def test_non_integer_degree_rejected(bad):
    with pytest.raises(ValidationError):
        check_degree(DimensionKind.USABILITY, bad)


def test_label_table_shape():
    table = label_table()
    assert set(table) == {k.value for k in DimensionKind}
    for per_kind in table.values():
        assert sorted(per_kind) == [1, 2, 3, 4, 5]


@given(kind=st.sampled_from(DimensionKind), degree=st.integers(min_value=1, max_value=5))
def test_label_matches_table(kind, degree):
    assert label_of(kind, degree) == label_table()[kind.value][degree]
