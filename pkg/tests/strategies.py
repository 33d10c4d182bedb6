"""Hypothesis strategies for domain values.

Text is drawn from the XML-representable alphabet: no \\r (parsers
normalize it away) and nothing below \\x20 except \\n and \\t.
"""

from __future__ import annotations

from datetime import datetime, timezone

from hypothesis import strategies as st

from knohub.core import (
    KEYWORD_SEPARATOR,
    Actor,
    ContextRecord,
    KnowledgeContent,
    KnowledgeContext,
    KnowledgeElement,
    Link,
    LinkKind,
    Version,
    slugify,
)

xml_chars = st.characters(min_codepoint=0x20, max_codepoint=0xD7FF) | st.sampled_from("\n\t")


def xml_text(min_size: int = 0, max_size: int = 40) -> st.SearchStrategy[str]:
    return st.text(alphabet=xml_chars, min_size=min_size, max_size=max_size)


nonblank_text = xml_text(min_size=1).filter(lambda s: bool(s.strip()))

element_ids = st.integers(min_value=1, max_value=999_999).map(str)

slugs = st.from_regex(r"[a-z0-9][a-z0-9._-]{0,15}", fullmatch=True)

keywords = st.lists(
    xml_text(min_size=1, max_size=20).filter(lambda s: KEYWORD_SEPARATOR not in s),
    max_size=4,
).map(tuple)

degrees = st.integers(min_value=1, max_value=5)

contents = st.builds(
    KnowledgeContent.from_degrees,
    explicitness=degrees,
    novelty=degrees,
    importance=degrees,
    usability=degrees,
)

instants = st.datetimes(
    min_value=datetime(2000, 1, 1),
    max_value=datetime(2035, 1, 1),
    timezones=st.just(timezone.utc),
)

context_records = st.builds(
    ContextRecord,
    actor=st.builds(Actor, user=nonblank_text, team=xml_text(max_size=10)),
    timestamp=instants,
    task=st.none() | xml_text(max_size=10),
    place=xml_text(max_size=20),
    resources=st.lists(xml_text(min_size=1, max_size=15), max_size=3).map(tuple),
)

contexts = st.builds(
    KnowledgeContext,
    creation=context_records,
    usages=st.lists(context_records, max_size=3).map(tuple),
)

versions = st.builds(
    Version, major=st.integers(min_value=0, max_value=4), minor=st.integers(min_value=0, max_value=9)
)

links = st.lists(
    st.builds(Link, target=element_ids, kind=st.sampled_from(LinkKind)), max_size=3
).map(tuple)


@st.composite
def elements(draw: st.DrawFn, *, element_id: st.SearchStrategy[str] | None = None) -> KnowledgeElement:
    title = draw(nonblank_text)
    return KnowledgeElement(
        id=draw(element_id or element_ids),
        title=title,
        kind=draw(xml_text(max_size=20)),
        keywords=draw(keywords),
        description=draw(xml_text(max_size=60)),
        creator=draw(nonblank_text),
        created_date=draw(st.dates()),
        version=draw(versions),
        parent=draw(st.none() | element_ids),
        source=draw(xml_text(max_size=20)),
        published=draw(st.booleans()),
        logical=draw(st.booleans()),
        ranking=draw(st.integers(min_value=0, max_value=50)),
        slug=draw(st.one_of(st.just(slugify(title)), slugs)),
        content=draw(contents),
        context=draw(contexts),
        links=draw(links),
    )
