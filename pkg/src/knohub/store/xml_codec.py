"""XML interchange for knowledge elements.

Document shape (UTF-8):

    <Exported_Kn_element>
      <New_Kn_ele_{id}_{slug}_v{major}.{minor}>
        <basic_attributes>
          <kn_title>...  <kn_type>...  <kn_keyword>a; b; c</kn_keyword>
          <kn_description>...  <kn_creator>...  <kn_date>2010-08-31</kn_date>
          <kn_version>1.0  <kn_parent/>  <kn_source>...
          <kn_published>false  <kn_logical>true  <kn_ranking>10
        </basic_attributes>
        <knowledge_content>
          <explicitness_dimension value_degree="2" semantic_degree="More Tacit"/>
          ... novelty / importance / usability ...
        </knowledge_content>
        <knowledge_context>
          <creation_context>...</creation_context>
          <usage_contexts><usage_context>...</usage_context>*</usage_contexts>
        </knowledge_context>
        <relations><relation target="1001" kind="association"/>*</relations>
      </New_Kn_ele_...>
    </Exported_Kn_element>

Context records serialize their fields as child text elements so line
breaks survive (XML normalizes whitespace inside attributes, not text).
On import the numeric value_degree is authoritative; a semantic_degree
that disagrees with it produces a warning and is dropped.
"""

from __future__ import annotations

import re
import warnings
import xml.etree.ElementTree as ET
from datetime import date
from typing import Iterable

from ..core.dimensions import DimensionKind, label_of
from ..core.model import (
    KEYWORD_SEPARATOR,
    Actor,
    ContextRecord,
    KnowledgeContent,
    KnowledgeContext,
    KnowledgeElement,
    Link,
    Version,
)
from ..errors import ParseError
from .serde import parse_instant

ROOT_TAG = "Exported_Kn_element"

_NAME_RE = re.compile(r"New_Kn_ele_(?P<id>[^_]+)_(?P<slug>.+)_v(?P<major>\d+)\.(?P<minor>\d+)")

_BASIC_FIELDS = (
    "kn_title",
    "kn_type",
    "kn_keyword",
    "kn_description",
    "kn_creator",
    "kn_date",
    "kn_version",
    "kn_parent",
    "kn_source",
    "kn_published",
    "kn_logical",
    "kn_ranking",
)


# -- export -----------------------------------------------------------------


def _bool_text(value: bool) -> str:
    return "true" if value else "false"


def _context_record_xml(tag: str, record: ContextRecord) -> ET.Element:
    node = ET.Element(tag)
    ET.SubElement(node, "actor_user").text = record.actor.user
    ET.SubElement(node, "actor_team").text = record.actor.team
    ET.SubElement(node, "timestamp").text = record.timestamp.isoformat()
    if record.task is not None:
        ET.SubElement(node, "task").text = record.task
    ET.SubElement(node, "place").text = record.place
    for resource in record.resources:
        ET.SubElement(node, "resource").text = resource
    return node


def element_to_xml(element: KnowledgeElement) -> ET.Element:
    container = ET.Element(element.xml_name)

    basic = ET.SubElement(container, "basic_attributes")
    values = {
        "kn_title": element.title,
        "kn_type": element.kind,
        "kn_keyword": KEYWORD_SEPARATOR.join(element.keywords),
        "kn_description": element.description,
        "kn_creator": element.creator,
        "kn_date": element.created_date.isoformat(),
        "kn_version": str(element.version),
        "kn_parent": element.parent or "",
        "kn_source": element.source,
        "kn_published": _bool_text(element.published),
        "kn_logical": _bool_text(element.logical),
        "kn_ranking": str(element.ranking),
    }
    for field in _BASIC_FIELDS:
        ET.SubElement(basic, field).text = values[field]

    content = ET.SubElement(container, "knowledge_content")
    for kind in DimensionKind:
        value = getattr(element.content, kind.value)
        ET.SubElement(
            content,
            f"{kind.value}_dimension",
            {"value_degree": str(value.degree), "semantic_degree": value.label},
        )

    context = ET.SubElement(container, "knowledge_context")
    context.append(_context_record_xml("creation_context", element.context.creation))
    usages = ET.SubElement(context, "usage_contexts")
    for usage in element.context.usages:
        usages.append(_context_record_xml("usage_context", usage))

    if element.links:
        relations = ET.SubElement(container, "relations")
        for link in element.links:
            ET.SubElement(relations, "relation", {"target": link.target, "kind": link.kind.value})
    return container


def export_xml(elements: Iterable[KnowledgeElement]) -> str:
    root = ET.Element(ROOT_TAG)
    for element in elements:
        root.append(element_to_xml(element))
    ET.indent(root, space="  ")
    body = ET.tostring(root, encoding="unicode")
    return f'<?xml version="1.0" encoding="UTF-8"?>\n{body}\n'


# -- import -----------------------------------------------------------------


def _text(parent: ET.Element, tag: str, *, where: str) -> str:
    node = parent.find(tag)
    if node is None:
        raise ParseError(f"{where}: missing <{tag}>")
    return node.text or ""


def _parse_bool(raw: str, tag: str, where: str) -> bool:
    value = raw.strip().lower()
    if value not in ("true", "false"):
        raise ParseError(f"{where}: <{tag}> must be true or false, got {raw!r}")
    return value == "true"


def _context_record_from_xml(node: ET.Element, where: str) -> ContextRecord:
    task_node = node.find("task")
    try:
        timestamp = parse_instant(_text(node, "timestamp", where=where))
    except ValueError as exc:
        raise ParseError(f"{where}: bad timestamp: {exc}") from exc
    return ContextRecord(
        actor=Actor(
            user=_text(node, "actor_user", where=where),
            team=node.findtext("actor_team") or "",
        ),
        timestamp=timestamp,
        task=task_node.text or "" if task_node is not None else None,
        place=node.findtext("place") or "",
        resources=tuple(r.text or "" for r in node.findall("resource")),
    )


def _element_from_xml(container: ET.Element, position: int) -> KnowledgeElement:
    where = f"element #{position} <{container.tag}>"
    name = _NAME_RE.fullmatch(container.tag)
    if name is None:
        raise ParseError(f"{where}: name does not match New_Kn_ele_{{id}}_{{slug}}_v{{version}}")
    version = Version(int(name.group("major")), int(name.group("minor")))

    basic = container.find("basic_attributes")
    if basic is None:
        raise ParseError(f"{where}: missing <basic_attributes>")
    raw = {field: _text(basic, field, where=where) for field in _BASIC_FIELDS}
    if Version.parse(raw["kn_version"]) != version:
        raise ParseError(
            f"{where}: kn_version {raw['kn_version']} disagrees with element name"
        )
    try:
        created = date.fromisoformat(raw["kn_date"])
    except ValueError as exc:
        raise ParseError(f"{where}: bad kn_date: {exc}") from exc
    try:
        ranking = int(raw["kn_ranking"])
    except ValueError as exc:
        raise ParseError(f"{where}: bad kn_ranking: {exc}") from exc

    content_node = container.find("knowledge_content")
    if content_node is None:
        raise ParseError(f"{where}: missing <knowledge_content>")
    degrees: dict[str, int] = {}
    for kind in DimensionKind:
        dim = content_node.find(f"{kind.value}_dimension")
        if dim is None:
            raise ParseError(f"{where}: missing <{kind.value}_dimension>")
        try:
            degree = int(dim.get("value_degree", ""))
        except ValueError as exc:
            raise ParseError(f"{where}: bad value_degree on {kind.value}") from exc
        semantic = dim.get("semantic_degree")
        if semantic is not None and semantic != label_of(kind, degree):
            warnings.warn(
                f"{where}: semantic_degree {semantic!r} disagrees with "
                f"{kind.value} degree {degree}; degree wins",
                stacklevel=2,
            )
        degrees[kind.value] = degree

    context_node = container.find("knowledge_context")
    if context_node is None:
        raise ParseError(f"{where}: missing <knowledge_context>")
    creation_node = context_node.find("creation_context")
    if creation_node is None:
        raise ParseError(f"{where}: missing <creation_context>")
    usages_node = context_node.find("usage_contexts")
    usage_nodes = usages_node.findall("usage_context") if usages_node is not None else []

    links: list[Link] = []
    relations = container.find("relations")
    if relations is not None:
        for relation in relations.findall("relation"):
            target = relation.get("target")
            kind_attr = relation.get("kind")
            if not target or not kind_attr:
                raise ParseError(f"{where}: <relation> needs target and kind attributes")
            links.append(Link(target=target, kind=kind_attr))

    keywords_raw = raw["kn_keyword"]
    keywords = tuple(keywords_raw.split(KEYWORD_SEPARATOR)) if keywords_raw else ()

    return KnowledgeElement(
        id=name.group("id"),
        title=raw["kn_title"],
        kind=raw["kn_type"],
        keywords=keywords,
        description=raw["kn_description"],
        creator=raw["kn_creator"],
        created_date=created,
        version=version,
        parent=raw["kn_parent"] or None,
        source=raw["kn_source"],
        published=_parse_bool(raw["kn_published"], "kn_published", where),
        logical=_parse_bool(raw["kn_logical"], "kn_logical", where),
        ranking=ranking,
        slug=name.group("slug"),
        content=KnowledgeContent.from_degrees(**degrees),
        context=KnowledgeContext(
            creation=_context_record_from_xml(creation_node, where),
            usages=tuple(_context_record_from_xml(u, where) for u in usage_nodes),
        ),
        links=tuple(links),
    )


def import_xml(document: str) -> list[KnowledgeElement]:
    try:
        root = ET.fromstring(document)
    except ET.ParseError as exc:
        # The underlying message already carries "line N, column M".
        raise ParseError(f"malformed XML: {exc}") from exc
    if root.tag != ROOT_TAG:
        raise ParseError(f"expected <{ROOT_TAG}> root, got <{root.tag}>")
    return [_element_from_xml(child, i) for i, child in enumerate(root, start=1)]
