"""Tree (lineage) and network (relationship) views over a set of elements.

Views are read-only projections: logically deleted elements never
appear, tree edges are exactly the parent-child lineage, and network
edges carry their relation kind so a renderer can style them.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterable, Mapping

from ..core.model import KnowledgeElement
from .base import id_sort_key

PARENT_CHILD = "parent-child"

Selector = Callable[[KnowledgeElement], bool]


@dataclass(frozen=True)
class TreeNode:
    id: str
    title: str
    version: str
    children: tuple["TreeNode", ...] = ()

    def walk(self) -> Iterable["TreeNode"]:
        yield self
        for child in self.children:
            yield from child.walk()


@dataclass(frozen=True)
class KnowledgeTreeView:
    roots: tuple[TreeNode, ...] = ()

    def node_count(self) -> int:
        return sum(1 for root in self.roots for _ in root.walk())

    def depth(self) -> int:
        def deep(node: TreeNode) -> int:
            return 1 + max((deep(c) for c in node.children), default=0)

        return max((deep(r) for r in self.roots), default=0)


@dataclass(frozen=True)
class NetworkNode:
    id: str
    title: str
    ranking: int
    degrees: Mapping[str, int] = field(default_factory=dict)


@dataclass(frozen=True)
class NetworkEdge:
    source: str
    target: str
    kind: str  # parent-child | association | dependency


@dataclass(frozen=True)
class KnowledgeNetworkView:
    nodes: tuple[NetworkNode, ...] = ()
    edges: tuple[NetworkEdge, ...] = ()


def build_tree(
    elements: Iterable[KnowledgeElement], *, roots: Iterable[str] | None = None
) -> KnowledgeTreeView:
    """Lineage forest; ``roots`` restricts the view to the given subtrees."""
    live = {e.id: e for e in elements if e.logical}
    children: dict[str, list[KnowledgeElement]] = {}
    top: list[KnowledgeElement] = []
    for element in live.values():
        if element.parent is not None and element.parent in live:
            children.setdefault(element.parent, []).append(element)
        else:
            top.append(element)

    def order(items: list[KnowledgeElement]) -> list[KnowledgeElement]:
        return sorted(items, key=lambda e: (e.version, id_sort_key(e.id)))

    def node_for(element: KnowledgeElement) -> TreeNode:
        kids = tuple(node_for(child) for child in order(children.get(element.id, [])))
        return TreeNode(element.id, element.title, str(element.version), kids)

    if roots is not None:
        wanted = set(roots)
        top = [live[i] for i in wanted if i in live]
    return KnowledgeTreeView(roots=tuple(node_for(e) for e in order(top)))


def build_network(
    elements: Iterable[KnowledgeElement], *, selector: Selector | None = None
) -> KnowledgeNetworkView:
    """Relationship graph around the selected elements.

    Nodes are the elements matching ``selector`` (all live elements when
    None) plus their one-hop neighbors over every edge kind the view
    draws — lineage as well as association/dependency links, in either
    direction; edges are every lineage/association/dependency pair with
    both endpoints present.
    """
    live = {e.id: e for e in elements if e.logical}
    selected = {e.id for e in live.values() if selector is None or selector(e)}
    node_ids = set(selected)
    for element in live.values():
        if element.id in selected:
            node_ids.update(t for t in (l.target for l in element.links) if t in live)
            if element.parent in live:
                node_ids.add(element.parent)
        elif element.parent in selected or any(
            link.target in selected for link in element.links
        ):
            node_ids.add(element.id)

    nodes = tuple(
        NetworkNode(
            id=e.id, title=e.title, ranking=e.ranking, degrees=e.content.degrees()
        )
        for e in sorted(
            (live[i] for i in node_ids), key=lambda e: id_sort_key(e.id)
        )
    )
    edges: list[NetworkEdge] = []
    for element in (live[i] for i in sorted(node_ids, key=id_sort_key)):
        if element.parent in node_ids:
            edges.append(NetworkEdge(element.parent, element.id, PARENT_CHILD))
        for link in element.links:
            if link.target in node_ids:
                edges.append(NetworkEdge(element.id, link.target, link.kind.value))
    return KnowledgeNetworkView(nodes=nodes, edges=tuple(edges))
