"""Report rendering: delimited element tables plus figure files.

Figures render through the Agg backend so reports work on headless
machines; callers get back the list of files written.
"""

from __future__ import annotations

import csv
from pathlib import Path
from typing import Any

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import networkx as nx

from .core.model import KnowledgeElement

CSV_COLUMNS = (
    "id",
    "version",
    "title",
    "kind",
    "creator",
    "created",
    "ranking",
    "published",
    "logical",
    "explicitness",
    "novelty",
    "importance",
    "usability",
    "keywords",
    "parent",
    "source",
)

_EDGE_STYLES = {"parent-child": "solid", "association": "dashed", "dependency": "dotted"}


def write_elements_csv(elements: list[KnowledgeElement], path: Path) -> Path:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(CSV_COLUMNS)
        for e in elements:
            degrees = e.content.degrees()
            writer.writerow(
                [
                    e.id,
                    str(e.version),
                    e.title,
                    e.kind,
                    e.creator,
                    e.created_date.isoformat(),
                    e.ranking,
                    e.published,
                    e.logical,
                    degrees["explicitness"],
                    degrees["novelty"],
                    degrees["importance"],
                    degrees["usability"],
                    "; ".join(e.keywords),
                    e.parent or "",
                    e.source,
                ]
            )
    return path


def _tree_positions(view: dict[str, Any]) -> tuple[dict[str, tuple[float, float]], list[tuple[str, str]], dict[str, str]]:
    """Classic tidy layout: leaves take consecutive x slots, parents center."""
    positions: dict[str, tuple[float, float]] = {}
    edges: list[tuple[str, str]] = []
    labels: dict[str, str] = {}
    cursor = [0.0]

    def place(node: dict[str, Any], depth: int) -> float:
        labels[node["id"]] = f"{node['id']}\nv{node['version']}"
        if node["children"]:
            xs = []
            for child in node["children"]:
                edges.append((node["id"], child["id"]))
                xs.append(place(child, depth + 1))
            x = sum(xs) / len(xs)
        else:
            x = cursor[0]
            cursor[0] += 1.0
        positions[node["id"]] = (x, -float(depth))
        return x

    for root in view["roots"]:
        place(root, 0)
        cursor[0] += 1.0  # gap between trees
    return positions, edges, labels


def render_tree_png(view: dict[str, Any], path: Path) -> Path:
    positions, edges, labels = _tree_positions(view)
    fig, ax = plt.subplots(figsize=(max(6, len(positions) * 1.1), max(4, view["depth"] * 1.6)))
    for source, target in edges:
        x0, y0 = positions[source]
        x1, y1 = positions[target]
        ax.plot([x0, x1], [y0, y1], color="#888888", zorder=1)
    for node_id, (x, y) in positions.items():
        ax.scatter([x], [y], s=900, color="#dce8f5", edgecolors="#3465a4", zorder=2)
        ax.annotate(labels[node_id], (x, y), ha="center", va="center", fontsize=8, zorder=3)
    ax.set_title(f"Knowledge element versions ({view['scope']} base)")
    ax.axis("off")
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path


def render_network_png(view: dict[str, Any], path: Path) -> Path:
    graph = nx.DiGraph()
    for node in view["nodes"]:
        graph.add_node(node["id"], ranking=node["ranking"])
    for edge in view["edges"]:
        graph.add_edge(edge["source"], edge["target"], kind=edge["kind"])

    fig, ax = plt.subplots(figsize=(8, 6))
    if graph.number_of_nodes():
        positions = nx.spring_layout(graph, seed=7)
        sizes = [400 + 40 * graph.nodes[n]["ranking"] for n in graph.nodes]
        nx.draw_networkx_nodes(
            graph, positions, node_size=sizes, node_color="#dce8f5",
            edgecolors="#3465a4", ax=ax,
        )
        nx.draw_networkx_labels(graph, positions, font_size=8, ax=ax)
        for kind, style in _EDGE_STYLES.items():
            subset = [
                (u, v) for u, v, d in graph.edges(data=True) if d["kind"] == kind
            ]
            if subset:
                nx.draw_networkx_edges(
                    graph, positions, edgelist=subset, style=style,
                    arrows=True, arrowsize=12, ax=ax,
                )
    ax.set_title(f"Knowledge network ({view['scope']} base)")
    ax.axis("off")
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path


def render_report(
    elements: list[KnowledgeElement],
    tree: dict[str, Any],
    network: dict[str, Any],
    out_dir: Path,
) -> list[Path]:
    out_dir.mkdir(parents=True, exist_ok=True)
    return [
        write_elements_csv(elements, out_dir / "elements.csv"),
        render_tree_png(tree, out_dir / "tree.png"),
        render_network_png(network, out_dir / "network.png"),
    ]
