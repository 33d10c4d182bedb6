// Knowledge network browser: filter panel on the left, lineage tree and
// force-directed network view side by side. Clicking a node anywhere
// opens the element detail.

import { clear, el, svgEl } from "../dom.js";
import type { AppState } from "../state.js";
import { ForceLayout } from "../layout/force.js";
import { EDGE_STYLE, toGraphModel } from "../viewmodel/network.js";
import type { GraphModel } from "../viewmodel/network.js";
import { TreeModel } from "../viewmodel/tree.js";
import { emptyFilters, toQuery } from "../viewmodel/search.js";
import { DIMENSION_KINDS } from "../types.js";
import type { Scope, SearchHit } from "../types.js";

const WIDTH = 820;
const HEIGHT = 560;

export async function browserView(state: AppState): Promise<HTMLElement> {
  const panel = emptyFilters();
  const container = el("section", { class: "browser-screen" });

  const termsInput = el("input", { id: "filter-terms", placeholder: "search terms" });
  const kindInput = el("input", { id: "filter-kind", placeholder: "any kind" });
  const scopeSelect = el("select", { id: "filter-scope" },
    ...(["shared", "personal", "both"] as Scope[]).map((s) =>
      el("option", { value: s, selected: s === panel.scope }, s)));
  const unpublishedBox = el("input", { type: "checkbox", id: "filter-unpublished" });
  const rangeInputs = DIMENSION_KINDS.map((kind) => {
    const lo = el("input", { type: "number", min: "1", max: "5", class: "range-bound" });
    const hi = el("input", { type: "number", min: "1", max: "5", class: "range-bound" });
    return { kind, lo, hi };
  });
  const resultsList = el("ul", { class: "hit-list" });
  const searchButton = el("button", { type: "submit" }, "search");

  const filterForm = el(
    "form",
    { class: "filter-panel" },
    el("h3", {}, "filters"),
    termsInput,
    kindInput,
    el("label", {}, "scope ", scopeSelect),
    el("label", { class: "checkbox-row" }, unpublishedBox, " include unpublished (personal)"),
    el("details", {},
      el("summary", {}, "dimension ranges"),
      ...rangeInputs.map((r) =>
        el("div", { class: "range-row" },
          el("span", {}, r.kind), r.lo, el("span", {}, "–"), r.hi))),
    searchButton,
    resultsList,
  );

  const renderHits = (hits: SearchHit[]) => {
    clear(resultsList);
    if (hits.length === 0) {
      resultsList.append(el("li", { class: "muted" }, "no hits"));
      return;
    }
    for (const hit of hits) {
      const link = el("a", { href: `#/element/${hit.id}` },
        `${hit.id} · ${hit.element.title}`);
      resultsList.append(el("li", {}, link, el("span", { class: "muted" }, ` score ${hit.score}`)));
    }
  };

  filterForm.addEventListener("submit", async (event) => {
    event.preventDefault();
    panel.terms = termsInput.value;
    panel.kind = kindInput.value;
    panel.scope = scopeSelect.value as Scope;
    panel.includeUnpublished = unpublishedBox.checked;
    for (const r of rangeInputs) {
      panel.ranges[r.kind] = {
        lo: r.lo.value ? Number(r.lo.value) : null,
        hi: r.hi.value ? Number(r.hi.value) : null,
      };
    }
    const query = toQuery(panel);
    if (!query) {
      renderHits([]);
      resultsList.append(el("li", { class: "muted" }, "give terms, a kind, or a range"));
      return;
    }
    const response = await state.api.search(query);
    renderHits(response.hits);
    if (response.degraded) {
      resultsList.prepend(el("li", { class: "muted" }, "(degraded results — server busy)"));
    }
  });

  // --- tree ----------------------------------------------------------
  const treePane = el("div", { class: "tree-pane" }, el("h3", {}, "lineage"));
  const treeList = el("div", { class: "tree-rows" });
  treePane.append(treeList);

  const renderTree = (model: TreeModel) => {
    clear(treeList);
    for (const row of model.rows()) {
      const twist = row.hasChildren ? (row.collapsed ? "▸" : "▾") : "·";
      const twistButton = el("button", { class: "twist" }, twist);
      twistButton.addEventListener("click", () => {
        model.toggle(row.id);
        renderTree(model);
      });
      const link = el("a", { href: `#/element/${row.id}` }, `${row.title} v${row.version}`);
      const rowNode = el("div", { class: "tree-row" }, twistButton, link);
      rowNode.style.paddingLeft = `${row.depth * 1.4}em`;
      treeList.append(rowNode);
    }
  };

  // --- network -------------------------------------------------------
  const netPane = el("div", { class: "net-pane" }, el("h3", {}, "network"));
  const svg = svgEl("svg", { viewBox: `0 0 ${WIDTH} ${HEIGHT}`, class: "net-svg" });
  netPane.append(svg);
  const legend = el("div", { class: "legend" },
    ...Object.entries(EDGE_STYLE).map(([kind, style]) =>
      el("span", { class: `legend-item legend-${kind}` }, style.label)));
  netPane.append(legend);

  const layout = new ForceLayout({ width: WIDTH, height: HEIGHT, seed: 11 });
  let animating = 0;

  const renderNetwork = (model: GraphModel) => {
    layout.setGraph(model.nodes.map((n) => n.id), model.edges);
    layout.settle(60); // rough placement; animation finishes the job
    clear(svg);

    const edgeLines = model.edges.map((edge) => {
      const line = svgEl("line", {
        class: `edge edge-${edge.kind}`,
        "stroke-dasharray": EDGE_STYLE[edge.kind].dash,
      });
      svg.append(line);
      return { edge, line };
    });
    const nodeGroups = model.nodes.map((node) => {
      const group = svgEl("g", { class: "node" });
      const circle = svgEl("circle", { r: node.radius });
      const text = svgEl("text", { dy: -node.radius - 4 });
      text.textContent = `${node.id} ${node.title}`;
      group.append(circle, text);
      group.addEventListener("click", () => {
        window.location.hash = `#/element/${node.id}`;
      });
      svg.append(group);
      return { node, group };
    });

    const position = () => {
      for (const { edge, line } of edgeLines) {
        const a = layout.node(edge.source);
        const b = layout.node(edge.target);
        if (!a || !b) continue;
        line.setAttribute("x1", String(a.x));
        line.setAttribute("y1", String(a.y));
        line.setAttribute("x2", String(b.x));
        line.setAttribute("y2", String(b.y));
      }
      for (const { node, group } of nodeGroups) {
        const p = layout.node(node.id);
        if (p) group.setAttribute("transform", `translate(${p.x},${p.y})`);
      }
    };

    position();
    window.cancelAnimationFrame(animating);
    const tick = () => {
      const energy = layout.step();
      position();
      if (energy > 0.05) animating = window.requestAnimationFrame(tick);
    };
    animating = window.requestAnimationFrame(tick);
  };

  const refresh = async () => {
    const scope = scopeSelect.value === "personal" ? "personal" : "shared";
    const [treeResp, netResp] = await Promise.all([
      state.api.tree(scope as Scope),
      state.api.network(scope as Scope),
    ]);
    renderTree(new TreeModel(treeResp));
    renderNetwork(toGraphModel(netResp));
  };

  scopeSelect.addEventListener("change", () => void refresh());
  await refresh();

  container.append(
    el("h2", {}, "Knowledge network"),
    el("div", { class: "browser-layout" }, filterForm, treePane, netPane),
  );
  return container;
}
