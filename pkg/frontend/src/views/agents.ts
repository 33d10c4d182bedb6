// Agent directory plus the ask-the-network box: peer query fans out to
// every online agent and lists which published elements they hold for
// the given terms.

import { clear, el } from "../dom.js";
import type { AppState } from "../state.js";

export async function agentsView(state: AppState): Promise<HTMLElement> {
  const rows = await state.api.agents();

  const table = el(
    "table",
    { class: "detail-table agents-table" },
    el("tr", {},
      el("th", {}, "agent"), el("th", {}, "owner"),
      el("th", {}, "status"), el("th", {}, "last heartbeat")),
    ...rows.map((row) =>
      el("tr", {},
        el("td", {}, row.agent_id),
        el("td", {}, row.owner),
        el("td", {},
          el("span", { class: `badge badge-${row.status === "offline" ? "off" : "on"}` },
            row.status)),
        el("td", {}, row.last_heartbeat))),
  );

  const termsInput = el("input", { placeholder: "terms, e.g. formage tole" });
  const askButton = el("button", { type: "submit" }, "ask peers");
  const answers = el("div", { class: "peer-answers" });

  const form = el("form", { class: "peer-form" }, termsInput, askButton);
  form.addEventListener("submit", async (event) => {
    event.preventDefault();
    const terms = termsInput.value.split(/\s+/).filter((t) => t.length > 0);
    if (terms.length === 0) return;
    const result = await state.api.peerQuery(terms);
    clear(answers);
    if (result.peers.length === 0) {
      answers.append(el("p", { class: "muted" }, "no online peer holds matching knowledge"));
      return;
    }
    for (const peer of result.peers) {
      answers.append(
        el("div", { class: "peer-answer" },
          el("strong", {}, peer.owner),
          ` (${peer.agent_id}): `,
          ...peer.element_ids.flatMap((id, i) => [
            i > 0 ? ", " : "",
            el("a", { href: `#/element/${id}` }, id),
          ])));
    }
  });

  return el(
    "section",
    { class: "agents-screen" },
    el("h2", {}, "Knowledge agents"),
    table,
    el("h3", {}, "ask the network"),
    form,
    answers,
  );
}
