// Task board: one column per task state. Cards show the event buttons
// their state offers (per the server's transition table) and a form to
// record a (partial) solution.

import { el, flash } from "../dom.js";
import type { AppState } from "../state.js";
import { ApiError } from "../api.js";
import { boardColumns, eventOffers, historyLines } from "../viewmodel/taskboard.js";
import type { Task, TransitionRow } from "../types.js";

export async function tasksView(state: AppState): Promise<HTMLElement> {
  const [table, projects] = await Promise.all([
    state.api.taskEvents() as Promise<TransitionRow[]>,
    state.api.projects(),
  ]);

  const container = el("section", { class: "tasks-screen" });
  const projectSelect = el("select", {},
    el("option", { value: "" }, "all projects"),
    ...projects.map((p) => el("option", { value: p.id }, `${p.id} — ${p.title}`)));
  const board = el("div", { class: "board" });

  const taskCard = (task: Task): HTMLElement => {
    const offers = eventOffers(table, task);
    const buttons = offers.map((offer) => {
      const button = el("button",
        { disabled: !offer.enabled, title: offer.reason ?? `→ ${offer.next}` },
        offer.event.replaceAll("_", " "));
      button.addEventListener("click", async () => {
        try {
          await state.api.taskStep(task.id, offer.event);
          flash(`${task.id}: ${offer.event} → ${offer.next}`);
          await refresh();
        } catch (err) {
          flash(String(err instanceof ApiError ? err.message : err), "error");
        }
      });
      return button;
    });

    const solutionInput = el("input", { placeholder: "element id" });
    const noteInput = el("input", { placeholder: "note (optional)" });
    const solutionButton = el("button", {}, "record solution");
    solutionButton.addEventListener("click", async () => {
      const elementId = solutionInput.value.trim();
      if (!elementId) return;
      try {
        await state.api.taskSolution(task.id, elementId, noteInput.value.trim() || undefined);
        flash(`${task.id}: solution ${elementId} recorded`);
        await refresh();
      } catch (err) {
        flash(String(err instanceof ApiError ? err.message : err), "error");
      }
    });

    const history = el("details", {},
      el("summary", {}, `history (${task.history.length})`),
      el("pre", { class: "history" }, historyLines(task).join("\n")));

    const solutions =
      task.partial_solutions.length === 0
        ? null
        : el("ul", { class: "solution-list" },
            ...task.partial_solutions.map((s) =>
              el("li", {},
                el("a", { href: `#/element/${s.element_id}` }, s.element_id),
                s.note ? ` — ${s.note}` : "")));

    return el(
      "article",
      { class: "task-card" },
      el("h4", {}, `${task.id} · ${task.title}`),
      el("p", { class: "muted" },
        `${task.project} · ${task.assignee}${task.innovative ? " · innovative" : ""}`),
      solutions,
      buttons.length > 0 ? el("div", { class: "event-buttons" }, ...buttons) : null,
      offers.length === 0 ? el("p", { class: "muted" }, "terminal") : null,
      task.state === "Solved"
        ? null
        : el("div", { class: "solution-form" }, solutionInput, noteInput, solutionButton),
      history,
    );
  };

  const refresh = async () => {
    const tasks = await state.api.tasks(projectSelect.value || undefined);
    board.replaceChildren(
      ...boardColumns(tasks).map((column) =>
        el("div", { class: "board-column" },
          el("h3", {}, `${column.state} (${column.tasks.length})`),
          ...column.tasks.map(taskCard)),
      ),
    );
  };

  projectSelect.addEventListener("change", () => void refresh());
  await refresh();

  container.append(
    el("h2", {}, "Task board"),
    el("div", { class: "board-controls" }, projectSelect),
    board,
  );
  return container;
}
