// App shell: top bar (navigation, working-situation control, session),
// hash router, and the auth redirect — a 401 from anywhere drops the
// session and lands on the login screen.

import { clear, el, flash } from "../dom.js";
import type { AppState } from "../state.js";
import { ApiError } from "../api.js";
import { auditView } from "./audit.js";
import { browserView } from "./browser.js";
import { detailView } from "./detail.js";
import { tasksView } from "./tasks.js";
import { agentsView } from "./agents.js";
import { usersView } from "./users.js";

type ViewFactory = (state: AppState) => Promise<HTMLElement>;

const ROUTES: Record<string, ViewFactory> = {
  "": browserView,
  browse: browserView,
  audit: auditView,
  tasks: tasksView,
  agents: agentsView,
  users: usersView,
};

export function mountShell(root: HTMLElement, state: AppState, onLogout: () => void): void {
  const outlet = el("main", { id: "outlet" });

  const navLink = (hash: string, label: string) =>
    el("a", { href: `#/${hash}`, "data-route": hash }, label);

  const situationLabel = el("span", { class: "situation-label muted" }, "no situation");
  const situationButton = el("button", { class: "linkish" }, "open…");

  const refreshSituation = async () => {
    const current = (await state.api.situation()).situation;
    if (current) {
      situationLabel.textContent = `${current.project} / ${current.task}` +
        (current.place ? ` @ ${current.place}` : "");
      situationLabel.classList.remove("muted");
      situationButton.textContent = "close";
    } else {
      situationLabel.textContent = "no situation";
      situationLabel.classList.add("muted");
      situationButton.textContent = "open…";
    }
  };

  situationButton.addEventListener("click", async () => {
    try {
      const open = (await state.api.situation()).situation;
      if (open) {
        await state.api.closeSituation();
        flash(`closed situation ${open.id}`);
      } else {
        const project = window.prompt("project id");
        if (!project) return;
        const task = window.prompt("task id");
        if (!task) return;
        const place = window.prompt("place (optional)") ?? undefined;
        await state.api.openSituation(project.trim(), task.trim(), place || undefined);
        flash(`working on ${project}/${task}`);
      }
      await refreshSituation();
    } catch (err) {
      flash(String(err instanceof ApiError ? err.message : err), "error");
    }
  });

  const logoutButton = el("button", { class: "linkish" }, `sign out ${state.session?.user}`);
  logoutButton.addEventListener("click", async () => {
    await state.api.logout().catch(() => undefined);
    state.drop();
    onLogout();
  });

  const topBar = el(
    "header",
    { class: "top-bar" },
    el("span", { class: "brand" }, "knohub"),
    el("nav", {},
      navLink("browse", "network"),
      navLink("audit", "new knowledge"),
      navLink("tasks", "tasks"),
      navLink("agents", "agents"),
      navLink("users", "users")),
    el("span", { class: "spacer" }),
    el("span", { class: "situation-box" }, situationLabel, situationButton),
    logoutButton,
  );

  const render = async () => {
    const hash = window.location.hash.replace(/^#\/?/, "");
    const [head, arg] = hash.split("/", 2);
    for (const link of topBar.querySelectorAll("a[data-route]")) {
      link.classList.toggle("active", link.getAttribute("data-route") === (head || "browse"));
    }
    clear(outlet);
    outlet.append(el("p", { class: "muted" }, "loading…"));
    try {
      const view =
        head === "element" && arg
          ? await detailView(state, arg)
          : await (ROUTES[head] ?? browserView)(state);
      clear(outlet);
      outlet.append(view);
    } catch (err) {
      if (err instanceof ApiError && err.isAuth) {
        state.drop();
        onLogout();
        return;
      }
      clear(outlet);
      outlet.append(el("p", { class: "field-error" },
        err instanceof ApiError ? err.message : String(err)));
    }
  };

  window.addEventListener("hashchange", () => void render());
  clear(root);
  root.append(topBar, el("div", { id: "flash", class: "flash hidden" }), outlet);
  void refreshSituation();
  void render();
}
