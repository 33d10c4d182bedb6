// User management — listing for everyone, account creation for admins.

import { el, flash } from "../dom.js";
import type { AppState } from "../state.js";
import { ApiError } from "../api.js";

export async function usersView(state: AppState): Promise<HTMLElement> {
  const [who, users] = await Promise.all([state.api.whoami(), state.api.users()]);

  const table = el(
    "table",
    { class: "detail-table" },
    el("tr", {}, el("th", {}, "user"), el("th", {}, "team"), el("th", {}, "role")),
    ...users.map((u) =>
      el("tr", {},
        el("td", {}, u.name),
        el("td", {}, u.team),
        el("td", {}, u.is_admin ? "admin" : "member"))),
  );

  const section = el("section", { class: "users-screen" },
    el("h2", {}, "Users"), table);

  if (who.is_admin) {
    const nameInput = el("input", { placeholder: "name" });
    const passwordInput = el("input", { placeholder: "password", type: "password" });
    const teamInput = el("input", { placeholder: "team" });
    const adminBox = el("input", { type: "checkbox", id: "new-admin" });
    const addButton = el("button", { type: "submit" }, "add user");
    const form = el("form", { class: "user-form" },
      nameInput, passwordInput, teamInput,
      el("label", { for: "new-admin" }, adminBox, " admin"),
      addButton);
    form.addEventListener("submit", async (event) => {
      event.preventDefault();
      try {
        const created = await state.api.addUser(
          nameInput.value.trim(),
          passwordInput.value,
          teamInput.value.trim() || undefined,
          adminBox.checked,
        );
        flash(`added ${created.name} (${created.team})`);
        window.dispatchEvent(new HashChangeEvent("hashchange")); // re-render
      } catch (err) {
        flash(String(err instanceof ApiError ? err.message : err), "error");
      }
    });
    section.append(el("h3", {}, "add account"), form);
  }

  return section;
}
