import { el } from "../dom.js";
import type { AppState } from "../state.js";
import { ApiError } from "../api.js";

export function loginView(state: AppState, onLogin: () => void): HTMLElement {
  const userInput = el("input", { id: "login-user", autocomplete: "username" });
  const passInput = el("input", {
    id: "login-password",
    type: "password",
    autocomplete: "current-password",
  });
  const errorLine = el("p", { class: "field-error hidden" });
  const button = el("button", { type: "submit" }, "Sign in");

  const form = el(
    "form",
    { class: "login-card" },
    el("h1", {}, "knohub"),
    el("p", { class: "muted" }, "knowledge base for engineering design"),
    el("label", { for: "login-user" }, "user"),
    userInput,
    el("label", { for: "login-password" }, "password"),
    passInput,
    errorLine,
    button,
  );

  form.addEventListener("submit", async (event) => {
    event.preventDefault();
    errorLine.classList.add("hidden");
    button.setAttribute("disabled", "");
    try {
      const login = await state.api.login(userInput.value.trim(), passInput.value);
      state.adopt(login);
      onLogin();
    } catch (err) {
      errorLine.textContent = err instanceof ApiError ? err.message : String(err);
      errorLine.classList.remove("hidden");
    } finally {
      button.removeAttribute("disabled");
    }
  });

  return el("div", { class: "login-screen" }, form);
}
