import { AppState } from "./state.js";
import { mountShell } from "./views/shell.js";
import { loginView } from "./views/login.js";
import { clear } from "./dom.js";

const root = document.getElementById("app")!;
const state = new AppState();

function showLogin(): void {
  clear(root);
  root.append(loginView(state, showShell));
}

function showShell(): void {
  mountShell(root, state, showLogin);
}

if (state.restore()) showShell();
else showLogin();
