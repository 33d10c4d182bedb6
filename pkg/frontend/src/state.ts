// Per-tab session. sessionStorage keeps the token out of other tabs —
// one session per tab, reload-safe, gone when the tab closes.

import { ApiClient } from "./api.js";
import type { LoginResponse } from "./types.js";

const KEY = "knohub.session";

export interface SessionInfo {
  token: string;
  user: string;
  team: string;
  is_admin: boolean;
}

export class AppState {
  readonly api = new ApiClient();
  session: SessionInfo | null = null;

  restore(): boolean {
    const raw = sessionStorage.getItem(KEY);
    if (!raw) return false;
    try {
      this.session = JSON.parse(raw) as SessionInfo;
      this.api.setToken(this.session.token);
      return true;
    } catch {
      sessionStorage.removeItem(KEY);
      return false;
    }
  }

  adopt(login: LoginResponse): void {
    this.session = {
      token: login.token,
      user: login.user,
      team: login.team,
      is_admin: login.is_admin,
    };
    this.api.setToken(login.token);
    sessionStorage.setItem(KEY, JSON.stringify(this.session));
  }

  drop(): void {
    this.session = null;
    this.api.setToken(null);
    sessionStorage.removeItem(KEY);
  }
}
