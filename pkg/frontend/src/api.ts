// Thin fetch client for the hub protocol. One method per route; every
// response body passes through untouched so views render exactly what
// the server said.

import type {
  AgentRow,
  CreateResponse,
  ElementEnvelope,
  ErrorEnvelope,
  EvaluateResponse,
  EvaluationRow,
  LoginResponse,
  NetworkResponse,
  PeerAnswer,
  ProjectRow,
  PublishResponse,
  Scope,
  SearchQuery,
  SearchResponse,
  Situation,
  Task,
  TreeResponse,
  UserRow,
  UseResponse,
  WhoamiResponse,
} from "./types.js";

export class ApiError extends Error {
  readonly status: number;
  readonly kind: string;

  constructor(status: number, envelope: ErrorEnvelope) {
    super(envelope.detail);
    this.status = status;
    this.kind = envelope.error;
  }

  /** expired or missing token — the shell redirects to login on these */
  get isAuth(): boolean {
    return this.status === 401;
  }
}

export function parseError(status: number, body: unknown): ApiError {
  const env = body as Partial<ErrorEnvelope>;
  if (env && typeof env.error === "string" && typeof env.detail === "string") {
    return new ApiError(status, { error: env.error, detail: env.detail });
  }
  return new ApiError(status, { error: "HttpError", detail: `HTTP ${status}` });
}

export interface ElementDraft {
  title: string;
  kind: string;
  keywords: string[];
  description: string;
  source: string;
  content: Record<string, number>;
  slug?: string;
  links?: { target: string; kind: string }[];
}

export class ApiClient {
  private token: string | null = null;

  constructor(private base: string = "") {}

  setToken(token: string | null): void {
    this.token = token;
  }

  private async request<T>(method: string, path: string, body?: unknown): Promise<T> {
    const headers: Record<string, string> = {};
    if (this.token) headers["Authorization"] = `Bearer ${this.token}`;
    let payload: string | undefined;
    if (body !== undefined) {
      headers["Content-Type"] = "application/json";
      payload = JSON.stringify(body);
    }
    const resp = await fetch(this.base + path, { method, headers, body: payload });
    const data = await resp.json().catch(() => null);
    if (!resp.ok) throw parseError(resp.status, data);
    return data as T;
  }

  private get<T>(path: string): Promise<T> {
    return this.request<T>("GET", path);
  }

  // sessions and accounts
  login(user: string, password: string): Promise<LoginResponse> {
    return this.request("POST", "/api/login", { user, password });
  }
  logout(): Promise<{ ok: boolean }> {
    return this.request("POST", "/api/logout");
  }
  whoami(): Promise<WhoamiResponse> {
    return this.get("/api/whoami");
  }
  users(): Promise<UserRow[]> {
    return this.get("/api/users");
  }
  addUser(name: string, password: string, team?: string, isAdmin?: boolean): Promise<UserRow> {
    return this.request("POST", "/api/users", {
      name,
      password,
      team,
      is_admin: isAdmin,
    });
  }

  // elements
  createElement(draft: ElementDraft): Promise<CreateResponse> {
    return this.request("POST", "/api/elements", draft);
  }
  getElement(id: string): Promise<ElementEnvelope> {
    return this.get(`/api/elements/${encodeURIComponent(id)}`);
  }
  publish(id: string): Promise<PublishResponse> {
    return this.request("POST", `/api/elements/${encodeURIComponent(id)}/publish`);
  }
  evaluate(id: string, score: number): Promise<EvaluateResponse> {
    return this.request("POST", `/api/elements/${encodeURIComponent(id)}/evaluate`, { score });
  }
  evaluations(id: string): Promise<EvaluationRow[]> {
    return this.get(`/api/elements/${encodeURIComponent(id)}/evaluations`);
  }
  use(id: string): Promise<UseResponse> {
    return this.request("POST", `/api/elements/${encodeURIComponent(id)}/use`);
  }
  derive(
    parentId: string,
    changes: Partial<ElementDraft>,
    newGeneration = false,
  ): Promise<CreateResponse> {
    return this.request("POST", `/api/elements/${encodeURIComponent(parentId)}/derive`, {
      parent_id: parentId,
      changes,
      new_generation: newGeneration,
    });
  }
  deleteElement(id: string, scope: "personal" | "shared"): Promise<{ deleted: string }> {
    return this.request("DELETE", `/api/elements/${encodeURIComponent(id)}?scope=${scope}`);
  }
  search(query: SearchQuery): Promise<SearchResponse> {
    return this.request("POST", "/api/search", query);
  }

  // views
  tree(scope: Scope, roots: string[] = []): Promise<TreeResponse> {
    const params = new URLSearchParams({ scope });
    for (const r of roots) params.append("root", r);
    return this.get(`/api/views/tree?${params}`);
  }
  network(scope: Scope, ids: string[] = []): Promise<NetworkResponse> {
    const params = new URLSearchParams({ scope });
    for (const id of ids) params.append("id", id);
    return this.get(`/api/views/network?${params}`);
  }

  // projects and tasks
  projects(): Promise<ProjectRow[]> {
    return this.get("/api/projects");
  }
  addProject(id: string, title?: string): Promise<ProjectRow> {
    return this.request("POST", "/api/projects", { id, title });
  }
  tasks(project?: string): Promise<Task[]> {
    const suffix = project ? `?project=${encodeURIComponent(project)}` : "";
    return this.get(`/api/tasks${suffix}`);
  }
  task(id: string): Promise<Task> {
    return this.get(`/api/tasks/${encodeURIComponent(id)}`);
  }
  taskStep(id: string, event: string): Promise<Task> {
    return this.request("POST", `/api/tasks/${encodeURIComponent(id)}/step`, { event });
  }
  taskSolution(id: string, elementId: string, note?: string): Promise<Task> {
    return this.request("POST", `/api/tasks/${encodeURIComponent(id)}/solution`, {
      element_id: elementId,
      note,
    });
  }

  // situation
  situation(): Promise<{ situation: Situation | null }> {
    return this.get("/api/situation");
  }
  openSituation(
    project: string,
    task: string,
    place?: string,
    resources?: string[],
  ): Promise<Situation> {
    return this.request("POST", "/api/situation", { project, task, place, resources });
  }
  closeSituation(): Promise<{ closed: string | null }> {
    return this.request("DELETE", "/api/situation");
  }

  // agents and metadata
  agents(): Promise<AgentRow[]> {
    return this.get("/api/agents");
  }
  peerQuery(terms: string[]): Promise<{ peers: PeerAnswer[] }> {
    return this.request("POST", "/api/peer-query", { terms });
  }
  labels(): Promise<Record<string, Record<string, string>>> {
    return this.get("/api/meta/labels");
  }
  taskEvents(): Promise<{ state: string; event: string; next: string }[]> {
    return this.get("/api/meta/task-events");
  }
}
