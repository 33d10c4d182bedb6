// Loader for the recorded protocol fixtures. Each file is a verbatim
// server response captured by scripts/record_fixtures.py in the parent
// package; tests run against these, never against a live hub.

import { readFileSync } from "node:fs";

import type {
  AgentRow,
  ElementEnvelope,
  EvaluationRow,
  LabelTable,
  LoginResponse,
  NetworkResponse,
  SearchResponse,
  Situation,
  Task,
  TransitionRow,
  TreeResponse,
  UserRow,
} from "../src/types.js";

export function loadFixture<T>(name: string): T {
  const url = new URL(`../fixtures/${name}.json`, import.meta.url);
  return JSON.parse(readFileSync(url, "utf-8")) as T;
}

export const fixtures = {
  labels: () => loadFixture<LabelTable>("labels"),
  taskEvents: () => loadFixture<TransitionRow[]>("task_events"),
  tasks: () => loadFixture<Task[]>("tasks"),
  taskSolved: () => loadFixture<Task>("task_solved"),
  network: () => loadFixture<NetworkResponse>("network"),
  tree: () => loadFixture<TreeResponse>("tree"),
  element: () => loadFixture<ElementEnvelope>("element"),
  elementDraft: () => loadFixture<ElementEnvelope>("element_draft"),
  evaluations: () => loadFixture<EvaluationRow[]>("evaluations"),
  search: () => loadFixture<SearchResponse>("search"),
  login: () => loadFixture<LoginResponse>("login"),
  situation: () => loadFixture<Situation>("situation"),
  agents: () => loadFixture<AgentRow[]>("agents"),
  users: () => loadFixture<UserRow[]>("users"),
  errors: () =>
    loadFixture<Record<"auth" | "transition" | "validation", {
      status: number;
      body: { error: string; detail: string };
    }>>("errors"),
};
