// Wire types for the hub's HTTP/JSON protocol. Field names and shapes
// mirror the server responses exactly — the UI renders these, it never
// invents fields of its own.

export type Scope = "personal" | "shared" | "both";

export type DimensionKind = "explicitness" | "novelty" | "importance" | "usability";

export const DIMENSION_KINDS: DimensionKind[] = [
  "explicitness",
  "novelty",
  "importance",
  "usability",
];

/** degree -> semantic label, per dimension; JSON stringifies the degree keys */
export type LabelTable = Record<DimensionKind, Record<string, string>>;

export interface Actor {
  user: string;
  team: string;
}

export interface ContextRecord {
  actor: Actor;
  timestamp: string;
  task: string | null;
  place: string | null;
  resources: string[];
}

export interface ElementLink {
  target: string;
  kind: "association" | "dependency";
}

export interface KnowledgeElement {
  id: string;
  slug: string;
  title: string;
  kind: string;
  keywords: string[];
  description: string;
  creator: string;
  created_date: string;
  version: string;
  parent: string | null;
  source: string;
  published: boolean;
  logical: boolean;
  ranking: number;
  content: Record<DimensionKind, number>;
  context: { creation: ContextRecord; usages: ContextRecord[] };
  links: ElementLink[];
}

export interface LoginResponse {
  token: string;
  user: string;
  team: string;
  is_admin: boolean;
  expires: string;
}

export interface WhoamiResponse {
  user: string;
  team: string;
  is_admin: boolean;
}

export interface UserRow {
  name: string;
  team: string;
  is_admin: boolean;
}

export interface ElementEnvelope {
  scope: "personal" | "shared";
  element: KnowledgeElement;
}

export interface CreateResponse {
  element: KnowledgeElement;
  context_captured: boolean;
}

export interface UseResponse extends CreateResponse {
  scope: "personal" | "shared";
}

export interface PublishResponse {
  published: string;
  version: string;
  duplicate: boolean;
}

export interface EvaluateResponse {
  element_id: string;
  ranking: number;
}

export interface EvaluationRow {
  element_id: string;
  evaluator: string;
  score: number;
  timestamp: string;
}

export interface SearchHit {
  id: string;
  score: number;
  element: KnowledgeElement;
}

export interface SearchResponse {
  hits: SearchHit[];
  degraded: boolean;
  scope: Scope;
}

export interface DimensionFilter {
  kind: DimensionKind;
  lo?: number;
  hi?: number;
}

export interface SearchQuery {
  terms: string[];
  scope: Scope;
  kind?: string;
  dimensions?: DimensionFilter[];
  include_unpublished?: boolean;
}

export interface TreeNode {
  id: string;
  title: string;
  version: string;
  children: TreeNode[];
}

export interface TreeResponse {
  scope: string;
  roots: TreeNode[];
  node_count: number;
  depth: number;
}

export interface NetworkNode {
  id: string;
  title: string;
  ranking: number;
  degrees: Record<DimensionKind, number>;
}

export interface NetworkEdge {
  source: string;
  target: string;
  kind: "parent-child" | "association" | "dependency";
}

export interface NetworkResponse {
  scope: string;
  nodes: NetworkNode[];
  edges: NetworkEdge[];
}

export type TaskState =
  | "Received"
  | "Searching"
  | "Using"
  | "Creating"
  | "Integrating"
  | "Reformulating"
  | "Solved";

export const TASK_STATES: TaskState[] = [
  "Received",
  "Searching",
  "Using",
  "Creating",
  "Integrating",
  "Reformulating",
  "Solved",
];

export interface TransitionRow {
  state: TaskState;
  event: string;
  next: TaskState;
}

export interface PartialSolution {
  element_id: string;
  note: string | null;
}

export interface HistoryEntry {
  state: TaskState;
  event: string;
  timestamp: string;
}

export interface Task {
  id: string;
  project: string;
  title: string;
  inputs: string[];
  innovative: boolean;
  assignee: string;
  state: TaskState;
  partial_solutions: PartialSolution[];
  history: HistoryEntry[];
}

export interface ProjectRow {
  id: string;
  title: string;
}

export interface Situation {
  id: string;
  user: string;
  project: string;
  task: string;
  place: string | null;
  resources: string[];
}

export interface AgentRow {
  agent_id: string;
  owner: string;
  status: string;
  last_heartbeat: string;
}

export interface PeerAnswer {
  agent_id: string;
  owner: string;
  element_ids: string[];
}

export interface ErrorEnvelope {
  error: string;
  detail: string;
}
