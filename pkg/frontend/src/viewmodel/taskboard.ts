// Task board: tasks grouped into one column per state, each card
// offering exactly the event buttons its state allows. The offer list
// is computed from the server's transition table, so a button for an
// event the machine would refuse simply does not exist.

import type { Task, TaskState, TransitionRow } from "../types.js";
import { TASK_STATES } from "../types.js";

// assessments need at least one recorded solution; offering the button
// disabled (rather than hiding it) tells the user what is missing
const NEEDS_SOLUTION = new Set(["assessed_total", "assessed_partial", "assessed_none"]);

export interface EventOffer {
  event: string;
  next: TaskState;
  enabled: boolean;
  reason: string | null;
}

export function offeredEvents(table: TransitionRow[], state: TaskState): string[] {
  return table.filter((row) => row.state === state).map((row) => row.event);
}

export function eventOffers(table: TransitionRow[], task: Task): EventOffer[] {
  return table
    .filter((row) => row.state === task.state)
    .map((row) => {
      const gated = NEEDS_SOLUTION.has(row.event) && task.partial_solutions.length === 0;
      return {
        event: row.event,
        next: row.next,
        enabled: !gated,
        reason: gated ? "record a solution first" : null,
      };
    });
}

export interface BoardColumn {
  state: TaskState;
  tasks: Task[];
}

/** one column per state, canonical order, every task in exactly one column */
export function boardColumns(tasks: Task[]): BoardColumn[] {
  const byState = new Map<TaskState, Task[]>(TASK_STATES.map((s) => [s, []]));
  for (const task of tasks) {
    const bucket = byState.get(task.state);
    if (bucket) bucket.push(task);
  }
  return TASK_STATES.map((state) => ({ state, tasks: byState.get(state) ?? [] }));
}

export function isTerminal(table: TransitionRow[], state: TaskState): boolean {
  return offeredEvents(table, state).length === 0;
}

/** history rendered newest-first for the card's detail drawer */
export function historyLines(task: Task): string[] {
  return [...task.history]
    .reverse()
    .map((h) => `${h.timestamp}  ${h.event} → ${h.state}`);
}
