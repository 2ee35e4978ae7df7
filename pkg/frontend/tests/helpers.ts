import { inject } from "vitest";
import { ApiClient } from "../src/api.js";
import type { EventKind } from "../src/types.js";

export function baseUrl(): string {
  return inject("baseUrl");
}

export function client(): ApiClient {
  return new ApiClient(baseUrl());
}

let counter = 0;

/** Session ids must be unique per test run; the server persists them. */
export function uniqueId(prefix: string): string {
  counter += 1;
  return `${prefix}-${process.pid}-${Date.now().toString(36)}-${counter}`;
}

export async function post(
  api: ApiClient,
  id: string,
  kind: EventKind,
  payload: Record<string, unknown>,
  actor = "fac",
): Promise<void> {
  await api.postEvent(id, { kind, actor, payload });
}

export const THEMES = [
  "Housing",
  "Transport",
  "Safety",
  "Local economy",
  "Education",
  "Health",
];

/** Two stakeholders, an agreed goal; session left in the GOAL phase. */
export async function seedGoalSession(api: ApiClient, id: string): Promise<void> {
  await api.createSession(id);
  await post(api, id, "STAKEHOLDER_REGISTERED", { stakeholderId: "st1", name: "Ada" });
  await post(api, id, "STAKEHOLDER_REGISTERED", { stakeholderId: "st2", name: "Grace" });
  await post(api, id, "GOAL_DRAFTED", {
    text: "Everyone in the district lives well. The district thrives.",
  });
}

/** Agreed goal, advanced to OBSTACLES, six equally weighted themes. */
export async function seedSixThemes(api: ApiClient, id: string): Promise<void> {
  await seedGoalSession(api, id);
  await post(api, id, "GOAL_AGREED", { agreedBy: ["st1", "st2"] });
  await post(api, id, "PHASE_ADVANCED", {});
  await post(api, id, "OBSTACLE_SUBDIVIDED", {
    obstacleId: "goal",
    parts: THEMES.map((label) => ({ label, weight: 1 / 6 })),
  });
}

export async function waitFor(
  check: () => boolean,
  timeoutMs = 10_000,
  label = "condition",
): Promise<void> {
  const deadline = Date.now() + timeoutMs;
  while (!check()) {
    if (Date.now() > deadline) throw new Error(`timed out waiting for ${label}`);
    await new Promise((resolve) => setTimeout(resolve, 25));
  }
}
