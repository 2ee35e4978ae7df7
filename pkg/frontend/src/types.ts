// Wire shapes as served by the session server. Field names match the
// canonical JSON documents exactly; nothing here is recomputed client-side.

export type Phase =
  | "GOAL"
  | "OBSTACLES"
  | "SOLUTIONS"
  | "RESOURCES"
  | "IMPLEMENTATION";

export type EventKind =
  | "STAKEHOLDER_REGISTERED"
  | "GOAL_DRAFTED"
  | "GOAL_EDITED"
  | "GOAL_AGREED"
  | "PHASE_ADVANCED"
  | "OBSTACLE_ADDED"
  | "OBSTACLE_SUBDIVIDED"
  | "WEIGHTS_SET"
  | "LEAF_MARKED"
  | "SOLUTION_ADDED"
  | "RESOURCE_REGISTERED"
  | "RESOURCE_ASSIGNED"
  | "PROGRESS_REPORTED"
  | "SPEND_REPORTED"
  | "DEPENDENCY_DECLARED"
  | "CONGRUENCE_RECORDED"
  | "MINOR_REVISION_OPENED"
  | "MAJOR_REVISION_OPENED";

export interface GoalDoc {
  text: string;
  currentStateDescription: string | null;
  status: "DRAFT" | "AGREED";
  agreedBy: string[];
  sentenceCountOverride: number | null;
}

export interface ParentLinkDoc {
  parentId: string;
  weight: number;
}

export interface ObstacleDoc {
  id: string;
  label: string;
  parents: ParentLinkDoc[];
  isLeaf: boolean;
}

export interface SolutionDoc {
  id: string;
  leafObstacleId: string;
  label: string;
  share: number;
  progress: number;
  metrics: { name: string; value: number; unit: string }[];
}

export interface ResourceDoc {
  id: string;
  name: string;
  kind: string;
}

export interface AssignmentDoc {
  resourceId: string;
  solutionId: string;
  share: number;
  spend: number;
}

export interface StakeholderDoc {
  id: string;
  name: string;
  constituency: string;
}

export interface ModelDoc {
  id: string;
  title: string;
  goal: GoalDoc;
  obstacles: ObstacleDoc[];
  solutions: SolutionDoc[];
  resources: ResourceDoc[];
  assignments: AssignmentDoc[];
  stakeholders: StakeholderDoc[];
}

export interface SessionDoc {
  id: string;
  phase: Phase;
  model: ModelDoc;
  lastSeq: number;
  lastHash: string;
  lastMinorRevision: number | null;
  lastMajorRevision: number | null;
  policy: { tMinorDays: number; tMajorDays: number };
  declaredDependencies: unknown[];
  congruenceRecords: unknown[];
}

export interface EventDoc {
  seq: number;
  timestamp: number;
  actor: string;
  kind: EventKind;
  payload: Record<string, unknown>;
  prevHash: string;
  hash: string;
}

export interface EventStub {
  kind: EventKind;
  actor: string;
  payload: Record<string, unknown>;
}

export interface RevisionWarningDoc {
  scope: string;
  elapsedDays: number;
  requiredDays: number;
  message: string;
}

export interface PostEventResult {
  event: EventDoc;
  warnings: RevisionWarningDoc[];
}

export interface EventPage {
  events: EventDoc[];
  lastSeq: number;
}

export type SectorKind =
  | "GOAL"
  | "OBSTACLE"
  | "SOLUTION"
  | "RESOURCE"
  | "UNCOVERED";

export interface SectorDoc {
  pathId: string;
  kind: SectorKind;
  innerRadius: number;
  outerRadius: number;
  startAngleDeg: number;
  spanDeg: number;
  label: string;
}

export interface LayoutDoc {
  sectors: SectorDoc[];
}

export interface ImpactDoc {
  perNode: Record<string, number>;
  perSolution: Record<string, number>;
  nodeProgress: Record<string, number>;
  goalProgress: number;
}

export interface ErrorDoc {
  code: string;
  message: string;
  details: Record<string, unknown>;
}
