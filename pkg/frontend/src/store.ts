import { ApiClient, ApiError } from "./api.js";
import { EventStream, type StreamStatus } from "./sse.js";
import type {
  EventDoc,
  EventStub,
  GoalDoc,
  ModelDoc,
  Phase,
  PostEventResult,
  SectorDoc,
} from "./types.js";

export interface GoalEdit {
  seq: number;
  actor: string;
  text: string;
}

export interface UiError {
  code: string;
  message: string;
  status: number;
  /** Phase the session was in when the server rejected the action. */
  phase: Phase;
}

export interface UiSessionState {
  phase: Phase;
  goal: GoalDoc;
  model: ModelDoc;
  goalHistory: GoalEdit[];
  sectors: SectorDoc[];
  nodeProgress: Record<string, number>;
  goalProgress: number;
  lastSeq: number;
  connection: StreamStatus;
  pending: EventStub[];
  lastError: UiError | null;
}

type Listener = (state: UiSessionState) => void;

/**
 * Client-side session state. Every displayed value is refetched from the
 * server  - session doc, event log, layout sectors, progress rollup - so
 * the client never holds independent authority. Stream events only mark
 * the state dirty; refreshes run one at a time in arrival order, which
 * keeps rendered state consistent with seq order.
 */
export class SessionStore {
  readonly client: ApiClient;
  readonly sessionId: string;
  state!: UiSessionState;
  /** Sunburst selection (a sector pathId); client-local, never persisted. */
  selection: string | null = null;

  private readonly listeners = new Set<Listener>();
  private readonly stream: EventStream;
  private chain: Promise<void> = Promise.resolve();
  private dirty = false;
  private loaded = false;

  constructor(client: ApiClient, sessionId: string) {
    this.client = client;
    this.sessionId = sessionId;
    this.stream = new EventStream(
      (from) => client.streamUrl(sessionId, from),
      (event) => this.onStreamEvent(event),
      { onStatus: () => this.emit(), retryDelayMs: 250 },
    );
  }

  subscribe(listener: Listener): () => void {
    this.listeners.add(listener);
    return () => this.listeners.delete(listener);
  }

  /** Full hydrate from the server; a fresh page load is exactly this. */
  async load(): Promise<void> {
    await this.refreshNow();
    this.loaded = true;
  }

  /** Start (or resume) the live stream from the last seen seq. */
  connect(): void {
    if (!this.loaded) throw new Error("load() before connect()");
    this.stream.start(this.state.lastSeq);
  }

  disconnect(): void {
    this.stream.stop();
  }

  /** Resolves once queued refreshes for already-seen events are applied. */
  settled(): Promise<void> {
    return this.chain;
  }

  /** Resolves when displayed lastSeq reaches seq (stream + refresh done). */
  waitForSeq(seq: number, timeoutMs = 10_000): Promise<void> {
    if (this.state.lastSeq >= seq) return Promise.resolve();
    return new Promise((resolve, reject) => {
      const timer = setTimeout(() => {
        unsub();
        reject(new Error(`timed out waiting for seq ${seq} (at ${this.state.lastSeq})`));
      }, timeoutMs);
      const unsub = this.subscribe((state) => {
        if (state.lastSeq >= seq) {
          clearTimeout(timer);
          unsub();
          resolve();
        }
      });
    });
  }

  /**
   * Submit an event for the server to validate, order and persist. No
   * optimistic update: displayed state changes only after the accepted
   * event comes back through a refresh.
   */
  async submit(stub: EventStub): Promise<PostEventResult> {
    this.state.pending.push(stub);
    this.emit();
    try {
      const result = await this.client.postEvent(this.sessionId, stub);
      this.state.lastError = null;
      this.markDirty();
      return result;
    } catch (err) {
      if (err instanceof ApiError) {
        this.state.lastError = {
          code: err.code,
          message: err.message,
          status: err.status,
          phase: this.state.phase,
        };
      }
      throw err;
    } finally {
      const at = this.state.pending.indexOf(stub);
      if (at >= 0) this.state.pending.splice(at, 1);
      this.emit();
    }
  }

  select(pathId: string | null): void {
    this.selection = pathId;
    this.emit();
  }

  clearError(): void {
    if (this.state?.lastError) {
      this.state.lastError = null;
      this.emit();
    }
  }

  /**
   * Canonical JSON of the displayed session state. Two stores showing the
   * same server session at the same seq serialize identically, whether
   * they got there by fresh load or by reconnect-and-resume.
   */
  snapshot(): string {
    const s = this.state;
    return stableStringify({
      phase: s.phase,
      goal: s.goal,
      model: s.model,
      goalHistory: s.goalHistory,
      sectors: s.sectors,
      nodeProgress: s.nodeProgress,
      goalProgress: s.goalProgress,
      lastSeq: s.lastSeq,
      pending: s.pending,
      lastError: s.lastError,
    });
  }

  private onStreamEvent(event: EventDoc): void {
    if (this.state && event.seq <= this.state.lastSeq) return;
    this.markDirty();
  }

  private markDirty(): void {
    if (this.dirty) return;
    this.dirty = true;
    this.chain = this.chain.then(async () => {
      this.dirty = false;
      try {
        await this.refreshNow();
      } catch {
        // Transient fetch failure: next event or reconnect retries.
      }
    });
  }

  private async refreshNow(): Promise<void> {
    const [doc, page, layout, impact] = await Promise.all([
      this.client.getSession(this.sessionId),
      this.client.getEvents(this.sessionId, 1),
      this.client.layout(this.sessionId),
      this.client.impact(this.sessionId),
    ]);
    const goalHistory: GoalEdit[] = [];
    for (const event of page.events) {
      if (event.kind === "GOAL_DRAFTED" || event.kind === "GOAL_EDITED") {
        goalHistory.push({
          seq: event.seq,
          actor: event.actor,
          text: String(event.payload.text ?? ""),
        });
      }
    }
    this.state = {
      phase: doc.phase,
      goal: doc.model.goal,
      model: doc.model,
      goalHistory,
      sectors: layout.sectors,
      nodeProgress: impact.nodeProgress,
      goalProgress: impact.goalProgress,
      lastSeq: doc.lastSeq,
      connection: this.stream.status,
      pending: this.state?.pending ?? [],
      lastError: this.state?.lastError ?? null,
    };
    // A writer landed between the two GETs; pick up the tail next pass.
    if (page.lastSeq !== doc.lastSeq) this.markDirty();
    this.emit();
  }

  private emit(): void {
    if (!this.state) return;
    this.state.connection = this.stream.status;
    for (const listener of this.listeners) listener(this.state);
  }
}

function stableStringify(value: unknown): string {
  if (value === null || typeof value !== "object") return JSON.stringify(value);
  if (Array.isArray(value)) {
    return "[" + value.map(stableStringify).join(",") + "]";
  }
  const entries = Object.entries(value as Record<string, unknown>)
    .sort(([a], [b]) => (a < b ? -1 : a > b ? 1 : 0))
    .map(([k, v]) => JSON.stringify(k) + ":" + stableStringify(v));
  return "{" + entries.join(",") + "}";
}
