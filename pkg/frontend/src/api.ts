import type {
  ErrorDoc,
  EventPage,
  EventStub,
  ImpactDoc,
  LayoutDoc,
  PostEventResult,
  SessionDoc,
} from "./types.js";

/** Server rejection carrying the wire error code verbatim. */
export class ApiError extends Error {
  readonly status: number;
  readonly code: string;
  readonly details: Record<string, unknown>;

  constructor(status: number, doc: ErrorDoc) {
    super(doc.message);
    this.name = "ApiError";
    this.status = status;
    this.code = doc.code;
    this.details = doc.details ?? {};
  }
}

export interface LayoutParams {
  goalRadius?: number;
  ringThickness?: number;
  startAngleDeg?: number;
}

/** Thin fetch wrapper over the session server; all state lives there. */
export class ApiClient {
  readonly baseUrl: string;

  constructor(baseUrl: string) {
    this.baseUrl = baseUrl.replace(/\/+$/, "");
  }

  async createSession(id?: string, policy?: { tMinorDays: number; tMajorDays: number }): Promise<SessionDoc> {
    const body: Record<string, unknown> = {};
    if (id !== undefined) body.id = id;
    if (policy !== undefined) body.policy = policy;
    return (await this.request("POST", "/sessions", body)) as SessionDoc;
  }

  async getSession(id: string): Promise<SessionDoc> {
    return (await this.request("GET", `/sessions/${id}`)) as SessionDoc;
  }

  async getEvents(id: string, from = 1): Promise<EventPage> {
    return (await this.request("GET", `/sessions/${id}/events?from=${from}`)) as EventPage;
  }

  async postEvent(id: string, stub: EventStub): Promise<PostEventResult> {
    return (await this.request("POST", `/sessions/${id}/events`, stub)) as PostEventResult;
  }

  async impact(id: string): Promise<ImpactDoc> {
    return (await this.request("GET", `/sessions/${id}/analysis/impact`)) as ImpactDoc;
  }

  async layout(id: string, params?: LayoutParams): Promise<LayoutDoc> {
    const query = new URLSearchParams();
    if (params?.goalRadius !== undefined) query.set("goalRadius", String(params.goalRadius));
    if (params?.ringThickness !== undefined) query.set("ringThickness", String(params.ringThickness));
    if (params?.startAngleDeg !== undefined) query.set("startAngleDeg", String(params.startAngleDeg));
    const suffix = query.size > 0 ? `?${query}` : "";
    return (await this.request("GET", `/sessions/${id}/layout${suffix}`)) as LayoutDoc;
  }

  layoutSvgUrl(id: string): string {
    return `${this.baseUrl}/sessions/${id}/layout.svg`;
  }

  streamUrl(id: string, from: number): string {
    return `${this.baseUrl}/sessions/${id}/stream?from=${from}`;
  }

  private async request(method: string, path: string, body?: unknown): Promise<unknown> {
    const init: RequestInit = { method };
    if (body !== undefined) {
      init.headers = { "content-type": "application/json" };
      init.body = JSON.stringify(body);
    }
    const res = await fetch(this.baseUrl + path, init);
    const text = await res.text();
    if (!res.ok) {
      let doc: ErrorDoc;
      try {
        doc = JSON.parse(text) as ErrorDoc;
      } catch {
        doc = { code: "HTTP_" + res.status, message: text || res.statusText, details: {} };
      }
      throw new ApiError(res.status, doc);
    }
    return JSON.parse(text);
  }
}
