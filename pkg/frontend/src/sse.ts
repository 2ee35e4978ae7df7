import type { EventDoc } from "./types.js";

export type StreamStatus = "idle" | "connecting" | "live" | "closed";

export interface EventStreamOptions {
  /** Delay before a reconnect attempt, in ms. */
  retryDelayMs?: number;
  onStatus?: (status: StreamStatus) => void;
}

/**
 * Resumable reader for the server's event stream.
 *
 * Built on fetch + ReadableStream rather than EventSource so the resume
 * offset stays under our control: after any drop we reconnect with
 * from = lastSeq + 1, which makes reconnection lossless.
 */
export class EventStream {
  lastSeq: number;
  status: StreamStatus = "idle";

  private readonly urlFor: (from: number) => string;
  private readonly onEvent: (event: EventDoc) => void;
  private readonly retryDelayMs: number;
  private readonly onStatus: ((status: StreamStatus) => void) | undefined;
  private controller: AbortController | null = null;
  private stopped = true;

  constructor(
    urlFor: (from: number) => string,
    onEvent: (event: EventDoc) => void,
    options: EventStreamOptions = {},
  ) {
    this.urlFor = urlFor;
    this.onEvent = onEvent;
    this.retryDelayMs = options.retryDelayMs ?? 500;
    this.onStatus = options.onStatus;
    this.lastSeq = 0;
  }

  /** Begin streaming events with seq > afterSeq. Idempotent while running. */
  start(afterSeq: number): void {
    if (!this.stopped) return;
    this.stopped = false;
    this.lastSeq = afterSeq;
    void this.loop();
  }

  stop(): void {
    this.stopped = true;
    this.controller?.abort();
    this.controller = null;
    this.setStatus("closed");
  }

  private setStatus(status: StreamStatus): void {
    this.status = status;
    this.onStatus?.(status);
  }

  private async loop(): Promise<void> {
    while (!this.stopped) {
      this.setStatus("connecting");
      try {
        await this.consumeOnce();
      } catch {
        // Drop through to the retry delay; stop() aborts land here too.
      }
      if (this.stopped) return;
      await sleep(this.retryDelayMs);
    }
  }

  private async consumeOnce(): Promise<void> {
    this.controller = new AbortController();
    const res = await fetch(this.urlFor(this.lastSeq + 1), {
      signal: this.controller.signal,
      headers: { accept: "text/event-stream" },
    });
    if (!res.ok || res.body === null) throw new Error(`stream HTTP ${res.status}`);
    this.setStatus("live");

    const reader = res.body.getReader();
    const decoder = new TextDecoder();
    let buffer = "";
    for (;;) {
      const { done, value } = await reader.read();
      if (done) return;
      buffer += decoder.decode(value, { stream: true });
      let cut: number;
      while ((cut = buffer.indexOf("\n\n")) >= 0) {
        const frame = buffer.slice(0, cut);
        buffer = buffer.slice(cut + 2);
        this.handleFrame(frame);
      }
    }
  }

  private handleFrame(frame: string): void {
    let data = "";
    for (const line of frame.split("\n")) {
      if (line.startsWith("data:")) data += line.slice(5).trimStart();
      // "id:" lines are advisory; seq inside the event is authoritative.
    }
    if (!data) return; // comment / keep-alive frame
    const event = JSON.parse(data) as EventDoc;
    if (event.seq <= this.lastSeq) return; // replay overlap after reconnect
    this.lastSeq = event.seq;
    this.onEvent(event);
  }
}

function sleep(ms: number): Promise<void> {
  return new Promise((resolve) => setTimeout(resolve, ms));
}
