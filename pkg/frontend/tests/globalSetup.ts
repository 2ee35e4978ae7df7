import { spawn, type ChildProcess } from "node:child_process";
import { mkdtempSync, rmSync } from "node:fs";
import { createServer } from "node:net";
import { tmpdir } from "node:os";
import { join } from "node:path";
import type { TestProject } from "vitest/node";

// Boots one real session server for the whole test run; the UI talks to it
// over plain HTTP exactly as it would in production.

let proc: ChildProcess;
let dataDir: string;

export default async function setup(project: TestProject): Promise<() => void> {
  dataDir = mkdtempSync(join(tmpdir(), "psm-ui-test-"));
  const port = await freePort();
  const baseUrl = `http://127.0.0.1:${port}`;
  proc = spawn("psm", ["serve", "--data-dir", dataDir, "--port", String(port)], {
    stdio: "ignore",
  });
  await waitReady(baseUrl);
  project.provide("baseUrl", baseUrl);
  return () => {
    proc.kill();
    rmSync(dataDir, { recursive: true, force: true });
  };
}

declare module "vitest" {
  export interface ProvidedContext {
    baseUrl: string;
  }
}

function freePort(): Promise<number> {
  return new Promise((resolve, reject) => {
    const srv = createServer();
    srv.once("error", reject);
    srv.listen(0, "127.0.0.1", () => {
      const address = srv.address();
      if (address === null || typeof address === "string") {
        reject(new Error("no port assigned"));
        return;
      }
      srv.close(() => resolve(address.port));
    });
  });
}

async function waitReady(baseUrl: string, attempts = 100): Promise<void> {
  for (let i = 0; i < attempts; i++) {
    try {
      const res = await fetch(`${baseUrl}/sessions/readiness-probe`);
      if (res.status === 404) return; // any HTTP answer means the server is up
      await res.text();
      return;
    } catch {
      await new Promise((resolve) => setTimeout(resolve, 100));
    }
  }
  throw new Error(`session server did not come up at ${baseUrl}`);
}
