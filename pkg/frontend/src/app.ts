import { ApiClient } from "./api.js";
import { SessionStore } from "./store.js";
import { goalEditorView } from "./goalEditor.js";
import { phaseBanner } from "./phaseBanner.js";
import { renderSunburst, type SunburstHandle } from "./sunburst.js";
import { subdivisionPanel } from "./subdivisionPanel.js";

export interface App {
  store: SessionStore;
  sunburst: SunburstHandle;
  stop(): void;
}

/**
 * Assembles the facilitation screen for one session: phase banner on top,
 * the sunburst center stage, goal editor and breakdown panel alongside.
 * Hydrates from the server, then follows the live event stream.
 */
export async function createApp(
  rootEl: HTMLElement,
  baseUrl: string,
  sessionId: string,
  actor: string,
): Promise<App> {
  const client = new ApiClient(baseUrl);
  const store = new SessionStore(client, sessionId);
  await store.load();

  rootEl.innerHTML = `
    <div class="banner-slot"></div>
    <main class="board">
      <div class="chart-slot"></div>
      <aside class="side-slot"></aside>
    </main>
  `;
  const bannerSlot = rootEl.querySelector<HTMLDivElement>(".banner-slot")!;
  const chartSlot = rootEl.querySelector<HTMLDivElement>(".chart-slot")!;
  const sideSlot = rootEl.querySelector<HTMLElement>(".side-slot")!;

  const teardowns = [
    phaseBanner(bannerSlot, store),
    goalEditorView(sideSlot, store, actor),
    subdivisionPanel(sideSlot, store, actor),
  ];

  const sunburst = renderSunburst(chartSlot, store.state.sectors, {
    progress: store.state.nodeProgress,
    onSelect: (pathId) => store.select(pathId),
  });
  teardowns.push(
    store.subscribe((state) => sunburst.update(state.sectors, state.nodeProgress)),
  );

  store.connect();

  return {
    store,
    sunburst,
    stop() {
      store.disconnect();
      for (const teardown of teardowns) teardown();
      sunburst.destroy();
    },
  };
}
