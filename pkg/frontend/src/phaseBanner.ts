import type { Phase } from "./types.js";
import type { SessionStore } from "./store.js";

/** What the facilitator says when the room jumps ahead of the phase. */
export const PHASE_GUIDANCE: Record<Phase, string> = {
  GOAL:
    "We are still agreeing the goal state. " +
    "We will look at obstacles and solutions at a later phase.",
  OBSTACLES:
    "We are mapping and weighting obstacles right now. " +
    "Solutions come in a later phase.",
  SOLUTIONS:
    "We are collecting solutions for the leaf obstacles. " +
    "Resources are assigned in the next phase.",
  RESOURCES:
    "We are assigning resources to solutions. " +
    "Progress reporting starts once implementation begins.",
  IMPLEMENTATION:
    "The model is in implementation. " +
    "Structural changes need a minor or major revision first.",
};

/**
 * Shows the current phase and connection state; when the server denies an
 * out-of-phase action it surfaces the error code verbatim together with
 * the facilitator guidance for the phase that denied it.
 */
export function phaseBanner(container: HTMLElement, store: SessionStore): () => void {
  const root = document.createElement("header");
  root.className = "phase-banner";
  root.innerHTML = `
    <span class="phase-name"></span>
    <span class="connection"></span>
    <div class="guidance" hidden>
      <strong class="error-code"></strong>
      <span class="error-message"></span>
      <p class="guidance-text"></p>
      <button type="button" class="dismiss">Dismiss</button>
    </div>
  `;
  container.appendChild(root);

  const phaseEl = root.querySelector<HTMLSpanElement>(".phase-name")!;
  const connEl = root.querySelector<HTMLSpanElement>(".connection")!;
  const guidanceEl = root.querySelector<HTMLDivElement>(".guidance")!;
  const codeEl = root.querySelector<HTMLElement>(".error-code")!;
  const messageEl = root.querySelector<HTMLSpanElement>(".error-message")!;
  const textEl = root.querySelector<HTMLParagraphElement>(".guidance-text")!;

  root.querySelector<HTMLButtonElement>(".dismiss")!.addEventListener("click", () => {
    store.clearError();
  });

  function render(): void {
    const state = store.state;
    phaseEl.textContent = `Phase: ${state.phase}`;
    connEl.textContent = state.connection;
    connEl.className = `connection ${state.connection}`;
    const err = state.lastError;
    if (err === null) {
      guidanceEl.hidden = true;
    } else {
      codeEl.textContent = err.code;
      messageEl.textContent = err.message;
      textEl.textContent =
        err.code === "PHASE_COHERENCE" ? PHASE_GUIDANCE[err.phase] : "";
      guidanceEl.hidden = false;
    }
  }

  const unsubscribe = store.subscribe(render);
  render();
  return () => {
    unsubscribe();
    root.remove();
  };
}
