import { sentenceCount, withinSentenceBudget } from "./sentences.js";
import type { SessionStore } from "./store.js";

/**
 * Propose/edit/agree flow for the superordinate goal, meant to be driven
 * on the big screen with the room watching. The textarea shows the server's
 * goal text; a save submits GOAL_DRAFTED (first draft) or GOAL_EDITED, and
 * the display updates only when the accepted event comes back.
 */
export function goalEditorView(
  container: HTMLElement,
  store: SessionStore,
  actor: string,
): () => void {
  const root = document.createElement("section");
  root.className = "goal-editor";
  root.innerHTML = `
    <h2>Superordinate goal</h2>
    <textarea class="goal-text" rows="3" placeholder="Describe the agreed goal state in one to three sentences."></textarea>
    <div class="goal-meta">
      <span class="sentence-count"></span>
      <span class="goal-status"></span>
    </div>
    <div class="goal-actions">
      <button type="button" class="save-goal">Save goal</button>
      <button type="button" class="agree-goal">Record agreement</button>
    </div>
    <p class="editor-error" hidden></p>
    <ol class="goal-history"></ol>
  `;
  container.appendChild(root);

  const textarea = root.querySelector<HTMLTextAreaElement>(".goal-text")!;
  const countEl = root.querySelector<HTMLSpanElement>(".sentence-count")!;
  const statusEl = root.querySelector<HTMLSpanElement>(".goal-status")!;
  const saveBtn = root.querySelector<HTMLButtonElement>(".save-goal")!;
  const agreeBtn = root.querySelector<HTMLButtonElement>(".agree-goal")!;
  const errorEl = root.querySelector<HTMLParagraphElement>(".editor-error")!;
  const historyEl = root.querySelector<HTMLOListElement>(".goal-history")!;

  function renderCount(): void {
    const count = sentenceCount(textarea.value);
    countEl.textContent = `${count} sentence${count === 1 ? "" : "s"} (need 1-3)`;
    countEl.className = "sentence-count " + (withinSentenceBudget(count) ? "ok" : "over");
  }

  function render(): void {
    const state = store.state;
    // Never clobber text mid-edit; the room sees their words as typed.
    if (document.activeElement !== textarea && textarea.value !== state.goal.text) {
      textarea.value = state.goal.text;
    }
    renderCount();
    statusEl.textContent =
      state.goal.status === "AGREED"
        ? `agreed by ${state.goal.agreedBy.length} stakeholder(s)`
        : "draft";
    statusEl.className = "goal-status " + state.goal.status.toLowerCase();
    const editable = state.phase === "GOAL";
    saveBtn.disabled = !editable || state.pending.length > 0;
    agreeBtn.disabled = !editable || state.pending.length > 0;
    historyEl.replaceChildren(
      ...state.goalHistory.map((edit) => {
        const li = document.createElement("li");
        li.textContent = `#${edit.seq} ${edit.actor}: ${edit.text}`;
        return li;
      }),
    );
  }

  async function submit(kind: "save" | "agree"): Promise<void> {
    errorEl.hidden = true;
    try {
      if (kind === "save") {
        await store.submit({
          kind: store.state.goalHistory.length === 0 ? "GOAL_DRAFTED" : "GOAL_EDITED",
          actor,
          payload: { text: textarea.value },
        });
      } else {
        await store.submit({
          kind: "GOAL_AGREED",
          actor,
          payload: { agreedBy: store.state.model.stakeholders.map((s) => s.id) },
        });
      }
    } catch (err) {
      errorEl.textContent = err instanceof Error ? err.message : String(err);
      errorEl.hidden = false;
    }
  }

  textarea.addEventListener("input", renderCount);
  saveBtn.addEventListener("click", () => void submit("save"));
  agreeBtn.addEventListener("click", () => void submit("agree"));

  const unsubscribe = store.subscribe(render);
  render();
  return () => {
    unsubscribe();
    root.remove();
  };
}
