import { sectorNodeId } from "./sunburst.js";
import type { SessionStore } from "./store.js";

const ROOT_ID = "goal";

/**
 * Guided breakdown flow for the selected obstacle. For each non-leaf the
 * facilitator asks the room the stopping criterion question: if solutions
 * are apparent the obstacle is marked a leaf, otherwise it is subdivided
 * into weighted parts. With the center selected the same form breaks the
 * problem into top-level themes.
 */
export function subdivisionPanel(
  container: HTMLElement,
  store: SessionStore,
  actor: string,
): () => void {
  const root = document.createElement("section");
  root.className = "subdivision-panel";
  root.innerHTML = `
    <h2>Obstacle breakdown</h2>
    <p class="target-label"></p>
    <div class="stopping-criterion">
      <p class="prompt">Is this obstacle sufficiently subdivided that solutions are apparent?</p>
      <button type="button" class="mark-leaf">Yes - mark as leaf</button>
      <button type="button" class="show-subdivide">No - subdivide further</button>
    </div>
    <p class="leaf-note" hidden>Marked as a leaf; solutions are apparent.</p>
    <form class="subdivide-form" hidden>
      <div class="parts"></div>
      <button type="button" class="add-part">Add part</button>
      <span class="weight-sum"></span>
      <button type="submit" class="subdivide-submit">Subdivide</button>
    </form>
    <p class="panel-error" hidden></p>
  `;
  container.appendChild(root);

  const targetEl = root.querySelector<HTMLParagraphElement>(".target-label")!;
  const criterionEl = root.querySelector<HTMLDivElement>(".stopping-criterion")!;
  const leafNoteEl = root.querySelector<HTMLParagraphElement>(".leaf-note")!;
  const form = root.querySelector<HTMLFormElement>(".subdivide-form")!;
  const partsEl = root.querySelector<HTMLDivElement>(".parts")!;
  const sumEl = root.querySelector<HTMLSpanElement>(".weight-sum")!;
  const errorEl = root.querySelector<HTMLParagraphElement>(".panel-error")!;

  let lastTarget: string | null = null;

  function targetId(): string {
    return store.selection === null ? ROOT_ID : sectorNodeId(store.selection);
  }

  function addPartRow(label = "", weight = ""): void {
    const row = document.createElement("div");
    row.className = "part-row";
    const labelInput = document.createElement("input");
    labelInput.className = "part-label";
    labelInput.placeholder = "Component obstacle";
    labelInput.value = label;
    const weightInput = document.createElement("input");
    weightInput.className = "part-weight";
    weightInput.type = "number";
    weightInput.step = "any";
    weightInput.min = "0";
    weightInput.placeholder = "weight";
    weightInput.value = weight;
    row.append(labelInput, weightInput);
    partsEl.appendChild(row);
  }

  function resetForm(): void {
    partsEl.replaceChildren();
    addPartRow();
    addPartRow();
    form.hidden = true;
    errorEl.hidden = true;
    renderSum();
  }

  function readParts(): { label: string; weight: number }[] {
    return [...partsEl.querySelectorAll<HTMLDivElement>(".part-row")].map((row) => ({
      label: row.querySelector<HTMLInputElement>(".part-label")!.value,
      weight: Number(row.querySelector<HTMLInputElement>(".part-weight")!.value || "0"),
    }));
  }

  function renderSum(): void {
    const total = readParts().reduce((acc, part) => acc + part.weight, 0);
    sumEl.textContent = `weights sum to ${total}`;
    sumEl.className = "weight-sum " + (Math.abs(total - 1) <= 1e-9 ? "ok" : "off");
  }

  function render(): void {
    const target = targetId();
    if (target !== lastTarget) {
      lastTarget = target;
      resetForm();
    }
    const state = store.state;
    if (target === ROOT_ID) {
      targetEl.textContent = "Whole problem (center)";
      criterionEl.hidden = true;
      leafNoteEl.hidden = true;
      form.hidden = false;
      return;
    }
    const obstacle = state.model.obstacles.find((o) => o.id === target);
    targetEl.textContent = obstacle === undefined ? target : obstacle.label || obstacle.id;
    if (obstacle?.isLeaf) {
      criterionEl.hidden = true;
      leafNoteEl.hidden = false;
      form.hidden = true;
    } else {
      criterionEl.hidden = false;
      leafNoteEl.hidden = true;
    }
  }

  async function submitStub(kind: "OBSTACLE_SUBDIVIDED" | "LEAF_MARKED"): Promise<void> {
    errorEl.hidden = true;
    const payload =
      kind === "LEAF_MARKED"
        ? { obstacleId: targetId() }
        : { obstacleId: targetId(), parts: readParts() };
    try {
      await store.submit({ kind, actor, payload });
      if (kind === "OBSTACLE_SUBDIVIDED") resetForm();
    } catch (err) {
      errorEl.textContent = err instanceof Error ? err.message : String(err);
      errorEl.hidden = false;
    }
  }

  root.querySelector<HTMLButtonElement>(".mark-leaf")!.addEventListener("click", () => {
    void submitStub("LEAF_MARKED");
  });
  root.querySelector<HTMLButtonElement>(".show-subdivide")!.addEventListener("click", () => {
    form.hidden = false;
  });
  root.querySelector<HTMLButtonElement>(".add-part")!.addEventListener("click", () => {
    addPartRow();
    renderSum();
  });
  partsEl.addEventListener("input", renderSum);
  form.addEventListener("submit", (ev) => {
    ev.preventDefault();
    void submitStub("OBSTACLE_SUBDIVIDED");
  });

  resetForm();
  const unsubscribe = store.subscribe(render);
  render();
  return () => {
    unsubscribe();
    root.remove();
  };
}
