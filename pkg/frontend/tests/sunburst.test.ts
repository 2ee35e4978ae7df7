import { afterEach, expect, test } from "vitest";
import { renderSunburst, sectorNodeId } from "../src/sunburst.js";
import type { SectorDoc } from "../src/types.js";

afterEach(() => {
  document.body.replaceChildren();
});

const SECTORS: SectorDoc[] = [
  { pathId: "goal", kind: "GOAL", innerRadius: 0, outerRadius: 60, startAngleDeg: 0, spanDeg: 360, label: "Goal" },
  { pathId: "goal/o1", kind: "OBSTACLE", innerRadius: 60, outerRadius: 100, startAngleDeg: 0, spanDeg: 240, label: "Big theme" },
  { pathId: "goal/o2", kind: "OBSTACLE", innerRadius: 60, outerRadius: 100, startAngleDeg: 240, spanDeg: 120, label: "Small theme" },
  { pathId: "goal/o1/o1-1", kind: "OBSTACLE", innerRadius: 100, outerRadius: 140, startAngleDeg: 0, spanDeg: 240, label: "Child" },
  { pathId: "goal/o2/_uncovered-1", kind: "UNCOVERED", innerRadius: 100, outerRadius: 140, startAngleDeg: 240, spanDeg: 120, label: "" },
];

function mount(): HTMLElement {
  const el = document.createElement("div");
  document.body.appendChild(el);
  return el;
}

test("renders one path per sector with kind classes and path ids", () => {
  const root = mount();
  renderSunburst(root, SECTORS);

  const paths = root.querySelectorAll("path.sector");
  expect(paths).toHaveLength(5);
  expect(root.querySelector('[data-path-id="goal/o1"]')!.getAttribute("class")).toBe(
    "sector obstacle",
  );
  const uncovered = root.querySelector('[data-path-id="goal/o2/_uncovered-1"]')!;
  expect(uncovered.getAttribute("class")).toBe("sector uncovered");
  expect(uncovered.getAttribute("pointer-events")).toBe("none");
});

test("progress draws as a proportional radial fill", () => {
  const root = mount();
  renderSunburst(root, SECTORS, { progress: { o1: 0.5, o2: 0 } });

  const fill = root.querySelector('[data-progress-for="goal/o1"]');
  expect(fill).not.toBeNull();
  // Half of the 60..100 ring: the fill arc runs at radius 80.
  expect(fill!.getAttribute("d")).toContain("A 80 80");
  expect(root.querySelector('[data-progress-for="goal/o2"]')).toBeNull();
});

test("click zooms into the subtree; center click zooms back out", () => {
  const root = mount();
  const selections: (string | null)[] = [];
  const handle = renderSunburst(root, SECTORS, {
    onSelect: (pathId) => selections.push(pathId),
  });

  const o1 = root.querySelector<SVGPathElement>('[data-path-id="goal/o1"]')!;
  o1.dispatchEvent(new MouseEvent("click", { bubbles: true }));
  expect(selections).toEqual(["goal/o1"]);
  expect(handle.focused).toBe("goal/o1");

  const shown = [...root.querySelectorAll("path.sector")].map((p) =>
    p.getAttribute("data-path-id"),
  );
  expect(shown).toContain("goal");
  expect(shown).toContain("goal/o1");
  expect(shown).toContain("goal/o1/o1-1");
  expect(shown).not.toContain("goal/o2");

  root
    .querySelector<SVGPathElement>('[data-path-id="goal"]')!
    .dispatchEvent(new MouseEvent("click", { bubbles: true }));
  expect(selections).toEqual(["goal/o1", null]);
  expect(handle.focused).toBeNull();
  expect(root.querySelectorAll("path.sector")).toHaveLength(5);
});

test("update swaps sectors and drops a vanished focus", () => {
  const root = mount();
  const handle = renderSunburst(root, SECTORS);
  handle.focus("goal/o1");
  expect(root.querySelectorAll("path.sector")).toHaveLength(3);

  const shrunk = SECTORS.filter((s) => !s.pathId.startsWith("goal/o1"));
  handle.update(shrunk);
  expect(handle.focused).toBeNull();
  expect(root.querySelectorAll("path.sector")).toHaveLength(shrunk.length);
});

test("full-circle and wedge geometry both produce closed paths", () => {
  const root = mount();
  renderSunburst(root, SECTORS);
  for (const path of root.querySelectorAll("path.sector")) {
    const d = path.getAttribute("d")!;
    expect(d.startsWith("M ")).toBe(true);
    expect(d.endsWith("Z")).toBe(true);
    expect(d).toContain("A ");
  }
});

test("sector node ids are the last path segment", () => {
  expect(sectorNodeId("goal")).toBe("goal");
  expect(sectorNodeId("goal/o1")).toBe("o1");
  expect(sectorNodeId("goal/o1/o1-1")).toBe("o1-1");
});
