import type { SectorDoc } from "./types.js";

export interface SunburstOptions {
  /** Node progress by node id; drawn as radial fill proportion. */
  progress?: Record<string, number>;
  onSelect?: (pathId: string | null) => void;
  /** Hide labels on sectors narrower than this span. */
  labelMinSpanDeg?: number;
}

export interface SunburstHandle {
  el: SVGSVGElement;
  update(sectors: SectorDoc[], progress?: Record<string, number>): void;
  focus(pathId: string | null): void;
  readonly focused: string | null;
  destroy(): void;
}

const FULL_CIRCLE = 360;
const SPAN_EPS = 1e-9;
const SVG_NS = "http://www.w3.org/2000/svg";

/**
 * Renders server-computed sectors as an interactive sunburst. All geometry
 * (angles, radii) comes from the layout endpoint; this module only converts
 * polar to cartesian with the same convention the server's SVG export uses:
 * 0 degrees at twelve o'clock, clockwise positive. Clicking an obstacle
 * zooms to its subtree (a viewBox crop, not a re-layout); clicking the
 * center zooms back out.
 */
export function renderSunburst(
  container: HTMLElement,
  sectors: SectorDoc[],
  options: SunburstOptions = {},
): SunburstHandle {
  const svg = document.createElementNS(SVG_NS, "svg");
  svg.setAttribute("class", "sunburst");
  container.appendChild(svg);

  let current = sectors;
  let progress = options.progress ?? {};
  let focused: string | null = null;
  const labelMinSpan = options.labelMinSpanDeg ?? 12;

  function visible(): SectorDoc[] {
    if (focused === null) return current;
    const prefix = focused + "/";
    return current.filter(
      (s) => s.kind === "GOAL" || s.pathId === focused || s.pathId.startsWith(prefix),
    );
  }

  function render(): void {
    while (svg.firstChild) svg.removeChild(svg.firstChild);
    const shown = [...visible()].sort((a, b) => (a.pathId < b.pathId ? -1 : 1));

    const box = boundingBox(shown);
    const pad = 10;
    svg.setAttribute(
      "viewBox",
      `${fmt(box.minX - pad)} ${fmt(box.minY - pad)} ` +
        `${fmt(box.maxX - box.minX + 2 * pad)} ${fmt(box.maxY - box.minY + 2 * pad)}`,
    );

    for (const sector of shown) {
      const path = document.createElementNS(SVG_NS, "path");
      path.setAttribute("d", sectorPath(sector));
      path.setAttribute("class", `sector ${sector.kind.toLowerCase()}`);
      path.setAttribute("data-path-id", sector.pathId);
      const title = document.createElementNS(SVG_NS, "title");
      title.textContent = sector.label ? `${sector.label} (${sector.pathId})` : sector.pathId;
      path.appendChild(title);
      if (sector.kind === "UNCOVERED") {
        path.setAttribute("pointer-events", "none");
      } else {
        path.addEventListener("click", () => onClick(sector));
      }
      svg.appendChild(path);

      const fill = progressOverlay(sector, progress);
      if (fill !== null) svg.appendChild(fill);

      if (sector.label && (sector.kind === "GOAL" || sector.spanDeg >= labelMinSpan)) {
        svg.appendChild(labelFor(sector));
      }
    }
  }

  function onClick(sector: SectorDoc): void {
    if (sector.kind === "GOAL") {
      focused = null;
      options.onSelect?.(null);
    } else if (sector.kind === "OBSTACLE") {
      focused = sector.pathId;
      options.onSelect?.(sector.pathId);
    } else {
      options.onSelect?.(sector.pathId);
      return; // solutions and resources select without zooming
    }
    render();
  }

  render();

  return {
    el: svg,
    update(next, nextProgress) {
      current = next;
      if (nextProgress !== undefined) progress = nextProgress;
      if (focused !== null && !current.some((s) => s.pathId === focused)) {
        focused = null; // the focused subtree vanished in a revision
      }
      render();
    },
    focus(pathId) {
      focused = pathId;
      render();
    },
    get focused() {
      return focused;
    },
    destroy() {
      svg.remove();
    },
  };
}

/** Node id carried by a sector: the last segment of its pathId. */
export function sectorNodeId(pathId: string): string {
  const at = pathId.lastIndexOf("/");
  return at < 0 ? pathId : pathId.slice(at + 1);
}

function progressOverlay(
  sector: SectorDoc,
  progress: Record<string, number>,
): SVGPathElement | null {
  if (sector.kind !== "GOAL" && sector.kind !== "OBSTACLE") return null;
  const p = progress[sectorNodeId(sector.pathId)];
  if (p === undefined || p <= 0) return null;
  const clamped = Math.min(p, 1);
  const filled: SectorDoc = {
    ...sector,
    outerRadius: sector.innerRadius + clamped * (sector.outerRadius - sector.innerRadius),
  };
  const path = document.createElementNS(SVG_NS, "path");
  path.setAttribute("d", sectorPath(filled));
  path.setAttribute("class", "progress-fill");
  path.setAttribute("pointer-events", "none");
  path.setAttribute("data-progress-for", sector.pathId);
  return path;
}

function labelFor(sector: SectorDoc): SVGTextElement {
  const text = document.createElementNS(SVG_NS, "text");
  let x = 0;
  let y = 0;
  if (sector.kind !== "GOAL") {
    const mid = sector.startAngleDeg + sector.spanDeg / 2;
    const r = (sector.innerRadius + sector.outerRadius) / 2;
    [x, y] = point(r, mid);
  }
  text.setAttribute("x", fmt(x));
  text.setAttribute("y", fmt(y));
  text.setAttribute("class", "label");
  text.setAttribute("text-anchor", "middle");
  text.setAttribute("pointer-events", "none");
  text.textContent = sector.label;
  return text;
}

/** Polar to cartesian, matching the server: 0 deg up, clockwise. */
function point(r: number, angleDeg: number): [number, number] {
  const t = (angleDeg * Math.PI) / 180;
  return [r * Math.sin(t), -r * Math.cos(t)];
}

function circlePath(r: number, clockwise: boolean): string {
  const sweep = clockwise ? 1 : 0;
  return (
    `M 0 ${fmt(-r)} A ${fmt(r)} ${fmt(r)} 0 1 ${sweep} 0 ${fmt(r)} ` +
    `A ${fmt(r)} ${fmt(r)} 0 1 ${sweep} 0 ${fmt(-r)} Z`
  );
}

function sectorPath(sector: SectorDoc): string {
  if (sector.spanDeg >= FULL_CIRCLE - SPAN_EPS) {
    const outer = circlePath(sector.outerRadius, true);
    if (sector.innerRadius <= 0) return outer;
    return outer + " " + circlePath(sector.innerRadius, false);
  }
  const a0 = sector.startAngleDeg;
  const a1 = sector.startAngleDeg + sector.spanDeg;
  const large = sector.spanDeg > 180 ? 1 : 0;
  const [ox0, oy0] = point(sector.outerRadius, a0);
  const [ox1, oy1] = point(sector.outerRadius, a1);
  const ro = fmt(sector.outerRadius);
  if (sector.innerRadius <= 0) {
    return `M 0 0 L ${fmt(ox0)} ${fmt(oy0)} A ${ro} ${ro} 0 ${large} 1 ${fmt(ox1)} ${fmt(oy1)} Z`;
  }
  const [ix0, iy0] = point(sector.innerRadius, a0);
  const [ix1, iy1] = point(sector.innerRadius, a1);
  const ri = fmt(sector.innerRadius);
  return (
    `M ${fmt(ox0)} ${fmt(oy0)} A ${ro} ${ro} 0 ${large} 1 ${fmt(ox1)} ${fmt(oy1)} ` +
    `L ${fmt(ix1)} ${fmt(iy1)} A ${ri} ${ri} 0 ${large} 0 ${fmt(ix0)} ${fmt(iy0)} Z`
  );
}

interface Box {
  minX: number;
  minY: number;
  maxX: number;
  maxY: number;
}

function boundingBox(sectors: SectorDoc[]): Box {
  const box: Box = { minX: 0, minY: 0, maxX: 0, maxY: 0 };
  const grow = (x: number, y: number) => {
    if (x < box.minX) box.minX = x;
    if (y < box.minY) box.minY = y;
    if (x > box.maxX) box.maxX = x;
    if (y > box.maxY) box.maxY = y;
  };
  for (const s of sectors) {
    if (s.spanDeg >= FULL_CIRCLE - SPAN_EPS) {
      grow(-s.outerRadius, -s.outerRadius);
      grow(s.outerRadius, s.outerRadius);
      continue;
    }
    const a1 = s.startAngleDeg + s.spanDeg;
    const angles = [s.startAngleDeg, a1];
    // Cardinal directions inside the arc are the bbox extremes.
    for (let a = Math.ceil(s.startAngleDeg / 90) * 90; a < a1; a += 90) {
      if (a > s.startAngleDeg) angles.push(a);
    }
    for (const a of angles) {
      for (const r of [s.innerRadius, s.outerRadius]) {
        const [x, y] = point(r, a);
        grow(x, y);
      }
    }
  }
  return box;
}

function fmt(x: number): string {
  const rounded = Math.round(x * 1e6) / 1e6;
  return Object.is(rounded, -0) ? "0" : String(rounded);
}
