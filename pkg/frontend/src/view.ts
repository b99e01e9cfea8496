// Pure view-model layer: turns server snapshots into drawable scene data.
// Every number displayed to the user is carried through verbatim (String of
// the exact JSON value) so the screen always agrees with the server.

import type { AdviceJson, BoardJson, CellJson, SessionState } from "./api.js";

export interface Transform {
  scale: number;
  screenWidth: number;
  screenHeight: number;
  originX: number;
  originY: number;
}

export interface SiteView {
  x: number;
  y: number;
  owner: "white" | "black";
}

export interface CellView {
  points: string; // SVG polygon points attribute
  fill: string;
  owner: "white" | "black";
  areaLabel: string; // verbatim server area
  labelX: number;
  labelY: number;
}

export interface TallyBarView {
  whiteFraction: number;
  whiteLabel: string; // verbatim server tally
  blackLabel: string;
}

export interface SceneView {
  transform: Transform;
  cells: CellView[];
  sites: SiteView[];
  tally: TallyBarView;
  banner: string;
  phaseLabel: string;
}

export interface AdviceOverlay {
  x: number;
  y: number;
  areaLabel: string; // verbatim exact_area from the advice payload
}

const WHITE_FILL = "#f3e9d2";
const BLACK_FILL = "#4a5568";

export function boardTransform(
  board: BoardJson,
  maxWidth: number,
  maxHeight: number,
): Transform {
  const scale = Math.min(maxWidth / board.w, maxHeight / board.h);
  return {
    scale,
    screenWidth: board.w * scale,
    screenHeight: board.h * scale,
    originX: board.origin[0],
    originY: board.origin[1],
  };
}

// Board coordinates grow upward; screen coordinates grow downward.
export function toScreen(t: Transform, x: number, y: number): [number, number] {
  return [(x - t.originX) * t.scale, t.screenHeight - (y - t.originY) * t.scale];
}

export function toBoard(t: Transform, sx: number, sy: number): [number, number] {
  return [sx / t.scale + t.originX, (t.screenHeight - sy) / t.scale + t.originY];
}

export function cellView(cell: CellJson, t: Transform): CellView {
  const screenPoints = cell.vertices.map(([x, y]) => toScreen(t, x, y));
  const cx = screenPoints.reduce((acc, p) => acc + p[0], 0) / screenPoints.length;
  const cy = screenPoints.reduce((acc, p) => acc + p[1], 0) / screenPoints.length;
  return {
    points: screenPoints.map(([x, y]) => `${x},${y}`).join(" "),
    fill: cell.owner === "white" ? WHITE_FILL : BLACK_FILL,
    owner: cell.owner,
    areaLabel: String(cell.area),
    labelX: cx,
    labelY: cy,
  };
}

export function tallyBar(state: SessionState): TallyBarView {
  const total = state.tally.white + state.tally.black;
  return {
    whiteFraction: total > 0 ? state.tally.white / total : 0.5,
    whiteLabel: String(state.tally.white),
    blackLabel: String(state.tally.black),
  };
}

export function banner(state: SessionState): string {
  if (state.phase !== "finished" || state.winner === null) return "";
  if (state.winner === "tie") return "tie";
  return `${state.winner} wins`;
}

export function phaseLabel(state: SessionState): string {
  switch (state.phase) {
    case "wilma-placing":
      return `white to place (${state.white.length}/${state.n})`;
    case "barney-placing":
      return `black to place (${state.black.length}/${state.n})`;
    case "finished":
      return "game over";
  }
}

export function buildScene(
  state: SessionState,
  maxWidth: number,
  maxHeight: number,
): SceneView {
  const t = boardTransform(state.board, maxWidth, maxHeight);
  const sites: SiteView[] = [];
  for (const [x, y] of state.white) {
    const [sx, sy] = toScreen(t, x, y);
    sites.push({ x: sx, y: sy, owner: "white" });
  }
  for (const [x, y] of state.black) {
    const [sx, sy] = toScreen(t, x, y);
    sites.push({ x: sx, y: sy, owner: "black" });
  }
  return {
    transform: t,
    cells: state.cells.map((c) => cellView(c, t)),
    sites,
    tally: tallyBar(state),
    banner: banner(state),
    phaseLabel: phaseLabel(state),
  };
}

export function adviceOverlay(advice: AdviceJson, t: Transform): AdviceOverlay {
  const [x, y] = toScreen(t, advice.point[0], advice.point[1]);
  return { x, y, areaLabel: String(advice.exact_area) };
}

// All area strings a scene shows, for fidelity auditing against raw JSON.
export function displayedAreas(scene: SceneView): string[] {
  return [
    ...scene.cells.map((c) => c.areaLabel),
    scene.tally.whiteLabel,
    scene.tally.blackLabel,
  ];
}
