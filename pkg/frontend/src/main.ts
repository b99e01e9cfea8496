// DOM wiring: an SVG board, turn-by-turn placement, hover previews via the
// server's dry-run endpoint, advice overlay, and engine autoplay for either
// side. No geometry is computed here.

import { ApiError, GameClient } from "./api.js";
import type { AdviceJson, SessionState } from "./api.js";
import { adviceOverlay, buildScene, toBoard } from "./view.js";
import type { SceneView } from "./view.js";

const SVG_NS = "http://www.w3.org/2000/svg";
const BOARD_MAX = 640;

interface UiState {
  session: SessionState | null;
  advice: AdviceJson | null;
  previewLabel: string | null;
  previewAt: [number, number] | null;
}

const ui: UiState = { session: null, advice: null, previewLabel: null, previewAt: null };
const client = new GameClient(apiBase());

function apiBase(): string {
  // served from the /ui mount of the game service by default
  const { protocol, host } = window.location;
  if (host) return `${protocol}//${host}`;
  return "http://127.0.0.1:8000";
}

function el<K extends keyof HTMLElementTagNameMap>(id: string): HTMLElementTagNameMap[K] {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing element #${id}`);
  return node as HTMLElementTagNameMap[K];
}

function svgNode(tag: string, attrs: Record<string, string>): SVGElement {
  const node = document.createElementNS(SVG_NS, tag);
  for (const [key, value] of Object.entries(attrs)) node.setAttribute(key, value);
  return node;
}

function currentPlayer(state: SessionState): "white" | "black" | null {
  if (state.phase === "wilma-placing") return "white";
  if (state.phase === "barney-placing") return "black";
  return null;
}

function setStatus(text: string, isError = false): void {
  const status = el<"div">("status");
  status.textContent = text;
  status.className = isError ? "status error" : "status";
}

function render(): void {
  const svg = el<"div">("board");
  svg.replaceChildren();
  const state = ui.session;
  if (!state) return;

  const scene: SceneView = buildScene(state, BOARD_MAX, BOARD_MAX);
  const root = svgNode("svg", {
    width: String(scene.transform.screenWidth),
    height: String(scene.transform.screenHeight),
    viewBox: `0 0 ${scene.transform.screenWidth} ${scene.transform.screenHeight}`,
  }) as SVGSVGElement;

  root.appendChild(
    svgNode("rect", {
      x: "0",
      y: "0",
      width: String(scene.transform.screenWidth),
      height: String(scene.transform.screenHeight),
      fill: "#fbf8f1",
      stroke: "#222",
    }),
  );

  for (const cell of scene.cells) {
    root.appendChild(
      svgNode("polygon", {
        points: cell.points,
        fill: cell.fill,
        "fill-opacity": "0.75",
        stroke: "#333",
        "stroke-width": "1",
      }),
    );
    const label = svgNode("text", {
      x: String(cell.labelX),
      y: String(cell.labelY),
      "font-size": "10",
      "text-anchor": "middle",
      fill: cell.owner === "white" ? "#6b5b2e" : "#e8edf5",
      class: "cell-area",
    });
    label.textContent = cell.areaLabel;
    root.appendChild(label);
  }

  for (const site of scene.sites) {
    root.appendChild(
      svgNode("circle", {
        cx: String(site.x),
        cy: String(site.y),
        r: "5",
        fill: site.owner === "white" ? "#fff" : "#111",
        stroke: "#111",
        "stroke-width": "1.5",
      }),
    );
  }

  if (ui.advice && ui.session && currentPlayer(ui.session) === "black") {
    const overlay = adviceOverlay(ui.advice, scene.transform);
    root.appendChild(
      svgNode("circle", {
        cx: String(overlay.x),
        cy: String(overlay.y),
        r: "8",
        fill: "none",
        stroke: "#d33",
        "stroke-width": "2",
        "stroke-dasharray": "3 2",
        class: "advice-marker",
      }),
    );
    const label = svgNode("text", {
      x: String(overlay.x + 12),
      y: String(overlay.y - 8),
      "font-size": "11",
      fill: "#d33",
      class: "advice-area",
    });
    label.textContent = overlay.areaLabel;
    root.appendChild(label);
  }

  if (ui.previewLabel && ui.previewAt) {
    const label = svgNode("text", {
      x: String(ui.previewAt[0] + 10),
      y: String(ui.previewAt[1] - 10),
      "font-size": "11",
      fill: "#067",
      class: "preview-area",
    });
    label.textContent = ui.previewLabel;
    root.appendChild(label);
  }

  root.addEventListener("click", onBoardClick);
  root.addEventListener("mousemove", onBoardHover);
  root.addEventListener("mouseleave", () => {
    ui.previewLabel = null;
    ui.previewAt = null;
    render();
  });
  svg.appendChild(root);

  const bar = el<"div">("tally-bar");
  bar.replaceChildren();
  const whiteSide = document.createElement("div");
  whiteSide.className = "tally-white";
  whiteSide.style.width = `${scene.tally.whiteFraction * 100}%`;
  whiteSide.textContent = scene.tally.whiteLabel;
  const blackSide = document.createElement("div");
  blackSide.className = "tally-black";
  blackSide.style.width = `${(1 - scene.tally.whiteFraction) * 100}%`;
  blackSide.textContent = scene.tally.blackLabel;
  bar.append(whiteSide, blackSide);

  el<"div">("phase").textContent = scene.phaseLabel;
  const bannerNode = el<"div">("banner");
  bannerNode.textContent = scene.banner;
  bannerNode.style.display = scene.banner ? "block" : "none";
}

async function refresh(state: SessionState): Promise<void> {
  ui.session = state;
  render();
}

async function onBoardClick(event: MouseEvent): Promise<void> {
  const state = ui.session;
  if (!state) return;
  const player = currentPlayer(state);
  if (!player) return;
  const svg = (event.currentTarget as SVGSVGElement).getBoundingClientRect();
  const scene = buildScene(state, BOARD_MAX, BOARD_MAX);
  const [x, y] = toBoard(scene.transform, event.clientX - svg.left, event.clientY - svg.top);
  try {
    const next = await client.placePoint(state.id, player, x, y);
    ui.advice = null;
    ui.previewLabel = null;
    setStatus(`${player} placed (${x.toFixed(4)}, ${y.toFixed(4)})`);
    await refresh(next);
  } catch (err) {
    setStatus(errorText(err), true);
  }
}

let hoverTimer: number | undefined;
let hoverAbort: AbortController | null = null;

function onBoardHover(event: MouseEvent): void {
  const state = ui.session;
  if (!state) return;
  const player = currentPlayer(state);
  if (!player) return;
  const svg = (event.currentTarget as SVGSVGElement).getBoundingClientRect();
  const sx = event.clientX - svg.left;
  const sy = event.clientY - svg.top;
  window.clearTimeout(hoverTimer);
  hoverTimer = window.setTimeout(async () => {
    const scene = buildScene(state, BOARD_MAX, BOARD_MAX);
    const [x, y] = toBoard(scene.transform, sx, sy);
    hoverAbort?.abort();
    hoverAbort = new AbortController();
    try {
      const preview = await client.preview(state.id, player, x, y, hoverAbort.signal);
      ui.previewLabel = String(preview.steal_area);
      ui.previewAt = [sx, sy];
      render();
    } catch (err) {
      if (err instanceof ApiError) {
        // occupied point or outside the board: no preview to show
        ui.previewLabel = null;
        render();
      }
    }
  }, 120);
}

function errorText(err: unknown): string {
  if (err instanceof ApiError) return err.detail;
  return String(err);
}

async function newGame(): Promise<void> {
  const n = Number(el<"input">("input-n").value);
  const w = Number(el<"input">("input-w").value);
  const h = Number(el<"input">("input-h").value);
  try {
    const state = await client.createSession(n, w, h);
    ui.advice = null;
    ui.previewLabel = null;
    setStatus(`new game: predicted winner is ${state.predicted_winner}`);
    await refresh(state);
  } catch (err) {
    setStatus(errorText(err), true);
  }
}

async function askAdvice(): Promise<void> {
  const state = ui.session;
  if (!state) return;
  try {
    ui.advice = await client.getAdvice(state.id);
    setStatus(`advice: steal ${ui.advice.exact_area} at (${ui.advice.point[0].toFixed(4)}, ${ui.advice.point[1].toFixed(4)})`);
    render();
  } catch (err) {
    setStatus(errorText(err), true);
  }
}

async function playAdvice(): Promise<void> {
  const state = ui.session;
  if (!state || !ui.advice) return;
  try {
    const next = await client.placePoint(state.id, "black", ui.advice.point[0], ui.advice.point[1]);
    ui.advice = null;
    await refresh(next);
  } catch (err) {
    setStatus(errorText(err), true);
  }
}

async function autoplay(player: "white" | "black"): Promise<void> {
  const state = ui.session;
  if (!state) return;
  try {
    const next = await client.autoplay(state.id, player);
    setStatus(`engine played ${player}`);
    await refresh(next);
  } catch (err) {
    setStatus(errorText(err), true);
  }
}

export function start(): void {
  el<"button">("btn-new").addEventListener("click", () => void newGame());
  el<"button">("btn-advice").addEventListener("click", () => void askAdvice());
  el<"button">("btn-play-advice").addEventListener("click", () => void playAdvice());
  el<"button">("btn-auto-white").addEventListener("click", () => void autoplay("white"));
  el<"button">("btn-auto-black").addEventListener("click", () => void autoplay("black"));
  void newGame();
}

if (typeof document !== "undefined") {
  document.addEventListener("DOMContentLoaded", start);
}
