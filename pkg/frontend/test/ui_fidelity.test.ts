// End-to-end fidelity: drive a real game service through a scripted session
// (white plays the two-site row, black plays engine advice twice) and check
// that everything the view layer would display equals the server's JSON
// verbatim, and that replaying the event log reproduces the same scene.

import { spawn, type ChildProcess } from "node:child_process";
import { afterAll, beforeAll, describe, expect, it } from "vitest";

import { GameClient, type SessionState } from "../src/api.js";
import { adviceOverlay, banner, buildScene, displayedAreas } from "../src/view.js";

const PORT = 8931;
const BASE = `http://127.0.0.1:${PORT}`;

let server: ChildProcess;

async function waitForServer(timeoutMs = 30_000): Promise<void> {
  const deadline = Date.now() + timeoutMs;
  while (Date.now() < deadline) {
    try {
      const response = await fetch(`${BASE}/healthz`);
      if (response.ok) return;
    } catch {
      // not up yet
    }
    await new Promise((resolve) => setTimeout(resolve, 200));
  }
  throw new Error("game service did not come up in time");
}

beforeAll(async () => {
  server = spawn(
    "python3",
    ["-m", "voronoi_game.cli", "serve", "--port", String(PORT)],
    { stdio: "ignore" },
  );
  await waitForServer();
}, 40_000);

afterAll(() => {
  server?.kill();
});

describe("scripted session fidelity", () => {
  it("shows server numbers verbatim and the winner banner", async () => {
    const client = new GameClient(BASE);
    let state = await client.createSession(2, 1.0, 1.0);

    // white: the two-site row
    state = await client.placePoint(state.id, "white", 0.25, 0.5);
    state = await client.placePoint(state.id, "white", 0.75, 0.5);
    expect(state.phase).toBe("barney-placing");

    // black: engine advice, twice
    for (let turn = 0; turn < 2; turn++) {
      const advice = await client.getAdvice(state.id);
      // the advice overlay displays the advice payload verbatim
      const scene = buildScene(state, 640, 640);
      const overlay = adviceOverlay(advice, scene.transform);
      expect(overlay.areaLabel).toBe(String(advice.exact_area));
      state = await client.placePoint(state.id, "black", advice.point[0], advice.point[1]);
    }

    expect(state.phase).toBe("finished");
    expect(state.winner).not.toBeNull();

    // every area the final scene displays is a verbatim server JSON number
    const raw = await fetch(`${BASE}/sessions/${state.id}`);
    const rawJson = (await raw.json()) as SessionState;
    const scene = buildScene(rawJson, 640, 640);
    const expected = [
      ...rawJson.cells.map((c) => String(c.area)),
      String(rawJson.tally.white),
      String(rawJson.tally.black),
    ];
    expect(displayedAreas(scene)).toEqual(expected);

    // the banner matches the server's game outcome
    expect(scene.banner).toBe(`${rawJson.winner} wins`);
    expect(rawJson.winner).toBe("barney");

    // cell areas and the tally are consistent with each other on-screen
    const whiteShown = rawJson.cells
      .filter((c) => c.owner === "white")
      .reduce((acc, c) => acc + c.area, 0);
    expect(whiteShown).toBeCloseTo(rawJson.tally.white, 9);
  }, 60_000);

  it("reconstructs the identical final scene from the event log", async () => {
    const client = new GameClient(BASE);
    let state = await client.createSession(2, 1.0, 1.0);
    state = await client.placePoint(state.id, "white", 0.25, 0.5);
    state = await client.placePoint(state.id, "white", 0.75, 0.5);
    const advice = await client.getAdvice(state.id);
    state = await client.placePoint(state.id, "black", advice.point[0], advice.point[1]);
    const advice2 = await client.getAdvice(state.id);
    state = await client.placePoint(state.id, "black", advice2.point[0], advice2.point[1]);

    const { events } = await client.getEvents(state.id);
    // replay the log into a fresh session via the public API
    const head = events[0] as { n: number; board: { w: number; h: number } };
    let replayed = await client.createSession(head.n, head.board.w, head.board.h);
    for (const event of events.slice(1)) {
      const place = event as unknown as {
        player: "white" | "black";
        x: number;
        y: number;
      };
      replayed = await client.placePoint(replayed.id, place.player, place.x, place.y);
    }

    const sceneA = buildScene(state, 640, 640);
    const sceneB = buildScene(replayed, 640, 640);
    expect(sceneB.cells).toEqual(sceneA.cells);
    expect(sceneB.tally).toEqual(sceneA.tally);
    expect(sceneB.banner).toBe(sceneA.banner);
  }, 60_000);
});
