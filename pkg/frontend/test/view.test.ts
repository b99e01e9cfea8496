import { describe, expect, it } from "vitest";

import type { SessionState } from "../src/api.js";
import {
  adviceOverlay,
  banner,
  boardTransform,
  buildScene,
  displayedAreas,
  phaseLabel,
  tallyBar,
  toBoard,
  toScreen,
} from "../src/view.js";

const midGame: SessionState = {
  id: "fixture",
  n: 2,
  board: { w: 1.0, h: 1.0, origin: [0, 0] },
  phase: "barney-placing",
  predicted_winner: "barney",
  white: [
    [0.25, 0.5],
    [0.75, 0.5],
  ],
  black: [],
  tally: { white: 1.0, black: 0.0 },
  cells: [
    {
      site: [0.25, 0.5],
      owner: "white",
      vertices: [
        [0, 0],
        [0.5, 0],
        [0.5, 1],
        [0, 1],
      ],
      area: 0.5,
    },
    {
      site: [0.75, 0.5],
      owner: "white",
      vertices: [
        [0.5, 0],
        [1, 0],
        [1, 1],
        [0.5, 1],
      ],
      area: 0.5,
    },
  ],
  winner: null,
};

describe("boardTransform", () => {
  it("fits the board into the viewport preserving aspect", () => {
    const t = boardTransform({ w: 2, h: 1, origin: [0, 0] }, 640, 640);
    expect(t.scale).toBe(320);
    expect(t.screenWidth).toBe(640);
    expect(t.screenHeight).toBe(320);
  });

  it("round-trips screen and board coordinates with a y-flip", () => {
    const t = boardTransform({ w: 1, h: 0.5, origin: [-0.25, -0.1] }, 400, 400);
    const [sx, sy] = toScreen(t, 0.3, 0.2);
    const [bx, by] = toBoard(t, sx, sy);
    expect(bx).toBeCloseTo(0.3, 12);
    expect(by).toBeCloseTo(0.2, 12);
    // larger board y means smaller screen y
    const [, syHigher] = toScreen(t, 0.3, 0.3);
    expect(syHigher).toBeLessThan(sy);
  });
});

describe("buildScene", () => {
  it("renders two equal cells for the mid-game two-site row", () => {
    const scene = buildScene(midGame, 640, 640);
    expect(scene.cells).toHaveLength(2);
    expect(scene.cells[0].areaLabel).toBe("0.5");
    expect(scene.cells[1].areaLabel).toBe("0.5");
    expect(scene.sites).toHaveLength(2);
    expect(scene.banner).toBe("");
    expect(scene.phaseLabel).toBe("black to place (0/2)");
  });

  it("keeps every displayed area verbatim from the snapshot", () => {
    const withNoise: SessionState = {
      ...midGame,
      tally: { white: 0.7452326176855192, black: 0.2547673823144808 },
      cells: midGame.cells.map((c, i) => ({
        ...c,
        area: i === 0 ? 0.7452326176855192 : 0.2547673823144808,
      })),
    };
    const scene = buildScene(withNoise, 640, 640);
    expect(scene.cells[0].areaLabel).toBe("0.7452326176855192");
    expect(scene.cells[1].areaLabel).toBe("0.2547673823144808");
    expect(scene.tally.whiteLabel).toBe("0.7452326176855192");
    expect(displayedAreas(scene)).toEqual([
      "0.7452326176855192",
      "0.2547673823144808",
      "0.7452326176855192",
      "0.2547673823144808",
    ]);
  });

  it("puts polygon corners at screen corners", () => {
    const scene = buildScene(midGame, 640, 640);
    // first cell spans the left half: x in [0, 320], y in [0, 640]
    const pairs = scene.cells[0].points.split(" ").map((p) => p.split(",").map(Number));
    for (const [x] of pairs) expect(x === 0 || x === 320).toBe(true);
  });
});

describe("banner and tally", () => {
  it("shows the winner verbatim when finished", () => {
    const done: SessionState = {
      ...midGame,
      phase: "finished",
      winner: "barney",
      tally: { white: 0.49, black: 0.51 },
    };
    expect(banner(done)).toBe("barney wins");
    expect(banner(midGame)).toBe("");
    const tie: SessionState = { ...done, winner: "tie" };
    expect(banner(tie)).toBe("tie");
  });

  it("computes the tally bar fraction from server numbers", () => {
    const bar = tallyBar({ ...midGame, tally: { white: 0.75, black: 0.25 } });
    expect(bar.whiteFraction).toBeCloseTo(0.75, 12);
    expect(bar.whiteLabel).toBe("0.75");
    expect(bar.blackLabel).toBe("0.25");
  });

  it("labels the placing phase with progress", () => {
    expect(phaseLabel(midGame)).toBe("black to place (0/2)");
    expect(phaseLabel({ ...midGame, phase: "finished" })).toBe("game over");
  });
});

describe("adviceOverlay", () => {
  it("places the marker at the advice point with a verbatim area", () => {
    const t = boardTransform(midGame.board, 640, 640);
    const overlay = adviceOverlay(
      {
        point: [0.66825, 0.616],
        exact_area: 0.2547673823144808,
        sampled_area: 0.2548,
        cells_stolen_from: [0, 1],
        iterations: 2500,
      },
      t,
    );
    const [sx, sy] = toScreen(t, 0.66825, 0.616);
    expect(overlay.x).toBe(sx);
    expect(overlay.y).toBe(sy);
    expect(overlay.areaLabel).toBe("0.2547673823144808");
  });
});
