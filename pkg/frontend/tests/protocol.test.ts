import { readFileSync } from "node:fs";
import { describe, expect, it } from "vitest";

import {
  encodeClient,
  fieldAzimuthDeg,
  fieldElevationDeg,
  fieldMagnitudeMt,
  parseServerMessage,
  ProtocolError,
  type SceneInfo,
  type TelemetryFrame,
} from "../src/protocol.js";

function fixture(name: string): string {
  return readFileSync(new URL(`./fixtures/${name}`, import.meta.url), "utf8");
}

const LINES = fixture("straight_f17_h182.jsonl").trim().split("\n");

describe("server message parsing against recorded telemetry", () => {
  it("parses every line of a real recorded session", () => {
    const msgs = LINES.map(parseServerMessage);
    expect(msgs[0]!.type).toBe("scene_info");
    for (const m of msgs.slice(1)) expect(m.type).toBe("state");
  });

  it("accepts live frames, which carry an explicit type tag", () => {
    // recordings store bare frames; the socket wraps them with "type":"state"
    const tagged = JSON.stringify({
      ...(JSON.parse(LINES[5]!) as object),
      type: "state",
    });
    const m = parseServerMessage(tagged) as TelemetryFrame;
    expect(m.type).toBe("state");
    expect(m.tick).toBe(5);
  });

  it("scene geometry fields survive the trip", () => {
    const scene = parseServerMessage(LINES[0]!) as SceneInfo;
    expect(scene.name).toBe("straight_channel");
    expect(scene.goal_xy).toEqual([60, 0]);
    expect(scene.walls.length).toBe(2);
    expect(scene.bounds[2]).toBeGreaterThan(scene.bounds[0]);
  });

  it("state ticks are strictly monotone and latches are latched", () => {
    const states = LINES.slice(1).map((l) => parseServerMessage(l) as TelemetryFrame);
    for (let i = 1; i < states.length; i++) {
      expect(states[i]!.tick).toBe(states[i - 1]!.tick + 1);
      // goal_reached never un-latches within a run
      if (states[i - 1]!.goal_reached) expect(states[i]!.goal_reached).toBe(true);
    }
    expect(states[states.length - 1]!.goal_reached).toBe(true);
  });

  it("parses slip cells in the lumen scene as polygons", () => {
    const scene = parseServerMessage(fixture("lumen_scene_info.json")) as SceneInfo;
    expect(scene.slip_cells.length).toBeGreaterThan(0);
    for (const cell of scene.slip_cells) {
      expect(cell.length).toBeGreaterThanOrEqual(3);
      // shoelace area must be nonzero: degenerate cells would render invisibly
      let area = 0;
      for (let i = 0; i < cell.length; i++) {
        const [x0, y0] = cell[i]!;
        const [x1, y1] = cell[(i + 1) % cell.length]!;
        area += x0 * y1 - x1 * y0;
      }
      expect(Math.abs(area / 2)).toBeGreaterThan(1);
    }
  });

  it("parses error replies", () => {
    const m = parseServerMessage(
      '{"type": "error", "code": "bad_value", "message": "frequency_hz out of range"}',
    );
    expect(m).toEqual({
      type: "error",
      code: "bad_value",
      message: "frequency_hz out of range",
    });
  });

  it("rejects malformed input with ProtocolError", () => {
    const bad = [
      "not json at all",
      "{}",
      '{"type": "nonsense"}',
      '{"type": "error", "code": "surprise", "message": "x"}',
      '{"type": "state", "tick": 1}', // missing everything else
    ];
    for (const text of bad) {
      expect(() => parseServerMessage(text)).toThrow(ProtocolError);
    }
  });
});

describe("client message encoding", () => {
  it("matches the wire format byte for byte", () => {
    expect(encodeClient({ type: "set", param: "beta_deg", value: 15 })).toBe(
      '{"type":"set","param":"beta_deg","value":15}',
    );
    expect(encodeClient({ type: "pause" })).toBe('{"type":"pause"}');
  });
});

describe("field projections", () => {
  it("derive dial angles consistent with the telemetry field vector", () => {
    const f = (parseServerMessage(LINES[10]!) as TelemetryFrame).field;
    const az = fieldAzimuthDeg(f);
    const el = fieldElevationDeg(f);
    // static bias points along +y, so azimuth stays near 90 degrees
    expect(az).toBeGreaterThan(60);
    expect(az).toBeLessThan(120);
    expect(Math.abs(el)).toBeLessThanOrEqual(45);
    const mag = fieldMagnitudeMt(f);
    expect(mag).toBeCloseTo(Math.hypot(f.bx, f.by, f.bz), 12);
  });

  it("elevation spans both signs over a gait cycle", () => {
    const els = LINES.slice(1, 40).map((l) =>
      fieldElevationDeg((parseServerMessage(l) as TelemetryFrame).field),
    );
    expect(Math.max(...els)).toBeGreaterThan(20);
    expect(Math.min(...els)).toBeLessThan(-20);
  });
});
