import { readFileSync } from "node:fs";
import { describe, expect, it } from "vitest";

import { parseServerMessage, type TelemetryFrame } from "../src/protocol.js";
import { formatReadout, TelemetryStats } from "../src/stats.js";

const STATES = readFileSync(
  new URL("./fixtures/straight_f17_h182.jsonl", import.meta.url),
  "utf8",
)
  .trim()
  .split("\n")
  .slice(1)
  .map((l) => parseServerMessage(l) as TelemetryFrame);

describe("speed readout on a recorded 1.7 Hz run at 182 mm rotor height", () => {
  it("shows ~4.2 mm/s ground speed from telemetry alone", () => {
    const stats = new TelemetryStats(2.0);
    const readings: number[] = [];
    for (const f of STATES) {
      stats.push(f);
      if (f.goal_reached) break; // robot stops at the goal latch
      const v = stats.groundSpeedMmS();
      if (v !== null && f.time_s > 3.0) readings.push(v);
    }
    expect(readings.length).toBeGreaterThan(200);
    const mean = readings.reduce((a, b) => a + b, 0) / readings.length;
    // display target ~4.2; the model's stride at this pose is ~4% longer
    expect(Math.abs(mean - 4.2)).toBeLessThanOrEqual(0.15 * 4.2);
    expect(mean).toBeGreaterThan(4.3);
    expect(mean).toBeLessThan(4.5);
    for (const v of readings) {
      expect(v).toBeGreaterThan(4.2);
      expect(v).toBeLessThan(4.7);
    }
  });

  it("path speed exceeds ground speed (body sway)", () => {
    const stats = new TelemetryStats(2.0);
    for (const f of STATES.slice(0, 200)) stats.push(f);
    const ground = stats.groundSpeedMmS()!;
    const path = stats.pathSpeedMmS()!;
    expect(path).toBeGreaterThan(ground);
    expect(path).toBeLessThan(1.3 * ground);
  });

  it("implied stride matches speed / frequency", () => {
    const stats = new TelemetryStats(2.0);
    for (const f of STATES.slice(0, 200)) stats.push(f);
    const stride = stats.strideEstimateMm(1.7)!;
    expect(stride).toBeCloseTo(stats.groundSpeedMmS()! / 1.7, 12);
    expect(stride).toBeGreaterThan(2.4);
    expect(stride).toBeLessThan(2.8);
  });

  it("stays blank until the window half fills", () => {
    const stats = new TelemetryStats(2.0);
    for (const f of STATES.slice(0, 29)) {
      stats.push(f); // 29 ticks < 1 s at 30 Hz
      expect(stats.groundSpeedMmS()).toBeNull();
    }
    for (const f of STATES.slice(29, 40)) stats.push(f);
    expect(stats.groundSpeedMmS()).not.toBeNull();
  });

  it("a session reset clears the window instead of mixing runs", () => {
    const stats = new TelemetryStats(2.0);
    for (const f of STATES.slice(0, 120)) stats.push(f);
    expect(stats.groundSpeedMmS()).not.toBeNull();
    stats.push(STATES[0]!); // time_s jumps backwards
    expect(stats.groundSpeedMmS()).toBeNull();
  });

  it("zero frequency yields no stride estimate", () => {
    const stats = new TelemetryStats(2.0);
    for (const f of STATES.slice(0, 120)) stats.push(f);
    expect(stats.strideEstimateMm(0)).toBeNull();
  });
});

describe("readout formatting", () => {
  it("formats numbers and placeholders", () => {
    expect(formatReadout(4.214, 2, "mm/s")).toBe("4.21 mm/s");
    expect(formatReadout(4.214, 0)).toBe("4");
    expect(formatReadout(null)).toBe("—");
  });
});
