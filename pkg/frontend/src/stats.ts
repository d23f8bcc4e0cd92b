/**
 * Readouts derived from the telemetry stream.
 *
 * Everything is a pure projection of server-confirmed frames; there is no
 * client-side simulation.  Speed is reported two ways:
 *
 *  - ground speed: net displacement of the body center over a sliding time
 *    window.  This is the "how fast am I actually getting there" number and
 *    matches stride x frequency once the window spans a few gait cycles.
 *  - path speed: server-accumulated path length differenced over the same
 *    window.  Slightly higher, because the center sways sideways as the body
 *    pivots about alternating feet.
 */

import type { TelemetryFrame } from "./protocol.js";

interface Sample {
  timeS: number;
  x: number;
  y: number;
  distanceMm: number;
}

export class TelemetryStats {
  /** Sliding window length, seconds of simulated time. */
  readonly windowS: number;
  private samples: Sample[] = [];

  constructor(windowS = 2.0) {
    if (!(windowS > 0)) throw new RangeError("windowS must be positive");
    this.windowS = windowS;
  }

  /** Ingest one state frame.  A tick moving backwards means the session was
   * reset, so the window is cleared rather than mixing two runs. */
  push(frame: TelemetryFrame): void {
    const last = this.samples[this.samples.length - 1];
    if (last !== undefined && frame.time_s <= last.timeS) {
      this.samples = [];
    }
    this.samples.push({
      timeS: frame.time_s,
      x: frame.center[0],
      y: frame.center[1],
      distanceMm: frame.distance_mm,
    });
    const cutoff = frame.time_s - this.windowS;
    let drop = 0;
    // keep one sample at-or-before the cutoff so the window spans windowS
    while (drop + 1 < this.samples.length && this.samples[drop + 1]!.timeS <= cutoff) {
      drop += 1;
    }
    if (drop > 0) this.samples.splice(0, drop);
  }

  reset(): void {
    this.samples = [];
  }

  private span(): [Sample, Sample] | null {
    const first = this.samples[0];
    const last = this.samples[this.samples.length - 1];
    if (first === undefined || last === undefined) return null;
    // readouts stay blank until the window is at least half filled,
    // otherwise the first seconds of a run show wild numbers
    if (last.timeS - first.timeS < this.windowS / 2) return null;
    return [first, last];
  }

  /** Net displacement over the window divided by elapsed sim time, mm/s;
   * null until enough history has accumulated. */
  groundSpeedMmS(): number | null {
    const s = this.span();
    if (s === null) return null;
    const [a, b] = s;
    return Math.hypot(b.x - a.x, b.y - a.y) / (b.timeS - a.timeS);
  }

  /** Path length traversed over the window divided by elapsed sim time. */
  pathSpeedMmS(): number | null {
    const s = this.span();
    if (s === null) return null;
    const [a, b] = s;
    return (b.distanceMm - a.distanceMm) / (b.timeS - a.timeS);
  }

  /** Implied stride per rotor revolution, mm: ground speed / frequency. */
  strideEstimateMm(frequencyHz: number): number | null {
    if (!(frequencyHz > 0)) return null;
    const v = this.groundSpeedMmS();
    return v === null ? null : v / frequencyHz;
  }
}

/** Format a readout for display: fixed decimals, em dash while unknown. */
export function formatReadout(value: number | null, decimals = 2, unit = ""): string {
  if (value === null) return "—";
  const s = value.toFixed(decimals);
  return unit === "" ? s : `${s} ${unit}`;
}
