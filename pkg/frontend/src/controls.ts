/**
 * Input handling: maps discrete operator actions to protocol messages.
 *
 * Contract: every recognised action while connected produces exactly one
 * message — no coalescing, no repeats — so the server's input log is a
 * faithful record of what the operator did.  Actions while disconnected
 * produce no message and are flagged so the UI can show a cue.
 *
 * Steering state is deliberately thin.  The steering angle base is the last
 * server-confirmed value; a keypress chains on a local pending value only
 * until the server echoes it back, so rapid taps accumulate (+2, +4, ...)
 * instead of re-sending the same target, without any client-side simulation.
 */

import {
  CONTROL_LIMITS,
  type ClientMessage,
  type ControlParam,
  type TelemetryFrame,
} from "./protocol.js";

/** Steering increment per keypress, degrees. */
export const KEY_BETA_STEP_DEG = 2.0;

export type ControlEvent =
  | { kind: "key"; code: string }
  | { kind: "slider"; param: ControlParam; value: number }
  | { kind: "button"; action: "pause" | "resume" | "reset" | "start" };

export interface ControlOutcome {
  /** Exactly one message for a recognised action, empty otherwise. */
  messages: ClientMessage[];
  /** True when an action was recognised but dropped (disconnected). */
  dropped: boolean;
}

const NOTHING: ControlOutcome = { messages: [], dropped: false };

function norm360(deg: number): number {
  return ((deg % 360) + 360) % 360;
}

export class ControlState {
  connected = false;
  private lastFrame: TelemetryFrame | null = null;
  private pendingBeta: number | null = null;

  /** Adopt server-confirmed values; clears the pending steering target once
   * the server echoes it. */
  syncFromFrame(frame: TelemetryFrame): void {
    this.lastFrame = frame;
    if (this.pendingBeta !== null && Math.abs(frame.beta_deg - this.pendingBeta) < 1e-9) {
      this.pendingBeta = null;
    }
  }

  onDisconnect(): void {
    this.connected = false;
    this.pendingBeta = null;
  }

  /** Current steering target for display: pending if unacknowledged. */
  betaTargetDeg(): number {
    if (this.pendingBeta !== null) return this.pendingBeta;
    return this.lastFrame === null ? 0 : norm360(this.lastFrame.beta_deg);
  }

  paused(): boolean {
    return this.lastFrame?.paused ?? false;
  }

  handle(event: ControlEvent): ControlOutcome {
    const msg = this.toMessage(event);
    if (msg === null) return NOTHING;
    if (!this.connected) return { messages: [], dropped: true };
    if (msg.type === "set" && msg.param === "beta_deg") {
      this.pendingBeta = msg.value;
    }
    if (msg.type === "reset" || msg.type === "start") {
      this.pendingBeta = null;
    }
    return { messages: [msg], dropped: false };
  }

  private toMessage(event: ControlEvent): ClientMessage | null {
    switch (event.kind) {
      case "key":
        return this.keyMessage(event.code);
      case "slider": {
        const lim = CONTROL_LIMITS[event.param];
        const v =
          lim === null ? event.value : Math.min(lim[1], Math.max(lim[0], event.value));
        return { type: "set", param: event.param, value: v };
      }
      case "button":
        return { type: event.action };
    }
  }

  private keyMessage(code: string): ClientMessage | null {
    switch (code) {
      case "ArrowRight":
        return this.betaStep(+KEY_BETA_STEP_DEG);
      case "ArrowLeft":
        return this.betaStep(-KEY_BETA_STEP_DEG);
      case "Space":
        return { type: this.paused() ? "resume" : "pause" };
      case "KeyR":
        return { type: "reset" };
      default:
        return null;
    }
  }

  private betaStep(stepDeg: number): ClientMessage {
    return {
      type: "set",
      param: "beta_deg",
      value: norm360(this.betaTargetDeg() + stepDeg),
    };
  }
}

/** Exponential backoff schedule for socket reconnects. */
export class ReconnectPolicy {
  private readonly initialMs: number;
  private readonly maxMs: number;
  private readonly factor: number;
  private currentMs: number;

  constructor(initialMs = 500, maxMs = 8000, factor = 2) {
    if (!(initialMs > 0) || !(maxMs >= initialMs) || !(factor >= 1)) {
      throw new RangeError("bad backoff parameters");
    }
    this.initialMs = initialMs;
    this.maxMs = maxMs;
    this.factor = factor;
    this.currentMs = initialMs;
  }

  /** Delay to wait before the next attempt; grows until capped. */
  nextDelayMs(): number {
    const d = this.currentMs;
    this.currentMs = Math.min(this.maxMs, this.currentMs * this.factor);
    return d;
  }

  /** Call after a successful connect to restart the schedule. */
  resetOnSuccess(): void {
    this.currentMs = this.initialMs;
  }
}
