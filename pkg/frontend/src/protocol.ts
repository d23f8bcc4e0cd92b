/**
 * Wire protocol for the millicrawl teleoperation service.
 *
 * The server speaks JSON text frames over WebSocket: one `scene_info` on
 * connect, then one `state` frame per simulation tick; malformed or
 * out-of-protocol client input gets an `error` reply and the session keeps
 * running.  Client messages are `set` (one parameter per message), `pause`,
 * `resume`, `reset`, and `start`.
 *
 * Everything here is pure data handling; no socket or DOM dependencies.
 */

export type ControlParam = "beta_deg" | "frequency_hz" | "rotor_height_mm";

export interface SetMessage {
  type: "set";
  param: ControlParam;
  value: number;
}

export interface SimpleMessage {
  type: "pause" | "resume" | "reset" | "start";
}

export type ClientMessage = SetMessage | SimpleMessage;

/** Server-enforced control ranges, mirrored for slider limits only. */
export const CONTROL_LIMITS: Record<ControlParam, [number, number] | null> = {
  frequency_hz: [0, 2],
  rotor_height_mm: [110, 250],
  beta_deg: null,
};

export type Vec2 = [number, number];
export type Vec3 = [number, number, number];

/** Axis-aligned rectangle as [xmin, ymin, xmax, ymax], mm. */
export type Rect = [number, number, number, number];

export interface SceneInfo {
  type: "scene_info";
  name: string;
  start_xy: Vec2;
  goal_xy: Vec2;
  goal_radius_mm: number;
  bounds: Rect;
  walls: Array<[Vec2, Vec2]>;
  /** Anchoring-failure zones as polygon vertex lists. */
  slip_cells: Vec2[][];
}

export interface UnitState {
  x: number;
  y: number;
  heading_deg: number;
  pose_angle_deg: number;
  anchored_foot: "a" | "b";
}

export interface TelemetryFrame {
  type: "state";
  tick: number;
  time_s: number;
  scene: string;
  alpha_deg: number;
  beta_deg: number;
  frequency_hz: number;
  rotor_height_mm: number;
  field: { bx: number; by: number; bz: number };
  center: Vec3;
  foot_a: Vec3;
  foot_b: Vec3;
  units: UnitState[];
  anchored: "a" | "b";
  distance_mm: number;
  paused: boolean;
  collided: boolean;
  goal_reached: boolean;
  clamped: boolean;
}

export interface ErrorMessage {
  type: "error";
  code: "bad_json" | "unknown_type" | "bad_value";
  message: string;
}

export type ServerMessage = SceneInfo | TelemetryFrame | ErrorMessage;

export function encodeClient(msg: ClientMessage): string {
  return JSON.stringify(msg);
}

export class ProtocolError extends Error {}

function fail(why: string): never {
  throw new ProtocolError(why);
}

function num(v: unknown, name: string): number {
  if (typeof v !== "number" || !Number.isFinite(v)) fail(`${name}: not a finite number`);
  return v;
}

function str(v: unknown, name: string): string {
  if (typeof v !== "string") fail(`${name}: not a string`);
  return v;
}

function bool(v: unknown, name: string): boolean {
  if (typeof v !== "boolean") fail(`${name}: not a boolean`);
  return v;
}

function tuple(v: unknown, n: number, name: string): number[] {
  if (!Array.isArray(v) || v.length !== n) fail(`${name}: expected ${n} numbers`);
  return v.map((x, i) => num(x, `${name}[${i}]`));
}

function foot(v: unknown, name: string): "a" | "b" {
  const s = str(v, name);
  if (s !== "a" && s !== "b") fail(`${name}: expected "a" or "b"`);
  return s;
}

function rec(v: unknown, name: string): Record<string, unknown> {
  if (typeof v !== "object" || v === null || Array.isArray(v)) fail(`${name}: not an object`);
  return v as Record<string, unknown>;
}

function parseSceneInfo(o: Record<string, unknown>): SceneInfo {
  const walls = Array.isArray(o.walls) ? o.walls : fail("walls: not an array");
  const cells = Array.isArray(o.slip_cells) ? o.slip_cells : fail("slip_cells: not an array");
  return {
    type: "scene_info",
    name: str(o.name, "name"),
    start_xy: tuple(o.start_xy, 2, "start_xy") as Vec2,
    goal_xy: tuple(o.goal_xy, 2, "goal_xy") as Vec2,
    goal_radius_mm: num(o.goal_radius_mm, "goal_radius_mm"),
    bounds: tuple(o.bounds, 4, "bounds") as Rect,
    walls: walls.map((w, i) => {
      if (!Array.isArray(w) || w.length !== 2) fail(`walls[${i}]: expected a segment`);
      return [
        tuple(w[0], 2, `walls[${i}][0]`) as Vec2,
        tuple(w[1], 2, `walls[${i}][1]`) as Vec2,
      ];
    }),
    slip_cells: cells.map((c, i) => {
      if (!Array.isArray(c) || c.length < 3) fail(`slip_cells[${i}]: expected a polygon`);
      return c.map((p, j) => tuple(p, 2, `slip_cells[${i}][${j}]`) as Vec2);
    }),
  };
}

function parseUnit(v: unknown, name: string): UnitState {
  const o = rec(v, name);
  return {
    x: num(o.x, `${name}.x`),
    y: num(o.y, `${name}.y`),
    heading_deg: num(o.heading_deg, `${name}.heading_deg`),
    pose_angle_deg: num(o.pose_angle_deg, `${name}.pose_angle_deg`),
    anchored_foot: foot(o.anchored_foot, `${name}.anchored_foot`),
  };
}

function parseState(o: Record<string, unknown>): TelemetryFrame {
  const f = rec(o.field, "field");
  const units = Array.isArray(o.units) ? o.units : fail("units: not an array");
  if (units.length === 0) fail("units: empty");
  return {
    type: "state",
    tick: num(o.tick, "tick"),
    time_s: num(o.time_s, "time_s"),
    scene: str(o.scene, "scene"),
    alpha_deg: num(o.alpha_deg, "alpha_deg"),
    beta_deg: num(o.beta_deg, "beta_deg"),
    frequency_hz: num(o.frequency_hz, "frequency_hz"),
    rotor_height_mm: num(o.rotor_height_mm, "rotor_height_mm"),
    field: { bx: num(f.bx, "field.bx"), by: num(f.by, "field.by"), bz: num(f.bz, "field.bz") },
    center: tuple(o.center, 3, "center") as Vec3,
    foot_a: tuple(o.foot_a, 3, "foot_a") as Vec3,
    foot_b: tuple(o.foot_b, 3, "foot_b") as Vec3,
    units: units.map((u, i) => parseUnit(u, `units[${i}]`)),
    anchored: foot(o.anchored, "anchored"),
    distance_mm: num(o.distance_mm, "distance_mm"),
    paused: bool(o.paused, "paused"),
    collided: bool(o.collided, "collided"),
    goal_reached: bool(o.goal_reached, "goal_reached"),
    clamped: bool(o.clamped, "clamped"),
  };
}

function parseError(o: Record<string, unknown>): ErrorMessage {
  const code = str(o.code, "code");
  if (code !== "bad_json" && code !== "unknown_type" && code !== "bad_value") {
    fail(`code: unknown error code ${code}`);
  }
  return { type: "error", code, message: str(o.message, "message") };
}

/**
 * Parse one server text frame.  Recorded telemetry logs store bare state
 * frames without the `type` tag; those are accepted too.  Throws
 * ProtocolError on anything malformed.
 */
export function parseServerMessage(text: string): ServerMessage {
  let raw: unknown;
  try {
    raw = JSON.parse(text);
  } catch {
    fail("not valid JSON");
  }
  const o = rec(raw, "message");
  const t = o.type ?? (o.tick !== undefined ? "state" : undefined);
  switch (t) {
    case "scene_info":
      return parseSceneInfo(o);
    case "state":
      return parseState(o);
    case "error":
      return parseError(o);
    default:
      fail(`unrecognised message type ${String(t)}`);
  }
}

/** Field azimuth in the horizontal plane, degrees — drives the dial. */
export function fieldAzimuthDeg(f: { bx: number; by: number }): number {
  return (Math.atan2(f.by, f.bx) * 180) / Math.PI;
}

/** Field elevation out of the horizontal plane, degrees. */
export function fieldElevationDeg(f: { bx: number; by: number; bz: number }): number {
  return (Math.atan2(f.bz, Math.hypot(f.bx, f.by)) * 180) / Math.PI;
}

/** Field magnitude, mT. */
export function fieldMagnitudeMt(f: { bx: number; by: number; bz: number }): number {
  return Math.hypot(f.bx, f.by, f.bz);
}
