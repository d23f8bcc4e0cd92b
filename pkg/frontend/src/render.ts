/**
 * Top-down 2D canvas rendering.  Pure drawing: every function is a
 * projection of (scene, latest frame) onto the canvas, nothing is animated
 * client-side between frames.
 */

import {
  fieldAzimuthDeg,
  fieldElevationDeg,
  fieldMagnitudeMt,
  type SceneInfo,
  type TelemetryFrame,
  type Vec2,
} from "./protocol.js";

export interface Viewport {
  scale: number; // px per mm
  ox: number; // canvas x of world origin
  oy: number; // canvas y of world origin (y axis flipped)
}

export function fitViewport(
  bounds: [number, number, number, number],
  widthPx: number,
  heightPx: number,
  marginPx = 16,
): Viewport {
  const [x0, y0, x1, y1] = bounds;
  const scale = Math.min(
    (widthPx - 2 * marginPx) / (x1 - x0),
    (heightPx - 2 * marginPx) / (y1 - y0),
  );
  return {
    scale,
    ox: marginPx - x0 * scale + (widthPx - 2 * marginPx - (x1 - x0) * scale) / 2,
    oy: heightPx - marginPx + y0 * scale - (heightPx - 2 * marginPx - (y1 - y0) * scale) / 2,
  };
}

export function toScreen(v: Viewport, p: Vec2): Vec2 {
  return [v.ox + p[0] * v.scale, v.oy - p[1] * v.scale];
}

export function drawScene(
  ctx: CanvasRenderingContext2D,
  scene: SceneInfo,
  v: Viewport,
): void {
  const [x0, y0, x1, y1] = scene.bounds;
  ctx.save();
  ctx.strokeStyle = "#888";
  ctx.setLineDash([4, 4]);
  const tl = toScreen(v, [x0, y1]);
  ctx.strokeRect(tl[0], tl[1], (x1 - x0) * v.scale, (y1 - y0) * v.scale);
  ctx.setLineDash([]);

  ctx.fillStyle = "rgba(200, 120, 40, 0.25)";
  for (const cell of scene.slip_cells) {
    ctx.beginPath();
    cell.forEach((p, i) => {
      const s = toScreen(v, p);
      if (i === 0) ctx.moveTo(s[0], s[1]);
      else ctx.lineTo(s[0], s[1]);
    });
    ctx.closePath();
    ctx.fill();
  }

  ctx.strokeStyle = "#223";
  ctx.lineWidth = 2;
  ctx.beginPath();
  for (const [a, b] of scene.walls) {
    const pa = toScreen(v, a);
    const pb = toScreen(v, b);
    ctx.moveTo(pa[0], pa[1]);
    ctx.lineTo(pb[0], pb[1]);
  }
  ctx.stroke();

  const goal = toScreen(v, scene.goal_xy);
  ctx.strokeStyle = "#2a2";
  ctx.beginPath();
  ctx.arc(goal[0], goal[1], scene.goal_radius_mm * v.scale, 0, 2 * Math.PI);
  ctx.stroke();

  const start = toScreen(v, scene.start_xy);
  ctx.fillStyle = "#44f";
  ctx.beginPath();
  ctx.arc(start[0], start[1], 3, 0, 2 * Math.PI);
  ctx.fill();
  ctx.restore();
}

export function drawRobot(
  ctx: CanvasRenderingContext2D,
  frame: TelemetryFrame,
  v: Viewport,
): void {
  const fa = toScreen(v, [frame.foot_a[0], frame.foot_a[1]]);
  const fb = toScreen(v, [frame.foot_b[0], frame.foot_b[1]]);
  const c = toScreen(v, [frame.center[0], frame.center[1]]);

  ctx.save();
  ctx.strokeStyle = frame.collided ? "#c22" : "#111";
  ctx.lineWidth = 3;
  ctx.beginPath();
  ctx.moveTo(fa[0], fa[1]);
  ctx.lineTo(fb[0], fb[1]);
  ctx.stroke();

  // anchored foot solid, swinging foot hollow
  for (const [p, name] of [
    [fa, "a"],
    [fb, "b"],
  ] as Array<[Vec2, "a" | "b"]>) {
    ctx.beginPath();
    ctx.arc(p[0], p[1], 4, 0, 2 * Math.PI);
    if (frame.anchored === name) {
      ctx.fillStyle = "#111";
      ctx.fill();
    } else {
      ctx.stroke();
    }
  }

  // commanded heading arrow
  const b = (frame.beta_deg * Math.PI) / 180;
  ctx.strokeStyle = "#06c";
  ctx.lineWidth = 1.5;
  ctx.beginPath();
  ctx.moveTo(c[0], c[1]);
  ctx.lineTo(c[0] + 24 * Math.cos(b), c[1] - 24 * Math.sin(b));
  ctx.stroke();
  ctx.restore();
}

/** Rotor-phase dial with the field azimuth needle and elevation badge. */
export function drawFieldDial(
  ctx: CanvasRenderingContext2D,
  frame: TelemetryFrame,
  cx: number,
  cy: number,
  r: number,
): void {
  ctx.save();
  ctx.strokeStyle = "#555";
  ctx.beginPath();
  ctx.arc(cx, cy, r, 0, 2 * Math.PI);
  ctx.stroke();

  const alpha = ((frame.alpha_deg % 360) * Math.PI) / 180;
  ctx.strokeStyle = "#999";
  ctx.beginPath();
  ctx.moveTo(cx, cy);
  ctx.lineTo(cx + 0.6 * r * Math.sin(alpha), cy - 0.6 * r * Math.cos(alpha));
  ctx.stroke();

  const az = (fieldAzimuthDeg(frame.field) * Math.PI) / 180;
  ctx.strokeStyle = "#c60";
  ctx.lineWidth = 2;
  ctx.beginPath();
  ctx.moveTo(cx, cy);
  ctx.lineTo(cx + r * Math.cos(az), cy - r * Math.sin(az));
  ctx.stroke();

  const el = fieldElevationDeg(frame.field);
  ctx.fillStyle = "#333";
  ctx.font = "11px sans-serif";
  ctx.textAlign = "center";
  ctx.fillText(`${fieldMagnitudeMt(frame.field).toFixed(2)} mT`, cx, cy + r + 12);
  ctx.fillText(el >= 0 ? `tilt +${el.toFixed(0)}°` : `tilt ${el.toFixed(0)}°`, cx, cy + r + 24);
  ctx.restore();
}
