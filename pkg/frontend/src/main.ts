/**
 * Cockpit wiring: WebSocket client, DOM controls, render loop.
 *
 * State here is a projection of the telemetry stream plus widget values;
 * the simulation lives entirely on the server.  Socket events only mutate
 * `latest`/`scene`; the render loop reads them at display rate.
 */

import { ControlState, ReconnectPolicy, type ControlEvent } from "./controls.js";
import {
  encodeClient,
  parseServerMessage,
  type SceneInfo,
  type TelemetryFrame,
} from "./protocol.js";
import { drawFieldDial, drawRobot, drawScene, fitViewport } from "./render.js";
import { formatReadout, TelemetryStats } from "./stats.js";

function el<T extends HTMLElement>(id: string): T {
  const e = document.getElementById(id);
  if (e === null) throw new Error(`missing element #${id}`);
  return e as T;
}

const canvas = el<HTMLCanvasElement>("view");
const ctx = canvas.getContext("2d");
if (ctx === null) throw new Error("no 2d context");

const banner = el<HTMLDivElement>("banner");
const readouts = {
  speed: el<HTMLSpanElement>("ro-speed"),
  path: el<HTMLSpanElement>("ro-path"),
  stride: el<HTMLSpanElement>("ro-stride"),
  distance: el<HTMLSpanElement>("ro-distance"),
  pose: el<HTMLSpanElement>("ro-pose"),
  beta: el<HTMLSpanElement>("ro-beta"),
  status: el<HTMLSpanElement>("ro-status"),
};
const sliders = {
  beta: el<HTMLInputElement>("in-beta"),
  freq: el<HTMLInputElement>("in-freq"),
  height: el<HTMLInputElement>("in-height"),
};

const controls = new ControlState();
const stats = new TelemetryStats(2.0);
const backoff = new ReconnectPolicy();

let socket: WebSocket | null = null;
let scene: SceneInfo | null = null;
let latest: TelemetryFrame | null = null;
let lastFrameAtMs = 0;
let lastError = "";

function wsUrl(): string {
  const q = new URLSearchParams(window.location.search);
  return q.get("ws") ?? "ws://127.0.0.1:8765";
}

function send(event: ControlEvent): void {
  const out = controls.handle(event);
  if (out.dropped) {
    flashBanner("disconnected — input dropped");
    return;
  }
  const msg = out.messages[0];
  if (msg !== undefined && socket !== null && socket.readyState === WebSocket.OPEN) {
    socket.send(encodeClient(msg));
  }
}

let bannerTimer = 0;
function flashBanner(text: string): void {
  banner.textContent = text;
  banner.classList.add("visible");
  window.clearTimeout(bannerTimer);
  bannerTimer = window.setTimeout(() => banner.classList.remove("visible"), 1500);
}

function connect(): void {
  banner.textContent = `connecting to ${wsUrl()} ...`;
  banner.classList.add("visible");
  const ws = new WebSocket(wsUrl());
  socket = ws;
  ws.onopen = () => {
    controls.connected = true;
    backoff.resetOnSuccess();
    banner.classList.remove("visible");
  };
  ws.onmessage = (ev) => {
    if (typeof ev.data !== "string") return;
    let msg;
    try {
      msg = parseServerMessage(ev.data);
    } catch (e) {
      lastError = String(e);
      return;
    }
    if (msg.type === "scene_info") {
      scene = msg;
      stats.reset();
    } else if (msg.type === "state") {
      latest = msg;
      lastFrameAtMs = performance.now();
      controls.syncFromFrame(msg);
      stats.push(msg);
    } else {
      lastError = `${msg.code}: ${msg.message}`;
      flashBanner(`server: ${lastError}`);
    }
  };
  ws.onclose = () => {
    if (socket !== ws) return;
    socket = null;
    controls.onDisconnect();
    const delay = backoff.nextDelayMs();
    banner.textContent = `connection lost — retrying in ${(delay / 1000).toFixed(1)} s`;
    banner.classList.add("visible");
    window.setTimeout(connect, delay);
  };
  ws.onerror = () => ws.close();
}

window.addEventListener("keydown", (ev) => {
  if (ev.target instanceof HTMLInputElement) return; // don't steal slider focus
  if (["ArrowLeft", "ArrowRight", "Space", "KeyR"].includes(ev.code)) {
    ev.preventDefault();
    send({ kind: "key", code: ev.code });
  }
});

sliders.beta.addEventListener("change", () =>
  send({ kind: "slider", param: "beta_deg", value: Number(sliders.beta.value) }),
);
sliders.freq.addEventListener("change", () =>
  send({ kind: "slider", param: "frequency_hz", value: Number(sliders.freq.value) }),
);
sliders.height.addEventListener("change", () =>
  send({ kind: "slider", param: "rotor_height_mm", value: Number(sliders.height.value) }),
);
for (const action of ["pause", "resume", "reset", "start"] as const) {
  el<HTMLButtonElement>(`btn-${action}`).addEventListener("click", () =>
    send({ kind: "button", action }),
  );
}

function statusText(f: TelemetryFrame, staleS: number): string {
  const bits: string[] = [];
  if (f.goal_reached) bits.push("GOAL");
  if (f.collided) bits.push("collided — reset to continue");
  if (f.paused) bits.push("paused");
  if (f.clamped) bits.push("input clamped");
  if (staleS > 0.5) bits.push(`stale ${staleS.toFixed(1)} s`);
  return bits.length > 0 ? bits.join(" · ") : "running";
}

function renderLoop(): void {
  ctx!.clearRect(0, 0, canvas.width, canvas.height);
  if (scene !== null) {
    const v = fitViewport(scene.bounds, canvas.width, canvas.height);
    drawScene(ctx!, scene, v);
    if (latest !== null) drawRobot(ctx!, latest, v);
  }
  if (latest !== null) {
    const f = latest;
    const staleS = (performance.now() - lastFrameAtMs) / 1000;
    drawFieldDial(ctx!, f, canvas.width - 60, 56, 32);
    const unit = f.units[0];
    readouts.speed.textContent = formatReadout(stats.groundSpeedMmS(), 2, "mm/s");
    readouts.path.textContent = formatReadout(stats.pathSpeedMmS(), 2, "mm/s");
    readouts.stride.textContent = formatReadout(stats.strideEstimateMm(f.frequency_hz), 2, "mm");
    readouts.distance.textContent = formatReadout(f.distance_mm, 1, "mm");
    readouts.pose.textContent = formatReadout(unit?.pose_angle_deg ?? null, 1, "°");
    readouts.beta.textContent = formatReadout(controls.betaTargetDeg(), 0, "°");
    readouts.status.textContent = statusText(f, staleS);
    canvas.style.opacity = staleS > 0.5 ? "0.5" : "1";
    if (document.activeElement !== sliders.beta) sliders.beta.value = String(controls.betaTargetDeg());
    if (document.activeElement !== sliders.freq) sliders.freq.value = String(f.frequency_hz);
    if (document.activeElement !== sliders.height) sliders.height.value = String(f.rotor_height_mm);
  }
  window.requestAnimationFrame(renderLoop);
}

connect();
window.requestAnimationFrame(renderLoop);
