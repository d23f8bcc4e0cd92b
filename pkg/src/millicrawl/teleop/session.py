"""Pure fixed-tick teleoperation session.

The session owns all simulation state and evolves only in ``tick()``:
``apply`` queues control messages, and every queued message is applied at the
next tick boundary before physics.  Given the same message schedule, a
session therefore reproduces the same frame stream bit for bit, which is
what the record/replay path relies on.

Physics per tick: the drive phase advances by 360 f / tick_rate degrees and
the crawling kinematics follow it.  In a slip cell the anchored foot cannot
hold, so the planar advance of that tick is cancelled (the foot drags).  A
body segment touching a wall or leaving the bounds raises the collision
latch, which freezes motion until ``reset`` or a new ``start``.
"""

from __future__ import annotations

import json
import math

from ..gait import UnitGeometry, body_pose, gait_advance, gait_state_init
from ..magnetics import ActuationSetup
from .protocol import ProtocolError, clamp_value, decode_client, encode_scene_info
from .scenes import Scene, get_scene

DEFAULT_TICK_RATE = 30.0


class SimSession:
    """Single-unit interactive crawl in a scene."""

    def __init__(
        self,
        scene: str | Scene = "straight_channel",
        tick_rate: float = DEFAULT_TICK_RATE,
        setup: ActuationSetup | None = None,
        geometry: UnitGeometry = UnitGeometry(),
    ):
        if tick_rate <= 0:
            raise ValueError("tick rate must be positive")
        self.tick_rate = float(tick_rate)
        self.geometry = geometry
        self._base_setup = setup if setup is not None else ActuationSetup()
        self.scene = get_scene(scene) if isinstance(scene, str) else scene
        self._queue: list = []
        self.recording: list = []
        self._reset_state()

    # -- state management --------------------------------------------------

    def _reset_state(self):
        self.setup = self._base_setup
        self.frequency_hz = 1.0
        self.beta_deg = 0.0
        self.paused = False
        self.collided = False
        self.goal_reached = False
        self.clamped = False
        self.tick_index = 0
        self.distance_mm = 0.0
        self.alpha_deg = 0.0
        self._gait = gait_state_init(self.setup, self.scene.start_xy, 0.0, 0.0)
        _, _, c = body_pose(self.setup, self.geometry, self._gait)
        self._center = c

    def _set_rotor_height(self, height_mm: float):
        base = self._base_setup
        self.setup = ActuationSetup(
            static_moment=base.static_moment,
            rotor_moment=base.rotor_moment,
            static_offset_mm=base.static_offset_mm,
            rotor_height_mm=height_mm,
        )

    # -- control input -----------------------------------------------------

    def apply(self, text: str) -> list:
        """Queue one client message; returns immediate replies (JSON str).

        Shape errors reply immediately with an error message and queue
        nothing.  Valid messages take effect at the next tick boundary.
        """
        try:
            msg = decode_client(text)
        except ProtocolError as e:
            from .protocol import encode_error

            return [encode_error(e.code, e.message)]
        replies = []
        if msg["type"] == "start":
            try:
                scene = get_scene(msg["scene"])
            except KeyError as e:
                from .protocol import encode_error

                return [encode_error("bad_value", str(e))]
            replies.append(encode_scene_info(scene))
        self._queue.append(msg)
        self.recording.append({"tick": self.tick_index, "msg": msg})
        return replies

    def _apply_queued(self):
        for msg in self._queue:
            t = msg["type"]
            if t == "start":
                self.scene = get_scene(msg["scene"])
                self._reset_state()
            elif t == "reset":
                self._reset_state()
            elif t == "pause":
                self.paused = True
            elif t == "resume":
                self.paused = False
            elif t == "set":
                value, was_clamped = clamp_value(msg["param"], msg["value"])
                self.clamped = was_clamped
                if msg["param"] == "frequency_hz":
                    self.frequency_hz = value
                elif msg["param"] == "beta_deg":
                    self.beta_deg = value % 360.0
                elif msg["param"] == "rotor_height_mm":
                    self._set_rotor_height(value)
        self._queue.clear()

    # -- simulation --------------------------------------------------------

    def tick(self) -> dict:
        """Apply queued inputs, advance one tick, return the state frame."""
        self._apply_queued()
        if not self.paused and not self.collided:
            self._advance()
        self.tick_index += 1
        return self.frame()

    def _advance(self):
        alpha = self.alpha_deg + 360.0 * self.frequency_hz / self.tick_rate
        prev_center = self._center
        prev_gait = self._gait
        gait = gait_advance(self.setup, self.geometry, prev_gait, alpha, self.beta_deg)
        fa, fb, c = body_pose(self.setup, self.geometry, gait)
        anchor_pt = fa[:2] if gait.anchored == "a" else fb[:2]
        if self.scene.in_slip_cell(anchor_pt):
            # the foot drags instead of holding: cancel this tick's planar
            # advance by sliding the anchor back
            dx = c[0] - prev_center[0]
            dy = c[1] - prev_center[1]
            gait = type(gait)(
                gait.alpha_deg,
                gait.beta_deg,
                gait.anchored,
                (gait.anchor_xy[0] - dx, gait.anchor_xy[1] - dy),
            )
            fa, fb, c = body_pose(self.setup, self.geometry, gait)
        hit = (
            self.scene.segment_hits_wall(tuple(fa[:2]), tuple(fb[:2]))
            or not self.scene.in_bounds(fa[:2])
            or not self.scene.in_bounds(fb[:2])
        )
        if hit:
            self.collided = True  # freeze pre-collision state until reset
            return
        self.alpha_deg = alpha
        self._gait = gait
        self._center = c
        self.distance_mm += float(
            ((c[0] - prev_center[0]) ** 2 + (c[1] - prev_center[1]) ** 2) ** 0.5
        )
        if self.scene.at_goal(c[:2]):
            self.goal_reached = True

    def frame(self) -> dict:
        fa, fb, c = body_pose(self.setup, self.geometry, self._gait)
        bx, by, bz = self.setup.center_field_mt(self.alpha_deg)
        # body axis from rear foot (a) to front foot (b); its elevation is the
        # live pose angle, signed like the field elevation driving it
        pose = math.degrees(math.asin((fb[2] - fa[2]) / self.geometry.length_mm))
        return {
            "tick": self.tick_index,
            "time_s": self.tick_index / self.tick_rate,
            "scene": self.scene.name,
            "alpha_deg": self.alpha_deg,
            "beta_deg": self.beta_deg,
            "frequency_hz": self.frequency_hz,
            "rotor_height_mm": self.setup.rotor_height_mm,
            "field": {"bx": float(bx), "by": float(by), "bz": float(bz)},
            "center": [float(c[0]), float(c[1]), float(c[2])],
            "foot_a": [float(v) for v in fa],
            "foot_b": [float(v) for v in fb],
            "units": [
                {
                    "x": float(c[0]),
                    "y": float(c[1]),
                    "heading_deg": self.beta_deg % 360.0,
                    "pose_angle_deg": pose,
                    "anchored_foot": self._gait.anchored,
                }
            ],
            "anchored": self._gait.anchored,
            "distance_mm": self.distance_mm,
            "paused": self.paused,
            "collided": self.collided,
            "goal_reached": self.goal_reached,
            "clamped": self.clamped,
        }


def save_recording(session: SimSession, path) -> None:
    """Write the applied-message log as JSON lines."""
    with open(path, "w") as f:
        for entry in session.recording:
            f.write(json.dumps(entry) + "\n")


def load_recording(path) -> list:
    with open(path) as f:
        return [json.loads(line) for line in f if line.strip()]


def replay(
    recording: list,
    scene: str | Scene = "straight_channel",
    tick_rate: float = DEFAULT_TICK_RATE,
    extra_ticks: int = 0,
    setup: ActuationSetup | None = None,
) -> list:
    """Re-run a message log on a fresh session; returns all state frames.

    Messages are applied at their recorded tick indices, so the frame stream
    is bit-identical to the original run over the recorded horizon.
    """
    by_tick: dict = {}
    last = 0
    for entry in recording:
        by_tick.setdefault(int(entry["tick"]), []).append(entry["msg"])
        last = max(last, int(entry["tick"]))
    session = SimSession(scene=scene, tick_rate=tick_rate, setup=setup)
    frames = []
    for t in range(last + 1 + extra_ticks):
        for msg in by_tick.get(t, ()):
            session.apply(json.dumps(msg))
        frames.append(session.tick())
    return frames
