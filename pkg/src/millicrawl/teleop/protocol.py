"""JSON wire protocol for teleoperation.

Client messages (one JSON object per text frame)::

    {"type": "start", "scene": "s_curve"}
    {"type": "set", "param": "frequency_hz", "value": 1.7}
    {"type": "pause"} | {"type": "resume"} | {"type": "reset"}

Server messages::

    {"type": "scene_info", ...}   after start
    {"type": "state", ...}        one per simulation tick
    {"type": "error", "code": "...", "message": "..."}

Settable parameters are clamped server-side to ``CONTROL_LIMITS``; a clamped
set is applied at the limit and flagged in the next state frame rather than
rejected, so a held-down key at the edge of the range stays predictable.
"""

from __future__ import annotations

import json

CONTROL_LIMITS = {
    "frequency_hz": (0.0, 2.0),
    "rotor_height_mm": (110.0, 250.0),
    "beta_deg": None,  # unconstrained; wrapped mod 360 by the session
}

CLIENT_TYPES = ("start", "set", "pause", "resume", "reset")


class ProtocolError(Exception):
    """Malformed client traffic; ``code`` is machine-readable."""

    def __init__(self, code: str, message: str):
        super().__init__(message)
        self.code = code
        self.message = message


def decode_client(text: str) -> dict:
    """Parse and shape-check one client message.

    Raises ``ProtocolError`` with code ``bad_json`` (not JSON / not an
    object), ``unknown_type`` (missing or unrecognised type), or
    ``bad_value`` (set with a bad param name or non-numeric value).
    """
    try:
        msg = json.loads(text)
    except json.JSONDecodeError as e:
        raise ProtocolError("bad_json", f"not valid JSON: {e}") from e
    if not isinstance(msg, dict):
        raise ProtocolError("bad_json", "message must be a JSON object")
    mtype = msg.get("type")
    if mtype not in CLIENT_TYPES:
        raise ProtocolError("unknown_type", f"unknown message type {mtype!r}")
    if mtype == "start":
        scene = msg.get("scene")
        if not isinstance(scene, str):
            raise ProtocolError("bad_value", "start needs a scene name string")
    if mtype == "set":
        param = msg.get("param")
        if param not in CONTROL_LIMITS:
            raise ProtocolError(
                "bad_value", f"unknown parameter {param!r}; pick from {sorted(CONTROL_LIMITS)}"
            )
        value = msg.get("value")
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            raise ProtocolError("bad_value", "set needs a numeric value")
    return msg


def clamp_value(param: str, value: float) -> tuple[float, bool]:
    """Apply the control limit; returns (applied value, was clamped)."""
    limits = CONTROL_LIMITS[param]
    if limits is None:
        return float(value), False
    lo, hi = limits
    clamped = min(max(float(value), lo), hi)
    return clamped, clamped != float(value)


def encode_state(frame: dict) -> str:
    return json.dumps({"type": "state", **frame})


def encode_scene_info(scene) -> str:
    return json.dumps(
        {
            "type": "scene_info",
            "name": scene.name,
            "start_xy": list(scene.start_xy),
            "goal_xy": list(scene.goal_xy),
            "goal_radius_mm": scene.goal_radius_mm,
            "bounds": list(scene.bounds),
            "walls": [[list(a), list(b)] for a, b in scene.walls],
            "slip_cells": [[list(p) for p in poly] for poly in scene.slip_cells],
        }
    )


def encode_error(code: str, message: str) -> str:
    return json.dumps({"type": "error", "code": code, "message": message})
