"""Interactive teleoperation: scenes, session, wire protocol, transport."""

from .protocol import (
    CONTROL_LIMITS,
    ProtocolError,
    clamp_value,
    decode_client,
    encode_error,
    encode_scene_info,
    encode_state,
)
from .scenes import SCENES, Scene, get_scene
from .session import SimSession, load_recording, replay, save_recording
from .wsserver import serve_session

__all__ = [
    "CONTROL_LIMITS",
    "ProtocolError",
    "SCENES",
    "Scene",
    "SimSession",
    "clamp_value",
    "decode_client",
    "encode_error",
    "encode_scene_info",
    "encode_state",
    "get_scene",
    "load_recording",
    "replay",
    "save_recording",
    "serve_session",
]
