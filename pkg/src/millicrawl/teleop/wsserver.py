"""Minimal WebSocket (RFC 6455) server for the teleoperation session.

Implements the subset the teleop protocol needs on top of stdlib sockets:
HTTP upgrade handshake, masked client text frames, unmasked server text
frames, ping/pong, and clean close.  Fragmented messages are not supported;
control traffic is far below the 125-byte unfragmented minimum anyway.

One client is served at a time.  The loop is select-driven around the tick
deadline, so input latency is bounded by the tick period and the session
stays strictly fixed-tick regardless of network timing.
"""

from __future__ import annotations

import base64
import hashlib
import select
import socket
import struct
import time

from .protocol import encode_scene_info, encode_state
from .session import SimSession, save_recording

WS_GUID = "258EAFA5-E914-47DA-95CA-C5AB0DC85B11"

OP_CONT = 0x0
OP_TEXT = 0x1
OP_CLOSE = 0x8
OP_PING = 0x9
OP_PONG = 0xA


def accept_key(client_key: str) -> str:
    """Sec-WebSocket-Accept value for a client key."""
    digest = hashlib.sha1((client_key + WS_GUID).encode()).digest()
    return base64.b64encode(digest).decode()


def encode_frame(payload: bytes, opcode: int = OP_TEXT) -> bytes:
    """Server-to-client frame: FIN set, unmasked."""
    head = bytes([0x80 | opcode])
    n = len(payload)
    if n < 126:
        head += bytes([n])
    elif n < 1 << 16:
        head += bytes([126]) + struct.pack(">H", n)
    else:
        head += bytes([127]) + struct.pack(">Q", n)
    return head + payload


class FrameReader:
    """Incremental parser for client-to-server frames (masked)."""

    def __init__(self):
        self._buf = b""

    def feed(self, data: bytes) -> list:
        """Consume bytes; returns complete (opcode, payload) pairs."""
        self._buf += data
        out = []
        while True:
            parsed = self._parse_one()
            if parsed is None:
                return out
            out.append(parsed)

    def _parse_one(self):
        buf = self._buf
        if len(buf) < 2:
            return None
        b0, b1 = buf[0], buf[1]
        if not b0 & 0x80:
            raise ValueError("fragmented frames are not supported")
        opcode = b0 & 0x0F
        masked = bool(b1 & 0x80)
        n = b1 & 0x7F
        pos = 2
        if n == 126:
            if len(buf) < pos + 2:
                return None
            (n,) = struct.unpack(">H", buf[pos : pos + 2])
            pos += 2
        elif n == 127:
            if len(buf) < pos + 8:
                return None
            (n,) = struct.unpack(">Q", buf[pos : pos + 8])
            pos += 8
        if not masked:
            raise ValueError("client frames must be masked")
        if len(buf) < pos + 4 + n:
            return None
        mask = buf[pos : pos + 4]
        pos += 4
        payload = bytes(b ^ mask[i % 4] for i, b in enumerate(buf[pos : pos + n]))
        self._buf = buf[pos + n :]
        return opcode, payload


def _read_handshake(conn: socket.socket) -> dict:
    data = b""
    while b"\r\n\r\n" not in data:
        chunk = conn.recv(4096)
        if not chunk:
            raise ConnectionError("client closed during handshake")
        data += chunk
        if len(data) > 65536:
            raise ValueError("oversized handshake request")
    head = data.split(b"\r\n\r\n", 1)[0].decode("latin-1")
    lines = head.split("\r\n")
    headers = {}
    for line in lines[1:]:
        if ":" in line:
            k, v = line.split(":", 1)
            headers[k.strip().lower()] = v.strip()
    return headers


def perform_handshake(conn: socket.socket) -> None:
    """Read the HTTP upgrade request and answer 101, or raise."""
    headers = _read_handshake(conn)
    key = headers.get("sec-websocket-key")
    if not key or "websocket" not in headers.get("upgrade", "").lower():
        conn.sendall(b"HTTP/1.1 400 Bad Request\r\n\r\n")
        raise ValueError("not a websocket upgrade request")
    resp = (
        "HTTP/1.1 101 Switching Protocols\r\n"
        "Upgrade: websocket\r\n"
        "Connection: Upgrade\r\n"
        f"Sec-WebSocket-Accept: {accept_key(key)}\r\n"
        "\r\n"
    )
    conn.sendall(resp.encode("latin-1"))


def serve_session(
    host: str = "127.0.0.1",
    port: int = 8765,
    scene: str = "straight_channel",
    tick_rate: float = 30.0,
    setup=None,
    max_ticks: int | None = None,
    record_path=None,
    ready_callback=None,
) -> int:
    """Serve teleop sessions until ``max_ticks`` total ticks (None: forever).

    Each connecting client gets a fresh session in ``scene``.  Returns the
    number of ticks served.  ``ready_callback`` (if given) receives the bound
    port once listening, which lets tests pick port 0.
    """
    period = 1.0 / tick_rate
    total_ticks = 0
    with socket.socket(socket.AF_INET, socket.SOCK_STREAM) as listener:
        listener.setsockopt(socket.SOL_SOCKET, socket.SO_REUSEADDR, 1)
        listener.bind((host, port))
        listener.listen(1)
        if ready_callback is not None:
            ready_callback(listener.getsockname()[1])
        while max_ticks is None or total_ticks < max_ticks:
            ready, _, _ = select.select([listener], [], [], 1.0)
            if not ready:
                continue
            conn, _ = listener.accept()
            with conn:
                try:
                    perform_handshake(conn)
                except (ValueError, ConnectionError):
                    continue
                session = SimSession(scene=scene, tick_rate=tick_rate, setup=setup)
                # geometry first, so clients can draw before any input
                conn.sendall(encode_frame(encode_scene_info(session.scene).encode()))
                served = _client_loop(conn, session, period, max_ticks, total_ticks)
                total_ticks += served
                if record_path is not None:
                    save_recording(session, record_path)
    return total_ticks


def _client_loop(conn, session, period, max_ticks, ticks_before) -> int:
    reader = FrameReader()
    ticks = 0
    next_tick = time.monotonic() + period
    while max_ticks is None or ticks_before + ticks < max_ticks:
        timeout = max(0.0, next_tick - time.monotonic())
        ready, _, _ = select.select([conn], [], [], timeout)
        if ready:
            try:
                data = conn.recv(4096)
            except ConnectionError:
                return ticks
            if not data:
                return ticks
            try:
                events = reader.feed(data)
            except ValueError:
                conn.sendall(encode_frame(b"", OP_CLOSE))
                return ticks
            for opcode, payload in events:
                if opcode == OP_CLOSE:
                    conn.sendall(encode_frame(payload[:2], OP_CLOSE))
                    return ticks
                if opcode == OP_PING:
                    conn.sendall(encode_frame(payload, OP_PONG))
                elif opcode == OP_TEXT:
                    for reply in session.apply(payload.decode("utf-8")):
                        conn.sendall(encode_frame(reply.encode("utf-8")))
        if time.monotonic() >= next_tick:
            frame = session.tick()
            try:
                conn.sendall(encode_frame(encode_state(frame).encode("utf-8")))
            except ConnectionError:
                return ticks
            ticks += 1
            next_tick += period
    return ticks
