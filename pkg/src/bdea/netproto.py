"""Framed sender/receiver protocol for key transport and ciphertext delivery.

Frame layout::

    "BDEA" | version=1 | ftype:u8 | len:u32 | payload

Session (one per connection, strict order)::

    client -> ClientHello(p, g, A)
    server -> ServerHello(B)
    client -> WrappedKeyBundle
    client -> Ciphertext
    server -> Ack(crc32(plaintext))  or  Error(reason)

The demo server is thread-per-session (``socketserver.ThreadingTCPServer``);
sessions share no mutable state.
"""

from __future__ import annotations

import enum
import logging
import os
import socket
import socketserver
import struct
import threading
from dataclasses import dataclass
from pathlib import Path

from .errors import (
    BadMagic,
    BadVersion,
    BdeaError,
    BiologicalPollution,
    CrcMismatch,
    FrameTooLarge,
    InvalidParams,
    ProtocolError,
    PublicValueOutOfRange,
    RemoteError,
    AckMismatch,
    TransportClosed,
    UnexpectedFrameType,
)
from .frame import crc32
from .keyex import DhParams, dh_shared, generate_keypair, unwrap_bundle, wrap_bundle
from .pipeline import (
    CipherContainer, KeyMaterial, Mode, UnknownMode, amplified_stream, encrypt, recover_stream,
)

log = logging.getLogger(__name__)

MAGIC = b"BDEA"
VERSION = 1
MAX_PAYLOAD = 1 << 26
_HEADER = struct.Struct(">4sBBI")
HEADER_SIZE = _HEADER.size  # 10
SEED_ENV = "BDEA_DH_SEED"


class FrameType(enum.IntEnum):
    CLIENT_HELLO = 1
    SERVER_HELLO = 2
    WRAPPED_KEY_BUNDLE = 3
    CIPHERTEXT = 4
    ACK = 5
    ERROR = 6


class Reason(enum.IntEnum):
    POLLUTION = 1
    CRC = 2
    MALFORMED = 3


@dataclass(frozen=True)
class Frame:
    ftype: FrameType
    payload: bytes = b""


def encode_frame(frame: Frame) -> bytes:
    if len(frame.payload) > MAX_PAYLOAD:
        raise FrameTooLarge(f"payload of {len(frame.payload)} bytes exceeds {MAX_PAYLOAD}")
    return _HEADER.pack(MAGIC, VERSION, frame.ftype, len(frame.payload)) + frame.payload


def _parse_header(header: bytes) -> tuple[FrameType, int]:
    magic, version, ftype, length = _HEADER.unpack(header)
    if magic != MAGIC:
        raise ProtocolError(f"bad frame magic {magic!r}")
    if version != VERSION:
        raise ProtocolError(f"unsupported frame version {version}")
    try:
        ftype = FrameType(ftype)
    except ValueError:
        raise UnexpectedFrameType(f"unknown frame type {ftype}") from None
    if length > MAX_PAYLOAD:
        raise FrameTooLarge(f"declared payload of {length} bytes exceeds {MAX_PAYLOAD}")
    return ftype, length


def decode_frame(data: bytes) -> Frame:
    if len(data) < HEADER_SIZE:
        raise ProtocolError("frame shorter than its header")
    ftype, length = _parse_header(data[:HEADER_SIZE])
    payload = data[HEADER_SIZE:]
    if len(payload) != length:
        raise ProtocolError(f"frame declares {length} payload bytes, got {len(payload)}")
    return Frame(ftype, bytes(payload))


def _recv_exact(sock: socket.socket, n: int) -> bytes:
    buf = bytearray()
    while len(buf) < n:
        chunk = sock.recv(min(n - len(buf), 1 << 20))
        if not chunk:
            raise TransportClosed(f"peer closed after {len(buf)} of {n} bytes")
        buf += chunk
    return bytes(buf)


def read_frame(sock: socket.socket) -> Frame:
    ftype, length = _parse_header(_recv_exact(sock, HEADER_SIZE))
    return Frame(ftype, _recv_exact(sock, length))


def write_frame(sock: socket.socket, frame: Frame) -> None:
    sock.sendall(encode_frame(frame))


def _send_error(sock: socket.socket, reason: Reason) -> None:
    try:
        write_frame(sock, Frame(FrameType.ERROR, bytes([reason])))
    except OSError:
        log.debug("could not deliver error frame", exc_info=True)


def _expect(sock: socket.socket, ftype: FrameType) -> Frame:
    frame = read_frame(sock)
    if frame.ftype is FrameType.ERROR:
        reason = frame.payload[0] if frame.payload else 0
        raise RemoteError(reason)
    if frame.ftype is not ftype:
        raise UnexpectedFrameType(f"expected {ftype.name}, got {frame.ftype.name}")
    return frame


def env_seed() -> int | None:
    value = os.environ.get(SEED_ENV)
    return int(value, 0) if value else None


def send_session(
    sock: socket.socket,
    plaintext: bytes,
    km: KeyMaterial,
    dh: DhParams,
    seed: int | None = None,
) -> int:
    """Run the client side of one session; returns the acknowledged CRC-32."""
    container, bundle = encrypt(plaintext, km)
    mine = generate_keypair(dh, seed)
    write_frame(sock, Frame(FrameType.CLIENT_HELLO, struct.pack(">3Q", dh.p, dh.g, mine.public)))

    hello = _expect(sock, FrameType.SERVER_HELLO)
    try:
        if len(hello.payload) != 8:
            raise ProtocolError("ServerHello payload must be 8 bytes")
        (peer,) = struct.unpack(">Q", hello.payload)
        secret = dh_shared(dh, mine.private, peer)
    except (ProtocolError, PublicValueOutOfRange):
        _send_error(sock, Reason.MALFORMED)
        raise

    write_frame(sock, Frame(FrameType.WRAPPED_KEY_BUNDLE, wrap_bundle(bundle, secret)))
    write_frame(sock, Frame(FrameType.CIPHERTEXT, container.to_bytes()))

    ack = _expect(sock, FrameType.ACK)
    expected = crc32(plaintext)
    if ack.payload != struct.pack(">I", expected):
        _send_error(sock, Reason.CRC)
        raise AckMismatch(f"ack {ack.payload.hex()} does not match crc32 {expected:08x}")
    return expected


def _reason_for(exc: BdeaError) -> Reason:
    if isinstance(exc, BiologicalPollution):
        return Reason.POLLUTION
    if isinstance(exc, (CrcMismatch, BadMagic, BadVersion)):
        return Reason.CRC
    return Reason.MALFORMED


def recv_session(sock: socket.socket, dh_seed: int | None = None) -> bytes:
    """Run the server side of one session and return the recovered plaintext."""
    try:
        hello = _expect(sock, FrameType.CLIENT_HELLO)
        if len(hello.payload) != 24:
            raise ProtocolError("ClientHello payload must be 24 bytes")
        p, g, peer = struct.unpack(">3Q", hello.payload)
        try:
            dh = DhParams(p, g)
        except InvalidParams as exc:
            raise ProtocolError(str(exc)) from None
        mine = generate_keypair(dh, dh_seed)
        secret = dh_shared(dh, mine.private, peer)
    except (ProtocolError, PublicValueOutOfRange) as exc:
        if not isinstance(exc, (RemoteError, TransportClosed)):
            _send_error(sock, Reason.MALFORMED)
        raise

    write_frame(sock, Frame(FrameType.SERVER_HELLO, struct.pack(">Q", mine.public)))

    try:
        bundle_frame = _expect(sock, FrameType.WRAPPED_KEY_BUNDLE)
        cipher_frame = _expect(sock, FrameType.CIPHERTEXT)
    except (UnexpectedFrameType, ProtocolError) as exc:
        if not isinstance(exc, (RemoteError, TransportClosed)):
            _send_error(sock, Reason.MALFORMED)
        raise

    try:
        bundle = unwrap_bundle(bundle_frame.payload, secret)
        container = CipherContainer.from_bytes(cipher_frame.payload)
        # paper mode carries no integrity check, so it is never accepted here
        if container.mode is not Mode.STANDARD:
            raise UnknownMode(f"mode {container.mode.name} not accepted over the wire")
        amp = amplified_stream(container)
    except BdeaError:
        # anything wrong before the DNA stages is a malformed message
        _send_error(sock, Reason.MALFORMED)
        raise
    try:
        plaintext = recover_stream(amp, bundle, container.mode)
    except BdeaError as exc:
        _send_error(sock, _reason_for(exc))
        raise
    write_frame(sock, Frame(FrameType.ACK, struct.pack(">I", crc32(plaintext))))
    return plaintext


class _SessionHandler(socketserver.BaseRequestHandler):
    def handle(self):
        server: BdeaServer = self.server
        self.request.settimeout(server.timeout_s)
        try:
            plaintext = recv_session(self.request, server.dh_seed)
        except (BdeaError, OSError) as exc:
            log.warning("session from %s failed: %s", self.client_address, exc)
            server.record(self.client_address, None, exc)
            return
        server.record(self.client_address, plaintext, None)


class BdeaServer(socketserver.ThreadingTCPServer):
    """Thread-per-session receiver. Completed sessions land in ``results``."""

    daemon_threads = True
    allow_reuse_address = True

    def __init__(self, address, out_dir: str | os.PathLike | None = None,
                 dh_seed: int | None = None, timeout_s: float = 60.0):
        super().__init__(address, _SessionHandler)
        self.out_dir = Path(out_dir) if out_dir is not None else None
        self.dh_seed = dh_seed
        self.timeout_s = timeout_s
        self.results: list[tuple[object, bytes | None, Exception | None]] = []
        self._lock = threading.Lock()
        self._count = 0
        self.session_done = threading.Event()

    def record(self, peer, plaintext: bytes | None, error: Exception | None) -> None:
        with self._lock:
            self._count += 1
            n = self._count
        if plaintext is not None and self.out_dir is not None:
            self.out_dir.mkdir(parents=True, exist_ok=True)
            path = self.out_dir / f"session-{n:04d}.bin"
            path.write_bytes(plaintext)
            log.info("wrote %d bytes to %s", len(plaintext), path)
        with self._lock:
            self.results.append((peer, plaintext, error))
        self.session_done.set()


def send_file(address: tuple[str, int], plaintext: bytes, km: KeyMaterial,
              dh: DhParams, seed: int | None = None, timeout_s: float = 60.0) -> int:
    with socket.create_connection(address, timeout=timeout_s) as sock:
        return send_session(sock, plaintext, km, dh, seed)


__all__ = [
    "Frame", "FrameType", "Reason", "encode_frame", "decode_frame", "read_frame",
    "write_frame", "send_session", "recv_session", "send_file", "BdeaServer", "env_seed",
]
