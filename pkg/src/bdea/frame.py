"""Plaintext envelope, half split and the XOR layer.

Envelope layout (big-endian)::

    BD EA | 01 | plain_len:u32 | crc32:u32 | payload | zero padding

The total length is padded to an even number of bytes so it splits into two
equal halves, k_a (first) and k_b (second). Only ``k_a XOR k_b`` goes into the
DNA stages; k_b travels with the key bundle.

The CRC is an integrity hint that turns a wrong key into a deterministic
error. It is not a MAC.
"""

from __future__ import annotations

import struct
import zlib
from typing import NamedTuple

from .errors import BadMagic, BadVersion, CrcMismatch, LengthMismatch, OddLength, TooLarge

MAGIC = b"\xbd\xea"
VERSION = 1
_HEADER = struct.Struct(">2sBII")
HEADER_SIZE = _HEADER.size  # 11


def crc32(data: bytes) -> int:
    """CRC-32/IEEE (reflected 0xEDB88320, init and xorout 0xFFFFFFFF)."""
    return zlib.crc32(data) & 0xFFFFFFFF


class HalfPair(NamedTuple):
    k_a: bytes
    k_b: bytes


def build_envelope(plain: bytes) -> bytes:
    plain = bytes(plain)
    if len(plain) >= 1 << 32:
        raise TooLarge(f"plaintext of {len(plain)} bytes does not fit a u32 length")
    out = _HEADER.pack(MAGIC, VERSION, len(plain), crc32(plain)) + plain
    if len(out) % 2:
        out += b"\x00"
    return out


def split_halves(envelope: bytes) -> HalfPair:
    if len(envelope) % 2:
        raise OddLength(f"cannot split {len(envelope)} bytes into equal halves")
    half = len(envelope) // 2
    return HalfPair(bytes(envelope[:half]), bytes(envelope[half:]))


def xor_bytes(a: bytes, b: bytes) -> bytes:
    if len(a) != len(b):
        raise LengthMismatch(f"xor operands differ in length: {len(a)} != {len(b)}")
    if not a:
        return b""
    n = int.from_bytes(a, "big") ^ int.from_bytes(b, "big")
    return n.to_bytes(len(a), "big")


def open_envelope(envelope: bytes) -> bytes:
    """Validate an envelope and return the plaintext it carries."""
    if len(envelope) < HEADER_SIZE:
        raise BadMagic(f"envelope too short ({len(envelope)} bytes)")
    magic, version, plain_len, crc = _HEADER.unpack_from(envelope)
    if magic != MAGIC:
        raise BadMagic(f"bad envelope magic {magic.hex()}")
    if version != VERSION:
        raise BadVersion(f"unsupported envelope version {version}")
    body = envelope[HEADER_SIZE:]
    # any trailing bytes beyond the declared payload must be the single pad byte
    if plain_len > len(body) or len(body) - plain_len > 1:
        raise CrcMismatch(f"declared length {plain_len} does not fit {len(body)} payload bytes")
    if any(body[plain_len:]):
        raise CrcMismatch("non-zero padding")
    payload = bytes(body[:plain_len])
    if crc32(payload) != crc:
        raise CrcMismatch("payload CRC-32 does not match header")
    return payload


def combine_and_open(xored: bytes, k_b: bytes) -> bytes:
    """Recover k_a from the XORed stream, rejoin the halves and unwrap."""
    k_a = xor_bytes(xored, k_b)
    return open_envelope(k_a + bytes(k_b))
