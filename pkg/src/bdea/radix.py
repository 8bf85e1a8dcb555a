"""Conversions between raw bytes, hexadecimal text and bit strings.

Bit strings are plain ``str`` objects over ``"0"``/``"1"``, most-significant
bit first. Hex is emitted uppercase and parsed case-insensitively.
"""

from __future__ import annotations

from .errors import InvalidDigit, LengthNotMultipleOf4, OddLength

_HEX_DIGITS = frozenset("0123456789abcdefABCDEF")
_BITS = frozenset("01")


def _check_hex(text: str) -> None:
    if not _HEX_DIGITS.issuperset(text):
        bad = next(c for c in text if c not in _HEX_DIGITS)
        raise InvalidDigit(f"not a hex digit: {bad!r}")


def text_to_hex(data: bytes) -> str:
    return bytes(data).hex().upper()


def hex_to_text(text: str) -> bytes:
    """Parse hex (either case) back into bytes."""
    _check_hex(text)
    if len(text) % 2:
        raise OddLength(f"hex string has odd length {len(text)}")
    return bytes.fromhex(text)


def hex_to_bits(text: str) -> str:
    _check_hex(text)
    if not text:
        return ""
    return format(int(text, 16), f"0{4 * len(text)}b")


def bits_to_hex(bits: str) -> str:
    if len(bits) % 4:
        raise LengthNotMultipleOf4(f"bit string length {len(bits)} is not a multiple of 4")
    if not _BITS.issuperset(bits):
        raise InvalidDigit("bit string may only contain '0' and '1'")
    if not bits:
        return ""
    return format(int(bits, 2), f"0{len(bits) // 4}X")


def bytes_to_bits(data: bytes) -> str:
    if not data:
        return ""
    return format(int.from_bytes(data, "big"), f"0{8 * len(data)}b")


def bits_to_bytes(bits: str) -> bytes:
    if len(bits) % 8:
        raise OddLength(f"bit string length {len(bits)} is not a multiple of 8")
    if not _BITS.issuperset(bits):
        raise InvalidDigit("bit string may only contain '0' and '1'")
    if not bits:
        return b""
    return int(bits, 2).to_bytes(len(bits) // 8, "big")
