"""End-to-end encryption and the ciphertext container.

Container layout: ``b"BDEA1" | mode:u8 | compressed blob``. Mode 0 is the
standard scheme (envelope, split, XOR); mode 1 ("paper mode") feeds the hex
bits of the plaintext straight into DNA coding, which is how the published
worked example was produced.

The scheme is deterministic, so equal plaintexts under equal keys give equal
ciphertexts (an ECB-like weakness inherited from the design).
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from . import compress as dna_compress
from .dna import CodingPattern, decode_dna, default_pattern, encode_bits
from .errors import BadMagic, BdeaError
from .frame import build_envelope, combine_and_open, split_halves, xor_bytes
from .keyex import KeyBundle
from .pcr import PrimerPair, amplify, deamplify
from .radix import bits_to_bytes, bits_to_hex, bytes_to_bits, hex_to_bits, hex_to_text, text_to_hex

CONTAINER_MAGIC = b"BDEA1"


class Mode(enum.IntEnum):
    STANDARD = 0
    PAPER = 1


class UnknownMode(BdeaError):
    pass


class ModeMismatch(BdeaError):
    """Container mode and key bundle do not belong together."""


@dataclass(frozen=True)
class KeyMaterial:
    primers: PrimerPair
    pattern: CodingPattern = default_pattern()


@dataclass(frozen=True)
class CipherContainer:
    mode: Mode
    blob: bytes

    def to_bytes(self) -> bytes:
        return CONTAINER_MAGIC + bytes([self.mode]) + self.blob

    @classmethod
    def from_bytes(cls, raw: bytes) -> CipherContainer:
        if raw[:5] != CONTAINER_MAGIC:
            raise BadMagic("not a BDEA container")
        if len(raw) < 6:
            raise UnknownMode("container has no mode byte")
        try:
            mode = Mode(raw[5])
        except ValueError:
            raise UnknownMode(f"unknown container mode {raw[5]}") from None
        return cls(mode, bytes(raw[6:]))


def _to_container(data: bytes, km: KeyMaterial, mode: Mode) -> CipherContainer:
    dna = encode_bits(bytes_to_bits(data), km.pattern)
    amp = amplify(dna, km.primers)
    return CipherContainer(mode, dna_compress.compress(amp))


def encrypt(plain: bytes, km: KeyMaterial) -> tuple[CipherContainer, KeyBundle]:
    k_a, k_b = split_halves(build_envelope(plain))
    container = _to_container(xor_bytes(k_a, k_b), km, Mode.STANDARD)
    return container, KeyBundle(km.primers, km.pattern, k_b)


def encrypt_paper_mode(plain: bytes, km: KeyMaterial) -> CipherContainer:
    """Hex -> binary -> DNA -> amplify, with no envelope and no XOR."""
    dna = encode_bits(hex_to_bits(text_to_hex(plain)), km.pattern)
    return CipherContainer(Mode.PAPER, dna_compress.compress(amplify(dna, km.primers)))


def amplified_stream(container: CipherContainer) -> str:
    return dna_compress.decompress(container.blob)


def recover_stream(amp: str, bundle: KeyBundle, mode: Mode = Mode.STANDARD) -> bytes:
    """Decrypt an already-decompressed amplified strand."""
    if mode is Mode.PAPER and bundle.k_b:
        raise ModeMismatch("paper-mode container used with a standard-mode key bundle")
    bits = decode_dna(deamplify(amp, bundle.primers), bundle.pattern)
    if mode is Mode.PAPER:
        return hex_to_text(bits_to_hex(bits))
    return combine_and_open(bits_to_bytes(bits), bundle.k_b)


def decrypt(container: CipherContainer, bundle: KeyBundle) -> bytes:
    return recover_stream(amplified_stream(container), bundle, container.mode)
