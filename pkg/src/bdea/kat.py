"""Known-answer fixtures from the published worked example.

The example prints its sample text as ``CRYPTO`` but the hex it gives,
``63727970746F``, is lowercase ``crypto``; the hex is what the later stages
agree with, so the fixture uses the lowercase bytes.

The printed binary value in the example has 50 digits and is a typo; the
48-bit nibble expansion below is the one the printed DNA string encodes.

The printed amplified ciphertext has 92 bases: it is the correct 96-base
strand with the third 4-base block (``ATAT``, for message base ``A``) dropped.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

PLAINTEXT = b"crypto"
HEX = "63727970746F"
BITS = "011000110111001001111001011100000111010001101111"
PATTERN = "ATGC"
DNA = "TGACTCAGTCGTTCAATCTATGCC"
PRIMER1 = "A"
PRIMER2 = "T"
KEY_VALUE = bytes.fromhex("70746F")
AMPLIFIED = (
    "TTATGTATATATCTATTTATCTATATATGTATTTATCTATGTATTTATTTATCTATATATATATTTATCTAT"
    "TTATATATTTATGTATCTATCTAT"
)
AMPLIFIED_AS_PRINTED = (
    "TTATGTATCTATTTATCTATATATGTATTTATCTATGT"
    "ATTTATTTATCTATATATATATTTATCTATTTATATAT"
    "TTATGTATCTATCTAT"
)
DROPPED_BLOCK = 2
COMPRESSED_BODY_BITS = 147
COMPRESSED_BLOB_HEX = (
    "dc01"
    "0000001d" "00000007" "00000004" "00000038"
    "27493213249d0993a109924909909213a64c80"
)

# toy Diffie-Hellman group
DH_P, DH_G = 23, 5
DH_A_PRIV, DH_B_PRIV = 6, 15
DH_A_PUB, DH_B_PUB = 8, 19
DH_SHARED = 2


def drop_block(strand: str, index: int, size: int = 4) -> str:
    return strand[:index * size] + strand[(index + 1) * size:]


@dataclass
class KatResult:
    stage: str
    ok: bool
    detail: str


def _check(stage: str, got, want) -> KatResult:
    return KatResult(stage, got == want, f"got {got!r}, want {want!r}")


def _stage_hex():
    from .radix import text_to_hex
    return _check("hex", text_to_hex(PLAINTEXT), HEX)


def _stage_bits():
    from .radix import hex_to_bits
    return _check("bits", hex_to_bits(HEX), BITS)


def _stage_dna():
    from .dna import encode_bits, pattern_from_string
    return _check("dna", encode_bits(BITS, pattern_from_string(PATTERN)), DNA)


def _stage_amplify():
    from .pcr import PrimerPair, amplify
    return _check("amplify", amplify(DNA, PrimerPair(PRIMER1, PRIMER2)), AMPLIFIED)


def _stage_erratum():
    return _check("erratum", drop_block(AMPLIFIED, DROPPED_BLOCK), AMPLIFIED_AS_PRINTED)


def _stage_paper_mode():
    from .dna import pattern_from_string
    from .pcr import PrimerPair
    from .pipeline import KeyMaterial, amplified_stream, encrypt_paper_mode
    km = KeyMaterial(PrimerPair(PRIMER1, PRIMER2), pattern_from_string(PATTERN))
    return _check("paper-mode", amplified_stream(encrypt_paper_mode(PLAINTEXT, km)), AMPLIFIED)


def _stage_compress():
    from .compress import compress
    return _check("compress", compress(AMPLIFIED).hex(), COMPRESSED_BLOB_HEX)


def _stage_dh():
    from .keyex import DhParams, dh_shared, keypair_from_private
    params = DhParams(DH_P, DH_G)
    a = keypair_from_private(params, DH_A_PRIV)
    b = keypair_from_private(params, DH_B_PRIV)
    got = (a.public, b.public, dh_shared(params, a.private, b.public),
           dh_shared(params, b.private, a.public))
    return _check("dh", got, (DH_A_PUB, DH_B_PUB, DH_SHARED, DH_SHARED))


STAGES: dict[str, Callable[[], KatResult]] = {
    "hex": _stage_hex,
    "bits": _stage_bits,
    "dna": _stage_dna,
    "amplify": _stage_amplify,
    "erratum": _stage_erratum,
    "paper-mode": _stage_paper_mode,
    "compress": _stage_compress,
    "dh": _stage_dh,
}


def run(stages=None) -> list[KatResult]:
    return [STAGES[name]() for name in (stages or STAGES)]
