"""DNA digital coding: 2-bit groups <-> nucleotide bases.

A coding pattern is a permutation of ``ACGT``; position ``v`` holds the base
that encodes the 2-bit value ``v``. The default ``ATGC`` gives
00->A, 01->T, 10->G, 11->C.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import permutations

from .errors import InvalidBase, NotAPermutation, OddBitLength

BASES = "ACGT"
_BASE_SET = frozenset(BASES)
_PAIRS = ("00", "01", "10", "11")


def check_dna(seq: str) -> str:
    if not _BASE_SET.issuperset(seq):
        bad = next(c for c in seq if c not in _BASE_SET)
        raise InvalidBase(f"not a DNA base: {bad!r}")
    return seq


@dataclass(frozen=True)
class CodingPattern:
    bases: str
    _encode: dict = field(init=False, repr=False, compare=False)
    _decode: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if len(self.bases) != 4 or set(self.bases) != _BASE_SET:
            raise NotAPermutation(f"{self.bases!r} is not a permutation of ACGT")
        object.__setattr__(self, "_encode", dict(zip(_PAIRS, self.bases)))
        object.__setattr__(self, "_decode", dict(zip(self.bases, _PAIRS)))

    def __str__(self) -> str:
        return self.bases

    def base_for(self, value: int) -> str:
        return self.bases[value]


def default_pattern() -> CodingPattern:
    return CodingPattern("ATGC")


def pattern_from_string(s: str) -> CodingPattern:
    """Build a pattern from text such as ``"CTAG"`` (case-insensitive)."""
    return CodingPattern(s.upper())


def enumerate_patterns() -> list[CodingPattern]:
    """All 24 patterns in lexicographic order of their strings."""
    return [CodingPattern("".join(p)) for p in permutations(BASES)]


def encode_bits(bits: str, pattern: CodingPattern) -> str:
    if len(bits) % 2:
        raise OddBitLength(f"bit string length {len(bits)} is odd")
    table = pattern._encode
    try:
        return "".join([table[bits[i:i + 2]] for i in range(0, len(bits), 2)])
    except KeyError as exc:
        raise ValueError(f"invalid bit pair {exc.args[0]!r}") from None


def decode_dna(seq: str, pattern: CodingPattern) -> str:
    check_dna(seq)
    return "".join(map(pattern._decode.__getitem__, seq))
