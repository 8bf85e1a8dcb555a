"""Simulated PCR amplification.

Each message base ``b`` is expanded into the block ``b + p2 + p1 + p2``.
De-amplification checks every primer slot of every block and returns the
block-leading bases. Any mismatch is reported as biological pollution.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

from .dna import check_dna
from .errors import BiologicalPollution, InvalidPrimer

MAX_PRIMER_LEN = 64


def check_primer(seq: str) -> str:
    if not 1 <= len(seq) <= MAX_PRIMER_LEN:
        raise InvalidPrimer(f"primer length {len(seq)} outside 1..{MAX_PRIMER_LEN}")
    try:
        check_dna(seq)
    except ValueError as exc:
        raise InvalidPrimer(str(exc)) from None
    return seq


@dataclass(frozen=True)
class PrimerPair:
    p1: str
    p2: str

    def __post_init__(self):
        object.__setattr__(self, "p1", check_primer(self.p1.upper()))
        object.__setattr__(self, "p2", check_primer(self.p2.upper()))

    @property
    def tail(self) -> str:
        """Everything after the message base in one block."""
        return self.p2 + self.p1 + self.p2


def warn_if_degenerate(pp: PrimerPair) -> None:
    if pp.p1 == pp.p2:
        warnings.warn("primer1 == primer2: the two primers are indistinguishable", stacklevel=2)


def block_len(pp: PrimerPair) -> int:
    return 1 + len(pp.p1) + 2 * len(pp.p2)


def amplify(msg: str, pp: PrimerPair) -> str:
    check_dna(msg)
    tail = pp.tail
    return "".join([b + tail for b in msg])


def deamplify(amp: str, pp: PrimerPair) -> str:
    n = block_len(pp)
    if len(amp) % n:
        raise BiologicalPollution(f"length {len(amp)} is not a multiple of block length {n}")
    tail = pp.tail
    # cheap first-block probe before rebuilding the whole strand
    if amp and amp[1:n] != tail:
        raise BiologicalPollution("primer slots of block 0 do not match")
    msg = amp[::n]
    if "".join([b + tail for b in msg]) != amp:
        for i in range(len(msg)):
            if amp[i * n + 1:(i + 1) * n] != tail:
                raise BiologicalPollution(f"primer slots of block {i} do not match")
    return check_dna(msg)
