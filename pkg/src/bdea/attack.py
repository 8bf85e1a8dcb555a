"""Desk-scale checks of the two-layer security argument.

The attacker model here holds the container, k_b and the coding pattern and
only lacks the primers; a candidate pair "matches" when it survives both
de-amplification and the envelope CRC. Frequency analysis of the primer slots
would break the primer layer far faster than exhaustive search; it is
deliberately not implemented.
"""

from __future__ import annotations

import logging
import random
import time
from dataclasses import dataclass, field
from itertools import product

from .dna import BASES, CodingPattern, decode_dna
from .errors import BdeaError, MaxLenExceeded
from .frame import combine_and_open
from .keyex import KeyBundle
from .pcr import PrimerPair, deamplify
from .pipeline import CipherContainer, amplified_stream, decrypt
from .radix import bits_to_bytes

log = logging.getLogger(__name__)

MAX_SEARCH_LEN = 6


def search_space(l1: int, l2: int) -> int:
    """Number of primer pairs with the given lengths: 4**(l1 + l2)."""
    if l1 < 1 or l2 < 1:
        raise ValueError("primer lengths must be >= 1")
    return 4 ** (l1 + l2)


@dataclass
class SearchReport:
    trials: int = 0
    matches: list[tuple[str, str]] = field(default_factory=list)
    elapsed: float = 0.0

    def to_dict(self) -> dict:
        return {
            "trials": self.trials,
            "matches": [list(m) for m in self.matches],
            "elapsed": self.elapsed,
        }


def _sequences(n: int):
    for combo in product(BASES, repeat=n):
        yield "".join(combo)


def brute_force(container: CipherContainer, k_b: bytes, pattern: CodingPattern,
                max_len: int) -> SearchReport:
    """Try every primer pair with 1 <= |p1|, |p2| <= max_len."""
    if not 1 <= max_len <= MAX_SEARCH_LEN:
        raise MaxLenExceeded(f"max_len must be in 1..{MAX_SEARCH_LEN}, got {max_len}")
    start = time.perf_counter()
    amp = amplified_stream(container)
    report = SearchReport()
    for l1, l2 in product(range(1, max_len + 1), repeat=2):
        for p1, p2 in product(_sequences(l1), _sequences(l2)):
            report.trials += 1
            pp = PrimerPair(p1, p2)
            try:
                bits = decode_dna(deamplify(amp, pp), pattern)
                combine_and_open(bits_to_bytes(bits), k_b)
            except BdeaError:
                continue
            if p1 == p2:
                log.info("match with degenerate primers p1 == p2 == %s", p1)
            report.matches.append((p1, p2))
    report.matches.sort()
    report.elapsed = time.perf_counter() - start
    return report


MUTATION_KINDS = ("primer", "pattern", "k_b")


def mutate_bundle(bundle: KeyBundle, kind: str, rng: random.Random) -> KeyBundle:
    if kind == "primer":
        which = rng.randrange(2)
        seq = bundle.primers.p1 if which == 0 else bundle.primers.p2
        i = rng.randrange(len(seq))
        new = rng.choice([b for b in BASES if b != seq[i]])
        seq = seq[:i] + new + seq[i + 1:]
        pp = PrimerPair(seq, bundle.primers.p2) if which == 0 else PrimerPair(bundle.primers.p1, seq)
        return KeyBundle(pp, bundle.pattern, bundle.k_b)
    if kind == "pattern":
        i, j = rng.sample(range(4), 2)
        bases = list(bundle.pattern.bases)
        bases[i], bases[j] = bases[j], bases[i]
        return KeyBundle(bundle.primers, CodingPattern("".join(bases)), bundle.k_b)
    if kind == "k_b":
        if not bundle.k_b:
            raise ValueError("cannot mutate an empty k_b")
        k_b = bytearray(bundle.k_b)
        k_b[rng.randrange(len(k_b))] ^= rng.randrange(1, 256)
        return KeyBundle(bundle.primers, bundle.pattern, bytes(k_b))
    raise ValueError(f"unknown mutation kind {kind!r}")


def corruption_probe(container: CipherContainer, bundle: KeyBundle, mutations: int,
                     seed: int, kinds: tuple[str, ...] = MUTATION_KINDS) -> float:
    """Fraction of single-component bundle mutations that make decrypt fail."""
    if mutations < 1:
        raise ValueError("mutations must be >= 1")
    # control: the unmodified bundle must decrypt
    decrypt(container, bundle)
    rng = random.Random(seed)
    failures = 0
    for _ in range(mutations):
        bad = mutate_bundle(bundle, rng.choice(kinds), rng)
        try:
            decrypt(container, bad)
        except BdeaError:
            failures += 1
    return failures / mutations
