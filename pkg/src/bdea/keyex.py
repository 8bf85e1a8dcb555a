"""Toy Diffie-Hellman agreement and key-bundle wrapping.

Educational strength only: the modulus is capped below 2**62 and the
keystream is xorshift64*, which is not a cryptographic generator.
"""

from __future__ import annotations

import random
import secrets
import struct
from dataclasses import dataclass

from .dna import CodingPattern
from .errors import (
    InvalidParams,
    MalformedBundle,
    ModulusOutOfRange,
    NotAPermutation,
    PublicValueOutOfRange,
)
from .frame import xor_bytes
from .pcr import MAX_PRIMER_LEN, PrimerPair

MAX_MODULUS = 1 << 62
_MASK64 = (1 << 64) - 1
_ZERO_SEED = 0x9E3779B97F4A7C15
_XS_MULT = 0x2545F4914F6CDD1D

# default group for the CLI: the Mersenne prime 2**61 - 1
DEFAULT_P = (1 << 61) - 1
DEFAULT_G = 3


def modpow(base: int, exp: int, m: int) -> int:
    """Right-to-left square-and-multiply."""
    if not 2 <= m < MAX_MODULUS:
        raise ModulusOutOfRange(f"modulus {m} outside [2, 2**62)")
    if exp < 0:
        raise ValueError("negative exponent")
    result = 1 % m
    base %= m
    while exp:
        if exp & 1:
            result = result * base % m
        base = base * base % m
        exp >>= 1
    return result


_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_probable_prime(n: int) -> bool:
    """Miller-Rabin; the fixed base set is deterministic for n < 3.3e24."""
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d, r = n - 1, 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


@dataclass(frozen=True)
class DhParams:
    p: int
    g: int

    def __post_init__(self):
        if not 3 <= self.p < MAX_MODULUS:
            raise InvalidParams(f"p={self.p} outside [3, 2**62)")
        if not is_probable_prime(self.p):
            raise InvalidParams(f"p={self.p} is not prime")
        if not 2 <= self.g < self.p:
            raise InvalidParams(f"g={self.g} outside [2, p)")


@dataclass(frozen=True)
class DhKeyPair:
    private: int
    public: int


def generate_keypair(params: DhParams, seed: int | None = None) -> DhKeyPair:
    """Pick a private exponent in [1, p-1) from ``seed`` or OS randomness."""
    upper = params.p - 1
    if upper <= 1:
        x = 1
    elif seed is None:
        x = 1 + secrets.randbelow(upper - 1)
    else:
        x = random.Random(seed).randrange(1, upper)
    return keypair_from_private(params, x)


def keypair_from_private(params: DhParams, x: int) -> DhKeyPair:
    return DhKeyPair(x, modpow(params.g, x, params.p))


def dh_shared(params: DhParams, my_private: int, peer_public: int) -> int:
    if not 0 < peer_public < params.p:
        raise PublicValueOutOfRange(f"peer public value {peer_public} outside (0, p)")
    return modpow(peer_public, my_private, params.p)


def keystream(secret: int, n: int) -> bytes:
    """xorshift64* keystream seeded from the shared secret."""
    state = secret & _MASK64 or _ZERO_SEED
    out = bytearray()
    while len(out) < n:
        state ^= state >> 12
        state ^= (state << 25) & _MASK64
        state ^= state >> 27
        out += ((state * _XS_MULT) & _MASK64).to_bytes(8, "big")
    return bytes(out[:n])


@dataclass(frozen=True)
class KeyBundle:
    """Primer1, primer2, the coding pattern and the hexadecimal key k_b."""

    primers: PrimerPair
    pattern: CodingPattern
    k_b: bytes

    def to_bytes(self) -> bytes:
        p1 = self.primers.p1.encode("ascii")
        p2 = self.primers.p2.encode("ascii")
        return b"".join([
            bytes([len(p1)]), p1,
            bytes([len(p2)]), p2,
            self.pattern.bases.encode("ascii"),
            struct.pack(">I", len(self.k_b)), bytes(self.k_b),
        ])

    @classmethod
    def from_bytes(cls, raw: bytes) -> KeyBundle:
        try:
            pos = 0
            primers = []
            for _ in range(2):
                n = raw[pos]
                if not 1 <= n <= MAX_PRIMER_LEN:
                    raise MalformedBundle(f"primer length {n} out of range")
                seq = raw[pos + 1:pos + 1 + n]
                if len(seq) != n or not set(seq) <= set(b"ACGT"):
                    raise MalformedBundle("primer is not a DNA sequence")
                primers.append(seq.decode("ascii"))
                pos += 1 + n
            pat = raw[pos:pos + 4]
            if len(pat) != 4 or not set(pat) <= set(b"ACGT"):
                raise MalformedBundle("pattern is not a DNA sequence")
            pattern = CodingPattern(pat.decode("ascii"))
            (klen,) = struct.unpack_from(">I", raw, pos + 4)
            k_b = raw[pos + 8:]
            if len(k_b) != klen:
                raise MalformedBundle(f"k_b length field {klen} != {len(k_b)} trailing bytes")
        except (IndexError, struct.error) as exc:
            raise MalformedBundle(f"truncated bundle: {exc}") from None
        except NotAPermutation as exc:
            raise MalformedBundle(str(exc)) from None
        return cls(PrimerPair(*primers), pattern, bytes(k_b))


def wrap_bundle(bundle: KeyBundle, secret: int) -> bytes:
    raw = bundle.to_bytes()
    ks = keystream(secret, len(raw))
    return xor_bytes(raw, ks)


def unwrap_bundle(wrapped: bytes, secret: int) -> KeyBundle:
    ks = keystream(secret, len(wrapped))
    return KeyBundle.from_bytes(xor_bytes(wrapped, ks))
