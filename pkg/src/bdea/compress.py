"""Order-0 canonical Huffman coding over the alphabet A, C, G, T.

Blob layout::

    DC 01 | count_A:u32 | count_C:u32 | count_G:u32 | count_T:u32 | body

The body is the concatenated codewords, zero-padded to a whole byte. Storing
the counts (rather than code lengths) lets the decoder rebuild the exact tree
because construction is fully deterministic.
"""

from __future__ import annotations

import heapq
import struct
from functools import lru_cache

from .dna import BASES, check_dna
from .errors import BadMagic, CorruptBody, MalformedPadding, TruncatedBody

MAGIC = b"\xdc\x01"
_HEADER = struct.Struct(">2s4I")
HEADER_SIZE = _HEADER.size  # 18


def code_lengths(counts: tuple[int, ...]) -> dict[str, int]:
    """Huffman code length per symbol; absent symbols get no entry.

    Heap keys are ``(weight, kind, order)``: leaves (kind 0) are ordered by
    symbol A<C<G<T and beat merged nodes (kind 1) of equal weight, which are
    ordered by creation.
    """
    heap = [(c, 0, i, (s,)) for i, (s, c) in enumerate(zip(BASES, counts)) if c]
    if not heap:
        return {}
    if len(heap) == 1:
        return {heap[0][3][0]: 1}
    heapq.heapify(heap)
    depth = dict.fromkeys((entry[3][0] for entry in heap), 0)
    created = 0
    while len(heap) > 1:
        w1, _, _, syms1 = heapq.heappop(heap)
        w2, _, _, syms2 = heapq.heappop(heap)
        for s in syms1 + syms2:
            depth[s] += 1
        heapq.heappush(heap, (w1 + w2, 1, created, syms1 + syms2))
        created += 1
    return depth


def canonical_codes(lengths: dict[str, int]) -> dict[str, str]:
    """Assign canonical codewords: shorter first, then symbol order."""
    codes = {}
    code = 0
    prev_len = 0
    for sym in sorted(lengths, key=lambda s: (lengths[s], BASES.index(s))):
        n = lengths[sym]
        code <<= n - prev_len
        codes[sym] = format(code, f"0{n}b")
        code += 1
        prev_len = n
    return codes


def _counts(seq: str) -> tuple[int, int, int, int]:
    return tuple(seq.count(b) for b in BASES)


def compress(seq: str) -> bytes:
    check_dna(seq)
    counts = _counts(seq)
    codes = canonical_codes(code_lengths(counts))
    bits = seq.translate(str.maketrans(codes))
    nbytes = (len(bits) + 7) // 8
    body = int(bits.ljust(8 * nbytes, "0"), 2).to_bytes(nbytes, "big") if bits else b""
    return _HEADER.pack(MAGIC, *counts) + body


def body_bits(blob: bytes) -> int:
    """Number of meaningful (non-padding) bits in a blob's body."""
    _, *counts = _HEADER.unpack_from(blob)
    lengths = code_lengths(tuple(counts))
    return sum(c * lengths.get(s, 0) for s, c in zip(BASES, counts))


@lru_cache(maxsize=64)
def _byte_table(codes_key: tuple[tuple[str, str], ...]):
    """Byte-at-a-time decoder: (pending prefix, byte) -> (symbols, new prefix).

    A ``None`` entry marks a byte that walks off the code tree.
    """
    by_code = {c: s for s, c in codes_key}
    prefixes = {c[:i] for c in by_code for i in range(len(c))}
    table = {}
    for prefix in prefixes:
        row = []
        for byte in range(256):
            cur, out = prefix, []
            for bit in format(byte, "08b"):
                cur += bit
                if cur in by_code:
                    out.append(by_code[cur])
                    cur = ""
                elif cur not in prefixes:
                    row.append(None)
                    break
            else:
                row.append(("".join(out), cur))
        table[prefix] = row
    return table


def decompress(blob: bytes) -> str:
    if len(blob) < len(MAGIC) or blob[:2] != MAGIC:
        raise BadMagic("not a compressed DNA blob")
    if len(blob) < HEADER_SIZE:
        raise TruncatedBody("blob header is truncated")
    _, *counts = _HEADER.unpack_from(blob)
    total = sum(counts)
    codes = canonical_codes(code_lengths(tuple(counts)))
    nbits = sum(c * len(codes.get(s, "")) for s, c in zip(BASES, counts))
    body = blob[HEADER_SIZE:]
    need = (nbits + 7) // 8
    if len(body) < need:
        raise TruncatedBody(f"body has {len(body)} bytes, header implies {need}")
    if len(body) > need:
        raise MalformedPadding(f"{len(body) - need} unexpected trailing bytes")
    if not total:
        return ""

    table = _byte_table(tuple(sorted(codes.items())))
    pieces = []
    prefix = ""
    for byte in body[:-1]:
        entry = table[prefix][byte]
        if entry is None:
            raise CorruptBody("invalid codeword in body")
        out, prefix = entry
        pieces.append(out)
    decoded = "".join(pieces)
    if len(decoded) > total:
        raise CorruptBody("body decodes to more symbols than the header declares")

    # final byte: decode bit by bit, stop at the declared symbol count
    by_code = {c: s for s, c in codes.items()}
    prefixes = {c[:i] for c in by_code for i in range(len(c))}
    last = format(body[-1], "08b")
    tail = []
    remaining = total - len(decoded)
    pos = 0
    while remaining and pos < 8:
        prefix += last[pos]
        pos += 1
        sym = by_code.get(prefix)
        if sym is not None:
            tail.append(sym)
            prefix = ""
            remaining -= 1
        elif prefix not in prefixes:
            raise CorruptBody("invalid codeword in body")
    if remaining or prefix:
        raise CorruptBody("body ends before the declared symbol count")
    if "1" in last[pos:]:
        raise MalformedPadding("padding bits are not zero")
    decoded += "".join(tail)
    if _counts(decoded) != tuple(counts):
        raise CorruptBody("decoded symbol counts disagree with header")
    return decoded
