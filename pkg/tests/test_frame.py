import random
import struct

import pytest
from hypothesis import given, settings, strategies as st

from bdea.errors import BadMagic, BadVersion, BdeaError, CrcMismatch, LengthMismatch, OddLength
from bdea.frame import (
    HEADER_SIZE, build_envelope, combine_and_open, crc32, open_envelope, split_halves, xor_bytes,
)
from oracles import crc32_bitwise


def test_crc32_check_values():
    assert crc32(b"123456789") == 0xCBF43926
    assert crc32_bitwise(b"123456789") == 0xCBF43926
    assert crc32(b"") == 0


@given(st.binary(max_size=200))
def test_crc32_matches_bitwise_oracle(data):
    assert crc32(data) == crc32_bitwise(data)


@pytest.mark.parametrize("plain, size", [(b"crypto", 18), (b"", 12), (b"x", 12)])
def test_envelope_sizes(plain, size):
    env = build_envelope(plain)
    assert len(env) == size


def test_envelope_layout():
    env = build_envelope(b"crypto")
    assert env[:3] == b"\xbd\xea\x01"
    assert struct.unpack(">II", env[3:11]) == (6, crc32_bitwise(b"crypto"))
    assert env[11:17] == b"crypto"
    assert env[17:] == b"\x00"
    assert build_envelope(b"crypto") == env


def test_split_halves():
    assert split_halves(bytes.fromhex("63727970746F")) == (b"cry", bytes.fromhex("70746F"))
    assert split_halves(b"") == (b"", b"")
    assert split_halves(b"\xab\xcd") == (b"\xab", b"\xcd")
    with pytest.raises(OddLength):
        split_halves(b"abc")


@pytest.mark.parametrize("x, y, out", [(0, 0, 0), (0, 1, 1), (1, 0, 1), (1, 1, 0)])
def test_xor_truth_table(x, y, out):
    assert xor_bytes(bytes([x]), bytes([y])) == bytes([out])


def test_xor_paper_halves():
    assert xor_bytes(bytes.fromhex("637279"), bytes.fromhex("70746F")) == bytes.fromhex("130616")
    with pytest.raises(LengthMismatch):
        xor_bytes(b"a", b"ab")


@given(st.binary(max_size=64).flatmap(lambda a: st.tuples(st.just(a), st.binary(min_size=len(a), max_size=len(a)))))
def test_xor_involution(pair):
    a, b = pair
    assert xor_bytes(xor_bytes(a, b), b) == a
    assert xor_bytes(a, a) == bytes(len(a))


@given(st.binary(max_size=2048))
def test_build_split_xor_combine_round_trip(plain):
    k_a, k_b = split_halves(build_envelope(plain))
    assert k_a + k_b == build_envelope(plain)
    assert combine_and_open(xor_bytes(k_a, k_b), k_b) == plain


@settings(max_examples=5, deadline=None)
@given(st.integers(0, 1 << 20), st.randoms(use_true_random=False))
def test_round_trip_large(n, rnd):
    plain = rnd.randbytes(n)
    k_a, k_b = split_halves(build_envelope(plain))
    assert combine_and_open(xor_bytes(k_a, k_b), k_b) == plain


def test_open_envelope_errors():
    env = bytearray(build_envelope(b"hello"))
    with pytest.raises(BadMagic):
        open_envelope(b"\x00" * 12)
    with pytest.raises(BadMagic):
        open_envelope(b"\xbd\xea")
    bad = bytearray(env)
    bad[2] = 2
    with pytest.raises(BadVersion):
        open_envelope(bytes(bad))
    bad = bytearray(env)
    bad[HEADER_SIZE] ^= 1
    with pytest.raises(CrcMismatch):
        open_envelope(bytes(bad))
    bad = bytearray(env)
    bad[6] = 200  # plain_len far beyond the payload
    with pytest.raises(CrcMismatch):
        open_envelope(bytes(bad))


def test_nonzero_padding_rejected():
    env = bytearray(build_envelope(b"crypto"))
    env[-1] = 1
    with pytest.raises(CrcMismatch):
        open_envelope(bytes(env))


def test_one_flipped_bit_in_k_b_is_detected():
    k_a, k_b = split_halves(build_envelope(b"crypto"))
    x = xor_bytes(k_a, k_b)
    bad = bytes([k_b[0] ^ 0x01]) + k_b[1:]
    with pytest.raises((BadMagic, CrcMismatch)):
        combine_and_open(x, bad)


def test_tamper_detection_single_bit_flips():
    rng = random.Random(1234)
    failures = 0
    for _ in range(1000):
        plain = rng.randbytes(rng.randrange(0, 200))
        k_a, k_b = split_halves(build_envelope(plain))
        x = xor_bytes(k_a, k_b)
        target = rng.choice(("k_b", "x"))
        buf = bytearray(k_b if target == "k_b" else x)
        bit = rng.randrange(8 * len(buf))
        buf[bit // 8] ^= 0x80 >> (bit % 8)
        try:
            if target == "k_b":
                combine_and_open(x, bytes(buf))
            else:
                combine_and_open(bytes(buf), k_b)
        except BdeaError:
            failures += 1
    assert failures == 1000
