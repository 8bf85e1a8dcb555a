import random
import time

import pytest

from bdea.attack import (
    SearchReport, brute_force, corruption_probe, mutate_bundle, search_space,
)
from bdea.dna import enumerate_patterns, pattern_from_string
from bdea.errors import MaxLenExceeded
from bdea.pcr import PrimerPair
from bdea.pipeline import KeyMaterial, encrypt


def test_search_space():
    assert search_space(1, 1) == 16
    assert search_space(2, 3) == 1024
    assert search_space(19, 19) == 75557863725914323419136
    assert 10 ** 22 < search_space(19, 19) < 10 ** 24
    with pytest.raises(ValueError):
        search_space(0, 1)


def test_brute_force_single_base_key():
    container, bundle = encrypt(b"crypto", KeyMaterial(PrimerPair("A", "T")))
    report = brute_force(container, bundle.k_b, bundle.pattern, 1)
    assert report.trials == 16
    assert report.matches == [("A", "T")]


def test_brute_force_two_base_key():
    container, bundle = encrypt(b"a longer plaintext", KeyMaterial(PrimerPair("GC", "AT")))
    report = brute_force(container, bundle.k_b, bundle.pattern, 2)
    assert report.trials == 16 + 64 + 64 + 256
    assert report.trials == sum(search_space(a, b) for a in (1, 2) for b in (1, 2))
    assert report.matches == [("GC", "AT")]


def test_brute_force_key_outside_space():
    container, bundle = encrypt(b"crypto", KeyMaterial(PrimerPair("ACG", "T")))
    assert brute_force(container, bundle.k_b, bundle.pattern, 2).matches == []


def test_brute_force_guard():
    container, bundle = encrypt(b"x", KeyMaterial(PrimerPair("A", "T")))
    with pytest.raises(MaxLenExceeded):
        brute_force(container, bundle.k_b, bundle.pattern, 7)


def test_uniqueness_over_seeded_trials():
    rng = random.Random(2024)
    unique = 0
    for _ in range(100):
        pp = PrimerPair("".join(rng.choices("ACGT", k=rng.randint(1, 2))),
                        "".join(rng.choices("ACGT", k=rng.randint(1, 2))))
        pattern = rng.choice(enumerate_patterns())
        plain = rng.randbytes(rng.randint(8, 64))
        container, bundle = encrypt(plain, KeyMaterial(pp, pattern))
        report = brute_force(container, bundle.k_b, pattern, 2)
        assert (pp.p1, pp.p2) in report.matches
        if report.matches == [(pp.p1, pp.p2)]:
            unique += 1
        else:
            assert any(p1 == p2 for p1, p2 in report.matches), report.matches
    assert unique >= 99


def test_max_len_3_runtime():
    container, bundle = encrypt(random.Random(3).randbytes(64), KeyMaterial(PrimerPair("TTG", "CA")))
    start = time.perf_counter()
    report = brute_force(container, bundle.k_b, bundle.pattern, 3)
    assert time.perf_counter() - start < 60
    assert report.trials == (4 + 16 + 64) ** 2
    assert report.matches == [("TTG", "CA")]


def test_report_is_deterministic():
    container, bundle = encrypt(b"same", KeyMaterial(PrimerPair("A", "C")))
    a = brute_force(container, bundle.k_b, bundle.pattern, 2)
    b = brute_force(container, bundle.k_b, bundle.pattern, 2)
    assert (a.trials, a.matches) == (b.trials, b.matches)
    assert isinstance(a, SearchReport)


def test_mutations_change_exactly_one_component():
    _, bundle = encrypt(b"crypto", KeyMaterial(PrimerPair("AC", "T"), pattern_from_string("CTAG")))
    rng = random.Random(0)
    for kind in ("primer", "pattern", "k_b"):
        for _ in range(20):
            m = mutate_bundle(bundle, kind, rng)
            changed = [m.primers != bundle.primers, m.pattern != bundle.pattern, m.k_b != bundle.k_b]
            assert sum(changed) == 1


def test_corruption_probe():
    container, bundle = encrypt(b"the probe plaintext", KeyMaterial(PrimerPair("AG", "TC")))
    assert corruption_probe(container, bundle, 500, seed=1, kinds=("primer",)) == 1.0
    assert corruption_probe(container, bundle, 1000, seed=2, kinds=("k_b",)) >= 0.99
    assert corruption_probe(container, bundle, 50, seed=3) == corruption_probe(container, bundle, 50, seed=3)
    with pytest.raises(ValueError):
        corruption_probe(container, bundle, 0, seed=1)
