from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cdlab.algebra import inner_product_real, multiply
from cdlab.errors import InputError
from cdlab.operators import in_complex_perp
from cdlab.sampling import (
    SEED_MAX,
    Rng,
    check_seed,
    random_a4_pair,
    random_complex,
    random_complex_perp,
    random_element,
    random_imaginary,
    random_octonion_frame,
    random_orthonormal_imaginary,
    random_rotation,
    random_unit_vector,
)


def _reference_draws(seed, keys, lo, hi, count):
    bits = np.random.PCG64(np.random.SeedSequence([seed, *keys]))
    m = hi - lo + 1
    limit = 2**64 - 2**64 % m
    out = []
    while len(out) < count:
        r = int(bits.random_raw())
        if r < limit:
            out.append(lo + r % m)
    return out


def test_stream_golden():
    r = Rng(42, 3)
    assert [r.randint(-9, 9) for _ in range(8)] == [-1, 2, -2, 0, 6, 5, 8, -6]


@settings(max_examples=40, deadline=None)
@given(st.integers(0, SEED_MAX), st.integers(0, 1000), st.integers(-50, 50), st.integers(0, 10**12))
def test_stream_follows_contract(seed, key, lo, width):
    r = Rng(seed, key)
    assert [r.randint(lo, lo + width) for _ in range(5)] == _reference_draws(seed, [key], lo, lo + width, 5)


def test_seed_validation():
    assert check_seed(0) == 0 and check_seed(SEED_MAX) == SEED_MAX
    for bad in (-1, SEED_MAX + 1, 1.5, True, "3"):
        with pytest.raises(InputError):
            check_seed(bad)


def test_keys_separate_streams():
    a = [Rng(7, 0).randint(0, 10**9) for _ in range(3)]
    b = [Rng(7, 1).randint(0, 10**9) for _ in range(3)]
    assert a != b
    assert Rng(7, 0).randint(0, 10**9) == Rng(7, 0).randint(0, 10**9)


def test_randint_range_and_sample():
    r = Rng(1)
    vals = [r.randint(-3, 3) for _ in range(500)]
    assert set(vals) == set(range(-3, 4))
    assert r.randint(5, 5) == 5
    with pytest.raises(ValueError):
        r.randint(2, 1)
    s = r.sample(20, 7)
    assert len(set(s)) == 7 and all(0 <= v < 20 for v in s)
    assert {r.sign() for _ in range(50)} == {-1, 1}


def test_random_element_shapes():
    r = Rng(3)
    x = random_element(r, 4, bound=2)
    assert x.level == 4 and all(abs(c) <= 2 for c in x.coeffs)
    y = random_element(r, 5, sparsity=Fraction(1, 8))
    assert len(y.support()) <= 4
    z = random_imaginary(r, 3)
    assert z.coeffs[0] == 0 and not z.is_zero()
    for _ in range(20):
        w = random_complex_perp(r, 4, sparsity=0.25)
        assert in_complex_perp(w) and not w.is_zero()
    assert not random_complex(r, bound=1).is_zero()


def test_unit_vectors_and_frames():
    r = Rng(9)
    for dim in (1, 2, 7, 15):
        v = random_unit_vector(r, dim)
        assert sum(c * c for c in v) == 1 and len(v) == dim
    frame = random_orthonormal_imaginary(r, 4, 4)
    for a in frame:
        assert a.norm2() == 1 and a.coeffs[0] == 0
        for b in frame:
            if a is not b:
                assert inner_product_real(a, b) == 0


def test_octonion_frame_and_a4_pair():
    for t in range(10):
        r = Rng(5, t)
        x, y, z = random_octonion_frame(r)
        assert x.norm2() == y.norm2() == z.norm2() == 1
        assert inner_product_real(z, multiply(x, y)) == 0
        a1, a2 = random_a4_pair(r)
        assert a1.is_imaginary() and a2.is_imaginary()
        assert inner_product_real(a1, a2) == 0 and a1.norm2() == a2.norm2() != 0
        assert all(c.denominator == 1 for c in a1.coeffs)


def test_random_rotation():
    r = Rng(2)
    for _ in range(20):
        c, s = random_rotation(r)
        assert c * c + s * s == 1 and c and s
