"""Seeded random sampling with a fixed, portable contract.

Generator: numpy's PCG64 (XSL-RR 128/64) seeded through ``SeedSequence``
with entropy ``[seed, *keys]``.  Integers in ``[lo, hi]`` are drawn from raw
64-bit outputs by rejection: with ``m = hi - lo + 1`` and
``limit = 2**64 - (2**64 % m)``, draws ``>= limit`` are discarded and the
result is ``lo + raw % m``.  Nothing else touches the stream, so the same
seed gives the same elements on any platform.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Sequence

import numpy as np

from .algebra import ComplexScalar, Element, inner_product_real, multiply
from .errors import InputError

_TWO64 = 1 << 64
SEED_MAX = _TWO64 - 1


def check_seed(seed: int) -> int:
    if isinstance(seed, bool) or not isinstance(seed, int) or not 0 <= seed <= SEED_MAX:
        raise InputError(f"seed must be an integer in [0, 2^64 - 1], got {seed!r}")
    return seed


class Rng:
    def __init__(self, seed: int, *keys: int):
        check_seed(seed)
        self._bits = np.random.PCG64(np.random.SeedSequence([seed, *keys]))

    def _raw(self) -> int:
        return int(self._bits.random_raw())

    def randint(self, lo: int, hi: int) -> int:
        """Uniform integer in [lo, hi]."""
        if hi < lo:
            raise ValueError("empty range")
        m = hi - lo + 1
        if m == 1:
            return lo
        limit = _TWO64 - (_TWO64 % m)
        while True:
            r = self._raw()
            if r < limit:
                return lo + r % m

    def choice(self, seq: Sequence):
        return seq[self.randint(0, len(seq) - 1)]

    def sample(self, population: int, k: int) -> list[int]:
        """k distinct integers from range(population), by partial Fisher-Yates."""
        pool = list(range(population))
        for i in range(k):
            j = self.randint(i, population - 1)
            pool[i], pool[j] = pool[j], pool[i]
        return pool[:k]

    def sign(self) -> int:
        return 1 if self.randint(0, 1) else -1


def random_element(
    rng: Rng,
    level: int,
    bound: int = 9,
    sparsity: Fraction | float | None = None,
    support: Sequence[int] | None = None,
) -> Element:
    """Integer coefficients uniform in [-bound, bound].

    ``sparsity`` keeps round(sparsity * 2^n) coordinates (at least one) chosen
    uniformly; ``support`` restricts to the given indices.
    """
    dim = 1 << level
    if support is None:
        support = range(dim)
        if sparsity is not None:
            k = max(1, min(dim, round(Fraction(sparsity) * dim)))
            support = sorted(rng.sample(dim, k))
    coeffs = [0] * dim
    for p in support:
        coeffs[p] = rng.randint(-bound, bound)
    return Element.from_ints(level, coeffs)


def random_nonzero(rng: Rng, level: int, bound: int = 9, **kw) -> Element:
    while True:
        x = random_element(rng, level, bound, **kw)
        if not x.is_zero():
            return x


def random_imaginary(rng: Rng, level: int, bound: int = 9, nonzero: bool = True) -> Element:
    support = range(1, 1 << level)
    while True:
        x = random_element(rng, level, bound, support=support)
        if not (nonzero and x.is_zero()):
            return x


def random_complex_perp(rng: Rng, level: int, bound: int = 9, sparsity=None) -> Element:
    """Nonzero element orthogonal to 1 and i_n."""
    dim, half = 1 << level, 1 << (level - 1)
    idx = [p for p in range(dim) if p not in (0, half)]
    while True:
        if sparsity is not None:
            k = max(1, min(len(idx), round(Fraction(sparsity) * len(idx))))
            support = sorted(idx[j] for j in rng.sample(len(idx), k))
        else:
            support = idx
        x = random_element(rng, level, bound, support=support)
        if not x.is_zero():
            return x


def random_complex(rng: Rng, bound: int = 9, nonzero: bool = True) -> ComplexScalar:
    while True:
        a = ComplexScalar(rng.randint(-bound, bound), rng.randint(-bound, bound))
        if not (nonzero and a.is_zero()):
            return a


def random_unit_vector(rng: Rng, dim: int, bound: int = 9) -> list[Fraction]:
    """Rational point on the unit sphere in Q^dim, by inverse stereographic projection."""
    if dim == 1:
        return [Fraction(rng.sign())]
    u = [rng.randint(-bound, bound) for _ in range(dim - 1)]
    s = sum(c * c for c in u)
    pt = [Fraction(2 * c, s + 1) for c in u] + [Fraction(s - 1, s + 1)]
    # spread the pole over coordinates
    shift = rng.randint(0, dim - 1)
    return pt[shift:] + pt[:shift]


def random_unit_imaginary(rng: Rng, level: int, bound: int = 9) -> Element:
    v = random_unit_vector(rng, (1 << level) - 1, bound)
    return Element(level, (Fraction(0), *v))


def _reflect(x: list[Fraction], v: list[Fraction]) -> list[Fraction]:
    vv = sum(c * c for c in v)
    if vv == 0:
        return list(x)
    t = 2 * sum(a * b for a, b in zip(x, v)) / vv
    return [a - t * b for a, b in zip(x, v)]


def unit_orthogonal_to(rng: Rng, frame: Sequence[Sequence[Fraction]], dim: int, bound: int = 9) -> list[Fraction]:
    """Rational unit vector orthogonal to an orthonormal rational ``frame`` in Q^dim.

    Householder reflections v = e_j - f_j (rational, since every f_j is a unit
    vector) carry e_1..e_k to the frame; the image of a random unit vector in
    span{e_{k+1}, ...} is the answer.
    """
    k = len(frame)
    if k >= dim:
        raise ValueError("frame already spans the space")
    reflections: list[list[Fraction]] = []
    for j, f in enumerate(frame):
        g = list(f)
        for v in reflections:
            g = _reflect(g, v)
        e = [Fraction(0)] * dim
        e[j] = Fraction(1)
        reflections.append([a - b for a, b in zip(e, g)])
    w = [Fraction(0)] * k + random_unit_vector(rng, dim - k, bound)
    for v in reversed(reflections):
        w = _reflect(w, v)
    return w


def random_orthonormal_imaginary(rng: Rng, level: int, count: int, bound: int = 9) -> list[Element]:
    """``count`` orthonormal rational imaginary elements."""
    dim = (1 << level) - 1
    frame: list[list[Fraction]] = []
    for _ in range(count):
        frame.append(unit_orthogonal_to(rng, frame, dim, bound))
    return [Element(level, (Fraction(0), *v)) for v in frame]


def random_octonion_frame(rng: Rng, bound: int = 5) -> tuple[Element, Element, Element]:
    """Orthonormal imaginary x, y, z in A_3 with z orthogonal to xy."""
    x, y = random_orthonormal_imaginary(rng, 3, 2, bound)
    xy = multiply(x, y)
    frame = [list(v.coeffs[1:]) for v in (x, y, xy)]
    z = unit_orthogonal_to(rng, frame, 7, bound)
    return x, y, Element(3, (Fraction(0), *z))


def random_a4_pair(rng: Rng, bound: int = 9) -> tuple[Element, Element]:
    """Orthogonal imaginary octonions of equal norm.

    a1 is w with its component along a rational unit z removed, a2 = z a1.
    """
    z = random_unit_imaginary(rng, 3, bound)
    while True:
        w = random_imaginary(rng, 3, bound)
        a1 = w - z.scale(inner_product_real(w, z))
        if not a1.is_zero():
            break
    a1 = a1.scale(Fraction(a1.integer_form()[1]))
    return a1, multiply(z, a1)


PYTHAGOREAN = [(Fraction(3, 5), Fraction(4, 5)), (Fraction(5, 13), Fraction(12, 13)), (Fraction(8, 17), Fraction(15, 17))]


def random_rotation(rng: Rng) -> tuple[Fraction, Fraction]:
    """Rational (c, s) with c^2 + s^2 = 1 and both nonzero."""
    c, s = rng.choice(PYTHAGOREAN)
    if rng.randint(0, 1):
        c, s = s, c
    return c * rng.sign(), s * rng.sign()

