"""Exact elements of the Cayley-Dickson algebras A_n.

An element of A_n is a vector of 2**n rationals over the standard basis.
Index ``p`` splits as ``p = p_lo + 2**(n-1) * p_hi``: the pair ``(a, b)``
stores ``a`` in the first half of the coefficients and ``b`` in the second,
so ``e_0 = 1`` and ``e_{2**(n-1)} = i_n``.  In A_2 the indices 1, 2, 3 are
the quaternion units i, j, k.

Multiplication and conjugation follow the doubling rules

    (a, b)(c, d) = (ac - d*b, da + bc*),      (a, b)* = (a*, -b).
"""
from __future__ import annotations

import math
import os
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping, Union

import numpy as np

from .errors import InputError

RationalLike = Union[int, Fraction, str]

DEFAULT_MAX_LEVEL = 10
_RATIONAL_RE = re.compile(r"^\s*([+-]?\d+)(?:\s*/\s*(\d+))?\s*$")


def max_level() -> int:
    """Largest level accepted; ``CD_LAB_MAX_LEVEL`` overrides the default 10."""
    raw = os.environ.get("CD_LAB_MAX_LEVEL")
    if raw is None:
        return DEFAULT_MAX_LEVEL
    try:
        value = int(raw)
    except ValueError:
        raise InputError(f"CD_LAB_MAX_LEVEL must be an integer, got {raw!r}") from None
    if value < 0:
        raise InputError("CD_LAB_MAX_LEVEL must be non-negative")
    return value


def check_level(level: int) -> int:
    if isinstance(level, bool) or not isinstance(level, (int, np.integer)):
        raise InputError(f"level must be an integer, got {level!r}")
    level = int(level)
    if level < 0:
        raise InputError(f"level must be non-negative, got {level}")
    cap = max_level()
    if level > cap:
        raise InputError(f"level {level} exceeds the level cap {cap} (set CD_LAB_MAX_LEVEL)")
    return level


def to_rational(value: RationalLike) -> Fraction:
    """Parse an exact rational; floats are rejected."""
    if isinstance(value, bool):
        raise InputError(f"not a rational: {value!r}")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, np.integer)):
        return Fraction(int(value))
    if isinstance(value, str):
        m = _RATIONAL_RE.match(value)
        if not m:
            raise InputError(f"malformed rational {value!r} (expected 'p/q' or an integer)")
        num = int(m.group(1))
        den = int(m.group(2)) if m.group(2) is not None else 1
        if den == 0:
            raise InputError(f"zero denominator in {value!r}")
        return Fraction(num, den)
    raise InputError(f"not an exact rational: {value!r}")


def format_rational(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


@dataclass(frozen=True)
class Element:
    """Immutable element of A_level with exact rational coefficients."""

    level: int
    coeffs: tuple

    def __post_init__(self):
        if len(self.coeffs) != 1 << self.level:
            raise InputError(
                f"level {self.level} needs {1 << self.level} coefficients, got {len(self.coeffs)}"
            )

    # -- constructors -------------------------------------------------

    @classmethod
    def zero(cls, level: int) -> Element:
        level = check_level(level)
        return cls(level, (Fraction(0),) * (1 << level))

    @classmethod
    def basis(cls, level: int, index: int, coeff: RationalLike = 1) -> Element:
        return make_element(level, {index: coeff})

    @classmethod
    def real(cls, level: int, value: RationalLike) -> Element:
        return make_element(level, {0: value})

    @classmethod
    def from_ints(cls, level: int, values: Iterable[int], denom: int = 1) -> Element:
        """Build from integer numerators over a shared denominator (no validation of bounds)."""
        return cls(level, tuple(Fraction(int(v), denom) for v in values))

    @classmethod
    def pair(cls, a: Element, b: Element) -> Element:
        """The element (a, b) of A_{n+1}."""
        _same_level(a, b)
        return cls(a.level + 1, a.coeffs + b.coeffs)

    # -- structure ----------------------------------------------------

    @property
    def dim(self) -> int:
        return 1 << self.level

    def halves(self) -> tuple[Element, Element]:
        """Split (a, b) into its two A_{n-1} components."""
        if self.level == 0:
            raise InputError("A_0 elements cannot be split")
        h = self.dim // 2
        return Element(self.level - 1, self.coeffs[:h]), Element(self.level - 1, self.coeffs[h:])

    def embed(self, level: int) -> Element:
        """Image under the inclusion A_n -> A_m, x -> (x, 0, ...)."""
        if level < self.level:
            raise InputError("cannot embed into a smaller algebra")
        pad = (1 << level) - self.dim
        return Element(check_level(level), self.coeffs + (Fraction(0),) * pad)

    def support(self) -> list[int]:
        return [i for i, c in enumerate(self.coeffs) if c]

    def sparse(self) -> dict[int, Fraction]:
        return {i: c for i, c in enumerate(self.coeffs) if c}

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def is_imaginary(self) -> bool:
        return self.coeffs[0] == 0

    def integer_form(self) -> tuple[list[int], int]:
        """Integer numerators and the least common denominator."""
        den = math.lcm(*(c.denominator for c in self.coeffs))
        return [c.numerator * (den // c.denominator) for c in self.coeffs], den

    # -- arithmetic ---------------------------------------------------

    @property
    def re(self) -> Fraction:
        return self.coeffs[0]

    @property
    def im(self) -> Element:
        return Element(self.level, (Fraction(0),) + self.coeffs[1:])

    def conj(self) -> Element:
        return conjugate(self)

    def norm2(self) -> Fraction:
        return sum((c * c for c in self.coeffs), Fraction(0))

    def dot(self, other: Element) -> Fraction:
        return inner_product_real(self, other)

    def __add__(self, other):
        if not isinstance(other, Element):
            return NotImplemented
        _same_level(self, other)
        return Element(self.level, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other):
        if not isinstance(other, Element):
            return NotImplemented
        _same_level(self, other)
        return Element(self.level, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self):
        return Element(self.level, tuple(-a for a in self.coeffs))

    def __mul__(self, other):
        if isinstance(other, Element):
            return multiply(self, other)
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.scale(other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.scale(other)
        return NotImplemented

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            if other == 0:
                raise ZeroDivisionError("division of an element by zero")
            return self.scale(1 / Fraction(other))
        return NotImplemented

    def scale(self, s: RationalLike) -> Element:
        s = to_rational(s)
        return Element(self.level, tuple(s * c for c in self.coeffs))

    def __repr__(self):
        terms = ", ".join(f"{i}: {format_rational(c)}" for i, c in self.sparse().items())
        return f"Element({self.level}, {{{terms}}})"


def _same_level(*xs: Element) -> int:
    levels = {x.level for x in xs}
    if len(levels) != 1:
        raise InputError(f"level mismatch: {sorted(levels)}")
    return xs[0].level


def make_element(level: int, sparse: Mapping[int, RationalLike] | None = None) -> Element:
    """Dense element of A_level with the given coefficients and zeros elsewhere."""
    level = check_level(level)
    size = 1 << level
    coeffs = [Fraction(0)] * size
    for idx, value in (sparse or {}).items():
        if isinstance(idx, bool) or not isinstance(idx, (int, np.integer)):
            raise InputError(f"basis index must be an integer, got {idx!r}")
        if not 0 <= idx < size:
            raise InputError(f"basis index {idx} out of range for level {level} (must be < {size})")
        coeffs[int(idx)] = to_rational(value)
    return Element(level, tuple(coeffs))


def i_element(level: int) -> Element:
    """The distinguished element i_n = (0, 1), i.e. e_{2**(n-1)}."""
    level = check_level(level)
    if level < 1:
        raise InputError("i_n is defined only for level >= 1")
    return make_element(level, {1 << (level - 1): 1})


# -- products ---------------------------------------------------------------


def _conj_rows(v: np.ndarray) -> np.ndarray:
    out = -v
    out[:, 0] = v[:, 0]
    return out


def cd_product(x: np.ndarray, y: np.ndarray) -> np.ndarray:
    """Row-wise Cayley-Dickson product of two (batch, 2**n) arrays.

    Each level of the doubling rule needs the four half-size products
    ac, d*b, da and bc*; they are stacked into one batch so the recursion
    makes one call per level instead of one per node.
    """
    size = x.shape[1]
    if size == 1:
        return x * y
    h = size // 2
    a, b = x[:, :h], x[:, h:]
    c, d = y[:, :h], y[:, h:]
    left = np.concatenate([a, _conj_rows(d), d, b])
    right = np.concatenate([c, b, a, _conj_rows(c)])
    prod = cd_product(left, right)
    n = x.shape[0]
    ac, dsb, da, bcs = prod[:n], prod[n : 2 * n], prod[2 * n : 3 * n], prod[3 * n :]
    return np.concatenate([ac - dsb, da + bcs], axis=1)


def multiply_recursive(x: Element, y: Element) -> Element:
    """Product via the doubling recursion only (no basis-table shortcut)."""
    level = _same_level(x, y)
    xs, dx = x.integer_form()
    ys, dy = y.integer_form()
    prod = cd_product(np.array([xs], dtype=object), np.array([ys], dtype=object))[0]
    den = dx * dy
    return Element(level, tuple(Fraction(int(v), den) for v in prod))


@lru_cache(maxsize=None)
def sign_table(level: int) -> np.ndarray:
    """Signs s[p, q] with e_p e_q = s[p, q] e_{p xor q}; read-only int8 array."""
    if level == 0:
        table = np.ones((1, 1), dtype=np.int8)
    else:
        prev = sign_table(level - 1)
        h = prev.shape[0]
        c = -np.ones(h, dtype=np.int8)
        c[0] = 1
        top = np.hstack([prev, prev.T])
        bottom = np.hstack([prev * c[None, :], -prev.T * c[None, :]])
        table = np.vstack([top, bottom])
    table.setflags(write=False)
    return table


def basis_product(level: int, p: int, q: int) -> tuple[int, int]:
    """Return (sign, r) with e_p e_q = sign * e_r; r is always p xor q."""
    level = check_level(level)
    size = 1 << level
    for idx in (p, q):
        if isinstance(idx, bool) or not isinstance(idx, (int, np.integer)) or not 0 <= idx < size:
            raise InputError(f"basis index {idx!r} out of range for level {level}")
    return int(sign_table(level)[p, q]), int(p) ^ int(q)


def multiply(x: Element, y: Element) -> Element:
    """Cayley-Dickson product of two elements of the same level."""
    level = _same_level(x, y)
    sx, sy = x.support(), y.support()
    if not sx or not sy:
        return Element.zero(level)
    if len(sx) == 1 and len(sy) == 1:
        p, q = sx[0], sy[0]
        sign, r = basis_product(level, p, q)
        coeffs = [Fraction(0)] * (1 << level)
        coeffs[r] = sign * x.coeffs[p] * y.coeffs[q]
        return Element(level, tuple(coeffs))
    return multiply_recursive(x, y)


def conjugate(x: Element) -> Element:
    return Element(x.level, (x.coeffs[0],) + tuple(-c for c in x.coeffs[1:]))


def real_imag_split(x: Element) -> tuple[Fraction, Element]:
    return x.re, x.im


def associator_of_triple(x: Element, y: Element, z: Element) -> Element:
    """[x, y, z] = (xy)z - x(yz)."""
    _same_level(x, y, z)
    return multiply(multiply(x, y), z) - multiply(x, multiply(y, z))


def inner_product_real(x: Element, y: Element) -> Fraction:
    """Re(x y*), which equals the coordinate dot product."""
    _same_level(x, y)
    return sum((a * b for a, b in zip(x.coeffs, y.coeffs)), Fraction(0))


# -- the complex structure C_n = span{1, i_n} --------------------------------


@dataclass(frozen=True)
class ComplexScalar:
    """re + im * i_n, an element of C_n."""

    re: Fraction
    im: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "re", to_rational(self.re))
        object.__setattr__(self, "im", to_rational(self.im))

    def conj(self) -> ComplexScalar:
        return ComplexScalar(self.re, -self.im)

    def __add__(self, other: ComplexScalar) -> ComplexScalar:
        return ComplexScalar(self.re + other.re, self.im + other.im)

    def __sub__(self, other: ComplexScalar) -> ComplexScalar:
        return ComplexScalar(self.re - other.re, self.im - other.im)

    def __neg__(self) -> ComplexScalar:
        return ComplexScalar(-self.re, -self.im)

    def __mul__(self, other: ComplexScalar) -> ComplexScalar:
        return ComplexScalar(
            self.re * other.re - self.im * other.im, self.re * other.im + self.im * other.re
        )

    def norm2(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0

    def to_element(self, level: int) -> Element:
        level = check_level(level)
        if level < 1:
            raise InputError("C_n needs level >= 1")
        return make_element(level, {0: self.re, 1 << (level - 1): self.im})

    @classmethod
    def from_element(cls, x: Element) -> ComplexScalar:
        """Inverse of to_element; x must lie in C_n."""
        h = x.dim // 2
        if any(c for i, c in enumerate(x.coeffs) if i not in (0, h)):
            raise InputError(f"{x!r} is not in C_{x.level}")
        return cls(x.coeffs[0], x.coeffs[h])

    def __str__(self):
        return f"{format_rational(self.re)} + {format_rational(self.im)}*i"


def complex_scale(alpha: ComplexScalar, x: Element) -> Element:
    """Left action alpha * x of C_n on A_n."""
    ix = multiply(i_element(x.level), x)
    return x.scale(alpha.re) + ix.scale(alpha.im)


def hermitian_inner_product(x: Element, y: Element) -> ComplexScalar:
    """Projection of x y* onto C_n, computed as <x,y> - i_n <i_n x, y>."""
    level = _same_level(x, y)
    if level < 1:
        raise InputError("the Hermitian product needs level >= 1")
    ix = multiply(i_element(level), x)
    return ComplexScalar(inner_product_real(x, y), -inner_product_real(ix, y))
