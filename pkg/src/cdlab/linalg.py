"""Exact rational linear algebra on A_n.

Matrices are held as integer numerators over one shared positive
denominator, and eliminated fraction-free (Bareiss) so intermediate values
stay integral.  Rationals reappear only when a reduced echelon form is
divided through by its common pivot.  Pivots are the first nonzero entry
in each column; there is no other pivoting strategy.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from typing import Iterable, Sequence

import numpy as np

from .algebra import Element, check_level
from .errors import InputError


def _as_int_rows(rows: Sequence[Sequence[Fraction | int]], width: int) -> np.ndarray:
    """Scale each row to a primitive integer vector; row spaces are unchanged."""
    out = np.zeros((len(rows), width), dtype=object)
    for i, row in enumerate(rows):
        fr = [Fraction(v) for v in row]
        den = math.lcm(*(v.denominator for v in fr)) if fr else 1
        out[i, :] = [v.numerator * (den // v.denominator) for v in fr]
    return _primitive(out)


def _primitive(rows: np.ndarray) -> np.ndarray:
    """Divide every row by the gcd of its entries (keeps later eliminations small)."""
    for i in range(rows.shape[0]):
        g = math.gcd(*(int(v) for v in rows[i]))
        if g > 1:
            rows[i] = rows[i] // g
    return rows


def _zeros(m: int, n: int) -> np.ndarray:
    out = np.empty((m, n), dtype=object)
    out.fill(0)
    return out


def bareiss_echelon(a: np.ndarray) -> tuple[np.ndarray, list[int]]:
    """Fraction-free forward elimination; returns (echelon rows, pivot columns)."""
    a = np.array(a, dtype=object, copy=True)
    m, n = a.shape
    prev = 1
    r = 0
    pivots: list[int] = []
    for c in range(n):
        if r == m:
            break
        nz = np.flatnonzero(a[r:, c] != 0)
        if nz.size == 0:
            continue
        k = r + int(nz[0])
        if k != r:
            a[[r, k]] = a[[k, r]]
        p = a[r, c]
        if r + 1 < m:
            a[r + 1 :, c + 1 :] = (a[r + 1 :, c + 1 :] * p - np.outer(a[r + 1 :, c], a[r, c + 1 :])) // prev
            a[r + 1 :, c] = 0
        prev = p
        pivots.append(c)
        r += 1
    return a[:r], pivots


def bareiss_rref(a: np.ndarray) -> tuple[np.ndarray, list[int], int]:
    """Fraction-free Gauss-Jordan elimination.

    Returns ``(b, pivots, d)`` where ``b / d`` is the reduced row echelon
    form restricted to its nonzero rows.  Every pivot entry of ``b`` equals
    ``d``, and all divisions are exact.
    """
    a = np.array(a, dtype=object, copy=True)
    m, n = a.shape
    prev = 1
    r = 0
    pivots: list[int] = []
    for c in range(n):
        if r == m:
            break
        nz = np.flatnonzero(a[r:, c] != 0)
        if nz.size == 0:
            continue
        k = r + int(nz[0])
        if k != r:
            a[[r, k]] = a[[k, r]]
        p = a[r, c]
        others = np.r_[0:r, r + 1 : m]
        if others.size:
            col = a[others, c]
            a[others, :] = (a[others, :] * p - np.outer(col, a[r, :])) // prev
        prev = p
        pivots.append(c)
        r += 1
    b = a[:r]
    d = prev
    if r and d < 0:
        b, d = -b, -d
    return b, pivots, (d if r else 1)


def _rref_fractions(rows: np.ndarray) -> tuple[tuple[tuple[Fraction, ...], ...], tuple[int, ...]]:
    b, pivots, d = bareiss_rref(rows)
    out = tuple(tuple(Fraction(int(v), d) for v in row) for row in b)
    return out, tuple(pivots)


def _nullspace_int(a: np.ndarray, width: int) -> np.ndarray:
    """Integer spanning rows of {v : a v = 0}, one per free column."""
    if a.shape[0] == 0:
        out = _zeros(width, width)
        for i in range(width):
            out[i, i] = 1
        return out
    b, pivots, d = bareiss_rref(a)
    free = [c for c in range(width) if c not in set(pivots)]
    out = _zeros(len(free), width)
    for j, f in enumerate(free):
        out[j, f] = d
        for i, pc in enumerate(pivots):
            out[j, pc] = -b[i, f]
    return _primitive(out)


@dataclass(frozen=True)
class OperatorMatrix:
    """Linear endomorphism of A_level as ``num / den`` in the standard basis.

    Row index is the output coordinate, column index the input coordinate.
    The representation is normalized (``den > 0``, no common factor), so
    ``==`` is matrix equality.
    """

    level: int
    num: np.ndarray
    den: int = 1

    def __post_init__(self):
        size = 1 << self.level
        num = np.asarray(self.num, dtype=object)
        if num.shape != (size, size):
            raise InputError(f"level {self.level} operator must be {size}x{size}, got {num.shape}")
        den = int(self.den)
        if den == 0:
            raise InputError("zero denominator")
        g = reduce(math.gcd, (int(v) for v in num.flat), abs(den))
        if den < 0:
            g = -g
        if g not in (0, 1):
            num = num // g
            den //= g
        num.setflags(write=False)
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    @classmethod
    def identity(cls, level: int) -> OperatorMatrix:
        size = 1 << check_level(level)
        m = _zeros(size, size)
        for i in range(size):
            m[i, i] = 1
        return cls(level, m)

    @classmethod
    def zero(cls, level: int) -> OperatorMatrix:
        size = 1 << check_level(level)
        return cls(level, _zeros(size, size))

    @classmethod
    def from_rows(cls, level: int, rows: Sequence[Sequence[Fraction | int]]) -> OperatorMatrix:
        fr = [[Fraction(v) for v in row] for row in rows]
        den = math.lcm(*(v.denominator for row in fr for v in row)) if fr else 1
        num = np.array([[v.numerator * (den // v.denominator) for v in row] for row in fr], dtype=object)
        return cls(level, num, den)

    @classmethod
    def from_columns(cls, level: int, columns: Sequence[Element]) -> OperatorMatrix:
        return cls.from_rows(level, [list(col) for col in zip(*(c.coeffs for c in columns))])

    @property
    def size(self) -> int:
        return 1 << self.level

    @property
    def entries(self) -> tuple[tuple[Fraction, ...], ...]:
        return tuple(tuple(Fraction(int(v), self.den) for v in row) for row in self.num)

    def __eq__(self, other):
        if not isinstance(other, OperatorMatrix):
            return NotImplemented
        return self.level == other.level and self.den == other.den and np.array_equal(self.num, other.num)

    def __hash__(self):
        return hash((self.level, self.den, tuple(int(v) for v in self.num.flat)))

    def _check(self, other: OperatorMatrix):
        if self.level != other.level:
            raise InputError(f"level mismatch: {self.level} vs {other.level}")

    def __add__(self, other: OperatorMatrix) -> OperatorMatrix:
        self._check(other)
        den = math.lcm(self.den, other.den)
        return OperatorMatrix(self.level, self.num * (den // self.den) + other.num * (den // other.den), den)

    def __neg__(self) -> OperatorMatrix:
        return OperatorMatrix(self.level, -self.num, self.den)

    def __sub__(self, other: OperatorMatrix) -> OperatorMatrix:
        return self + (-other)

    def __matmul__(self, other: OperatorMatrix) -> OperatorMatrix:
        self._check(other)
        return OperatorMatrix(self.level, self.num.dot(other.num), self.den * other.den)

    def scale(self, s: Fraction | int) -> OperatorMatrix:
        s = Fraction(s)
        return OperatorMatrix(self.level, self.num * s.numerator, self.den * s.denominator)

    @property
    def T(self) -> OperatorMatrix:
        return OperatorMatrix(self.level, self.num.T.copy(), self.den)

    def apply(self, x: Element) -> Element:
        if x.level != self.level:
            raise InputError(f"level mismatch: {self.level} vs {x.level}")
        ints, d = x.integer_form()
        out = self.num.dot(np.array(ints, dtype=object))
        den = d * self.den
        return Element(self.level, tuple(Fraction(int(v), den) for v in out))

    def rank(self) -> int:
        return len(bareiss_echelon(self.num)[1])

    def nullity(self) -> int:
        return self.size - self.rank()


@dataclass(frozen=True)
class Subspace:
    """Subspace of A_level stored as its canonical reduced row echelon basis."""

    level: int
    rows: tuple
    pivots: tuple

    @property
    def dim(self) -> int:
        return len(self.rows)

    @property
    def basis(self) -> list[Element]:
        return [Element(self.level, row) for row in self.rows]

    def int_rows(self) -> np.ndarray:
        return _as_int_rows(self.rows, 1 << self.level)

    def __contains__(self, x: Element) -> bool:
        return contains(self, x)

    def __and__(self, other: Subspace) -> Subspace:
        return intersect(self, other)

    def __le__(self, other: Subspace) -> bool:
        return all(contains(other, v) for v in self.basis)

    def __repr__(self):
        return f"Subspace(level={self.level}, dim={self.dim})"


def _subspace_from_int_rows(level: int, rows: np.ndarray) -> Subspace:
    if rows.shape[0] == 0:
        return Subspace(level, (), ())
    out, pivots = _rref_fractions(rows)
    return Subspace(level, out, pivots)


def span(level: int, vectors: Iterable[Element]) -> Subspace:
    """Canonical basis of the span of the given elements."""
    level = check_level(level)
    vecs = list(vectors)
    for v in vecs:
        if v.level != level:
            raise InputError(f"level mismatch: {level} vs {v.level}")
    rows = _as_int_rows([v.coeffs for v in vecs], 1 << level)
    return _subspace_from_int_rows(level, rows)


def zero_space(level: int) -> Subspace:
    return Subspace(check_level(level), (), ())


def full_space(level: int) -> Subspace:
    size = 1 << check_level(level)
    rows = tuple(tuple(Fraction(int(i == j)) for j in range(size)) for i in range(size))
    return Subspace(level, rows, tuple(range(size)))


def kernel(m: OperatorMatrix) -> Subspace:
    """Exact nullspace {v : M v = 0} in canonical form."""
    return _subspace_from_int_rows(m.level, _nullspace_int(m.num, m.size))


def kernel_of_stack(level: int, mats: Sequence[OperatorMatrix]) -> Subspace:
    """Joint nullspace of several operators."""
    stacked = np.vstack([mat.num for mat in mats])
    return _subspace_from_int_rows(level, _nullspace_int(stacked, 1 << level))


def rank(m: OperatorMatrix) -> int:
    return m.rank()


def orthogonal_complement(u: Subspace) -> Subspace:
    size = 1 << u.level
    return _subspace_from_int_rows(u.level, _nullspace_int(u.int_rows(), size))


def intersect(u: Subspace, v: Subspace) -> Subspace:
    """U ∩ V computed as the complement of U-perp + V-perp."""
    if u.level != v.level:
        raise InputError(f"level mismatch: {u.level} vs {v.level}")
    size = 1 << u.level
    perp_u = _nullspace_int(u.int_rows(), size)
    perp_v = _nullspace_int(v.int_rows(), size)
    return _subspace_from_int_rows(u.level, _nullspace_int(np.vstack([perp_u, perp_v]), size))


def sum_spaces(u: Subspace, v: Subspace) -> Subspace:
    if u.level != v.level:
        raise InputError(f"level mismatch: {u.level} vs {v.level}")
    return span(u.level, u.basis + v.basis)


def contains(u: Subspace, x: Element) -> bool:
    """Membership test by reduction against the echelon basis."""
    if u.level != x.level:
        raise InputError(f"level mismatch: {u.level} vs {x.level}")
    residual = list(x.coeffs)
    for row, pc in zip(u.rows, u.pivots):
        f = residual[pc]
        if f:
            residual = [r - f * b for r, b in zip(residual, row)]
    return not any(residual)


def rank_by_columns(rows: Sequence[Sequence[Fraction | int]]) -> int:
    """Rank by plain Fraction elimination on columns.

    This is deliberately a different algorithm from the Bareiss path
    (column operations, pivot chosen from the last nonzero entry in a row)
    so the two can check each other.
    """
    cols = [list(map(Fraction, c)) for c in zip(*rows)] if rows else []
    if not cols:
        return 0
    nrows = len(cols[0])
    r = 0
    for i in reversed(range(nrows)):
        piv = None
        for j in range(len(cols) - 1, r - 1, -1):
            if cols[j][i] != 0:
                piv = j
                break
        if piv is None:
            continue
        cols[r], cols[piv] = cols[piv], cols[r]
        p = cols[r][i]
        for j in range(r + 1, len(cols)):
            f = cols[j][i] / p
            if f:
                cols[j] = [a - f * b for a, b in zip(cols[j], cols[r])]
        r += 1
    return r
