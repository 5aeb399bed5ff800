"""Multiplication operators on A_n and the subspaces they cut out."""
from __future__ import annotations

import enum

import numpy as np

from .algebra import Element, associator_of_triple, i_element, inner_product_real, multiply
from .errors import InputError
from .algebra import sign_table
from .linalg import OperatorMatrix, Subspace, kernel, span


class OperatorKind(enum.Enum):
    LEFT_MUL = "LeftMul"  # y -> x y
    RIGHT_MUL = "RightMul"  # y -> y x
    ASSOC = "Assoc"  # z -> [a, z, b]
    ANTI_ASSOC = "AntiAssoc"  # z -> (a z) b + a (z b)
    ALT_MAP = "AltMap"  # y -> [x, x, y]


_ARITY = {
    OperatorKind.LEFT_MUL: 1,
    OperatorKind.RIGHT_MUL: 1,
    OperatorKind.ALT_MAP: 1,
    OperatorKind.ASSOC: 2,
    OperatorKind.ANTI_ASSOC: 2,
}


def _mul_matrix(x: Element, right: bool) -> OperatorMatrix:
    # e_p e_q = s[p, q] e_{p^q}, so column q of L_x has x_p s[p, q] in row p^q.
    size = x.dim
    nums, den = x.integer_form()
    s = sign_table(x.level)
    if right:
        s = s.T
    p, q = np.meshgrid(np.arange(size), np.arange(size), indexing="ij")
    vals = s.astype(object) * np.array(nums, dtype=object)[:, None]
    out = np.empty((size, size), dtype=object)
    out[p ^ q, q] = vals
    return OperatorMatrix(x.level, out, den)


def left_mul_matrix(x: Element) -> OperatorMatrix:
    return _mul_matrix(x, right=False)


def right_mul_matrix(x: Element) -> OperatorMatrix:
    return _mul_matrix(x, right=True)


def operator_matrix(kind: OperatorKind | str, *args: Element) -> OperatorMatrix:
    """Matrix whose column q is the operator applied to e_q."""
    if not isinstance(kind, OperatorKind):
        try:
            kind = OperatorKind(kind)
        except ValueError:
            raise InputError(f"unknown operator kind {kind!r}; expected one of {[k.value for k in OperatorKind]}") from None
    if len(args) != _ARITY[kind]:
        raise InputError(f"{kind.value} takes {_ARITY[kind]} element argument(s), got {len(args)}")
    if len({a.level for a in args}) != 1:
        raise InputError(f"level mismatch: {[a.level for a in args]}")
    if kind is OperatorKind.LEFT_MUL:
        return left_mul_matrix(args[0])
    if kind is OperatorKind.RIGHT_MUL:
        return right_mul_matrix(args[0])
    if kind is OperatorKind.ALT_MAP:
        x = args[0]
        lx = left_mul_matrix(x)
        return left_mul_matrix(multiply(x, x)) - lx @ lx
    a, b = args
    rb_la = right_mul_matrix(b) @ left_mul_matrix(a)
    la_rb = left_mul_matrix(a) @ right_mul_matrix(b)
    return rb_la - la_rb if kind is OperatorKind.ASSOC else rb_la + la_rb


def annihilator(x: Element) -> Subspace:
    """Ann(x), the kernel of left multiplication by x."""
    return kernel(left_mul_matrix(x))


def annihilator_dim(x: Element) -> int:
    return left_mul_matrix(x).nullity()


def right_annihilator(x: Element) -> Subspace:
    return kernel(right_mul_matrix(x))


def alternator_space(x: Element) -> Subspace:
    """Alt(x) = {y : [x, x, y] = 0}."""
    return kernel(operator_matrix(OperatorKind.ALT_MAP, x))


def alternator_dim(x: Element) -> int:
    return operator_matrix(OperatorKind.ALT_MAP, x).nullity()


def associator_space(a: Element, b: Element, anti: bool = False) -> Subspace:
    """Ass[a, b] (kernel of z -> [a, z, b]) or, with ``anti``, Ass'[a, b]."""
    kind = OperatorKind.ANTI_ASSOC if anti else OperatorKind.ASSOC
    return kernel(operator_matrix(kind, a, b))


def associator_dim(a: Element, b: Element, anti: bool = False) -> int:
    kind = OperatorKind.ANTI_ASSOC if anti else OperatorKind.ASSOC
    return operator_matrix(kind, a, b).nullity()


def is_alternative(x: Element) -> bool:
    return not operator_matrix(OperatorKind.ALT_MAP, x).num.any()


def is_quaternionic_pair(a: Element, b: Element) -> bool:
    """Orthonormal imaginary a, b with [a, a, b] = [b, b, a] = 0.

    Unit norm is tested exactly; rescale by a rational first if needed.
    """
    if a.level != b.level:
        raise InputError(f"level mismatch: {a.level} vs {b.level}")
    if a.norm2() != 1 or b.norm2() != 1:
        return False
    if a.re != 0 or b.re != 0 or inner_product_real(a, b) != 0:
        return False
    return associator_of_triple(a, a, b).is_zero() and associator_of_triple(b, b, a).is_zero()


def complex_line(level: int) -> Subspace:
    """C_n = span{1, i_n}."""
    return span(level, [Element.real(level, 1), i_element(level)])


def quaternion_span(a: Element, b: Element) -> Subspace:
    """span{1, a, b, ab}; equals H<a, b> for a scaled quaternionic pair."""
    return span(a.level, [Element.real(a.level, 1), a, b, multiply(a, b)])


def in_complex_perp(x: Element) -> bool:
    """True when x is orthogonal to both 1 and i_n."""
    return x.level >= 1 and x.coeffs[0] == 0 and x.coeffs[x.dim // 2] == 0
