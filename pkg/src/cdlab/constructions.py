"""Builders for elements with known annihilator and associator dimensions.

Every builder returns a :class:`Certificate`: the element, the dimension its
annihilator is claimed to have, the recipe that produced it, and (where the
recipe yields one) an explicit basis of the annihilator.  Public builders
self-check by exact kernel computation before returning.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .algebra import (
    ComplexScalar,
    Element,
    check_level,
    complex_scale,
    i_element,
    inner_product_real,
    make_element,
    multiply,
)
from .errors import InputError
from .linalg import OperatorMatrix, Subspace, orthogonal_complement, span
from .operators import (
    annihilator,
    in_complex_perp,
    left_mul_matrix,
    quaternion_span,
    right_mul_matrix,
)


def ann_bound(level: int) -> int:
    """Largest annihilator dimension of a nonzero element: 2^n - 4n + 4 (at least 0)."""
    return max(0, (1 << level) - 4 * level + 4)


@dataclass(frozen=True)
class Certificate:
    element: Element
    claimed_ann_dim: int
    provenance: dict
    witness_basis: Subspace | None = None
    # Direct summands whose sum is the witness, when the recipe gives them.
    summands: tuple = field(default=(), compare=False)

    def check(self) -> list[str]:
        """Problems found by recomputing the annihilator; empty when sound."""
        problems = []
        ann = annihilator(self.element)
        if ann.dim != self.claimed_ann_dim:
            problems.append(f"kernel dimension {ann.dim} != claimed {self.claimed_ann_dim}")
        w = self.witness_basis
        if w is not None:
            if w.dim != self.claimed_ann_dim:
                problems.append(f"witness dimension {w.dim} != claimed {self.claimed_ann_dim}")
            if w.dim:
                rows = w.int_rows().T
                if left_mul_matrix(self.element).num.dot(rows).any():
                    problems.append("a witness vector is not killed by left multiplication")
                if right_mul_matrix(self.element).num.dot(rows).any():
                    problems.append("a witness vector is not killed by right multiplication")
            if not problems and w != ann:
                problems.append("witness span differs from the computed annihilator")
        return problems

    def verify(self) -> bool:
        return not self.check()


def _certified(cert: Certificate) -> Certificate:
    problems = cert.check()
    if problems:
        raise RuntimeError(f"certificate failed self-check ({cert.provenance}): {problems}")
    return cert


# -- associator pairs ----------------------------------------------------------


def _assoc_indices(level: int, d: int, anti: bool) -> tuple[int, int]:
    if level == 3:
        return 1, 2
    h = 1 << (level - 1)
    k, r = divmod(d, 16)
    if r == 4:
        # Ass[(a,0),(b,0)] = 2 dim Ass[a,b] - 4 and Ass'[(a,0),(0,b)] = 2 dim Ass[a,b] - 4
        p, q = _assoc_indices(level - 1, 8 * k + 4, anti=False)
        return (p, h + q) if anti else (p, q)
    # Ass[(a,0),(0,b)] = 2 dim Ass'[a,b] + 4 and Ass'[(a,0),(b,0)] = 2 dim Ass'[a,b] + 4
    p, q = _assoc_indices(level - 1, 8 * k + 4, anti=True)
    return (p, q) if anti else (p, h + q)


def assoc_pair_range(level: int) -> list[int]:
    """Every d reachable by :func:`assoc_pair_with_dim` at this level."""
    return list(range(4, (1 << level) - 3, 8)) if level >= 3 else []


def assoc_pair_with_dim(level: int, d: int, anti: bool = False) -> tuple[Element, Element]:
    """Imaginary standard basis vectors a, b with dim Ass[a,b] = d (or Ass' when ``anti``).

    Works for every d = 4 mod 8 with 4 <= d <= 2^n - 4, by doubling from the
    octonion pair (i, j), where both spaces are 4-dimensional.
    """
    level = check_level(level)
    if level < 3:
        raise InputError("associator pairs need level >= 3")
    if d % 8 != 4 or not 4 <= d <= (1 << level) - 4:
        raise InputError(
            f"d must be 4 mod 8 with 4 <= d <= {(1 << level) - 4} at level {level}, got {d}"
        )
    p, q = _assoc_indices(level, d, anti)
    return make_element(level, {p: 1}), make_element(level, {q: 1})


# -- annihilators of prescribed dimension ------------------------------------


def _build_ann_dim(level: int, d: int) -> tuple[Element, list[dict]]:
    """Element of A_level with dim Ann = d, following the existence proof."""
    if d == 0:
        return make_element(level, {1: 1}), [{"step": "basis_vector", "level": level, "d": 0}]
    half = 1 << (level - 1)
    if d < half:
        if d % 8 == 0:
            y, path = _build_ann_dim(level - 1, d // 2)
            x = Element.pair(y, Element.zero(level - 1))
            return x, path + [{"step": "first_slot_double", "level": level, "d": d}]
        a, b = assoc_pair_with_dim(level - 1, d, anti=True)
        step = {
            "step": "anti_associator_pair",
            "level": level,
            "d": d,
            "pair": [a.support()[0], b.support()[0]],
        }
        return Element.pair(a, b), [step]
    a, path = _build_ann_dim(level - 1, d - half + 4)
    x = Element.pair(a, multiply(i_element(level - 1), a))
    return x, path + [{"step": "complex_double", "level": level, "d": d, "sign": 1}]


def element_with_ann_dim(level: int, d: int) -> Certificate:
    """Certificate for an element of A_level whose annihilator has dimension d.

    Valid exactly when d = 0 mod 4 and 0 <= d <= 2^n - 4n + 4.
    """
    level = check_level(level)
    if level < 1:
        raise InputError("level must be at least 1")
    bound = ann_bound(level)
    if d % 4 != 0 or not 0 <= d <= bound:
        raise InputError(
            f"no element of A_{level} has a {d}-dimensional annihilator: "
            f"d must be a multiple of 4 with 0 <= d <= 2^n - 4n + 4 = {bound}"
        )
    x, path = _build_ann_dim(level, d)
    ann = annihilator(x)
    prov = {"recipe": "element_with_ann_dim", "level": level, "d": d, "path": path}
    return _certified(Certificate(x, d, prov, ann))


def sample_ann_dim_element(level: int, d: int) -> Element:
    """Uncertified element with dim Ann = d (for samplers that check it themselves)."""
    return _build_ann_dim(level, d)[0]


# -- doubling constructions ----------------------------------------------------


def _require_complex_perp(a: Element, what: str = "a"):
    if a.level < 1 or not in_complex_perp(a):
        raise InputError(f"{what} must be orthogonal to C_n = span{{1, i_n}}")
    if a.is_zero():
        raise InputError(f"{what} must be nonzero")


def double_zero_divisor(a: Element, sign: int = 1) -> Certificate:
    """The element (a, sign * i_n a) of A_{n+1}, with dim Ann = 2^n - 4 + dim Ann(a)."""
    if sign not in (1, -1):
        raise InputError(f"sign must be +1 or -1, got {sign!r}")
    _require_complex_perp(a)
    n = a.level
    check_level(n + 1)
    i_n = i_element(n)
    ia = multiply(i_n, a)
    x = Element.pair(a, ia.scale(sign))
    ann_a = annihilator(a)
    h_perp = orthogonal_complement(quaternion_span(a, i_n))
    from_ann = span(n + 1, [Element.pair(v, multiply(i_n, v).scale(sign)) for v in ann_a.basis])
    from_perp = span(n + 1, [Element.pair(v, multiply(i_n, v).scale(-sign)) for v in h_perp.basis])
    witness = span(n + 1, from_ann.basis + from_perp.basis)
    claimed = (1 << n) - 4 + ann_a.dim
    prov = {"recipe": "double_zero_divisor", "level": n + 1, "sign": sign, "base_ann_dim": ann_a.dim}
    return _certified(Certificate(x, claimed, prov, witness, (from_ann, from_perp)))


def scale_pair(a: Element, alpha: ComplexScalar, beta: ComplexScalar) -> Certificate:
    """The element (alpha a, beta a) of A_{n+1}; needs alpha^2 + beta^2 != 0."""
    _require_complex_perp(a)
    if (alpha * alpha + beta * beta).is_zero():
        raise InputError(
            "alpha^2 + beta^2 = 0, so beta = +-i_n alpha; use double_zero_divisor for that case"
        )
    n = a.level
    check_level(n + 1)
    x = Element.pair(complex_scale(alpha, a), complex_scale(beta, a))
    ann_a = annihilator(a)
    zero = Element.zero(n)
    witness = span(
        n + 1,
        [Element.pair(v, zero) for v in ann_a.basis] + [Element.pair(zero, v) for v in ann_a.basis],
    )
    prov = {
        "recipe": "scale_pair",
        "level": n + 1,
        "alpha": [alpha.re, alpha.im],
        "beta": [beta.re, beta.im],
        "base_ann_dim": ann_a.dim,
    }
    return _certified(Certificate(x, 2 * ann_a.dim, prov, witness))


def a4_zero_divisor(a1: Element, a2: Element) -> Certificate:
    """The A_4 zero-divisor (a1, a2) for orthogonal imaginary octonions of equal norm.

    Its annihilator is {(x, -(a1 a2) x / |a1|^2) : x in H<a1, a2>-perp}; the
    divisor |a1 a2| equals |a1|^2 because octonions are normed.
    """
    for v, name in ((a1, "a1"), (a2, "a2")):
        if v.level != 3:
            raise InputError(f"{name} must be an octonion (level 3), got level {v.level}")
    problems = []
    if not a1.is_imaginary() or not a2.is_imaginary():
        problems.append("a1 and a2 must be imaginary")
    if inner_product_real(a1, a2) != 0:
        problems.append("a1 and a2 must be orthogonal")
    n1, n2 = a1.norm2(), a2.norm2()
    if n1 != n2 or n1 == 0:
        problems.append("a1 and a2 must have equal nonzero norms")
    if problems:
        raise InputError(
            "(a1, a2) is a zero-divisor of A_4 only for orthogonal imaginary a1, a2 of equal norm: "
            + "; ".join(problems)
        )
    x = Element.pair(a1, a2)
    prod = multiply(a1, a2)
    h_perp = orthogonal_complement(quaternion_span(a1, a2))
    vectors = [Element.pair(v, -multiply(prod, v) / n1) for v in h_perp.basis]
    witness = span(4, vectors)
    prov = {"recipe": "a4_zero_divisor", "level": 4}
    return _certified(Certificate(x, 4, prov, witness))


def top_zero_divisor(
    level: int,
    signs: Sequence[int] | None = None,
    seed_pair: tuple[Element, Element] | None = None,
) -> Certificate:
    """A_4 zero-divisor doubled once per sign: dim Ann = 2^n - 4n + 4."""
    level = check_level(level)
    if level < 4:
        raise InputError("top-dimensional zero-divisors are built from level 4 up")
    signs = tuple(signs) if signs is not None else (1,) * (level - 4)
    if len(signs) != level - 4:
        raise InputError(f"need {level - 4} signs for level {level}, got {len(signs)}")
    if seed_pair is None:
        seed_pair = (make_element(3, {1: 1}), make_element(3, {2: 1}))
    cert = a4_zero_divisor(*seed_pair)
    for s in signs:
        cert = double_zero_divisor(cert.element, s)
    if cert.claimed_ann_dim != ann_bound(level):
        raise RuntimeError("doubling did not reach the top dimension")
    prov = {"recipe": "top_zero_divisor", "level": level, "signs": list(signs)}
    return Certificate(cert.element, cert.claimed_ann_dim, prov, cert.witness_basis, cert.summands)


# -- the A_5 family ------------------------------------------------------------

_T = make_element(3, {4: 1})
_K = make_element(3, {3: 1})


def a5_expected_dim(alpha: Element) -> int:
    """16 if alpha = +-k; 12 if alpha is an imaginary unit other than +-k; else 8."""
    k = make_element(2, {3: 1})
    if alpha == k or alpha == -k:
        return 16
    if alpha.is_imaginary() and alpha.norm2() == 1:
        return 12
    return 8


def a5_family(alpha: Element) -> Certificate:
    """((t, kt), (alpha t, (alpha k) t)) in A_5 for a nonzero quaternion alpha."""
    if alpha.level != 2:
        raise InputError(f"alpha must be a quaternion (level 2), got level {alpha.level}")
    if alpha.is_zero():
        raise InputError("alpha must be nonzero")
    al = alpha.embed(3)
    a = Element.pair(_T, multiply(_K, _T))
    b = Element.pair(multiply(al, _T), multiply(multiply(al, _K), _T))
    x = Element.pair(a, b)
    prov = {"recipe": "a5_family", "level": 5, "alpha": alpha}
    return _certified(Certificate(x, a5_expected_dim(alpha), prov, annihilator(x)))


# -- automorphisms of the octonions ------------------------------------------


def build_octonion_automorphism(x: Element, y: Element, z: Element) -> OperatorMatrix:
    """Matrix of the automorphism of A_3 sending i, j, t to x, y, z."""
    for v, name in ((x, "x"), (y, "y"), (z, "z")):
        if v.level != 3:
            raise InputError(f"{name} must be an octonion (level 3)")
        if not v.is_imaginary():
            raise InputError(f"{name} must be imaginary")
        if v.norm2() != 1:
            raise InputError(f"{name} must have norm 1")
    for (u, v), names in (((x, y), "x, y"), ((x, z), "x, z"), ((y, z), "y, z")):
        if inner_product_real(u, v) != 0:
            raise InputError(f"{names} must be orthogonal")
    xy = multiply(x, y)
    if inner_product_real(z, xy) != 0:
        raise InputError("z must be orthogonal to xy")
    one = make_element(3, {0: 1})
    # standard basis of A_3 is 1, i, j, ij, t, it, jt, (ij)t
    images = [one, x, y, xy, z, multiply(x, z), multiply(y, z), multiply(xy, z)]
    phi = OperatorMatrix.from_columns(3, images)
    for p in range(8):
        for q in range(8):
            prod = multiply(make_element(3, {p: 1}), make_element(3, {q: 1}))
            if phi.apply(prod) != multiply(images[p], images[q]):
                raise RuntimeError(f"not multiplicative on e_{p} e_{q}")
    return phi
