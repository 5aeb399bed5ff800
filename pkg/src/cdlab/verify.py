"""Seeded property suites, failure replay and the dimension spectrum search.

A suite turns ``(seed, trial)`` into a list of cases ``(check, inputs)``.
Inputs are serialized before the check runs and the check reads them back,
so a failure record holds everything needed to re-run it.  Trial ``t`` draws
from its own stream ``Rng(seed, t)``, which makes the report independent of
how trials are scheduled.
"""
from __future__ import annotations

import json
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable

from . import __version__
from .algebra import (
    ComplexScalar,
    Element,
    associator_of_triple,
    basis_product,
    check_level,
    complex_scale,
    conjugate,
    hermitian_inner_product,
    i_element,
    inner_product_real,
    make_element,
    max_level,
    multiply,
    multiply_recursive,
    real_imag_split,
)
from .constructions import (
    a4_zero_divisor,
    a5_expected_dim,
    a5_family,
    ann_bound,
    assoc_pair_range,
    assoc_pair_with_dim,
    double_zero_divisor,
    sample_ann_dim_element,
    top_zero_divisor,
)
from .documents import from_jsonable, to_jsonable
from .errors import InputError
from .linalg import Subspace, contains, intersect, kernel, orthogonal_complement, span
from .operators import (
    alternator_dim,
    annihilator,
    annihilator_dim,
    associator_dim,
    associator_space,
    in_complex_perp,
    is_quaternionic_pair,
    left_mul_matrix,
    quaternion_span,
    right_mul_matrix,
)
from .sampling import (
    Rng,
    check_seed,
    random_a4_pair,
    random_complex,
    random_complex_perp,
    random_element,
    random_imaginary,
    random_nonzero,
    random_orthonormal_imaginary,
    random_rotation,
    random_unit_imaginary,
    random_unit_vector,
)

# -- checks --------------------------------------------------------------------

CheckResult = tuple[bool, Any, Any]
CHECKS: dict[str, Callable[..., CheckResult]] = {}


def check(name: str):
    def register(fn):
        CHECKS[name] = fn
        return fn

    return register


def _eq(expected, actual) -> CheckResult:
    return expected == actual, expected, actual


def _zero(*xs: Element) -> CheckResult:
    nonzero = [i for i, x in enumerate(xs) if not x.is_zero()]
    return not nonzero, "all zero", ("all zero" if not nonzero else f"nonzero terms {nonzero}")


def _cplx(a: ComplexScalar) -> list[str]:
    return [str(a.re), str(a.im)]


@check("bilinear")
def _bilinear(x, y, z, r, s):
    left = multiply(x.scale(r) + y.scale(s), z) == multiply(x, z).scale(r) + multiply(y, z).scale(s)
    right = multiply(z, x.scale(r) + y.scale(s)) == multiply(z, x).scale(r) + multiply(z, y).scale(s)
    return left and right, {"left": True, "right": True}, {"left": left, "right": right}


@check("involution")
def _involution(x):
    return _eq(to_jsonable(x), to_jsonable(conjugate(conjugate(x))))


@check("anti_homomorphism")
def _anti_hom(x, y):
    return _eq(to_jsonable(multiply(conjugate(y), conjugate(x))), to_jsonable(conjugate(multiply(x, y))))


@check("re_split")
def _re_split(x):
    re, im = real_imag_split(x)
    ok = x + conjugate(x) == Element.real(x.level, 2 * re) and im + Element.real(x.level, re) == x
    return ok, "x + x* = 2 Re(x), x = Re(x) + Im(x)", "holds" if ok else "violated"


@check("re_comm")
def _re_comm(x, y):
    return _eq(Fraction(0), (multiply(x, y) - multiply(y, x)).re)


@check("re_assoc")
def _re_assoc(x, y, z):
    return _eq(Fraction(0), associator_of_triple(x, y, z).re)


@check("flexible")
def _flexible(x, y):
    return _zero(associator_of_triple(x, y, x))


@check("associative_low")
def _assoc_low(x, y, z):
    return _zero(associator_of_triple(x, y, z))


@check("norm")
def _norm(x):
    n = Element.real(x.level, x.norm2())
    a, b = multiply(x, conjugate(x)), multiply(conjugate(x), x)
    return a == n and b == n, to_jsonable(n), [to_jsonable(a), to_jsonable(b)]


@check("real_inner")
def _real_inner(x, y):
    return _eq(multiply(x, conjugate(y)).re, inner_product_real(x, y))


@check("adjoint")
def _adjoint(x, y, z):
    xs = conjugate(x)
    lhs = [inner_product_real(multiply(x, y), z), inner_product_real(multiply(y, x), z)]
    rhs = [inner_product_real(y, multiply(xs, z)), inner_product_real(y, multiply(z, xs))]
    return _eq(rhs, lhs)


@check("anti_comm_iff_orthogonal")
def _anti_comm(x, y):
    orth = inner_product_real(x, y) == 0
    anti = multiply(x, y) == -multiply(y, x)
    return anti == orth, {"anti_commute": orth}, {"anti_commute": anti}


@check("basis_product")
def _basis_product(level, p, q):
    ep, eq = make_element(level, {p: 1}), make_element(level, {q: 1})
    ref = multiply_recursive(ep, eq)
    (r, c), = ref.sparse().items()
    return _eq([int(c), r], list(basis_product(level, p, q)))


@check("i_alternative")
def _i_alt(x):
    i = i_element(x.level)
    return _zero(associator_of_triple(i, i, x), associator_of_triple(x, x, i), associator_of_triple(i, x, x))


@check("c_vector_space")
def _c_vs(x, alpha, beta):
    return _eq(to_jsonable(complex_scale(alpha * beta, x)), to_jsonable(complex_scale(alpha, complex_scale(beta, x))))


@check("i_comm")
def _i_comm(x, alpha, y):
    al = alpha.to_element(x.level)
    als = alpha.conj().to_element(x.level)
    first = multiply(multiply(y, x), al) == multiply(multiply(y, als), x)
    second = multiply(al, multiply(x, y)) == multiply(x, multiply(als, y))
    return first and second, [True, True], [first, second]


@check("i_comm2")
def _i_comm2(x, y, alpha):
    al = alpha.to_element(x.level)
    first = multiply(multiply(al, x), y) == -multiply(multiply(al, y), x)
    second = multiply(y, multiply(x, al)) == -multiply(x, multiply(y, al))
    return first and second, [True, True], [first, second]


@check("c_linear")
def _c_linear(a, alpha, sign):
    n = a.level
    i = i_element(n)

    def phi(v):
        return Element.pair(v, multiply(i, v).scale(sign))

    # the + map is complex-linear; the - map is conjugate-linear
    lhs = phi(complex_scale(alpha, a))
    beta = alpha if sign == 1 else alpha.conj()
    rhs = multiply(beta.to_element(n + 1), phi(a))
    return _eq(to_jsonable(rhs), to_jsonable(lhs))


@check("i_quaternionic_pair")
def _i_quat(a):
    return _eq(True, is_quaternionic_pair(a, i_element(a.level)))


@check("herm_additive")
def _herm_add(x, y, z):
    h = hermitian_inner_product
    first = h(x + y, z) == h(x, z) + h(y, z)
    second = h(x, y + z) == h(x, y) + h(x, z)
    return first and second, [True, True], [first, second]


@check("herm_homogeneous")
def _herm_hom(x, y, alpha):
    return _eq(_cplx(alpha * hermitian_inner_product(x, y)), _cplx(hermitian_inner_product(complex_scale(alpha, x), y)))


@check("herm_conjugate_symmetric")
def _herm_sym(x, y):
    return _eq(_cplx(hermitian_inner_product(x, y).conj()), _cplx(hermitian_inner_product(y, x)))


@check("herm_positive")
def _herm_pos(x):
    return _eq([str(x.norm2()), "0"], _cplx(hermitian_inner_product(x, x)))


@check("herm_projection")
def _herm_proj(x, y):
    # projection of x y* onto span{1, i_n}, read off coordinates
    p = multiply(x, conjugate(y))
    return _eq([str(p.coeffs[0]), str(p.coeffs[p.dim // 2])], _cplx(hermitian_inner_product(x, y)))


@check("lx_conjugate_linear")
def _lx_antilinear(x):
    li = left_mul_matrix(i_element(x.level))
    lx = left_mul_matrix(x)
    ok = lx @ li == -(li @ lx)
    return ok, "L_x L_i = -L_i L_x", "holds" if ok else "violated"


@check("lx_anti_hermitian")
def _lx_antiherm(x, y, z):
    lhs = hermitian_inner_product(multiply(x, y), z)
    rhs = -hermitian_inner_product(y, multiply(x, z)).conj()
    return _eq(_cplx(rhs), _cplx(lhs))


@check("kernel_codim_even")
def _codim(x):
    codim = x.dim - annihilator_dim(x)
    return codim % 4 == 0, "complex codimension even", {"real_codimension": codim}


@check("left_equals_right")
def _left_right(x):
    left, right = annihilator(x), kernel(right_mul_matrix(x))
    return left == right, {"equal": True}, {"equal": left == right, "left_dim": left.dim, "right_dim": right.dim}


@check("ann_in_complex_perp")
def _ann_perp(x):
    bad = [i for i, v in enumerate(annihilator(x).basis) if not in_complex_perp(v)]
    return not bad, "every basis vector orthogonal to 1 and i_n", {"offending_rows": bad}


@check("ann_complex_stable")
def _ann_stable(x):
    ann = annihilator(x)
    i = i_element(x.level)
    bad = [k for k, v in enumerate(ann.basis) if multiply(i, v) not in ann]
    return not bad, "i_n Ann(x) = Ann(x)", {"offending_rows": bad}


@check("equal_ann")
def _equal_ann(x, alpha):
    a, b = annihilator(x), annihilator(complex_scale(alpha, x))
    return a == b, {"equal": True}, {"equal": a == b, "dims": [a.dim, b.dim]}


@check("ann_conj")
def _ann_conj(x):
    a, b = annihilator(x), annihilator(conjugate(x))
    return a == b, {"equal": True}, {"equal": a == b, "dims": [a.dim, b.dim]}


@check("adjoint_transpose")
def _adj_t(x):
    xs = conjugate(x)
    ok_l = left_mul_matrix(x).T == left_mul_matrix(xs)
    ok_r = right_mul_matrix(x).T == right_mul_matrix(xs)
    return ok_l and ok_r, [True, True], [ok_l, ok_r]


@check("zero_subalg_split")
def _subalg(x):
    b = quaternion_span(x, i_element(x.level))
    ann = annihilator(x)
    parts = [intersect(ann, b).dim, intersect(ann, orthogonal_complement(b)).dim]
    return _eq(ann.dim, sum(parts))


@check("ann_mod4")
def _ann_mod4(x):
    d = annihilator_dim(x)
    return d % 4 == 0, "multiple of 4", d


@check("ann_bound")
def _ann_bound(x):
    d = annihilator_dim(x)
    limit = x.dim if x.is_zero() else ann_bound(x.level)
    return d <= limit, f"<= {limit}", d


@check("certificate")
def _certificate(element, claimed):
    return _eq(claimed, annihilator_dim(element))


@check("a4_iff")
def _a4_iff(a1, a2):
    hyp = (
        a1.is_imaginary()
        and a2.is_imaginary()
        and inner_product_real(a1, a2) == 0
        and a1.norm2() == a2.norm2() != 0
    )
    return _eq(4 if hyp else 0, annihilator_dim(Element.pair(a1, a2)))


@check("a4_witness")
def _a4_witness(a1, a2):
    problems = a4_zero_divisor(a1, a2).check()
    return not problems, [], problems


@check("scale_pair_dim")
def _scale_pair(a, alpha, beta):
    x = Element.pair(complex_scale(alpha, a), complex_scale(beta, a))
    return _eq(2 * annihilator_dim(a), annihilator_dim(x))


@check("double_dim")
def _double(a, sign):
    x = Element.pair(a, multiply(i_element(a.level), a).scale(sign))
    return _eq((1 << a.level) - 4 + annihilator_dim(a), annihilator_dim(x))


@check("pair_alpha_dim")
def _pair_alpha(a, alpha):
    d = annihilator_dim(a)
    special = alpha.re == 0 and abs(alpha.im) == 1
    expected = (1 << a.level) - 4 + d if special else 2 * d
    return _eq(expected, annihilator_dim(Element.pair(a, complex_scale(alpha, a))))


@check("double_summands")
def _summands(a, sign):
    cert = double_zero_divisor(a, sign)
    u, v = cert.summands
    orth = orthogonal_complement(u)
    ok = v <= orth and u.dim + v.dim == cert.claimed_ann_dim and cert.verify()
    return ok, {"orthogonal": True, "dims_add": True}, {
        "orthogonal": v <= orth,
        "dims": [u.dim, v.dim],
        "claimed": cert.claimed_ann_dim,
    }


@check("a5_trichotomy")
def _a5(alpha):
    return _eq(a5_expected_dim(alpha), annihilator_dim(a5_family(alpha).element))


@check("a5_complex_form")
def _a5_form(alpha):
    a, b = a5_family(alpha).element.halves()
    ia = multiply(i_element(4), a)
    return _eq(True, b == ia or b == -ia)


@check("a5_real_scale")
def _a5_real(alpha):
    a = a5_family(alpha).element.halves()[0]
    x = Element.pair(a, a.scale(alpha.re))
    return _eq(2 * annihilator_dim(a), annihilator_dim(x))


def _lift(level, p, q, second_slot):
    h = 1 << level
    return make_element(level + 1, {p: 1}), make_element(level + 1, {(h + q) if second_slot else q: 1})


@check("ass_oct")
def _ass_oct(p, q):
    a, b = make_element(3, {p: 1}), make_element(3, {q: 1})
    h = quaternion_span(a, b)
    ass, ass2 = associator_space(a, b), associator_space(a, b, anti=True)
    ok = ass == h and ass2 == orthogonal_complement(h)
    return ok, {"Ass": "H<a,b>", "Ass'": "H<a,b>-perp"}, {"dims": [ass.dim, ass2.dim], "match": ok}


@check("ass_recursions")
def _ass_rec(level, p, q):
    a, b = make_element(level, {p: 1}), make_element(level, {q: 1})
    d, d2 = associator_dim(a, b), associator_dim(a, b, anti=True)
    a0, b0 = _lift(level, p, q, False)
    _, b1 = _lift(level, p, q, True)
    expected = [2 * d - 4, 2 * d2 + 4, 2 * d2 + 4, 2 * d - 4]
    actual = [
        associator_dim(a0, b0),
        associator_dim(a0, b1),
        associator_dim(a0, b0, anti=True),
        associator_dim(a0, b1, anti=True),
    ]
    return _eq(expected, actual)


@check("ass_prime_ann")
def _ass_prime_ann(level, p, q):
    a, b = make_element(level, {p: 1}), make_element(level, {q: 1})
    ass2 = associator_space(a, b, anti=True)
    image = span(level + 1, [Element.pair(x, multiply(multiply(a, x), b)) for x in ass2.basis])
    ann = annihilator(Element.pair(a, b))
    return ann == image, {"equal": True, "dim": ass2.dim}, {"equal": ann == image, "dim": ann.dim}


@check("assoc_exist")
def _assoc_exist(level, d, anti):
    a, b = assoc_pair_with_dim(level, d, bool(anti))
    return _eq(d, associator_dim(a, b, anti=bool(anti)))


@check("zd_equiv_sets")
def _zd_equiv(x):
    a, b = x.halves()
    la, lb, ra, rb = (m(v) for m, v in ((left_mul_matrix, a), (left_mul_matrix, b), (right_mul_matrix, a), (right_mul_matrix, b)))
    ann = annihilator(x)
    # (x, y) with Re x = Re y = 0, a x + y b = 0, and b x - y a = 0 (resp. x b - a y = 0)
    set2 = _solutions(x.level, [(la, rb), (lb, -ra)])
    set3 = _solutions(x.level, [(la, rb), (rb, -la)])
    ok = ann == set2 == set3
    return ok, {"equal": True}, {"dims": [ann.dim, set2.dim, set3.dim], "equal": ok}


def _solutions(level: int, equations) -> Subspace:
    """Imaginary (x, y) with M x + N y = 0 for every (M, N) in ``equations``."""
    half = 1 << (level - 1)
    rows = []
    for m, n in equations:
        for r in range(half):
            rows.append([*m.entries[r], *n.entries[r]])
    for p in (0, half):
        e = [0] * (2 * half)
        e[p] = 1
        rows.append(e)
    return orthogonal_complement(span(level, [Element(level, tuple(Fraction(c) for c in row)) for row in rows]))


@check("normed_product")
def _normed(a, x, y):
    pre = associator_of_triple(a, a, x).is_zero() and associator_of_triple(a, a, y).is_zero()
    if not pre:
        return False, "[a,a,x] = [a,a,y] = 0", "precondition fails"
    return _eq(a.norm2() * inner_product_real(x, y), inner_product_real(multiply(a, x), multiply(a, y)))


@check("alt_mod4")
def _alt_mod4(x):
    d = alternator_dim(x)
    return d % 4 == 0, "multiple of 4", d


@check("alt_low")
def _alt_low(x):
    d = alternator_dim(x)
    allowed = [x.dim] if x.level <= 3 else [8, 16]
    return d in allowed, allowed, d


@check("alt_basis")
def _alt_basis(level, p):
    return _eq(1 << level, alternator_dim(make_element(level, {p: 1})))


@check("top_certificate")
def _top_cert(level, signs, a1, a2):
    cert = top_zero_divisor(level, signs, (a1, a2))
    return _eq(ann_bound(level), annihilator_dim(cert.element))


@check("top_halves")
def _top_halves(x):
    n = x.level
    a, b = x.halves()
    aa, ab = annihilator(a), annihilator(b)
    inter = intersect(aa, ab).dim
    top = ann_bound(n - 1)
    ok = inter >= (1 << (n - 1)) - 4 * n + 6 and aa.dim == top and ab.dim == top
    return ok, {"intersection_at_least": (1 << (n - 1)) - 4 * n + 6, "halves": [top, top]}, {
        "intersection": inter,
        "halves": [aa.dim, ab.dim],
    }


@check("families_disjoint")
def _disjoint(a, b):
    i = i_element(a.level)
    plus = Element.pair(a, multiply(i, a))
    minus = Element.pair(b, -multiply(i, b))
    return _eq(False, plus == minus)


@check("not_top")
def _not_top(a, b, sign):
    i = i_element(a.level)
    x = Element.pair(
        Element.pair(a, multiply(i, a).scale(sign)), Element.pair(b, multiply(i, b).scale(-sign))
    )
    n = x.level
    d = annihilator_dim(x)
    limit = (1 << n) - 8 * n + 20
    return d <= limit, f"<= {limit}", d


def _is_c_multiple(a: Element, b: Element) -> bool:
    return contains(span(a.level, [a, multiply(i_element(a.level), a)]), b)


@check("top_ann_equal")
def _top_ann_equal(a, b):
    i = i_element(a.level)
    expected = _is_c_multiple(a, b)
    eq = [
        annihilator(Element.pair(a, multiply(i, a).scale(s))) == annihilator(Element.pair(b, multiply(i, b).scale(s)))
        for s in (1, -1)
    ]
    h_eq = quaternion_span(a, i) == quaternion_span(b, i)
    return eq == [expected, expected] and h_eq == expected, {"equal": expected}, {"plus": eq[0], "minus": eq[1], "H": h_eq}


def _unit_product(x: Element) -> Element:
    a1, a2 = x.halves()
    return multiply(a1, a2) / a1.norm2()


@check("ann_intersect")
def _ann_intersect(a, b):
    expected = _unit_product(a) == _unit_product(b)
    inter = intersect(annihilator(a), annihilator(b)).dim
    return (inter > 0) == expected, {"nontrivial": expected}, {"intersection_dim": inter}


@check("ann_equal")
def _ann_equal(a, b):
    a1, a2 = a.halves()
    b1, b2 = b.halves()
    expected = _unit_product(a) == _unit_product(b) and quaternion_span(a1, a2) == quaternion_span(b1, b2)
    actual = annihilator(a) == annihilator(b)
    return _eq(expected, actual)


# -- sample sources ------------------------------------------------------------


def _scale_by(rng: Rng, x: Element, bound: int) -> Element:
    return complex_scale(random_complex(rng, bound), x)


def constructed_zero_divisor(rng: Rng, level: int, bound: int = 9) -> Element:
    """A zero-divisor from one of the theorem-backed recipes, scaled by C_n.

    The result lies in C_n-perp.  Needs level >= 4.
    """
    kind = rng.randint(0, 2)
    if kind == 0:
        d = 4 * rng.randint(1, ann_bound(level) // 4)
        x = sample_ann_dim_element(level, d)
    else:
        a1, a2 = random_a4_pair(rng, min(bound, 5))
        x = Element.pair(a1, a2)
        i = None
        for m in range(4, level):
            i = i_element(m)
            if kind == 1 or rng.randint(0, 1):
                x = Element.pair(x, multiply(i, x).scale(rng.sign()))
            else:
                while True:
                    al, be = random_complex(rng, 3), random_complex(rng, 3)
                    if not (al * al + be * be).is_zero():
                        break
                x = Element.pair(complex_scale(al, x), complex_scale(be, x))
    return _scale_by(rng, x, 3)


def mixed_element(rng: Rng, spec: "SuiteSpec", trial: int) -> Element:
    """Dense, sparse, or (level >= 4) constructed zero-divisor, rotating by trial."""
    n, b = spec.level, spec.coefficient_bound
    kind = trial % 4
    if kind == 3 and n >= 4:
        return constructed_zero_divisor(rng, n, b)
    if kind in (1, 3) or spec.sparsity is not None:
        sp = spec.sparsity if spec.sparsity is not None else Fraction(rng.randint(1, 3), 1 << n)
        return random_nonzero(rng, n, b, sparsity=sp)
    return random_nonzero(rng, n, b)


def perp_element(rng: Rng, spec: "SuiteSpec", trial: int, level: int | None = None) -> Element:
    n = spec.level if level is None else level
    if trial % 2 and n >= 4:
        return constructed_zero_divisor(rng, n, spec.coefficient_bound)
    return random_complex_perp(rng, n, spec.coefficient_bound, spec.sparsity)


def _orthogonalize(x: Element, y: Element) -> Element:
    return y.scale(x.norm2()) - x.scale(inner_product_real(x, y))


# -- suites --------------------------------------------------------------------

Case = tuple[str, dict]


@dataclass(frozen=True)
class Suite:
    name: str
    min_level: int
    max_level: int
    description: str
    generate: Callable[[Rng, "SuiteSpec", int], list[Case]]


def _gen_core(rng, spec, t):
    n, bd = spec.level, spec.coefficient_bound
    x, y, z = (random_element(rng, n, bd, sparsity=spec.sparsity) for _ in range(3))
    r, s = rng.randint(-bd, bd), rng.randint(-bd, bd)
    xi = random_imaginary(rng, n, bd) if n else Element.zero(0)
    yi = random_imaginary(rng, n, bd) if n else Element.zero(0)
    if t % 2:
        yi = _orthogonalize(xi, yi)
    cases = [
        ("bilinear", dict(x=x, y=y, z=z, r=r, s=s)),
        ("involution", dict(x=x)),
        ("anti_homomorphism", dict(x=x, y=y)),
        ("re_split", dict(x=x)),
        ("re_comm", dict(x=x, y=y)),
        ("re_assoc", dict(x=x, y=y, z=z)),
        ("flexible", dict(x=x, y=y)),
        ("norm", dict(x=x)),
        ("real_inner", dict(x=x, y=y)),
        ("adjoint", dict(x=x, y=y, z=z)),
        ("anti_comm_iff_orthogonal", dict(x=xi, y=yi)),
        ("basis_product", dict(level=n, p=rng.randint(0, (1 << n) - 1), q=rng.randint(0, (1 << n) - 1))),
    ]
    if n <= 2:
        cases.append(("associative_low", dict(x=x, y=y, z=z)))
    return cases


def _gen_complex(rng, spec, t):
    n, bd = spec.level, spec.coefficient_bound
    x, y = random_element(rng, n, bd, sparsity=spec.sparsity), random_element(rng, n, bd)
    alpha, beta = random_complex(rng, bd), random_complex(rng, bd)
    cases = [("i_alternative", dict(x=x)), ("c_vector_space", dict(x=x, alpha=alpha, beta=beta))]
    xi = random_imaginary(rng, n, bd)
    yi = _orthogonalize(xi, random_imaginary(rng, n, bd))
    cases.append(("i_comm2", dict(x=xi, y=yi, alpha=alpha)))
    if n >= 2:
        a = random_complex_perp(rng, n, bd, spec.sparsity)
        cases.append(("i_comm", dict(x=a, alpha=alpha, y=y)))
        v = random_unit_vector(rng, (1 << n) - 2, min(bd, 5))
        h = 1 << (n - 1)
        u = v[: h - 1] + [Fraction(0)] + v[h - 1 :]
        cases.append(("i_quaternionic_pair", dict(a=Element(n, (Fraction(0), *u)))))
        if n + 1 <= max_level():
            cases.append(("c_linear", dict(a=a, alpha=alpha, sign=rng.sign())))
    return cases


def _gen_hermitian(rng, spec, t):
    n, bd = spec.level, spec.coefficient_bound
    x, y, z = (random_element(rng, n, bd, sparsity=spec.sparsity) for _ in range(3))
    alpha = random_complex(rng, bd)
    return [
        ("herm_additive", dict(x=x, y=y, z=z)),
        ("herm_homogeneous", dict(x=x, y=y, alpha=alpha)),
        ("herm_conjugate_symmetric", dict(x=x, y=y)),
        ("herm_positive", dict(x=x)),
        ("herm_projection", dict(x=x, y=y)),
    ]


def _gen_antilinear(rng, spec, t):
    n, bd = spec.level, spec.coefficient_bound
    x = perp_element(rng, spec, t)
    y, z = random_element(rng, n, bd), random_element(rng, n, bd)
    return [
        ("lx_conjugate_linear", dict(x=x)),
        ("lx_anti_hermitian", dict(x=x, y=y, z=z)),
        ("kernel_codim_even", dict(x=x)),
    ]


def _gen_ann_structure(rng, spec, t):
    x = mixed_element(rng, spec, t)
    p = perp_element(rng, spec, t)
    alpha = random_complex(rng, spec.coefficient_bound)
    return [
        ("left_equals_right", dict(x=x)),
        ("ann_in_complex_perp", dict(x=x)),
        ("ann_complex_stable", dict(x=x)),
        ("equal_ann", dict(x=x, alpha=alpha)),
        ("ann_conj", dict(x=x)),
        ("adjoint_transpose", dict(x=x)),
        ("zero_subalg_split", dict(x=p)),
    ]


def _gen_ann_mod4(rng, spec, t):
    return [("ann_mod4", dict(x=mixed_element(rng, spec, t)))]


def _gen_ann_bound(rng, spec, t):
    return [("ann_bound", dict(x=mixed_element(rng, spec, t)))]


def _gen_ann_dims(rng, spec, t):
    n = spec.level
    ds = list(range(0, ann_bound(n) + 1, 4))
    d = ds[t % len(ds)]
    x = _scale_by(rng, sample_ann_dim_element(n, d), spec.coefficient_bound)
    return [("certificate", dict(element=x, claimed=d))]


def _gen_a4(rng, spec, t):
    bd = min(spec.coefficient_bound, 9)
    a1, a2 = random_a4_pair(rng, bd)
    if rng.randint(0, 1):
        a1, a2 = a2, a1
    c, s = random_rotation(rng)
    kind = t % 3
    if kind == 0:  # unit-norm pair, then tilt b1 toward 1: still orthogonal and equal norm
        z, u = random_orthonormal_imaginary(rng, 3, 2, min(bd, 5))
        m = rng.randint(1, bd)
        a1, a2 = u.scale(m), multiply(z, u).scale(m)
        b1, b2 = a1.scale(s) + Element.real(3, c * m), a2
        if rng.randint(0, 1):
            b1, b2 = b2, b1
    elif kind == 1:  # rotate a2 toward a1: same norms, no longer orthogonal
        b1, b2 = a1, a2.scale(c) + a1.scale(s)
    else:  # norms differ
        b1, b2 = a1, a2.scale(rng.choice([2, 3, Fraction(1, 2)]))
    return [
        ("a4_iff", dict(a1=a1, a2=a2)),
        ("a4_witness", dict(a1=a1, a2=a2)),
        ("a4_iff", dict(a1=b1, a2=b2)),
    ]


def _gen_c_ann(rng, spec, t):
    n, bd = spec.level, spec.coefficient_bound
    a = perp_element(rng, spec, t, level=n - 1)
    while True:
        alpha, beta = random_complex(rng, bd), random_complex(rng, bd)
        if not (alpha * alpha + beta * beta).is_zero():
            break
    special = [ComplexScalar(0, 1), ComplexScalar(0, -1)]
    gamma = special[t % 4] if t % 4 < 2 else random_complex(rng, 3, nonzero=False)
    sign = 1 if t % 2 == 0 else -1
    cases = [
        ("scale_pair_dim", dict(a=a, alpha=alpha, beta=beta)),
        ("double_dim", dict(a=a, sign=sign)),
        ("pair_alpha_dim", dict(a=a, alpha=gamma)),
    ]
    if n <= 6:
        cases.append(("double_summands", dict(a=a, sign=sign)))
    return cases


def _quat(re=0, i=0, j=0, k=0) -> Element:
    return make_element(2, {0: re, 1: i, 2: j, 3: k})


A5_TABLE = [
    _quat(k=1),
    _quat(k=-1),
    _quat(i=1),
    _quat(i=-1),
    _quat(j=1),
    _quat(j=-1),
    _quat(i=1, j=1),
    _quat(i=-1, j=-1),
    _quat(i=Fraction(3, 5), j=Fraction(4, 5)),
    _quat(i=Fraction(3, 5), k=Fraction(4, 5)),
    _quat(j=Fraction(-5, 13), k=Fraction(12, 13)),
    _quat(k=2),
    _quat(re=1),
    _quat(re=2),
    _quat(re=-1),
    _quat(re=1, k=1),
    _quat(re=Fraction(3, 5), k=Fraction(4, 5)),
]


def _gen_main_a5(rng, spec, t):
    if t < len(A5_TABLE):
        alpha = A5_TABLE[t]
    elif t % 2:
        alpha = random_unit_imaginary(rng, 2, min(spec.coefficient_bound, 9))
    else:
        alpha = random_nonzero(rng, 2, spec.coefficient_bound)
    cases = [("a5_trichotomy", dict(alpha=alpha))]
    if a5_expected_dim(alpha) == 16:
        cases.append(("a5_complex_form", dict(alpha=alpha)))
    if alpha.im.is_zero():
        cases.append(("a5_real_scale", dict(alpha=alpha)))
    return cases


def _gen_assoc(rng, spec, t):
    n = spec.level
    p, q = (c + 1 for c in rng.sample((1 << n) - 1, 2))
    cases = [("ass_recursions", dict(level=n, p=p, q=q)), ("ass_prime_ann", dict(level=n, p=p, q=q))]
    if n == 3:
        cases.append(("ass_oct", dict(p=p, q=q)))
    ds = assoc_pair_range(n + 1)
    d = ds[t % len(ds)]
    cases.append(("assoc_exist", dict(level=n + 1, d=d, anti=t % 2)))
    return cases


def _gen_zd_equiv(rng, spec, t):
    return [("zd_equiv_sets", dict(x=perp_element(rng, spec, t)))]


def _gen_normed(rng, spec, t):
    n, bd = spec.level, spec.coefficient_bound
    x, y = random_element(rng, n, bd), random_element(rng, n, bd)
    if n <= 3:
        a = random_element(rng, n, bd, sparsity=spec.sparsity)
    else:
        # a + b e_p is alternative at every level
        a = make_element(n, {0: rng.randint(-bd, bd)}) + make_element(n, {rng.randint(1, (1 << n) - 1): rng.randint(-bd, bd)})
    return [("normed_product", dict(a=a, x=x, y=y))]


def _gen_alt(rng, spec, t):
    n = spec.level
    x = mixed_element(rng, spec, t)
    cases = [("alt_mod4", dict(x=x)), ("alt_basis", dict(level=n, p=rng.randint(0, (1 << n) - 1)))]
    if n <= 4:
        cases.append(("alt_low", dict(x=x)))
    return cases


def _gen_top(rng, spec, t):
    n, bd = spec.level, spec.coefficient_bound
    count = n - 4
    signs = [1 if (t >> k) & 1 == 0 else -1 for k in range(count)]
    if t == 0:
        a1, a2 = make_element(3, {1: 1}), make_element(3, {2: 1})
    else:
        a1, a2 = random_a4_pair(rng, min(bd, 5))
    cases = [("top_certificate", dict(level=n, signs=signs, a1=a1, a2=a2))]
    a, b = random_complex_perp(rng, n - 1, bd), random_complex_perp(rng, n - 1, bd)
    cases.append(("families_disjoint", dict(a=a, b=b if t % 2 else a)))
    if n >= 5:
        x = top_zero_divisor(n, signs, (a1, a2)).element
        cases.append(("top_halves", dict(x=x)))
        c, d = random_complex_perp(rng, n - 2, bd), random_complex_perp(rng, n - 2, bd)
        cases.append(("not_top", dict(a=c, b=d, sign=rng.sign())))
    if n - 1 >= 2:
        e = complex_scale(random_complex(rng, bd), a) if t % 2 == 0 else b
        cases.append(("top_ann_equal", dict(a=a, b=e)))
    return cases


def _gen_a4_intersect(rng, spec, t):
    bd = min(spec.coefficient_bound, 5)
    a1, a2 = random_a4_pair(rng, bd)
    kind = t % 4
    if kind == 0:  # rotate inside the plane: same product and same H
        c, s = random_rotation(rng)
        b1, b2 = a1.scale(c) + a2.scale(s), a2.scale(c) - a1.scale(s)
    elif kind == 1:  # same product direction, new plane
        u = multiply(a1, a2) / a1.norm2()
        w = random_imaginary(rng, 3, bd)
        b1 = _orthogonalize(u, w)
        if b1.is_zero():
            b1 = a1
        b2 = -multiply(b1, u)
    elif kind == 2:  # opposite product
        b1, b2 = a2, a1
    else:
        b1, b2 = random_a4_pair(rng, bd)
    a, b = Element.pair(a1, a2), Element.pair(b1, b2)
    return [("ann_intersect", dict(a=a, b=b)), ("ann_equal", dict(a=a, b=b))]


SUITES: dict[str, Suite] = {
    s.name: s
    for s in [
        Suite("core", 0, 8, "product, involution, real part, norm and adjoint identities", _gen_core),
        Suite("complex", 1, 8, "i_n alternativity, C_n action, i-commutation, complex-linear doubling", _gen_complex),
        Suite("hermitian", 1, 8, "Hermitian form axioms", _gen_hermitian),
        Suite("normed_low", 1, 8, "<ax, ay> = |a|^2 <x, y> when [a,a,x] = [a,a,y] = 0", _gen_normed),
        Suite("antilinear", 2, 7, "L_x conjugate-linear, anti-Hermitian, even complex kernel codimension", _gen_antilinear),
        Suite("ann_structure", 2, 7, "left = right, C_n-perp, C_n-stable, equal-ann, conj, transpose, subalgebra split", _gen_ann_structure),
        Suite("ann_mod4", 1, 8, "dim Ann(x) is a multiple of 4", _gen_ann_mod4),
        Suite("ann_bound", 1, 8, "dim Ann(x) <= 2^n - 4n + 4", _gen_ann_bound),
        Suite("ann_dims", 1, 8, "every allowed annihilator dimension is realized", _gen_ann_dims),
        Suite("alt", 2, 7, "alternator dimensions", _gen_alt),
        Suite("a4_characterization", 4, 4, "(a1, a2) is a zero-divisor iff orthogonal imaginary of equal norm", _gen_a4),
        Suite("a4_intersect", 4, 4, "intersections and equality of A_4 annihilators", _gen_a4_intersect),
        Suite("c_ann", 3, 7, "annihilators of (alpha a, beta a) and (a, +-i a)", _gen_c_ann),
        Suite("main_a5", 5, 5, "the 16/12/8 trichotomy of the A_5 family", _gen_main_a5),
        Suite("assoc_recursions", 3, 5, "associator dimension recursions and constructed pairs", _gen_assoc),
        Suite("zd_equiv", 2, 7, "Ann(a, b) as solutions of ax = -yb, bx = ya", _gen_zd_equiv),
        Suite("top_family", 4, 7, "top-dimensional families, halves, disjointness, not-top bound", _gen_top),
    ]
}


# -- running -------------------------------------------------------------------


@dataclass(frozen=True)
class SuiteSpec:
    name: str
    level: int
    trials: int
    seed: int
    coefficient_bound: int = 9
    sparsity: Fraction | None = None
    # testing hook: trial 0 gains one case with a deliberately wrong claim
    inject_fault: bool = False

    def validate(self) -> Suite:
        if self.name not in SUITES:
            raise InputError(f"unknown suite {self.name!r}; available: {', '.join(sorted(SUITES))}")
        suite = SUITES[self.name]
        check_level(self.level)
        if not suite.min_level <= self.level <= suite.max_level:
            raise InputError(
                f"suite {self.name!r} supports levels {suite.min_level}..{suite.max_level}, got {self.level}"
            )
        if isinstance(self.trials, bool) or not isinstance(self.trials, int) or self.trials < 0:
            raise InputError(f"trials must be a non-negative integer, got {self.trials!r}")
        check_seed(self.seed)
        if self.coefficient_bound < 1:
            raise InputError("coefficient_bound must be at least 1")
        if self.sparsity is not None and not 0 < Fraction(self.sparsity) <= 1:
            raise InputError("sparsity must lie in (0, 1]")
        return suite


@dataclass
class VerificationReport:
    spec: SuiteSpec
    checks_run: int
    failures: list[dict]
    elapsed: float = 0.0

    @property
    def passed(self) -> int:
        return self.checks_run - len(self.failures)

    @property
    def ok(self) -> bool:
        return not self.failures

    def to_doc(self) -> dict:
        s = self.spec
        doc = {
            "suite": s.name,
            "level": s.level,
            "trials": s.trials,
            "seed": s.seed,
            "coefficient_bound": s.coefficient_bound,
            "sparsity": None if s.sparsity is None else str(Fraction(s.sparsity)),
            "checks_run": self.checks_run,
            "passed": self.passed,
            "failed": len(self.failures),
            "failures": self.failures,
            "tool_version": __version__,
        }
        if s.inject_fault:
            doc["inject_fault"] = True
        return doc

    def body(self) -> str:
        """Canonical JSON of the report; elapsed time is left out."""
        return json.dumps(self.to_doc(), indent=2, sort_keys=False) + "\n"


def evaluate(check_name: str, inputs: dict) -> CheckResult:
    """Run one check on serialized inputs; exceptions count as failures."""
    if check_name not in CHECKS:
        raise InputError(f"unknown check {check_name!r}")
    try:
        args = from_jsonable(inputs)
        ok, expected, actual = CHECKS[check_name](**args)
    except InputError as e:
        return False, "no input error", f"InputError: {e}"
    except Exception as e:  # a crashing check is a failed check, with the reason kept
        return False, "no exception", f"{type(e).__name__}: {e}"
    return bool(ok), to_jsonable(expected), to_jsonable(actual)


def _run_trial(spec: SuiteSpec, trial: int) -> tuple[int, list[dict]]:
    suite = SUITES[spec.name]
    rng = Rng(spec.seed, trial)
    cases = suite.generate(rng, spec, trial)
    if spec.inject_fault and trial == 0:
        cases.append(("certificate", dict(element=Element.real(spec.level, 1), claimed=4)))
    failures = []
    for name, inputs in cases:
        doc = to_jsonable(inputs)
        ok, expected, actual = evaluate(name, doc)
        if not ok:
            failures.append(
                {"check": name, "suite": spec.name, "trial": trial, "inputs": doc, "expected": expected, "actual": actual}
            )
    return len(cases), failures


def _run_trial_packed(args):
    return _run_trial(*args)


def run_suite(spec: SuiteSpec, jobs: int = 1) -> VerificationReport:
    """Run every trial of a suite; the report is assembled in trial order."""
    spec.validate()
    start = time.perf_counter()
    work = [(spec, t) for t in range(spec.trials)]
    if jobs > 1 and spec.trials > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_run_trial_packed, work))
    else:
        results = [_run_trial(*w) for w in work]
    checks = sum(r[0] for r in results)
    failures = [f for r in results for f in r[1]]
    return VerificationReport(spec, checks, failures, time.perf_counter() - start)


def suites_for_level(level: int) -> list[str]:
    return [name for name, s in SUITES.items() if s.min_level <= level <= s.max_level]


@dataclass(frozen=True)
class ReplayResult:
    check: str
    ok: bool
    expected: Any
    actual: Any
    recorded_expected: Any = None
    recorded_actual: Any = None

    @property
    def reproduced(self) -> bool:
        """True when the replay gives the recorded (failing) verdict again."""
        return not self.ok and self.actual == self.recorded_actual

    def to_doc(self) -> dict:
        return {
            "check": self.check,
            "verdict": "pass" if self.ok else "fail",
            "reproduced": self.reproduced,
            "expected": self.expected,
            "actual": self.actual,
        }


def failure_records(doc: Any) -> list[dict]:
    """Failure records from a single record, a report, or a list of reports."""
    if isinstance(doc, list):
        return [r for d in doc for r in failure_records(d)]
    if isinstance(doc, dict) and "failures" in doc:
        return list(doc["failures"])
    if isinstance(doc, dict) and "check" in doc and "inputs" in doc:
        return [doc]
    raise InputError("replay file holds neither a failure record nor a report")


def replay(record: dict) -> ReplayResult:
    ok, expected, actual = evaluate(record["check"], record["inputs"])
    return ReplayResult(record["check"], ok, expected, actual, record.get("expected"), record.get("actual"))


# -- spectrum search -----------------------------------------------------------


@dataclass
class SpectrumResult:
    level: int
    target: str
    strategy: str
    budget: int
    seed: int
    histogram: dict[int, int] = field(default_factory=dict)
    exemplars: dict[int, Element] = field(default_factory=dict)

    def to_doc(self) -> dict:
        return {
            "level": self.level,
            "target": self.target,
            "strategy": self.strategy,
            "budget": self.budget,
            "seed": self.seed,
            "histogram": {str(d): c for d, c in sorted(self.histogram.items())},
            "exemplars": {str(d): to_jsonable(x) for d, x in sorted(self.exemplars.items())},
        }


def _structured_seeds(level: int):
    """Theorem-backed elements offered first by the structured strategy."""
    if level >= 1:
        for d in range(0, ann_bound(level) + 1, 4):
            yield sample_ann_dim_element(level, d)
    if level >= 4:
        for t in range(1 << (level - 4)):
            signs = [1 if (t >> k) & 1 == 0 else -1 for k in range(level - 4)]
            yield top_zero_divisor(level, signs).element
    if level == 5:
        for alpha in A5_TABLE:
            yield a5_family(alpha).element


def _structured_random(rng: Rng, level: int) -> Element:
    k = rng.randint(1, min(3, 1 << level))
    idx = rng.sample(1 << level, k)
    coeffs = {p: rng.choice([-2, -1, 1, 2]) for p in idx}
    return make_element(level, coeffs)


def spectrum_search(
    level: int, target: str = "ann", strategy: str = "structured", budget: int = 1000, seed: int = 0,
    coefficient_bound: int = 9,
) -> SpectrumResult:
    """Histogram of exact annihilator or alternator dimensions over sampled elements.

    ``structured`` first walks the theorem-backed constructions, then samples
    combinations of one to three basis vectors with coefficients in
    {-2, -1, 1, 2}; ``random`` samples dense integer elements.  Sample ``k``
    uses its own stream ``Rng(seed, k)``.
    """
    level = check_level(level)
    if target not in ("ann", "alt"):
        raise InputError(f"target must be 'ann' or 'alt', got {target!r}")
    if strategy not in ("random", "structured"):
        raise InputError(f"strategy must be 'random' or 'structured', got {strategy!r}")
    if budget < 1:
        raise InputError("budget must be at least 1")
    check_seed(seed)
    measure = annihilator_dim if target == "ann" else alternator_dim
    result = SpectrumResult(level, target, strategy, budget, seed)
    seeds = iter(_structured_seeds(level)) if strategy == "structured" else iter(())
    for k in range(budget):
        x = next(seeds, None)
        if x is None:
            rng = Rng(seed, k)
            if strategy == "structured":
                x = _structured_random(rng, level)
            else:
                x = random_nonzero(rng, level, coefficient_bound)
        d = measure(x)
        result.histogram[d] = result.histogram.get(d, 0) + 1
        result.exemplars.setdefault(d, x)
    return result
