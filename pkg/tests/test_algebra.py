from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cdlab.algebra import (
    ComplexScalar,
    Element,
    associator_of_triple,
    basis_product,
    complex_scale,
    conjugate,
    hermitian_inner_product,
    i_element,
    inner_product_real,
    make_element,
    multiply,
    multiply_recursive,
    real_imag_split,
    sign_table,
    to_rational,
)
from cdlab.errors import InputError

from oracles import basis, cd_mul

small = st.integers(-6, 6)


def elements(level, imaginary=False):
    size = 1 << level
    return st.lists(small, min_size=size, max_size=size).map(
        lambda v: Element.from_ints(level, [0] + v[1:] if imaginary else v)
    )


def levels(lo=0, hi=5):
    return st.integers(lo, hi)


@st.composite
def triple(draw, lo=0, hi=5):
    n = draw(levels(lo, hi))
    return draw(elements(n)), draw(elements(n)), draw(elements(n))


# -- examples --------------------------------------------------------------


def test_make_element_examples():
    i = make_element(2, {1: 1})
    assert i.coeffs == (0, 1, 0, 0)
    assert make_element(3, {}).is_zero()
    x = make_element(4, {1: Fraction(3, 5), 10: -2})
    assert x.sparse() == {1: Fraction(3, 5), 10: -2}
    assert make_element(4, {1: "3/5"}) == make_element(4, {1: Fraction(3, 5)})


@pytest.mark.parametrize("bad", [{4: 1}, {-1: 1}])
def test_make_element_index_out_of_range(bad):
    with pytest.raises(InputError):
        make_element(2, bad)


@pytest.mark.parametrize("bad", ["1/0", "x", 0.5, True, "1.5"])
def test_bad_rationals_rejected(bad):
    with pytest.raises((InputError, ZeroDivisionError)):
        to_rational(bad)


def test_rationals_canonical():
    q = to_rational("6/4")
    assert (q.numerator, q.denominator) == (3, 2)
    assert to_rational(" -7 ") == -7


def test_level_cap(monkeypatch):
    with pytest.raises(InputError):
        make_element(11, {})
    monkeypatch.setenv("CD_LAB_MAX_LEVEL", "3")
    with pytest.raises(InputError):
        make_element(4, {})
    make_element(3, {})


def test_i_squared():
    i = make_element(1, {1: 1})
    assert multiply(i, i) == make_element(1, {0: -1})


def test_quaternion_table():
    # rows/cols 1, i, j, k; entries (sign, index)
    table = {
        (1, 1): (-1, 0), (1, 2): (1, 3), (1, 3): (-1, 2),
        (2, 1): (-1, 3), (2, 2): (-1, 0), (2, 3): (1, 1),
        (3, 1): (1, 2), (3, 2): (-1, 1), (3, 3): (-1, 0),
    }
    for (p, q), (s, r) in table.items():
        assert multiply(make_element(2, {p: 1}), make_element(2, {q: 1})) == make_element(2, {r: s})


def test_unit_is_identity():
    x = make_element(4, {1: 3, 7: -2, 12: Fraction(1, 3)})
    one = make_element(4, {0: 1})
    assert multiply(one, x) == x == multiply(x, one)


def test_octonion_table_against_oracle():
    for p in range(8):
        for q in range(8):
            got = multiply_recursive(make_element(3, {p: 1}), make_element(3, {q: 1}))
            assert list(got.coeffs) == cd_mul(basis(3, p), basis(3, q))


def test_basis_product_examples():
    assert basis_product(2, 1, 2) == (1, 3)
    for q in range(16):
        assert basis_product(4, 0, q) == (1, q)
    # frozen from the oracle product: e_5 e_3 = +e_6 in A_3
    assert basis_product(3, 5, 3) == (1, 6)
    with pytest.raises(InputError):
        basis_product(2, 4, 0)


def test_sign_table_against_recursion_level5():
    s = sign_table(5)
    for p in range(32):
        for q in range(32):
            prod = multiply_recursive(make_element(5, {p: 1}), make_element(5, {q: 1}))
            assert prod == make_element(5, {p ^ q: int(s[p, q])})


def test_conjugate_examples():
    assert conjugate(make_element(2, {0: 1})) == make_element(2, {0: 1})
    assert conjugate(make_element(2, {1: 1})) == make_element(2, {1: -1})
    assert conjugate(make_element(3, {0: 2, 5: 7})) == make_element(3, {0: 2, 5: -7})


def test_real_imag_split_examples():
    assert real_imag_split(make_element(2, {0: 1})) == (1, Element.zero(2))
    assert real_imag_split(make_element(2, {3: 1})) == (0, make_element(2, {3: 1}))
    re, im = real_imag_split(make_element(4, {0: Fraction(-1, 2), 9: 4}))
    assert re == Fraction(-1, 2) and im == make_element(4, {9: 4})


def test_inner_product_examples():
    assert inner_product_real(make_element(3, {1: 1}), make_element(3, {1: 1})) == 1
    assert inner_product_real(make_element(3, {1: 1}), make_element(3, {2: 1})) == 0
    x = make_element(3, {0: 2, 5: 3})
    assert inner_product_real(x, x) == 13


def test_hermitian_examples():
    x = make_element(3, {0: 1, 3: 2, 6: -1})
    assert hermitian_inner_product(x, x) == ComplexScalar(6, 0)
    e0, i3 = make_element(3, {0: 1}), i_element(3)
    assert hermitian_inner_product(e0, i3) == ComplexScalar(0, -1)
    assert hermitian_inner_product(i3, e0) == ComplexScalar(0, 1)
    with pytest.raises(InputError):
        hermitian_inner_product(make_element(0, {0: 1}), make_element(0, {0: 1}))


def test_associator_examples():
    i, j, t = (make_element(3, {p: 1}) for p in (1, 2, 4))
    # frozen from the oracle product
    assert associator_of_triple(i, j, t) == make_element(3, {7: 2})


def test_i_element():
    assert i_element(1) == make_element(1, {1: 1})
    assert i_element(4) == make_element(4, {8: 1})
    assert i_element(5) == make_element(5, {16: 1})
    with pytest.raises(InputError):
        i_element(0)


def test_level_mismatch():
    with pytest.raises(InputError):
        multiply(make_element(2, {}), make_element(3, {}))
    with pytest.raises(InputError):
        inner_product_real(make_element(2, {}), make_element(3, {}))


def test_elements_are_immutable():
    x = make_element(2, {1: 1})
    with pytest.raises(Exception):
        x.level = 3


def test_pair_and_halves():
    a, b = make_element(2, {1: 1}), make_element(2, {2: 3})
    x = Element.pair(a, b)
    assert x.level == 3 and x.sparse() == {1: 1, 6: 3}
    assert x.halves() == (a, b)


# -- properties ------------------------------------------------------------


@settings(max_examples=40, deadline=None)
@given(triple(0, 6), small, small)
def test_matches_oracle_and_bilinear(xyz, r, s):
    x, y, z = xyz
    assert list(multiply(x, y).coeffs) == cd_mul(list(x.coeffs), list(y.coeffs))
    assert multiply(x.scale(r) + y.scale(s), z) == multiply(x, z).scale(r) + multiply(y, z).scale(s)
    assert multiply(z, x.scale(r) + y.scale(s)) == multiply(z, x).scale(r) + multiply(z, y).scale(s)


@settings(max_examples=40, deadline=None)
@given(triple(0, 6))
def test_involution_properties(xyz):
    x, y, _ = xyz
    assert conjugate(conjugate(x)) == x
    assert conjugate(multiply(x, y)) == multiply(conjugate(y), conjugate(x))
    re, _ = real_imag_split(x)
    assert x + conjugate(x) == Element.real(x.level, 2 * re)


@settings(max_examples=40, deadline=None)
@given(triple(0, 6))
def test_real_part_identities_and_flexibility(xyz):
    x, y, z = xyz
    assert (multiply(x, y) - multiply(y, x)).re == 0
    assert associator_of_triple(x, y, z).re == 0
    assert associator_of_triple(x, y, x).is_zero()


@settings(max_examples=30, deadline=None)
@given(triple(0, 2))
def test_low_levels_associative(xyz):
    assert associator_of_triple(*xyz).is_zero()


@settings(max_examples=40, deadline=None)
@given(triple(0, 6))
def test_norm_and_adjoint(xyz):
    x, y, z = xyz
    n = Element.real(x.level, x.norm2())
    assert multiply(x, conjugate(x)) == n == multiply(conjugate(x), x)
    xs = conjugate(x)
    assert inner_product_real(multiply(x, y), z) == inner_product_real(y, multiply(xs, z))
    assert inner_product_real(multiply(y, x), z) == inner_product_real(y, multiply(z, xs))
    assert inner_product_real(x, y) == multiply(x, conjugate(y)).re


@st.composite
def imaginary_pair(draw):
    n = draw(levels(1, 5))
    return draw(elements(n, True)), draw(elements(n, True))


@settings(max_examples=60, deadline=None)
@given(imaginary_pair(), st.booleans())
def test_anti_commute_iff_orthogonal(pair, orthogonalize):
    x, y = pair
    if orthogonalize:
        y = y.scale(x.norm2()) - x.scale(inner_product_real(x, y))
    anti = multiply(x, y) == -multiply(y, x)
    assert anti == (inner_product_real(x, y) == 0)


@st.composite
def complex_scalars(draw):
    return ComplexScalar(draw(small), draw(small))


@settings(max_examples=40, deadline=None)
@given(levels(1, 6).flatmap(lambda n: elements(n)), complex_scalars(), complex_scalars())
def test_complex_structure(x, alpha, beta):
    i = i_element(x.level)
    assert associator_of_triple(i, i, x).is_zero()
    assert associator_of_triple(x, x, i).is_zero()
    assert associator_of_triple(i, x, x).is_zero()
    assert complex_scale(alpha, complex_scale(beta, x)) == complex_scale(alpha * beta, x)


def _perp(x):
    h = x.dim // 2
    return Element(x.level, tuple(Fraction(0) if k in (0, h) else c for k, c in enumerate(x.coeffs)))


@settings(max_examples=40, deadline=None)
@given(levels(2, 6).flatmap(lambda n: st.tuples(elements(n), elements(n))), complex_scalars())
def test_i_comm(xy, alpha):
    x, y = xy
    x = _perp(x)
    al = alpha.to_element(x.level)
    als = alpha.conj().to_element(x.level)
    assert multiply(multiply(y, x), al) == multiply(multiply(y, als), x)
    assert multiply(al, multiply(x, y)) == multiply(x, multiply(als, y))


@settings(max_examples=40, deadline=None)
@given(imaginary_pair(), complex_scalars())
def test_i_comm2(pair, alpha):
    x, y = pair
    y = y.scale(x.norm2()) - x.scale(inner_product_real(x, y))
    al = alpha.to_element(x.level)
    assert multiply(multiply(al, x), y) == -multiply(multiply(al, y), x)
    assert multiply(y, multiply(x, al)) == -multiply(x, multiply(y, al))


@settings(max_examples=40, deadline=None)
@given(levels(2, 5).flatmap(lambda n: elements(n)), complex_scalars())
def test_doubling_plus_is_complex_linear_minus_is_conjugate_linear(a, alpha):
    a = _perp(a)
    i = i_element(a.level)
    for sign, beta in ((1, alpha), (-1, alpha.conj())):
        def phi(v):
            return Element.pair(v, multiply(i, v).scale(sign))

        assert phi(complex_scale(alpha, a)) == multiply(beta.to_element(a.level + 1), phi(a))


@settings(max_examples=40, deadline=None)
@given(levels(1, 6).flatmap(lambda n: st.tuples(elements(n), elements(n), elements(n))), complex_scalars())
def test_hermitian_form(xyz, alpha):
    x, y, z = xyz
    h = hermitian_inner_product
    assert h(x + y, z) == h(x, z) + h(y, z)
    assert h(x, y + z) == h(x, y) + h(x, z)
    assert h(complex_scale(alpha, x), y) == alpha * h(x, y)
    assert h(y, x) == h(x, y).conj()
    assert h(x, x) == ComplexScalar(x.norm2(), 0)
    p = multiply(x, conjugate(y))
    assert h(x, y) == ComplexScalar(p.coeffs[0], p.coeffs[p.dim // 2])


@settings(max_examples=40, deadline=None)
@given(triple(0, 3))
def test_normed_at_low_levels(axy):
    a, x, y = axy
    assert inner_product_real(multiply(a, x), multiply(a, y)) == a.norm2() * inner_product_real(x, y)
