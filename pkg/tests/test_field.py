import itertools

import numpy as np
import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from superalg_centers.field import (
    DegreeTooLarge,
    FieldElement,
    NotOddPrime,
    artin_schreier_roots,
    is_irreducible,
    lowest_irreducible,
    make_field,
)

FIELDS = [(3, 1), (5, 1), (3, 2), (3, 3), (5, 2), (7, 1)]


def naive_mul(ctx, a, b):
    """Schoolbook product of code digits reduced by the modulus."""
    p, e = ctx.p, ctx.e
    da, db = ctx.digits(a), ctx.digits(b)
    prod = [0] * (2 * e - 1)
    for i, x in enumerate(da):
        for j, y in enumerate(db):
            prod[i + j] = (prod[i + j] + x * y) % p
    mod = list(ctx.modulus_poly)
    for k in range(len(prod) - 1, e - 1, -1):
        c = prod[k]
        if c:
            for i in range(e + 1):
                prod[k - e + i] = (prod[k - e + i] - c * mod[i]) % p
    return ctx.encode(prod[:e])


@pytest.mark.parametrize("p,e", FIELDS)
def test_multiplication_matches_schoolbook(p, e):
    ctx = make_field(p, e)
    for a in range(ctx.q):
        for b in range(0, ctx.q, max(1, ctx.q // 9)):
            assert ctx.mul(a, b) == naive_mul(ctx, a, b)


@pytest.mark.parametrize("p,e", FIELDS)
def test_field_axioms_exhaustive_inverse(p, e):
    ctx = make_field(p, e)
    for a in range(1, ctx.q):
        assert ctx.mul(a, ctx.inv(a)) == 1
    for a in range(ctx.q):
        assert ctx.add(a, ctx.neg(a)) == 0
        assert ctx.sub(a, a) == 0


@given(st.data())
@settings(max_examples=60, deadline=None)
def test_ring_laws(data):
    p, e = data.draw(st.sampled_from(FIELDS))
    ctx = make_field(p, e)
    a, b, c = (data.draw(st.integers(0, ctx.q - 1)) for _ in range(3))
    assert ctx.mul(a, ctx.add(b, c)) == ctx.add(ctx.mul(a, b), ctx.mul(a, c))
    assert ctx.mul(ctx.mul(a, b), c) == ctx.mul(a, ctx.mul(b, c))
    assert ctx.add(ctx.add(a, b), c) == ctx.add(a, ctx.add(b, c))
    assert ctx.mul(a, b) == ctx.mul(b, a)


@pytest.mark.parametrize("p,e", FIELDS)
def test_vector_ops_agree_with_scalar(p, e):
    ctx = make_field(p, e)
    rng = np.random.default_rng(0)
    A = rng.integers(0, ctx.q, size=40)
    B = rng.integers(0, ctx.q, size=40)
    assert list(ctx.vadd(A, B)) == [ctx.add(int(a), int(b)) for a, b in zip(A, B)]
    assert list(ctx.vsub(A, B)) == [ctx.sub(int(a), int(b)) for a, b in zip(A, B)]
    assert list(ctx.vmul(A, B)) == [ctx.mul(int(a), int(b)) for a, b in zip(A, B)]
    assert list(ctx.vneg(A)) == [ctx.neg(int(a)) for a in A]
    nz = A[A != 0]
    assert list(ctx.vinv(nz)) == [ctx.inv(int(a)) for a in nz]


@pytest.mark.parametrize("p,e", FIELDS)
def test_frobenius_fixes_exactly_the_prime_field(p, e):
    ctx = make_field(p, e)
    fixed = [a for a in range(ctx.q) if ctx.frob(a) == a]
    assert fixed == list(range(p))
    # x^(q) = x for every element
    assert all(ctx.pow(a, ctx.q) == a for a in range(ctx.q))


@pytest.mark.parametrize("p,e", [(3, 2), (3, 3), (5, 2), (3, 4), (5, 3)])
def test_modulus_is_irreducible_per_sympy(p, e):
    mod = lowest_irreducible(p, e)
    x = sympy.symbols("x")
    poly = sympy.Poly(list(reversed(mod)), x, modulus=p)
    assert poly.is_irreducible
    assert mod[-1] == 1


def test_modulus_is_lexicographically_least():
    # enumerate monic cubics over GF(3) from the top coefficient down
    x = sympy.symbols("x")
    first = None
    for top in itertools.product(range(3), repeat=3):
        coeffs = [1, *top]  # highest degree first
        if sympy.Poly(coeffs, x, modulus=3).is_irreducible:
            first = coeffs
            break
    assert tuple(reversed(first)) == lowest_irreducible(3, 3) == (1, 2, 0, 1)


def test_is_irreducible_small_cases():
    assert is_irreducible((1, 0, 1), 3)  # t^2 + 1 over GF(3)
    assert not is_irreducible((1, 0, 1), 5)  # 2^2 = -1 mod 5
    assert not is_irreducible((0, 0, 1), 3)


def test_bad_parameters():
    with pytest.raises(NotOddPrime):
        make_field(2)
    with pytest.raises(NotOddPrime):
        make_field(9)
    with pytest.raises(DegreeTooLarge):
        make_field(3, 40)


@pytest.mark.parametrize("p,e", FIELDS + [(3, 4)])
def test_artin_schreier_against_exhaustive_search(p, e):
    ctx = make_field(p, e)
    image = {}
    for t in range(ctx.q):
        image.setdefault(ctx.sub(ctx.frob(t), t), set()).add(t)
    for c in range(ctx.q):
        got = {x.code for x in artin_schreier_roots(ctx, c)}
        assert got == image.get(c, set())
        assert len(got) in (0, p)


def test_artin_schreier_splits_over_p_power_extension():
    # every c in GF(p) is hit once we pass to GF(p^p)
    for p in (3, 5):
        ctx = make_field(p, p)
        for c in range(p):
            assert len(artin_schreier_roots(ctx, ctx.frob(c))) == p


def test_field_element_operators():
    ctx = make_field(3, 2)
    a = FieldElement(ctx, 4)
    b = FieldElement(ctx, 7)
    assert (a * b).code == ctx.mul(4, 7)
    assert (a / b) * b == a
    assert -a + a == FieldElement(ctx, 0)
    assert a ** 9 == a.frobenius() ** 3
    assert not FieldElement(ctx, 0)
    assert a + 1 == FieldElement(ctx, ctx.add(4, 1))
