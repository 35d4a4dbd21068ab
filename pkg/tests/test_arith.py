import math
import random

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from segreint.arith import (
    MonomialOrder,
    PolyRing,
    Polynomial,
    PrimeField,
    binomial_conv,
    is_prime,
    mono_divides,
    mono_lcm,
    monomials_of_degree,
)

P = 32003
RING = PolyRing(("x", "y", "z"))


def to_sympy(f: Polynomial):
    gens = sympy.symbols(f.ring.names)
    return sympy.Poly.from_dict(f.coeffs or {(0,) * f.ring.nvars: 0}, gens, modulus=f.ring.modulus)


def sympy_dict(poly, p=P) -> dict:
    return {m: int(c) % p for m, c in poly.as_dict().items() if int(c) % p}


polys = st.dictionaries(
    st.tuples(*[st.integers(0, 3)] * 3), st.integers(-P, P), max_size=6
).map(lambda d: Polynomial(RING, d))


# -- field --------------------------------------------------------------------


def test_is_prime_matches_sympy():
    assert [n for n in range(200) if is_prime(n)] == list(sympy.primerange(0, 200))
    assert is_prime(32003)


@pytest.mark.parametrize("bad", [0, 1, 4, 32004, 2**31 + 11])
def test_field_rejects_non_primes(bad):
    with pytest.raises(ValueError):
        PrimeField(bad)


@given(st.integers(1, P - 1))
def test_inverse(a):
    F = PrimeField()
    assert a * F.inv(a) % P == 1


def test_inverse_of_zero():
    with pytest.raises(ZeroDivisionError):
        PrimeField().inv(P)


def test_signed_representative():
    F = PrimeField(7)
    assert [F.signed(a) for a in range(7)] == [0, 1, 2, 3, -3, -2, -1]


# -- binomial convention --------------------------------------------------------


def test_binomial_conventions():
    assert binomial_conv(-1, -1) == 1
    assert all(binomial_conv(m, -1) == 0 for m in range(11))
    assert binomial_conv(-1, 0) == 0
    assert binomial_conv(3, 5) == 0


@given(st.integers(0, 60), st.integers(0, 60))
def test_binomial_agrees_with_math_comb(m, k):
    assert binomial_conv(m, k) == math.comb(m, k)


@given(st.integers(0, 40), st.integers(0, 40))
def test_pascal_rule(m, k):
    assert binomial_conv(m + 1, k) == binomial_conv(m, k) + binomial_conv(m, k - 1)


def test_binomial_rejects_out_of_range():
    with pytest.raises(ValueError):
        binomial_conv(-2, 0)


# -- monomials -------------------------------------------------------------------


@pytest.mark.parametrize("n,d", [(1, 4), (3, 0), (3, 3), (4, 5)])
def test_monomials_of_degree_count(n, d):
    mons = list(monomials_of_degree(n, d))
    assert len(mons) == len(set(mons)) == math.comb(d + n - 1, n - 1)
    assert all(sum(m) == d and len(m) == n for m in mons)


@given(st.tuples(*[st.integers(0, 5)] * 3), st.tuples(*[st.integers(0, 5)] * 3))
def test_lcm_is_least_common_multiple(a, b):
    l = mono_lcm(a, b)
    assert mono_divides(a, l) and mono_divides(b, l)
    assert all(x == max(u, v) for x, u, v in zip(l, a, b))


def test_grevlex_order():
    # x > y > z; in degree 2: x^2 > xy > y^2 > xz > yz > z^2
    mons = list(monomials_of_degree(3, 2))
    ordered = sorted(mons, key=MonomialOrder().sort_key)
    assert ordered == [(2, 0, 0), (1, 1, 0), (0, 2, 0), (1, 0, 1), (0, 1, 1), (0, 0, 2)]


@pytest.mark.parametrize(
    "order",
    [MonomialOrder(), MonomialOrder("wgrevlex", (1, 2, 3, 1)), MonomialOrder("block", split=2)],
)
def test_linear_key_matches_sort_key(order):
    rng = random.Random(5)
    coeffs = order.linear_key(4)
    mons = [tuple(rng.randrange(0, 9) for _ in range(4)) for _ in range(400)]
    by_tuple = sorted(mons, key=order.sort_key)
    by_linear = sorted(mons, key=lambda m: sum(e * c for e, c in zip(m, coeffs)))
    assert [order.sort_key(m) for m in by_tuple] == [order.sort_key(m) for m in by_linear]


# -- polynomial arithmetic ---------------------------------------------------------


@settings(max_examples=200)
@given(polys, polys, polys)
def test_ring_axioms(f, g, h):
    assert f + g == g + f
    assert f * g == g * f
    assert (f + g) + h == f + (g + h)
    assert (f * g) * h == f * (g * h)
    assert f * (g + h) == f * g + f * h
    assert f - f == RING.zero()
    assert f * RING.one() == f


@settings(max_examples=100)
@given(polys, polys)
def test_product_matches_sympy(f, g):
    assert (f * g).coeffs == sympy_dict(to_sympy(f) * to_sympy(g))


@given(polys, st.integers(0, 4))
def test_power_is_repeated_product(f, n):
    expected = RING.one()
    for _ in range(n):
        expected = expected * f
    assert f**n == expected


def test_coefficients_reduced_mod_p():
    f = Polynomial(RING, {(1, 0, 0): P + 2, (0, 1, 0): -1, (0, 0, 1): P})
    assert f.coeffs == {(1, 0, 0): 2, (0, 1, 0): P - 1}


def test_leading_term_and_string():
    x, y, z = RING.gens()
    f = 3 * x * y - x**2 + z**2
    assert f.lm == (2, 0, 0)
    assert f.lc == P - 1
    assert str(f) == "-x^2 + 3*x*y + z^2"
    assert f.is_homogeneous() and f.degree() == 2
    assert not (f + x).is_homogeneous()


@settings(max_examples=50)
@given(polys, polys)
def test_divexact_inverts_multiplication(f, g):
    if g.is_zero():
        return
    assert (f * g).divexact(g) == f


def test_divexact_rejects_non_divisor():
    x, y, _ = RING.gens()
    with pytest.raises(ArithmeticError):
        (x**2 + y).divexact(x)


def test_compose_and_embed():
    x, y, z = RING.gens()
    f = x**2 - y * z
    big = PolyRing(("a", "b", "c", "d"))
    g = f.embed(big, [1, 2, 3])
    assert str(g) == "b^2 - c*d"
    a, b, c, d = big.gens()
    assert g.compose(RING, [x, x + y, z, z]) == (x + y) ** 2 - z**2


def test_random_form_is_dense_and_homogeneous():
    f = RING.random_form(3, random.Random(1))
    assert f.is_homogeneous() and f.degree() == 3
    assert len(f) >= 8
