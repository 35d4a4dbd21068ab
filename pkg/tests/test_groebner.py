import random

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from segreint.arith import PolyRing, Polynomial, PrimeField, mono_lcm, monomials_of_degree
from segreint.errors import PreconditionError
from segreint.groebner import (
    Ideal,
    buchberger,
    eliminate,
    generic_element,
    graded_dim,
    ideal_power,
    ideal_product,
    ideal_quotient,
    intersect,
    is_subideal,
    saturate_by_ideal,
    saturate_by_poly,
)

from conftest import ideal, make_ring

P = 32003


def sympy_gb(I: Ideal, order="grevlex"):
    gens = sympy.symbols(I.ring.names)
    polys = [sympy.Poly.from_dict(g.coeffs, gens, modulus=I.ring.modulus) for g in I.gens]
    G = sympy.groebner([q.as_expr() for q in polys], *gens, order=order, modulus=I.ring.modulus)
    out = set()
    for g in G.exprs:
        d = sympy.Poly(g, *gens, modulus=I.ring.modulus).as_dict()
        out.add(Polynomial(I.ring, {m: int(c) for m, c in d.items()}).monic())
    return out


def rank_mod_p(rows, p=P):
    """Rank of an integer matrix over GF(p) by plain elimination."""
    rows = [[x % p for x in r] for r in rows]
    rank, col = 0, 0
    ncols = len(rows[0]) if rows else 0
    while rank < len(rows) and col < ncols:
        pivot = next((i for i in range(rank, len(rows)) if rows[i][col]), None)
        if pivot is None:
            col += 1
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        inv = pow(rows[rank][col], -1, p)
        rows[rank] = [x * inv % p for x in rows[rank]]
        for i in range(len(rows)):
            if i != rank and rows[i][col]:
                f = rows[i][col]
                rows[i] = [(a - f * b) % p for a, b in zip(rows[i], rows[rank])]
        rank += 1
        col += 1
    return rank


def graded_dim_oracle(I: Ideal, v: int) -> int:
    """dim I_v as the rank of all (monomial * generator) products of degree v."""
    n = I.ring.nvars
    basis = list(monomials_of_degree(n, v))
    index = {m: i for i, m in enumerate(basis)}
    rows = []
    for g in I.gens:
        for t in monomials_of_degree(n, v - g.degree()) if v >= g.degree() else []:
            row = [0] * len(basis)
            for m, c in g.mul_term(t).coeffs.items():
                row[index[m]] = c
            rows.append(row)
    return rank_mod_p(rows) if rows else 0


def random_homogeneous_ideal(seed, ring, ngens=(2, 3), degs=(1, 3), terms=4):
    rng = random.Random(seed)
    gens = []
    for _ in range(rng.randint(*ngens)):
        d = rng.randint(*degs)
        mons = list(monomials_of_degree(ring.nvars, d))
        chosen = rng.sample(mons, min(terms, len(mons)))
        gens.append(Polynomial(ring, {m: rng.randrange(1, P) for m in chosen}))
    return Ideal(gens, ring)


# -- Groebner bases ---------------------------------------------------------------


def test_twisted_cubic(R4):
    I = ideal("x*z - y^2, y*w - z^2, x*w - y*z", R4)
    assert set(I.gb) == sympy_gb(I)
    assert len(I.gb) == 3


@pytest.mark.parametrize("seed", range(12))
def test_gb_matches_sympy_on_random_ideals(seed, R3):
    I = random_homogeneous_ideal(seed, R3)
    assert set(I.gb) == sympy_gb(I)


@pytest.mark.parametrize("seed", range(4))
def test_gb_matches_sympy_inhomogeneous(seed, R3):
    rng = random.Random(100 + seed)
    gens = [Polynomial(R3, {tuple(rng.randrange(3) for _ in range(3)): rng.randrange(1, P) for _ in range(3)}) for _ in range(3)]
    I = Ideal(gens, R3)
    assert set(I.gb) == sympy_gb(I)


def test_unit_ideal_short_circuits(R3):
    I = ideal("x - 1, x", R3)
    assert I.is_unit()
    assert [g.coeffs for g in I.gb] == [{(0, 0, 0): 1}]


def test_raw_engine_returns_sorted_monic_basis(R3):
    raw = buchberger([{(2, 0, 0): 3, (0, 1, 1): 1}, {(0, 2, 0): 5}], R3)
    for f in raw:
        lm = min(f, key=R3.sort_key)
        assert f[lm] == 1
    lms = [min(f, key=R3.sort_key) for f in raw]
    assert lms == sorted(lms, key=R3.sort_key)


def test_membership_and_equality(R3):
    I = ideal("x^2, y^2", R3)
    x, y, z = R3.gens()
    assert x**2 * z + 5 * y**3 in I
    assert x * y not in I
    assert I == ideal("x^2 + y^2, x^2 - y^2", R3)
    assert I != ideal("x^2, x*y, y^2", R3)
    assert I <= ideal("x^2, x*y, y^2", R3)
    assert hash(I) == hash(ideal("y^2, x^2 + 7*y^2", R3))


def test_ideal_power_and_product(R3):
    m = ideal("x, y", R3)
    assert ideal_power(m, 2) == ideal("x^2, x*y, y^2", R3)
    assert ideal_product(m, ideal("z", R3)) == ideal("x*z, y*z", R3)
    with pytest.raises(PreconditionError):
        ideal_power(m, 0)


# -- elimination, intersection, quotient ------------------------------------------


def test_eliminate_cuspidal_cubic():
    R = make_ring("t x y")
    I = ideal("x - t^2, y - t^3", R)
    E = eliminate(I, ["x", "y"])
    assert E == ideal("x^3 - y^2", R)


def test_eliminate_matches_sympy_lex(R3):
    I = ideal("x^2 - y*z + z^2, x*y - z^2 + y^2", R3)
    E = eliminate(I, ["y", "z"])
    lex = [g for g in sympy_gb(I, order="lex") if all(m[0] == 0 for m in g.coeffs)]
    assert E == Ideal(lex, R3)


@pytest.mark.parametrize(
    "a,b",
    [("x^2*y, x*z^3", "x*y^2, z^2"), ("x, y", "y, z"), ("x^3, y^2*z", "x*y, z^2")],
)
def test_intersect_monomial_oracle(a, b, R3):
    I, J = ideal(a, R3), ideal(b, R3)
    lcms = [R3.monomial(mono_lcm(f.lm, g.lm)) for f in I.gens for g in J.gens]
    assert intersect(I, J) == Ideal(lcms, R3)


@pytest.mark.parametrize("seed", range(5))
def test_intersect_properties(seed, R3):
    I = random_homogeneous_ideal(seed, R3, ngens=(1, 2), degs=(1, 2))
    J = random_homogeneous_ideal(seed + 50, R3, ngens=(1, 2), degs=(1, 2))
    K = intersect(I, J)
    assert is_subideal(K, I) and is_subideal(K, J)
    assert is_subideal(ideal_product(I, J), K)


def test_quotient(R3):
    x, y, z = R3.gens()
    assert ideal_quotient(ideal("x^2, y^2", R3), x * y) == ideal("x, y", R3)
    assert ideal_quotient(ideal("x^3*y, z^2", R3), x * z) == ideal("x^2*y, z", R3)
    with pytest.raises(PreconditionError):
        ideal_quotient(ideal("x", R3), R3.zero())


# -- saturation ---------------------------------------------------------------------


def test_saturation_small_cases(R3):
    x, y, z = R3.gens()
    I = ideal("x^2*y, x*y^2", R3)
    assert saturate_by_poly(I, y) == ideal("x", R3)
    assert saturate_by_poly(I, y, method="colon") == ideal("x", R3)
    J = ideal("x*z, y*z", R3)
    m = ideal("x, y", R3)
    assert saturate_by_ideal(J, m) == ideal("z", R3)
    assert saturate_by_ideal(J, m, method="generic", rng=random.Random(1)) == ideal("z", R3)


def test_saturation_inhomogeneous_uses_rabinowitsch(R3):
    x, y, z = R3.gens()
    I = ideal("x*(y - 1), x^2", R3)
    S = saturate_by_poly(I, y - R3.one())
    assert S == ideal("x", R3)
    assert S == saturate_by_poly(I, y - R3.one(), method="colon")


@settings(max_examples=15, deadline=None)
@given(st.integers(0, 10**6))
def test_saturation_methods_agree_and_are_idempotent(seed):
    R = make_ring("x y z")
    I = random_homogeneous_ideal(seed, R, ngens=(2, 3), degs=(1, 2), terms=3)
    f = random_homogeneous_ideal(seed + 1, R, ngens=(1, 1), degs=(1, 1), terms=2).gens[0]
    S = saturate_by_poly(I, f)
    assert S == saturate_by_poly(I, f, method="colon")
    assert saturate_by_poly(S, f) == S
    assert is_subideal(I, S)
    # every generator of the saturation lands in I after multiplying by some f^k
    for g in S.gb:
        assert any((g * f**k) in I for k in range(0, 8))


def test_generic_element_lies_in_ideal(R3):
    I = ideal("x^2, y^3", R3)
    f = generic_element(I, random.Random(3))
    assert f.is_homogeneous() and f.degree() == 3 and f in I


# -- graded pieces ----------------------------------------------------------------


@pytest.mark.parametrize("seed", range(6))
def test_graded_dim_against_linear_algebra(seed, R3):
    I = random_homogeneous_ideal(seed, R3, degs=(1, 3))
    for v in range(0, 6):
        assert graded_dim(I, v) == graded_dim_oracle(I, v)


def test_saturate_requires_nonzero(R3):
    with pytest.raises(PreconditionError):
        saturate_by_poly(ideal("x", R3), R3.zero())
    with pytest.raises(PreconditionError):
        graded_dim(ideal("x", R3), -1)


def test_other_characteristic():
    R = PolyRing(("x", "y"), PrimeField(7))
    I = ideal("x^2 + 3*y^2, x*y", R)
    assert set(I.gb) == sympy_gb(I)
