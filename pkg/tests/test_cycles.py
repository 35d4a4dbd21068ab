import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from segreint.cycles import (
    CycleClass,
    divisor_segre_series,
    scale_degree,
    segre_to_vogel,
    telescoping_holds,
    vogel_to_segre,
)

vectors = st.integers(0, 8).flatmap(lambda n: st.lists(st.integers(-50, 50), min_size=n + 1, max_size=n + 1))
degrees = st.integers(1, 5)


def series_oracle(nu, d):
    """s(t) = nu_0 + sum_j nu_j (t / (1 + d t))^j, expanded with sympy."""
    t = sympy.Symbol("t")
    n = len(nu) - 1
    expr = nu[0] + sum(nu[j] * (t / (1 + d * t)) ** j for j in range(1, n + 1))
    ser = sympy.series(expr, t, 0, n + 1).removeO()
    return [int(ser.coeff(t, i)) for i in range(n + 1)]


@given(vectors, degrees)
def test_round_trip(v, d):
    c = CycleClass.of(v)
    assert segre_to_vogel(vogel_to_segre(c, d), d) == c
    assert vogel_to_segre(segre_to_vogel(c, d), d) == c


@pytest.mark.parametrize("nu,d", [([0, 0, 4], 2), ([0, 2, 0], 2), ([1, 3, -2, 5], 3), ([0, 0, 0, 1, 7, 2], 4)])
def test_transform_matches_generating_function(nu, d):
    assert vogel_to_segre(CycleClass.of(nu), d).to_list() == series_oracle(nu, d)


def test_hypersurface_values():
    # a conic: nu = (0, 2, 0) gives s = 2t/(1+2t) truncated
    assert vogel_to_segre(CycleClass.of([0, 2, 0]), 2).to_list() == [0, 2, -4]


def test_divisor_series():
    assert divisor_segre_series(1, 3) == [1, -1, 1]
    k = sympy.Symbol("k")
    for kv in range(2, 6):
        assert divisor_segre_series(kv, 3) == [kv, -(kv**2), kv**3]
    # symbolic check: kE/(1+kE) = kE - k^2 E^2 + k^3 E^3 + ...
    E = sympy.Symbol("E")
    ser = sympy.series(k * E / (1 + k * E), E, 0, 4).removeO()
    assert [sympy.expand(ser.coeff(E, i)) for i in (1, 2, 3)] == [k, -(k**2), k**3]


def test_divisor_series_rejects_zero_order():
    with pytest.raises(ValueError):
        divisor_segre_series(2, 0)


def test_scale_degree():
    c = CycleClass.of([1, 2, 3])
    assert scale_degree(c, 2).to_list() == [4, 4, 3]
    with pytest.raises(ValueError):
        scale_degree(c, 0)


@given(st.lists(st.integers(0, 30), min_size=1, max_size=6), degrees)
def test_telescoping_holds_for_consistent_data(tail, d):
    g = [1] + tail
    nu = [0] + [d * g[i - 1] - g[i] for i in range(1, len(g))]
    assert telescoping_holds(g, nu, d)
    nu[-1] += 1
    assert not telescoping_holds(g, nu, d)


def test_cycle_class_validation():
    with pytest.raises(ValueError):
        CycleClass(2, (1, 2))
    a = CycleClass.of([1, 2])
    assert (a + a).to_list() == [2, 4]
    assert a.scaled(3)[1] == 6
    with pytest.raises(ValueError):
        a + CycleClass.of([1, 2, 3])


def test_transform_rejects_bad_degree():
    with pytest.raises(ValueError):
        vogel_to_segre(CycleClass.of([0, 1]), 0)
