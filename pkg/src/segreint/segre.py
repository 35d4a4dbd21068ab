"""Segre degrees, the Segre zeta function, and the Snapper-polynomial cross-check."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial
from typing import Sequence

import sympy

from .arith import PolyRing
from .cycles import CycleClass, vogel_to_segre
from .errors import NegativeNumerator, NotStabilized, PreconditionError
from .groebner import Ideal, graded_dim, ideal_power, saturate_by_ideal
from .vogel import projective_degrees, vogel_degrees


@dataclass(frozen=True)
class SegreResult:
    s: CycleClass
    source_degrees: tuple[int, ...]
    g: tuple[int, ...]
    nu: tuple[int, ...]
    section_degree: int
    seed: int
    trials: int
    modulus: int
    agreed: bool = True
    chain: tuple | None = field(default=None, compare=False)


def segre_degrees(I: Ideal, trials: int = 5, seed: int = 0, trace: bool = False) -> SegreResult:
    """Degrees of the pushforward to P^n of the Segre class of V(I)."""
    v = vogel_degrees(I, trials, seed, trace=trace)
    s = vogel_to_segre(v.nu, v.section_degree)
    return SegreResult(
        s,
        I.generator_degrees,
        v.g.g,
        v.nu.degs,
        v.section_degree,
        seed,
        trials,
        I.ring.modulus,
        v.g.agreed,
        v.chain,
    )


def _series_mul(a: Sequence[int], b: Sequence[int], order: int) -> list[int]:
    out = [0] * (order + 1)
    for i, x in enumerate(a[: order + 1]):
        if x:
            for j, y in enumerate(b[: order + 1 - i]):
                out[i + j] += x * y
    return out


def _inverse_linear(d: int, order: int) -> list[int]:
    """1/(1 + d t) up to t^order."""
    return [(-d) ** k for k in range(order + 1)]


def ci_segre_oracle(degrees: Sequence[int], n: int) -> CycleClass:
    """Segre pushforward of a complete intersection of the given degrees in P^n."""
    r = len(degrees)
    if r > n + 1:
        raise PreconditionError("more equations than n + 1")
    series = [0] * (n + 1)
    if r <= n:
        coeff = 1
        for d in degrees:
            coeff *= d
        series[r] = coeff
    for d in degrees:
        series = _series_mul(series, _inverse_linear(d, n), n)
    return CycleClass(n, tuple(series))


def _extension_names(names: tuple[str, ...], count: int) -> tuple[str, ...]:
    out = []
    k = len(names)
    while len(out) < count:
        cand = f"x{k}"
        while cand in names or cand in out:
            cand = "_" + cand
        out.append(cand)
        k += 1
    return tuple(out)


def extend_ideal(I: Ideal, N: int) -> Ideal:
    """The same generators read in the coordinate ring of P^N."""
    n = I.ring.nvars - 1
    if N < n:
        raise PreconditionError(f"cannot extend from P^{n} to P^{N}")
    if N == n:
        return I
    ring = I.ring
    big = PolyRing(ring.names + _extension_names(ring.names, N - n), ring.field, ring.order)
    return I.embed(big, list(range(ring.nvars)))


@dataclass(frozen=True)
class ZetaFunction:
    numerator: tuple[int, ...]
    denominator_degrees: tuple[int, ...]
    truncation_order: int
    stabilized: bool
    coefficients: tuple[int, ...] = ()  # a_0..a_N from P^N

    def series(self, order: int) -> list[int]:
        """Power-series coefficients a_0..a_order of P(t) / prod(1 + d_i t)."""
        out = list(self.numerator[: order + 1]) + [0] * max(0, order + 1 - len(self.numerator))
        for d in self.denominator_degrees:
            out = _series_mul(out, _inverse_linear(d, order), order)
        return out

    def numerator_str(self) -> str:
        parts = []
        for k, c in enumerate(self.numerator):
            if c:
                mono = "" if k == 0 else ("t" if k == 1 else f"t^{k}")
                parts.append(f"{c}*{mono}" if mono and c != 1 else (mono or str(c)))
        return " + ".join(parts) or "0"


def _numerator_from_series(a: Sequence[int], degrees: Sequence[int], N: int) -> tuple[int, ...]:
    denom = [1]
    for d in degrees:
        denom = _series_mul(denom, [1, d], N)
    P = _series_mul(list(a), denom, N)
    while len(P) > 1 and P[-1] == 0:
        P.pop()
    return tuple(P)


def zeta(I: Ideal, trials: int = 5, seed: int = 0, strict: bool = True) -> ZetaFunction:
    """Segre zeta function from Segre degrees in P^N, N = n + r, confirmed at N + 1."""
    n = I.ring.nvars - 1
    degrees = I.generator_degrees
    N = n + len(degrees)
    a_N = segre_degrees(extend_ideal(I, N), trials, seed).s.degs
    a_N1 = segre_degrees(extend_ideal(I, N + 1), trials, seed).s.degs
    P_N = _numerator_from_series(a_N, degrees, N)
    P_N1 = _numerator_from_series(a_N1, degrees, N + 1)
    stabilized = P_N == P_N1
    if not stabilized and strict:
        raise NotStabilized(f"zeta numerator changed from P^{N} to P^{N + 1}", candidates=(P_N, P_N1))
    if stabilized and any(c < 0 for c in P_N):
        raise NegativeNumerator(f"zeta numerator {list(P_N)} has a negative coefficient")
    return ZetaFunction(P_N, degrees, N, stabilized, tuple(a_N))


@dataclass(frozen=True)
class SnapperFit:
    grid: dict                   # (twist m, power n) -> h0 dimension
    coefficients: dict           # (i, j) -> coefficient of m^i n^j
    top: tuple[Fraction, ...]    # c_i = coefficient of m^(dim-i) n^i
    implied_degrees: tuple[Fraction, ...]  # i!(dim-i)! c_i = O(d)-degree of beta^i
    section_degree: int

    def matches(self, g: Sequence[int]) -> bool:
        dim = len(self.top) - 1
        d = self.section_degree
        return all(self.implied_degrees[i] == d ** (dim - i) * g[i] for i in range(dim + 1))


def _h0_grid(I: Ideal, twists, powers, rng) -> dict:
    d = max(I.generator_degrees)
    m_irr = Ideal.irrelevant(I.ring)
    grid = {}
    for b in powers:
        sat = saturate_by_ideal(ideal_power(I, b), m_irr, method="generic", rng=rng)
        for a in twists:
            grid[(a, b)] = graded_dim(sat, d * (a + b))
    return grid


def _fit(grid: dict, dim: int):
    exps = [(i, j) for i in range(dim + 1) for j in range(dim + 1 - i)]
    pts = sorted(grid)
    A = sympy.Matrix([[sympy.Integer(a) ** i * sympy.Integer(b) ** j for i, j in exps] for a, b in pts])
    y = sympy.Matrix([grid[p] for p in pts])
    try:
        sol, params = A.gauss_jordan_solve(y)
    except ValueError:
        return None
    if params.shape[0]:
        return None
    return {e: Fraction(int(c.p), int(c.q)) for e, c in zip(exps, sol)}


def snapper_fit(I: Ideal, m_range=None, n_range=None, seed: int = 0) -> SnapperFit:
    """Fit h0(I^n (d(m+n))) on a grid and read off the top-degree coefficients."""
    dim = I.ring.nvars - 1
    if I.is_zero() or not I.is_homogeneous():
        raise PreconditionError("snapper_fit needs a nonzero homogeneous ideal")
    size = dim + 2
    twists = list(m_range) if m_range is not None else list(range(1, 1 + size))
    powers = list(n_range) if n_range is not None else list(range(1, 1 + size))
    if len(twists) < size or len(powers) < size:
        raise PreconditionError(f"grid needs at least {size} values per axis")
    rng = random.Random(f"snapper:{seed}")
    for _ in range(2):
        grid = _h0_grid(I, twists, powers, rng)
        coeffs = _fit(grid, dim)
        if coeffs is not None:
            break
        # twists too small: move the grid out
        shift_m, shift_n = max(twists), max(powers)
        twists = [a + shift_m for a in twists]
        powers = [b + shift_n for b in powers]
    else:
        raise NotStabilized("h0 values on the grid are not polynomial")
    top = tuple(coeffs[(dim - i, i)] for i in range(dim + 1))
    implied = tuple(factorial(i) * factorial(dim - i) * c for i, c in enumerate(top))
    return SnapperFit(grid, coeffs, top, implied, max(I.generator_degrees))


__all__ = [
    "SegreResult",
    "SnapperFit",
    "ZetaFunction",
    "ci_segre_oracle",
    "extend_ideal",
    "projective_degrees",
    "segre_degrees",
    "snapper_fit",
    "zeta",
]
