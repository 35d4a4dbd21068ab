"""Hilbert series of monomial ideals and (dimension, degree) of Proj(R/I)."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial
from typing import Iterable, Sequence

from .arith import Monomial, mono_divides
from .groebner import Ideal


def _poly_mul(a: Sequence[int], b: Sequence[int]) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _poly_add(a: Sequence[int], b: Sequence[int]) -> list[int]:
    n = max(len(a), len(b))
    return [(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)]


def _trim(a: list) -> list:
    while len(a) > 1 and a[-1] == 0:
        a.pop()
    return a


def minimalize(gens: Iterable[Monomial]) -> tuple[Monomial, ...]:
    gens = sorted(set(gens), key=sum)
    out: list[Monomial] = []
    for g in gens:
        if not any(mono_divides(h, g) for h in out):
            out.append(g)
    return tuple(sorted(out))


@lru_cache(maxsize=65536)
def _numerator(gens: tuple[Monomial, ...]) -> tuple[int, ...]:
    # gens is minimal and sorted
    if not gens:
        return (1,)
    if any(not any(g) for g in gens):
        return (0,)
    nv = len(gens[0])
    # pairwise coprime: product of (1 - t^deg)
    counts = [0] * nv
    for g in gens:
        for i, e in enumerate(g):
            if e:
                counts[i] += 1
    pivot = max(range(nv), key=lambda i: counts[i])
    if counts[pivot] <= 1:
        out = [1]
        for g in gens:
            d = sum(g)
            out = _poly_mul(out, [1] + [0] * (d - 1) + [-1])
        return tuple(_trim(out))
    x = tuple(1 if i == pivot else 0 for i in range(nv))
    colon = minimalize(tuple(e - 1 if i == pivot and e else e for i, e in enumerate(g)) for g in gens)
    plus = minimalize([g for g in gens if not g[pivot]] + [x])
    # h(M) = h(M + (x)) + t·h(M : x)
    return tuple(_trim(_poly_add(_numerator(plus), [0] + list(_numerator(colon)))))


def hilbert_series_monomial(gens: Iterable[Monomial], nvars: int | None = None) -> list[int]:
    """Numerator h(t) of HS(R/M) = h(t)/(1-t)^nvars for a monomial ideal M.

    ``gens`` may be exponent tuples or an ``Ideal`` with monomial generators.
    """
    if isinstance(gens, Ideal):
        if not gens.is_monomial():
            raise ValueError("hilbert_series_monomial needs monomial generators")
        nvars = gens.ring.nvars
        gens = [g.lm for g in gens.gens]
    gens = list(gens)
    if nvars is None and gens:
        nvars = len(gens[0])
    return list(_numerator(minimalize(gens)))


def _binomial_poly(shift: int, k: int) -> list[Fraction]:
    """Coefficients (ascending in m) of binom(m + shift, k) as a polynomial in m."""
    out = [Fraction(1)]
    for i in range(k):
        out = [Fraction(0)] + out  # multiply by m
        a = shift - i
        for j in range(len(out) - 1):
            out[j] += a * out[j + 1]
    return [c / factorial(k) for c in out]


@dataclass(frozen=True)
class HilbertData:
    numerator: tuple[int, ...]
    hilbert_polynomial: tuple[Fraction, ...]  # ascending coefficients in m
    proj_dim: int
    proj_degree: int


def hilbert_data_from_numerator(h: Sequence[int], nvars: int) -> HilbertData:
    h = list(h)
    if not any(h):
        return HilbertData(tuple(h), (Fraction(0),), -1, 0)
    # divide out (1 - t) while h(1) == 0
    q = h[:]
    k = 0
    while sum(q) == 0:
        # synthetic division by (1 - t): q = h / (1 - t) means q_j = sum_{i<=j} h_i
        acc, out = 0, []
        for c in q[:-1]:
            acc += c
            out.append(acc)
        q = out
        k += 1
    krull = nvars - k
    if krull <= 0:
        return HilbertData(tuple(h), (Fraction(0),), -1, 0)
    hp = [Fraction(0)] * krull
    for j, c in enumerate(q):
        if c:
            for i, b in enumerate(_binomial_poly(krull - 1 - j, krull - 1)):
                hp[i] += c * b
    return HilbertData(tuple(h), tuple(hp), krull - 1, sum(q))


def hilbert_data(I: Ideal) -> HilbertData:
    if any(w != 1 for w in I.ring.grading):
        raise ValueError("Hilbert data needs the standard grading")
    lead = I.leading_monomials
    return hilbert_data_from_numerator(hilbert_series_monomial(lead, I.ring.nvars), I.ring.nvars)


def dim_degree(I: Ideal) -> tuple[int, int]:
    """(dim, degree) of Proj(R/I); (-1, 0) when it is empty."""
    hd = hilbert_data(I)
    return hd.proj_dim, hd.proj_degree


def series_coefficients(h: Sequence[int], nvars: int, upto: int) -> list[int]:
    """First ``upto + 1`` coefficients of h(t)/(1-t)^nvars."""
    coeffs = [0] * (upto + 1)
    for j, c in enumerate(h):
        if j > upto or not c:
            continue
        for v in range(j, upto + 1):
            # coefficient of t^(v-j) in 1/(1-t)^nvars
            s = v - j
            coeffs[v] += c * (comb(s + nvars - 1, nvars - 1) if nvars else int(s == 0))
    return coeffs

