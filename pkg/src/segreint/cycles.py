"""Degree vectors of cycle classes pushed forward to P^n.

A ``CycleClass`` stores ``degs[i]`` = O(1)-degree of the codimension-i part.
Capping with c1(O(d)) multiplies a degree by d, which is all the
Segre <-> Vogel transforms below need.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .arith import binomial_conv


@dataclass(frozen=True)
class CycleClass:
    ambient_dim: int
    degs: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "degs", tuple(int(x) for x in self.degs))
        if len(self.degs) != self.ambient_dim + 1:
            raise ValueError(f"expected {self.ambient_dim + 1} degrees, got {len(self.degs)}")

    @classmethod
    def of(cls, degs: Sequence[int]) -> "CycleClass":
        return cls(len(degs) - 1, tuple(degs))

    def __getitem__(self, i: int) -> int:
        return self.degs[i]

    def __iter__(self):
        return iter(self.degs)

    def __add__(self, other: "CycleClass") -> "CycleClass":
        if other.ambient_dim != self.ambient_dim:
            raise ValueError("ambient dimension mismatch")
        return CycleClass(self.ambient_dim, tuple(a + b for a, b in zip(self.degs, other.degs)))

    def scaled(self, k: int) -> "CycleClass":
        return CycleClass(self.ambient_dim, tuple(k * a for a in self.degs))

    def to_list(self) -> list[int]:
        return list(self.degs)


def vogel_to_segre(nu: CycleClass, d: int) -> CycleClass:
    """s_i = sum_j binom(i-1, j-1) (-1)^(i-j) d^(i-j) nu_j."""
    if d < 1:
        raise ValueError("section degree must be positive")
    out = []
    for i in range(nu.ambient_dim + 1):
        out.append(sum(binomial_conv(i - 1, j - 1) * (-d) ** (i - j) * nu[j] for j in range(i + 1)))
    return CycleClass(nu.ambient_dim, tuple(out))


def segre_to_vogel(s: CycleClass, d: int) -> CycleClass:
    """nu_i = sum_j binom(i-1, j-1) d^(i-j) s_j."""
    if d < 1:
        raise ValueError("section degree must be positive")
    out = []
    for i in range(s.ambient_dim + 1):
        out.append(sum(binomial_conv(i - 1, j - 1) * d ** (i - j) * s[j] for j in range(i + 1)))
    return CycleClass(s.ambient_dim, tuple(out))


def scale_degree(c: CycleClass, p: int) -> CycleClass:
    """O(p)-degrees from O(1)-degrees: the codim-i entry has dimension n-i."""
    if p < 1:
        raise ValueError("p must be positive")
    n = c.ambient_dim
    return CycleClass(n, tuple(a * p ** (n - i) for i, a in enumerate(c.degs)))


def divisor_segre_series(k: int, N: int) -> list[int]:
    """Coefficients of E, E^2, ..., E^N in kE / (1 + kE)."""
    if N < 1:
        raise ValueError("truncation order must be at least 1")
    return [(-1) ** (i - 1) * k**i for i in range(1, N + 1)]


def telescoping_holds(g: Sequence[int], nu: Sequence[int], d: int) -> bool:
    """Degree bookkeeping of the intersection algorithm, checked in O(d)-degrees.

    In O(1)-degrees: nu_0 + g_0 = 1 (= deg P^n) and d*g_{i-1} = nu_i + g_i.
    """
    n = len(g) - 1
    G = scale_degree(CycleClass(n, tuple(g)), d)
    V = scale_degree(CycleClass(n, tuple(nu)), d)
    if V[0] + G[0] != d**n:
        return False
    return all(G[i - 1] == V[i] + G[i] for i in range(1, n + 1))
