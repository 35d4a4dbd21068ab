"""Intersection algorithm over random scalars: projective degrees and Vogel degrees.

Generic combinations of the generators cut the ambient P^N one at a time.
After each cut, the components supported on V(I) are split off by saturating
with respect to I. The degrees of the residuals are the projective degrees g_i,
and the degree lost at step i is the Vogel degree nu_i = d*g_{i-1} - g_i.
"""

from __future__ import annotations

import logging
import random
from collections import Counter
from dataclasses import dataclass, field
from typing import NamedTuple

from .arith import Polynomial
from .cycles import CycleClass, telescoping_holds
from .errors import GenericityFailure, PreconditionError
from .groebner import Ideal, generic_element, saturate_by_poly
from .hilbert import dim_degree

log = logging.getLogger(__name__)

MAX_RETRIES = 3


@dataclass(frozen=True)
class GenericSections:
    sections: tuple[Polynomial, ...]
    source: Ideal
    degree: int
    # multipliers[i][j] is the form multiplying generator j in section i;
    # for equigenerated ideals these are the scalars u_ij
    multipliers: tuple[tuple[Polynomial, ...], ...]
    seed: str

    @property
    def scalar_matrix(self) -> list[list[int]] | None:
        if any(not h.is_constant() for row in self.multipliers for h in row if not h.is_zero()):
            return None
        return [[h.lc if not h.is_zero() else 0 for h in row] for row in self.multipliers]


@dataclass(frozen=True)
class ProjectiveDegrees:
    g: tuple[int, ...]
    section_degree: int
    trials: int
    seed: int
    agreed: bool = True
    runs: tuple[tuple[int, ...], ...] = ()
    cuts: tuple[tuple[int, ...], ...] = ()  # per run, see ChainRun

    def __getitem__(self, i: int) -> int:
        return self.g[i]


@dataclass(frozen=True)
class VogelData:
    nu: CycleClass
    g: ProjectiveDegrees
    section_degree: int
    chain: tuple[Ideal, ...] | None = field(default=None, compare=False)


def _check_input(I: Ideal) -> None:
    if I.is_zero():
        raise PreconditionError("ideal is zero")
    if not I.is_homogeneous() or any(w != 1 for w in I.ring.grading):
        raise PreconditionError("ideal must be homogeneous in the standard grading")
    if any(g.is_constant() for g in I.gens) or I.is_unit():
        raise PreconditionError("ideal is the unit ideal")


def make_sections(I: Ideal, seed: int | str, count: int | None = None) -> GenericSections:
    """Random elements s_i = sum_j h_ij f_j of I in the top generator degree d.

    Each h_ij is a fresh random form of degree d - deg f_j, so every s_i is a
    generic element of the degree-d piece of I.
    """
    _check_input(I)
    rng = random.Random(f"sections:{seed}")
    ring = I.ring
    degs = I.generator_degrees
    d = max(degs)
    if count is None:
        count = ring.nvars if len(set(degs)) > 1 else min(ring.nvars, len(I.gens))
    sections, multipliers = [], []
    for _ in range(count):
        row = tuple(ring.random_form(d - dj, rng) for dj in degs)
        s = ring.zero()
        for h, f in zip(row, I.gens):
            s = s + h * f
        sections.append(s)
        multipliers.append(row)
    return GenericSections(tuple(sections), I, d, tuple(multipliers), str(seed))


class ChainRun(NamedTuple):
    """One pass of the intersection algorithm.

    ``cuts[i]`` is the degree of B_(i-1) + (s_i), measured from its own
    Hilbert polynomial; Bezout forces it to equal d * g_(i-1), and
    nu_i = cuts[i] - g[i] is the part of the cut supported on V(I).
    """

    g: tuple[int, ...]
    cuts: tuple[int, ...]
    chain: tuple[Ideal, ...] | None


def residual_chain(sections: GenericSections, trace: bool = False) -> ChainRun:
    """Projective degrees g_0..g_N from one run of the intersection algorithm.

    Raises GenericityFailure when a residual has larger than expected
    dimension or a cut violates Bezout.
    """
    I = sections.source
    ring = I.ring
    N = ring.nvars - 1
    d = sections.degree
    rng = random.Random(f"saturate:{sections.seed}")
    g = [0] * (N + 1)
    cuts = [0] * (N + 1)
    g[0] = 1
    B = Ideal([], ring)
    chain = [B] if trace else None
    for i in range(1, N + 2):
        if i > len(sections.sections):
            raise GenericityFailure(f"residual still nonempty after all {i - 1} sections")
        C = Ideal(B.gb + (sections.sections[i - 1],), ring)
        if i <= N:
            cdim, cdeg = dim_degree(C)
            if cdim > N - i:
                raise GenericityFailure(f"section {i} contains a component of the residual")
            cuts[i] = cdeg if cdim == N - i else 0
            if cuts[i] != d * g[i - 1]:
                raise GenericityFailure(f"cut {i} has degree {cuts[i]}, expected {d * g[i - 1]}")
        f = generic_element(I, rng)
        if f.is_zero():
            raise GenericityFailure("random element of the ideal vanished")
        B = saturate_by_poly(C, f)
        if trace:
            chain.append(B)
        if B.is_unit():
            break
        dim, deg = dim_degree(B)
        expected = N - i
        if dim > expected:
            raise GenericityFailure(f"residual at step {i} has dimension {dim} > {expected}")
        if dim < expected:
            break
        g[i] = deg
    return ChainRun(tuple(g), tuple(cuts), tuple(chain) if trace else None)


def _trial(I: Ideal, seed: int, k: int, trace: bool):
    last = None
    for attempt in range(MAX_RETRIES + 1):
        sub = f"{seed}:{k}" if attempt == 0 else f"{seed}:{k}:retry{attempt}"
        try:
            return residual_chain(make_sections(I, sub), trace)
        except GenericityFailure as exc:
            log.info("trial %s rejected: %s", sub, exc)
            last = exc
    raise GenericityFailure(f"trial {k} failed {MAX_RETRIES + 1} times: {last}")


def _entrywise_max(vectors):
    return tuple(max(col) for col in zip(*vectors))


def projective_degrees(I: Ideal, trials: int = 5, seed: int = 0, trace: bool = False):
    """Consensus projective degrees over ``trials`` independent random runs.

    Non-generic scalars can only lose residual degree, so the entrywise maximum
    is taken. If no two runs reach the maximum, the trial count is doubled and
    the maximum must not move.
    """
    _check_input(I)
    if trials < 1:
        raise PreconditionError("trials must be positive")
    d = max(I.generator_degrees)
    results = [_trial(I, seed, k, trace and k == 0) for k in range(trials)]
    chain = results[0].chain
    runs = [r.g for r in results]
    best = _entrywise_max(runs)
    agreed = len(set(runs)) == 1
    if not agreed and Counter(runs)[best] < 2:
        extra = [_trial(I, seed, k, False) for k in range(trials, 2 * trials)]
        if _entrywise_max(runs + [r.g for r in extra]) != best:
            found = sorted(set(runs + [r.g for r in extra]))
            raise GenericityFailure(f"projective degrees unstable across seeds: {found}")
        results += extra
        runs += [r.g for r in extra]
    pd = ProjectiveDegrees(best, d, trials, seed, agreed, tuple(runs), tuple(r.cuts for r in results))
    return (pd, chain) if trace else pd


def vogel_degrees(I: Ideal, trials: int = 5, seed: int = 0, trace: bool = False) -> VogelData:
    pd, chain = projective_degrees(I, trials, seed, trace=True)
    d = pd.section_degree
    g = pd.g
    N = len(g) - 1
    # V(I) is a proper subset of P^N for nonzero I, so no component of P^N lies in it
    nu = [0] + [d * g[i - 1] - g[i] for i in range(1, N + 1)]
    if any(x < 0 for x in nu):
        raise GenericityFailure(f"negative Vogel degree in {nu} (g = {list(g)})")
    if not telescoping_holds(g, nu, d):
        raise AssertionError("degree bookkeeping violated")
    return VogelData(CycleClass(N, tuple(nu)), pd, d, chain if trace else None)
