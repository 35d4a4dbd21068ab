"""Integral dependence of ideal pairs I ⊆ J.

Rees certificates (I·J^n = J^(n+1)) prove integrality deterministically.
Differing Segre zeta functions refute it. For monomial ideals the Newton
polyhedron provides independent ground truth.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Sequence

from scipy.optimize import linprog

from .arith import Monomial, mono_divides, monomials_of_degree
from .errors import NotStabilized, PreconditionError
from .groebner import Ideal, ideal_equal, ideal_product, is_subideal
from .segre import ZetaFunction, segre_degrees, zeta

_MAX_DENOMINATOR = 10**6


class Status(str, Enum):
    INTEGRAL = "Integral"
    NOT_INTEGRAL = "NotIntegral"
    INCONCLUSIVE = "Inconclusive"


@dataclass(frozen=True)
class IntegralConfig:
    trials: int = 5
    seed: int = 0
    n_max: int = 6


@dataclass(frozen=True)
class Verdict:
    status: Status
    certificate: int | None = None          # Rees exponent n
    by_zeta: bool = False                   # Integral only through zeta equality
    witness: dict | None = None             # first differing zeta coefficient
    zetas: tuple[ZetaFunction, ZetaFunction] | None = field(default=None, compare=False)
    reason: str = ""
    parameters: dict = field(default_factory=dict)


def _check_pair(I: Ideal, J: Ideal) -> None:
    I.ring.check_same(J.ring)
    for K in (I, J):
        if K.is_zero() or not K.is_homogeneous() or K.is_unit():
            raise PreconditionError("ideals must be homogeneous, nonzero and proper")
    if not is_subideal(I, J):
        raise PreconditionError("I must be contained in J")


def rees_certificate(I: Ideal, J: Ideal, n_max: int = 6) -> int | None:
    """Smallest n <= n_max with I·J^n = J^(n+1), or None."""
    I.ring.check_same(J.ring)
    if not is_subideal(I, J):
        raise PreconditionError("I must be contained in J")
    Jn = J
    for n in range(1, n_max + 1):
        Jn1 = ideal_product(Jn, J)
        if ideal_equal(ideal_product(I, Jn), Jn1):
            return n
        Jn = Jn1
    return None


def zeta_equal(I: Ideal, J: Ideal, trials: int = 5, seed: int = 0):
    """Compare zeta functions as rational functions.

    Returns (equal, witness, (zeta_I, zeta_J)); the witness names the first
    power-series coefficient where they differ.
    """
    zI = zeta(I, trials, seed)
    zJ = zeta(J, trials, seed)
    lhs = _mul_linear_factors(zI.numerator, zJ.denominator_degrees)
    rhs = _mul_linear_factors(zJ.numerator, zI.denominator_degrees)
    if lhs == rhs:
        return True, None, (zI, zJ)
    order = max(len(lhs), len(rhs)) + len(zI.denominator_degrees) + len(zJ.denominator_degrees)
    sI, sJ = zI.series(order), zJ.series(order)
    k = next(i for i in range(order + 1) if sI[i] != sJ[i])
    return False, {"power": k, "I": sI[k], "J": sJ[k]}, (zI, zJ)


def _mul_linear_factors(num: Sequence[int], degrees: Sequence[int]) -> tuple[int, ...]:
    out = list(num)
    for d in degrees:
        out = [a + d * b for a, b in zip(out + [0], [0] + out)]
    while len(out) > 1 and out[-1] == 0:
        out.pop()
    return tuple(out)


def segre_equal_fixed_ambient(I: Ideal, J: Ideal, trials: int = 5, seed: int = 0) -> bool:
    """Sheaf-level criterion: equal Segre degrees on the given P^n.

    This compares the subschemes V(I) and V(J), so it cannot see the
    difference between an ideal and its saturation; use ``zeta_equal`` for
    ideal-level integral dependence.
    """
    if not is_subideal(I, J):
        raise PreconditionError("I must be contained in J")
    return segre_degrees(I, trials, seed).s == segre_degrees(J, trials, seed).s


# -- Newton polyhedron oracle ------------------------------------------------


def _vertex(c, A_ub, b_ub) -> list[Fraction]:
    """Optimal vertex of min c.x, A_ub x <= b_ub, x >= 0, as exact fractions.

    The dual simplex returns a basic solution, whose coordinates are ratios
    of small integer determinants, so rounding to a nearby fraction recovers
    them. Callers verify the result exactly.
    """
    res = linprog(c, A_ub=A_ub, b_ub=b_ub, bounds=(0, None), method="highs-ds")
    if res.status != 0:
        raise ArithmeticError(f"LP solver failed: {res.message}")
    return [Fraction(float(x)).limit_denominator(_MAX_DENOMINATOR) for x in res.x]


def newton_certificate(v: Sequence[int], exponents: Sequence[Monomial]) -> tuple[Fraction, ...] | None:
    """Convex weights lambda with sum(lambda_i e_i) <= v componentwise, or None.

    x^v is integral over the monomial ideal exactly when such weights exist.
    Both outcomes are checked exactly: a feasible lambda directly, and
    infeasibility through a dual vector y >= 0 with y.e_i >= 1 for all i and
    y.v < 1.
    """
    exponents = [tuple(e) for e in exponents]
    v = tuple(v)
    for k, e in enumerate(exponents):
        if mono_divides(e, v):
            return tuple(Fraction(int(i == k)) for i in range(len(exponents)))
    nv, r = len(v), len(exponents)
    # max sum(lambda) s.t. sum(lambda_i e_i) <= v, lambda >= 0
    lam = _vertex([-1] * r, [[e[i] for e in exponents] for i in range(nv)], list(v))
    feasible = all(x >= 0 for x in lam) and all(
        sum(l * e[i] for l, e in zip(lam, exponents)) <= v[i] for i in range(nv)
    )
    if feasible and sum(lam) >= 1:
        total = sum(lam)
        return tuple(x / total for x in lam)
    # dual: min y.v s.t. y.e_i >= 1, y >= 0
    y = _vertex(list(v), [[-x for x in e] for e in exponents], [-1] * r)
    dual_ok = all(x >= 0 for x in y) and all(sum(a * b for a, b in zip(y, e)) >= 1 for e in exponents)
    if dual_ok and sum(a * b for a, b in zip(y, v)) < 1:
        return None
    raise ArithmeticError(f"LP solver returned an unverifiable answer for {v}")


def monomial_closure_oracle(I: Ideal):
    """Integral closure of a monomial ideal via its Newton polyhedron.

    Returns (closure ideal, {exponent: lambda certificate}) for the minimal
    generators of the closure. Minimal generators have degree below
    max generator degree + number of variables.
    """
    if not I.is_monomial():
        raise PreconditionError("monomial_closure_oracle needs monomial generators")
    ring = I.ring
    exps = [g.lm for g in I.gens]
    bound = max(sum(e) for e in exps) + ring.nvars - 1
    members: dict[Monomial, tuple[Fraction, ...]] = {}
    for deg in range(bound + 1):
        for v in monomials_of_degree(ring.nvars, deg):
            if any(mono_divides(m, v) for m in members):
                continue
            lam = newton_certificate(v, exps)
            if lam is not None:
                members[v] = lam
    closure = Ideal([ring.monomial(m) for m in members], ring)
    return closure, members


def in_monomial_closure(J: Ideal, I: Ideal) -> bool:
    """Every generator of the monomial ideal J lies in the closure of I."""
    exps = [g.lm for g in I.gens]
    return all(newton_certificate(g.lm, exps) is not None for g in J.gens)


# -- decision ------------------------------------------------------------------


def decide_integral(I: Ideal, J: Ideal, config: IntegralConfig | None = None) -> Verdict:
    config = config or IntegralConfig()
    _check_pair(I, J)
    params = {
        "p": I.ring.modulus,
        "seed": config.seed,
        "trials": config.trials,
        "n_max": config.n_max,
    }
    n = rees_certificate(I, J, config.n_max)
    if n is not None:
        return Verdict(Status.INTEGRAL, certificate=n, reason="rees certificate", parameters=params)
    try:
        equal, witness, zetas = zeta_equal(I, J, config.trials, config.seed)
    except NotStabilized as exc:
        return Verdict(Status.INCONCLUSIVE, reason=f"zeta not stabilized: {exc}", parameters=params)
    if not equal:
        return Verdict(
            Status.NOT_INTEGRAL, witness=witness, zetas=zetas, reason="zeta functions differ", parameters=params
        )
    return Verdict(
        Status.INTEGRAL,
        by_zeta=True,
        zetas=zetas,
        reason=f"zeta functions agree; no Rees certificate up to n = {config.n_max} (randomized)",
        parameters=params,
    )
