"""Buchberger engine and ideal operations.

The engine works on raw ``dict[monomial, coeff]`` polynomials and uses the
Gebauer-Moeller pair criteria with a sugar-degree pair queue. ``Ideal`` wraps
a generator list and caches its reduced basis.
"""

from __future__ import annotations

import heapq
import itertools
import random
from functools import cached_property
from typing import Iterable, Sequence

from .arith import (
    MonomialOrder,
    PolyRing,
    Polynomial,
    mono_coprime,
    mono_degree,
    mono_div,
    mono_divides,
    mono_lcm,
    monomials_of_degree,
)
from .errors import PreconditionError

# -- raw engine ----------------------------------------------------------------
#
# Inside the engine a monomial is one Python int with 16 bits per exponent and
# a guard bit on top of each field: products are additions, and b | a holds
# iff ((a | guard) - b) & guard == guard. The order is a linear form in the
# exponents (see MonomialOrder.linear_key), so keys add like monomials do.

_W = 16
_FIELD = (1 << _W) - 1
_LIMIT = 1 << (_W - 1)


class _Packer:
    def __init__(self, ring: PolyRing):
        n = ring.nvars
        self.n = n
        self.guard = sum(1 << (_W * i + _W - 1) for i in range(n))
        self.coeffs = ring.order.linear_key(n)

    def pack(self, m) -> int:
        out = 0
        for i, e in enumerate(m):
            if e >= _LIMIT:
                raise OverflowError(f"exponent {e} too large for the packed engine")
            out |= e << (_W * i)
        return out

    def unpack(self, E: int) -> tuple[int, ...]:
        return tuple((E >> (_W * i)) & _FIELD for i in range(self.n))

    def key(self, m) -> int:
        return sum(e * c for e, c in zip(m, self.coeffs))


def _reduce(f: dict, reducers: list, keys: dict, guard: int, p: int) -> dict:
    """Full reduction of packed ``f`` by monic reducers (lm, lm_key, tail).

    ``keys`` maps packed monomials to order keys and is extended in place.
    """
    f = dict(f)
    rem = {}
    heap = [(keys[m], m) for m in f]
    heapq.heapify(heap)
    while heap:
        k, m = heapq.heappop(heap)
        c = f.pop(m, 0)
        if not c:
            continue
        mg = m | guard
        for lm, lk, tail in reducers:  # noqa: B007
            if (mg - lm) & guard == guard:
                break
        else:
            rem[m] = c
            continue
        t, tk = m - lm, k - lk
        for gm, gk, gc in tail:
            nm = gm + t
            old = f.get(nm)
            if old is None:
                f[nm] = -c * gc % p
                nk = gk + tk
                keys[nm] = nk
                heapq.heappush(heap, (nk, nm))
            else:
                v = (old - c * gc) % p
                if v:
                    f[nm] = v
                else:
                    del f[nm]
    return rem


def _reducer(f: dict, lm: int, keys: dict) -> tuple:
    return (lm, keys[lm], [(m, keys[m], c) for m, c in f.items() if m != lm])


def _monic(f: dict, lm, p: int) -> dict:
    inv = pow(f[lm], -1, p)
    if inv == 1:
        return f
    return {m: c * inv % p for m, c in f.items()}


def _pack_poly(f: dict, packer: _Packer, keys: dict) -> dict:
    out = {}
    for m, c in f.items():
        E = packer.pack(m)
        keys[E] = packer.key(m)
        out[E] = c
    return out


def buchberger(polys: Iterable[dict], ring: PolyRing) -> list[dict]:
    """Reduced Groebner basis (monic, sorted leading-first) of raw polynomials."""
    packer = _Packer(ring)
    guard = packer.guard
    p = ring.modulus
    w = ring.grading
    keys: dict[int, int] = {}

    basis: list[dict] = []
    lms: list[int] = []
    lms_t: list[tuple] = []
    red: list[tuple] = []
    sugar: list[int] = []
    active: list[int] = []
    pairs: dict[tuple[int, int], tuple] = {}
    queue: list = []
    counter = itertools.count()

    def add(h: dict, s: int):
        lm_h = min(h, key=keys.__getitem__)
        h = _monic(h, lm_h, p)
        t_h = packer.unpack(lm_h)
        idx = len(basis)
        basis.append(h)
        lms.append(lm_h)
        lms_t.append(t_h)
        red.append(_reducer(h, lm_h, keys))
        sugar.append(s)
        # Gebauer-Moeller update
        cands = [(g, mono_lcm(t_h, lms_t[g])) for g in active]
        kept = []
        while cands:
            g1, l1 = cands.pop(0)
            if mono_coprime(t_h, lms_t[g1]) or not (
                any(mono_divides(l2, l1) for _, l2 in cands) or any(mono_divides(l2, l1) for _, l2 in kept)
            ):
                kept.append((g1, l1))
        for (a, b), (lab, _) in list(pairs.items()):
            if (
                mono_divides(t_h, lab)
                and mono_lcm(lms_t[a], t_h) != lab
                and mono_lcm(lms_t[b], t_h) != lab
            ):
                del pairs[(a, b)]
        for g, l in kept:
            if mono_coprime(t_h, lms_t[g]):
                continue
            dl = mono_degree(l, w)
            sg = max(sugar[g] + dl - mono_degree(lms_t[g], w), s + dl - mono_degree(t_h, w))
            pairs[(g, idx)] = (l, sg)
            heapq.heappush(queue, (sg, packer.key(l), next(counter), g, idx))
        active[:] = [g for g in active if (lms[g] | guard) - lm_h & guard != guard]
        active.append(idx)

    def reducers():
        return [red[g] for g in active]

    def is_one(r: dict) -> bool:
        return len(r) == 1 and next(iter(r)) == 0

    inputs = [_pack_poly(f, packer, keys) for f in polys if f]
    inputs.sort(key=lambda f: (max(mono_degree(packer.unpack(m), w) for m in f), len(f)))
    for f in inputs:
        r = _reduce(f, reducers(), keys, guard, p)
        if r:
            if is_one(r):
                return [{(0,) * packer.n: 1}]
            add(r, max(mono_degree(packer.unpack(m), w) for m in f))

    while queue:
        sg, _, _, a, b = heapq.heappop(queue)
        entry = pairs.pop((a, b), None)
        if entry is None:
            continue
        lab = entry[0]
        ta_t, tb_t = mono_div(lab, lms_t[a]), mono_div(lab, lms_t[b])
        ta, tb = packer.pack(ta_t), packer.pack(tb_t)
        ka, kb = packer.key(ta_t), packer.key(tb_t)
        s_poly: dict = {}
        for m, c in basis[a].items():
            nm = m + ta
            keys[nm] = keys[m] + ka
            s_poly[nm] = c
        for m, c in basis[b].items():
            nm = m + tb
            v = (s_poly.get(nm, 0) - c) % p
            if v:
                keys[nm] = keys[m] + kb
                s_poly[nm] = v
            else:
                s_poly.pop(nm, None)
        if not s_poly:
            continue
        r = _reduce(s_poly, reducers(), keys, guard, p)
        if r:
            if is_one(r):
                return [{(0,) * packer.n: 1}]
            add(r, sg)

    # interreduce the minimal basis
    final = sorted(active, key=lambda g: keys[lms[g]])
    out = []
    for g in final:
        others = [red[h] for h in final if h != g]
        lm_g = lms[g]
        tail = {m: c for m, c in basis[g].items() if m != lm_g}
        r = _reduce(tail, others, keys, guard, p)
        r[lm_g] = 1
        out.append({packer.unpack(m): c for m, c in r.items()})
    return out


def normal_form_raw(f: dict, basis: Sequence[dict], ring: PolyRing) -> dict:
    """Remainder of raw ``f`` modulo a monic Groebner basis given as raw dicts."""
    if not f:
        return {}
    packer = _Packer(ring)
    keys: dict[int, int] = {}
    reducers = []
    for g in basis:
        pg = _pack_poly(g, packer, keys)
        reducers.append(_reducer(pg, min(pg, key=keys.__getitem__), keys))
    r = _reduce(_pack_poly(f, packer, keys), reducers, keys, packer.guard, ring.modulus)
    return {packer.unpack(m): c for m, c in r.items()}


# -- Ideal ---------------------------------------------------------------------


class Ideal:
    """Ideal given by generators; the reduced basis is computed once on demand.

    Equality (``==``) and ``<=`` compare ideals, not generator lists.
    """

    def __init__(self, gens: Iterable[Polynomial], ring: PolyRing | None = None):
        gens = list(gens)
        if ring is None:
            if not gens:
                raise ValueError("ring required for an ideal without generators")
            ring = gens[0].ring
        for g in gens:
            ring.check_same(g.ring)
        self.ring = ring
        self.gens = tuple(g for g in gens if not g.is_zero())

    @classmethod
    def irrelevant(cls, ring: PolyRing) -> "Ideal":
        return cls(ring.gens(), ring)

    @classmethod
    def unit(cls, ring: PolyRing) -> "Ideal":
        return cls([ring.one()], ring)

    @property
    def generator_degrees(self) -> tuple[int, ...]:
        return tuple(g.degree() for g in self.gens)

    @cached_property
    def gb(self) -> tuple[Polynomial, ...]:
        raw = buchberger((g._c for g in self.gens), self.ring)
        return tuple(Polynomial(self.ring, f, normalized=True) for f in raw)

    @cached_property
    def leading_monomials(self) -> tuple:
        return tuple(g.lm for g in self.gb)

    def is_zero(self) -> bool:
        return not self.gens

    def is_unit(self) -> bool:
        return len(self.gb) == 1 and self.gb[0].is_constant()

    def is_homogeneous(self) -> bool:
        return all(g.is_homogeneous() for g in self.gens)

    def is_monomial(self) -> bool:
        return all(len(g) == 1 for g in self.gens)

    def reduce(self, f: Polynomial) -> Polynomial:
        self.ring.check_same(f.ring)
        rem = normal_form_raw(f._c, [g._c for g in self.gb], self.ring)
        return Polynomial(self.ring, rem, normalized=True)

    def __contains__(self, f: Polynomial) -> bool:
        return self.reduce(f).is_zero()

    def __le__(self, other: "Ideal") -> bool:
        return is_subideal(self, other)

    def __eq__(self, other):
        if not isinstance(other, Ideal):
            return NotImplemented
        return ideal_equal(self, other)

    def __hash__(self):
        return hash((self.ring, self.gb))

    def __add__(self, other: "Ideal") -> "Ideal":
        return ideal_sum(self, other)

    def __mul__(self, other: "Ideal") -> "Ideal":
        return ideal_product(self, other)

    def __pow__(self, n: int) -> "Ideal":
        return ideal_power(self, n)

    def embed(self, ring: PolyRing, positions: Sequence[int]) -> "Ideal":
        return Ideal([g.embed(ring, positions) for g in self.gens], ring)

    def __str__(self):
        return "(" + ", ".join(str(g) for g in self.gens) + ")"

    def __repr__(self):
        return f"Ideal{self}"


def reduced_gb(I: Ideal) -> list[Polynomial]:
    return list(I.gb)


def normal_form(f: Polynomial, I: Ideal) -> Polynomial:
    return I.reduce(f)


def ideal_equal(I: Ideal, J: Ideal) -> bool:
    I.ring.check_same(J.ring)
    return I.gb == J.gb


def is_subideal(I: Ideal, J: Ideal) -> bool:
    """I is contained in J."""
    I.ring.check_same(J.ring)
    return all(J.reduce(g).is_zero() for g in I.gens)


def ideal_sum(I: Ideal, J: Ideal) -> Ideal:
    I.ring.check_same(J.ring)
    return Ideal(I.gens + J.gens, I.ring)


def ideal_product(I: Ideal, J: Ideal) -> Ideal:
    I.ring.check_same(J.ring)
    return Ideal([f * g for f in I.gens for g in J.gens], I.ring)


def ideal_power(I: Ideal, n: int) -> Ideal:
    """All products of ``n`` generators (no interreduction)."""
    if n < 1:
        raise PreconditionError("ideal power needs n >= 1")
    gens = []
    for combo in itertools.combinations_with_replacement(I.gens, n):
        f = combo[0]
        for g in combo[1:]:
            f = f * g
        gens.append(f)
    return Ideal(gens, I.ring)


def _fresh_name(names: Sequence[str], base: str) -> str:
    name = base
    while name in names:
        name = "_" + name
    return name


def eliminate(I: Ideal, keep: Iterable[int | str]) -> Ideal:
    """I intersected with the subring in the ``keep`` variables (as an ideal of I.ring)."""
    ring = I.ring
    keep_idx = sorted({ring.names.index(v) if isinstance(v, str) else v for v in keep})
    elim = [i for i in range(ring.nvars) if i not in keep_idx]
    if not elim:
        return I
    perm = elim + keep_idx  # new position -> old index
    positions = [perm.index(i) for i in range(ring.nvars)]
    weights = None if ring.weights is None else tuple(ring.weights[i] for i in perm)
    elim_ring = PolyRing(
        tuple(ring.names[i] for i in perm), ring.field, MonomialOrder("block", split=len(elim)), weights
    )
    J = I.embed(elim_ring, positions)
    back = [perm[i] for i in range(ring.nvars)]
    k = len(elim)
    kept = [g.embed(ring, back) for g in J.gb if all(not any(m[:k]) for m in g._c)]
    return Ideal(kept, ring)


def intersect(I: Ideal, J: Ideal) -> Ideal:
    """I ∩ J by eliminating t from t·I + (1 - t)·J."""
    ring = I.ring
    ring.check_same(J.ring)
    if I.is_zero() or J.is_zero():
        return Ideal([], ring)
    t_name = _fresh_name(ring.names, "t")
    big = PolyRing((t_name,) + ring.names, ring.field, MonomialOrder("block", split=1), (0,) + ring.grading)
    shift = list(range(1, ring.nvars + 1))
    t = big.var(0)
    gens = [t * g.embed(big, shift) for g in I.gens]
    gens += [h.embed(big, shift) - t * h.embed(big, shift) for h in J.gens]
    K = Ideal(gens, big)
    return Ideal([_drop_first(g, ring) for g in K.gb if all(m[0] == 0 for m in g._c)], ring)


def _drop_first(g: Polynomial, ring: PolyRing) -> Polynomial:
    return Polynomial(ring, {m[1:]: c for m, c in g._c.items()}, normalized=True)


def ideal_quotient(I: Ideal, f: Polynomial) -> Ideal:
    """(I : f) = {g : g·f in I}."""
    if f.is_zero():
        raise PreconditionError("colon by the zero polynomial")
    if f.is_constant():
        return I
    K = intersect(I, Ideal([f], I.ring))
    return Ideal([g.divexact(f) for g in K.gb], I.ring)


def saturate_by_poly(I: Ideal, f: Polynomial, method: str = "aux") -> Ideal:
    """(I : f^∞).

    ``method="aux"`` adds one variable z and works modulo f - z (homogeneous
    case, reverse-lex with z last) or 1 - z·f (otherwise); ``"colon"`` iterates
    ``ideal_quotient`` to a fixpoint.
    """
    if f.is_zero():
        raise PreconditionError("saturation by the zero polynomial")
    if f.is_constant() or I.is_zero():
        return I
    if method == "colon":
        cur = I
        while True:
            nxt = ideal_quotient(cur, f)
            if ideal_equal(nxt, cur):
                return nxt
            cur = nxt
    if method != "aux":
        raise ValueError(f"unknown saturation method {method!r}")
    ring = I.ring
    n = ring.nvars
    z_name = _fresh_name(ring.names, "z")
    if I.is_homogeneous() and f.is_homogeneous() and all(x > 0 for x in ring.grading):
        weights = ring.grading + (f.degree(),)
        big = PolyRing(ring.names + (z_name,), ring.field, MonomialOrder("wgrevlex", weights), weights)
        embed = list(range(n))
        z = big.var(n)
        K = Ideal([g.embed(big, embed) for g in I.gb] + [f.embed(big, embed) - z], big)
        powers = [ring.one()]
        out = []
        for g in K.gb:
            k = g.max_power_dividing(n)
            # g / z^k, then z -> f, grouped by the power of z
            parts: dict[int, dict] = {}
            for m, c in g._c.items():
                parts.setdefault(m[n] - k, {})[m[:n]] = c
            h = ring.zero()
            for e, part in parts.items():
                while len(powers) <= e:
                    powers.append(powers[-1] * f)
                h = h + Polynomial(ring, part, normalized=True) * powers[e]
            out.append(h)
        return Ideal(out, ring)
    # Rabinowitsch: eliminate z from I + (1 - z f)
    big = PolyRing((z_name,) + ring.names, ring.field, MonomialOrder("block", split=1), (1,) + ring.grading)
    shift = list(range(1, n + 1))
    z = big.var(0)
    K = Ideal([g.embed(big, shift) for g in I.gens] + [big.one() - z * f.embed(big, shift)], big)
    return Ideal([_drop_first(g, ring) for g in K.gb if all(m[0] == 0 for m in g._c)], ring)


def generic_element(I: Ideal, rng: random.Random) -> Polynomial:
    """Random element of the top generator degree: sum of random forms times generators."""
    d = max(I.generator_degrees)
    f = I.ring.zero()
    for g in I.gens:
        f = f + I.ring.random_form(d - g.degree(), rng) * g
    return f


def saturate_by_ideal(I: Ideal, J: Ideal, method: str = "intersect", rng: random.Random | None = None) -> Ideal:
    """(I : J^∞).

    ``"intersect"`` intersects the saturations by each generator of J;
    ``"generic"`` saturates by one random element of J (correct with high
    probability; J must be homogeneous).
    """
    I.ring.check_same(J.ring)
    if J.is_zero():
        raise PreconditionError("saturation by the zero ideal")
    if any(g.is_constant() for g in J.gens) or J.is_unit():
        return I
    if method == "generic":
        f = generic_element(J, rng or random.Random(0))
        if f.is_zero():
            raise PreconditionError("random element of J vanished; retry with another seed")
        return saturate_by_poly(I, f)
    if method != "intersect":
        raise ValueError(f"unknown saturation method {method!r}")
    result = None
    for g in J.gens:
        S = saturate_by_poly(I, g)
        result = S if result is None else intersect(result, S)
    return result


def graded_dim(I: Ideal, v: int) -> int:
    """dim_k of the degree-v piece of a homogeneous ideal (standard grading)."""
    if v < 0:
        raise PreconditionError("negative degree")
    n = I.ring.nvars
    lms = I.leading_monomials
    total = 0
    standard = 0
    for m in monomials_of_degree(n, v):
        total += 1
        if not any(mono_divides(l, m) for l in lms):
            standard += 1
    return total - standard
