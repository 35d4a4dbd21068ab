"""Prime-field scalars, dense exponent-vector monomials and sparse polynomials.

Monomials are plain tuples of nonnegative ints (one entry per ring variable).
Polynomials are immutable; arithmetic normalizes coefficients into
``range(p)`` and drops zero terms.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Iterator, Sequence

Monomial = tuple[int, ...]

DEFAULT_MODULUS = 32003


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


@dataclass(frozen=True)
class PrimeField:
    modulus: int = DEFAULT_MODULUS

    def __post_init__(self):
        if not (2 <= self.modulus < 2**31) or not is_prime(self.modulus):
            raise ValueError(f"characteristic {self.modulus} is not a prime below 2^31")

    def inv(self, a: int) -> int:
        a %= self.modulus
        if a == 0:
            raise ZeroDivisionError("inverse of zero in prime field")
        return pow(a, -1, self.modulus)

    def random_element(self, rng: random.Random, nonzero: bool = False) -> int:
        lo = 1 if nonzero else 0
        return rng.randrange(lo, self.modulus)

    def signed(self, a: int) -> int:
        """Representative of ``a`` in the symmetric range (-p/2, p/2]."""
        a %= self.modulus
        return a - self.modulus if a > self.modulus // 2 else a


def binomial_conv(m: int, k: int) -> int:
    """Binomial coefficient with ``binom(m, -1) = 0`` for m >= 0 and ``binom(-1, -1) = 1``."""
    if m < -1 or k < -1:
        raise ValueError(f"binomial_conv undefined for ({m}, {k})")
    if k == -1:
        return 1 if m == -1 else 0
    if k > m:
        return 0
    # here 0 <= k <= m
    result = 1
    for i in range(1, k + 1):
        result = result * (m - k + i) // i
    return result


# -- monomials ---------------------------------------------------------------

def mono_degree(m: Monomial, weights: Sequence[int] | None = None) -> int:
    if weights is None:
        return sum(m)
    return sum(e * w for e, w in zip(m, weights))


def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x + y for x, y in zip(a, b))


def mono_div(a: Monomial, b: Monomial) -> Monomial:
    """a / b, assuming b divides a."""
    return tuple(x - y for x, y in zip(a, b))


def mono_divides(b: Monomial, a: Monomial) -> bool:
    return all(y <= x for x, y in zip(a, b))


def mono_lcm(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x if x > y else y for x, y in zip(a, b))


def mono_coprime(a: Monomial, b: Monomial) -> bool:
    return not any(x and y for x, y in zip(a, b))


def monomials_of_degree(nvars: int, degree: int) -> Iterator[Monomial]:
    """All exponent vectors of total degree ``degree`` (stars and bars)."""
    if nvars == 0:
        if degree == 0:
            yield ()
        return
    for bars in itertools.combinations(range(degree + nvars - 1), nvars - 1):
        prev = -1
        exps = []
        for b in bars:
            exps.append(b - prev - 1)
            prev = b
        exps.append(degree + nvars - 1 - prev - 1)
        yield tuple(exps)


# -- monomial orders ---------------------------------------------------------
#
# An order is described by a hashable spec; ``sort_key(m)`` returns a tuple
# that is SMALLER for LARGER monomials, so ascending sorts put the leading
# term first and heapq pops leading monomials.

@dataclass(frozen=True)
class MonomialOrder:
    kind: str = "grevlex"          # "grevlex", "wgrevlex" or "block"
    weights: tuple[int, ...] = ()  # wgrevlex only
    split: int = 0                 # block: first `split` variables are eliminated

    def __post_init__(self):
        if self.kind not in ("grevlex", "wgrevlex", "block"):
            raise ValueError(f"unknown monomial order {self.kind!r}")
        if self.kind == "wgrevlex" and any(w <= 0 for w in self.weights):
            raise ValueError("weighted grevlex needs positive weights")

    def sort_key(self, m: Monomial) -> tuple:
        if self.kind == "grevlex":
            return (-sum(m), m[::-1])
        if self.kind == "wgrevlex":
            return (-sum(e * w for e, w in zip(m, self.weights)), m[::-1])
        head, tail = m[: self.split], m[self.split:]
        return (-sum(head), head[::-1], -sum(tail), tail[::-1])

    def linear_key(self, nvars: int, bits: int = 32) -> tuple[int, ...]:
        """Integers c_i with sum(m_i c_i) ordered exactly like ``sort_key``.

        Every entry of the flattened sort key is linear in the exponents, so
        packing the entries into base 2^bits digits gives a linear form. Valid
        while all key entries stay below 2^(bits-2) in absolute value.
        """
        zero = _flatten(self.sort_key((0,) * nvars))
        size = len(zero)
        coeffs = []
        for i in range(nvars):
            e = tuple(int(j == i) for j in range(nvars))
            flat = _flatten(self.sort_key(e))
            coeffs.append(sum((a - b) << (bits * (size - 1 - j)) for j, (a, b) in enumerate(zip(flat, zero))))
        return tuple(coeffs)

    def key_function(self):
        """A memoized ``sort_key``; orders are compared billions of times."""
        cache: dict[Monomial, tuple] = {}
        raw = self.sort_key

        def key(m):
            k = cache.get(m)
            if k is None:
                k = cache[m] = raw(m)
            return k

        return key


def _flatten(key) -> tuple[int, ...]:
    out = []
    for part in key:
        if isinstance(part, tuple):
            out.extend(part)
        else:
            out.append(part)
    return tuple(out)


GREVLEX = MonomialOrder()


@dataclass(frozen=True)
class PolyRing:
    """Ring context: variable names, coefficient field, order and grading weights."""

    names: tuple[str, ...]
    field: PrimeField = field(default_factory=PrimeField)
    order: MonomialOrder = GREVLEX
    weights: tuple[int, ...] | None = None

    def __post_init__(self):
        if len(set(self.names)) != len(self.names):
            raise ValueError("duplicate variable names")
        if self.weights is not None and len(self.weights) != len(self.names):
            raise ValueError("one weight per variable")

    @classmethod
    def standard(cls, nvars: int, modulus: int = DEFAULT_MODULUS, prefix: str = "x") -> "PolyRing":
        return cls(tuple(f"{prefix}{i}" for i in range(nvars)), PrimeField(modulus))

    @property
    def nvars(self) -> int:
        return len(self.names)

    @property
    def modulus(self) -> int:
        return self.field.modulus

    @property
    def grading(self) -> tuple[int, ...]:
        return self.weights if self.weights is not None else (1,) * self.nvars

    @cached_property
    def sort_key(self):
        return self.order.key_function()

    def with_order(self, order: MonomialOrder, weights: tuple[int, ...] | None = None) -> "PolyRing":
        return PolyRing(self.names, self.field, order, weights if weights is not None else self.weights)

    def zero(self) -> "Polynomial":
        return Polynomial(self, {})

    def one(self) -> "Polynomial":
        return self.constant(1)

    def constant(self, c: int) -> "Polynomial":
        return Polynomial(self, {(0,) * self.nvars: c})

    def var(self, i: int | str) -> "Polynomial":
        if isinstance(i, str):
            i = self.names.index(i)
        return Polynomial(self, {tuple(1 if j == i else 0 for j in range(self.nvars)): 1})

    def gens(self) -> list["Polynomial"]:
        return [self.var(i) for i in range(self.nvars)]

    def monomial(self, exps: Monomial, coeff: int = 1) -> "Polynomial":
        return Polynomial(self, {tuple(exps): coeff})

    def random_form(self, degree: int, rng: random.Random) -> "Polynomial":
        """Dense form of the given (standard) degree with uniform random coefficients."""
        p = self.modulus
        return Polynomial(self, {m: rng.randrange(p) for m in monomials_of_degree(self.nvars, degree)})

    def check_same(self, other: "PolyRing") -> None:
        if self != other:
            raise ValueError("ring mismatch")


class Polynomial:
    """Immutable sparse polynomial over a prime field.

    Internally a dict ``monomial -> coefficient`` with coefficients in
    ``1..p-1``; ``terms`` exposes the sorted (leading first) view.
    """

    __slots__ = ("ring", "_c", "_terms", "_hash")

    def __init__(self, ring: PolyRing, coeffs: dict[Monomial, int], *, normalized: bool = False):
        self.ring = ring
        if normalized:
            self._c = coeffs
        else:
            p = ring.modulus
            self._c = {m: c % p for m, c in coeffs.items() if c % p}
        self._terms = None
        self._hash = None

    # -- views --------------------------------------------------------------
    @property
    def coeffs(self) -> dict[Monomial, int]:
        return dict(self._c)

    @property
    def terms(self) -> tuple[tuple[int, Monomial], ...]:
        """(coefficient, monomial) pairs, strictly descending in the ring order."""
        if self._terms is None:
            key = self.ring.sort_key
            self._terms = tuple((self._c[m], m) for m in sorted(self._c, key=key))
        return self._terms

    def __len__(self) -> int:
        return len(self._c)

    def is_zero(self) -> bool:
        return not self._c

    def is_constant(self) -> bool:
        return all(not any(m) for m in self._c)

    @property
    def lm(self) -> Monomial:
        if not self._c:
            raise ValueError("zero polynomial has no leading monomial")
        if self._terms is not None:
            return self._terms[0][1]
        return min(self._c, key=self.ring.sort_key)

    @property
    def lc(self) -> int:
        return self._c[self.lm]

    def degree(self) -> int:
        """Maximal (weighted) degree; -1 for the zero polynomial."""
        w = self.ring.grading
        return max((mono_degree(m, w) for m in self._c), default=-1)

    def is_homogeneous(self) -> bool:
        w = self.ring.grading
        return len({mono_degree(m, w) for m in self._c}) <= 1

    # -- arithmetic ---------------------------------------------------------
    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            self.ring.check_same(other.ring)
            return other
        if isinstance(other, int):
            return self.ring.constant(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        p = self.ring.modulus
        out = dict(self._c)
        for m, c in other._c.items():
            v = (out.get(m, 0) + c) % p
            if v:
                out[m] = v
            else:
                out.pop(m, None)
        return Polynomial(self.ring, out, normalized=True)

    __radd__ = __add__

    def __neg__(self):
        p = self.ring.modulus
        return Polynomial(self.ring, {m: p - c for m, c in self._c.items()}, normalized=True)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        p = self.ring.modulus
        out: dict[Monomial, int] = {}
        for m1, c1 in self._c.items():
            for m2, c2 in other._c.items():
                m = tuple(x + y for x, y in zip(m1, m2))
                out[m] = (out.get(m, 0) + c1 * c2) % p
        return Polynomial(self.ring, {m: c for m, c in out.items() if c}, normalized=True)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power")
        result = self.ring.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def scale(self, c: int) -> "Polynomial":
        c %= self.ring.modulus
        if not c:
            return self.ring.zero()
        p = self.ring.modulus
        return Polynomial(self.ring, {m: v * c % p for m, v in self._c.items()}, normalized=True)

    def mul_term(self, mono: Monomial, c: int = 1) -> "Polynomial":
        c %= self.ring.modulus
        if not c:
            return self.ring.zero()
        p = self.ring.modulus
        return Polynomial(
            self.ring, {mono_mul(m, mono): v * c % p for m, v in self._c.items()}, normalized=True
        )

    def monic(self) -> "Polynomial":
        if not self._c:
            return self
        return self.scale(self.ring.field.inv(self.lc))

    def divexact(self, divisor: "Polynomial") -> "Polynomial":
        """Quotient of an exact division; raises if ``divisor`` does not divide."""
        self.ring.check_same(divisor.ring)
        if divisor.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        rem = self
        q: dict[Monomial, int] = {}
        lm_d, inv_lc = divisor.lm, self.ring.field.inv(divisor.lc)
        p = self.ring.modulus
        while not rem.is_zero():
            lm_r = rem.lm
            if not mono_divides(lm_d, lm_r):
                raise ArithmeticError("inexact polynomial division")
            t, c = mono_div(lm_r, lm_d), rem.lc * inv_lc % p
            q[t] = c
            rem = rem - divisor.mul_term(t, c)
        return Polynomial(self.ring, q, normalized=True)

    def max_power_dividing(self, var: int) -> int:
        return min((m[var] for m in self._c), default=0)

    # -- ring changes -------------------------------------------------------
    def embed(self, ring: PolyRing, positions: Sequence[int]) -> "Polynomial":
        """Reinterpret in ``ring``, sending variable ``i`` to ``positions[i]``."""
        if ring.modulus != self.ring.modulus:
            raise ValueError("ring mismatch")
        n = ring.nvars
        out = {}
        for m, c in self._c.items():
            e = [0] * n
            for i, x in enumerate(m):
                if x:
                    e[positions[i]] = x
            out[tuple(e)] = c
        return Polynomial(ring, out, normalized=True)

    def to_ring(self, ring: PolyRing) -> "Polynomial":
        """Same variables, different order or weights."""
        if ring.nvars != self.ring.nvars or ring.modulus != self.ring.modulus:
            raise ValueError("ring mismatch")
        return Polynomial(ring, self._c, normalized=True)

    def compose(self, ring: PolyRing, images: Sequence["Polynomial"]) -> "Polynomial":
        """Substitute ``images[i]`` (polynomials of ``ring``) for variable ``i``."""
        if len(images) != self.ring.nvars:
            raise ValueError("one image per variable")
        powers: dict[tuple[int, int], Polynomial] = {}

        def power(i, e):
            key = (i, e)
            if key not in powers:
                powers[key] = images[i] ** e
            return powers[key]

        result = ring.zero()
        for m, c in self._c.items():
            term = ring.constant(c)
            for i, e in enumerate(m):
                if e:
                    term = term * power(i, e)
            result = result + term
        return result

    # -- comparison / display ----------------------------------------------
    def __eq__(self, other):
        if isinstance(other, int):
            other = self.ring.constant(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.ring == other.ring and self._c == other._c

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self._c.items())))
        return self._hash

    def __str__(self):
        if not self._c:
            return "0"
        parts = []
        for c, m in self.terms:
            c = self.ring.field.signed(c)
            factors = [
                name if e == 1 else f"{name}^{e}" for name, e in zip(self.ring.names, m) if e
            ]
            mono = "*".join(factors)
            if not mono:
                body = str(abs(c))
            elif abs(c) == 1:
                body = mono
            else:
                body = f"{abs(c)}*{mono}"
            sign = "-" if c < 0 else "+"
            parts.append((sign, body))
        first_sign, first = parts[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    def __repr__(self):
        return f"Polynomial({self})"


def poly_add(a: Polynomial, b: Polynomial) -> Polynomial:
    return a + b


def poly_mul(a: Polynomial, b: Polynomial) -> Polynomial:
    return a * b


def product(polys: Iterable[Polynomial], ring: PolyRing) -> Polynomial:
    out = ring.one()
    for f in polys:
        out = out * f
    return out
