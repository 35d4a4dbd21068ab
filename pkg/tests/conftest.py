from __future__ import annotations

from pathlib import Path

import pytest

from segreint.arith import PolyRing
from segreint.groebner import Ideal
from segreint.idealfile import parse_polynomial

CORPUS = Path(__file__).resolve().parent.parent / "corpus"

# criterion number -> (passed, detail); filled by test_acceptance
ACCEPTANCE: dict[int, tuple[bool, str]] = {}


def make_ring(names: str = "x y z", modulus: int = 32003) -> PolyRing:
    from segreint.arith import PrimeField

    return PolyRing(tuple(names.split()), PrimeField(modulus))


def ideal(spec: str, ring: PolyRing) -> Ideal:
    """Ideal from comma-separated generator expressions."""
    return Ideal([parse_polynomial(t, ring) for t in spec.split(",")], ring)


@pytest.fixture
def R3():
    return make_ring("x y z")


@pytest.fixture
def R4():
    return make_ring("x y z w")


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[k]
        terminalreporter.write_line(f"criterion {k:2d}: {'PASS' if ok else 'FAIL'}  {detail}")
