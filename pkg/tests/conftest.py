import random

import pytest
import sympy as sp

from nambu3d.poly import EXTENDED, Poly
from nambu3d.randomized import seed_from_env

SX = sp.symbols("x0 x1 x2")
SV = sp.symbols("v0 v1 v2")


def to_sympy(p: Poly):
    """Independent oracle view of a Poly (term-by-term, no shared code paths)."""
    syms = SX + SV if p.alphabet == EXTENDED else SX
    expr = sp.Integer(0)
    for exps, c in p.items():
        term = sp.Rational(c.numerator, c.denominator)
        for s, k in zip(syms, exps):
            term *= s**k
        expr += term
    return sp.expand(expr)


def sympy_zero(expr) -> bool:
    return sp.expand(expr) == 0


@pytest.fixture
def rng():
    return random.Random(seed_from_env())


ACCEPTANCE: list = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE, key=lambda s: int(s.split("criterion ")[1].split(":")[0])):
            terminalreporter.write_line(line)
