"""Seeded random polynomials and the randomized identity suite.

The seed comes from the ``NAMBU_SEED`` environment variable (default 0),
so every failing case can be replayed.
"""

from __future__ import annotations

import itertools
import os
import random
from dataclasses import dataclass
from fractions import Fraction

from .forms import KForm, VecField, d, div, grad, homotopy_potential, rot
from .mechanics import NambuPair, nambu_bracket, nambu_flow_field
from .poly import POSITION, Poly

DEFAULT_CASES = 100


def seed_from_env(default: int = 0) -> int:
    value = os.environ.get("NAMBU_SEED")
    return int(value) if value not in (None, "") else default


def random_poly(rng: random.Random, max_degree: int = 3, max_terms: int = 5, alphabet=POSITION) -> Poly:
    n = len(alphabet)
    terms = {}
    for _ in range(rng.randint(0, max_terms)):
        exps = [0] * n
        for _ in range(rng.randint(0, max_degree)):
            exps[rng.randrange(n)] += 1
        terms[tuple(exps)] = Fraction(rng.randint(-9, 9), rng.randint(1, 4))
    return Poly(terms, alphabet)


def random_field(rng: random.Random, max_degree: int = 3, max_terms: int = 4) -> VecField:
    return VecField(*(random_poly(rng, max_degree, max_terms) for _ in range(3)))


def random_form(rng: random.Random, degree: int, max_degree: int = 3, max_terms: int = 4) -> KForm:
    keys = itertools.combinations(range(3), degree)
    return KForm(degree, {k: random_poly(rng, max_degree, max_terms) for k in keys})


@dataclass
class IdentityResult:
    name: str
    cases: int
    failures: int
    first_failure: str | None = None

    @property
    def passed(self) -> bool:
        return self.failures == 0


def _dd(rng):
    w = random_form(rng, rng.randint(0, 1))
    out = d(d(w))
    return out.is_zero(), w


def _rot_grad(rng):
    f = random_poly(rng)
    return rot(grad(f)).is_zero(), f


def _div_rot(rng):
    F = random_field(rng)
    return div(rot(F)).is_zero(), F


def _homotopy(rng):
    alpha = random_form(rng, 1)
    w = d(alpha)
    return d(homotopy_potential(w)) == w, alpha


def _antisymmetry(rng):
    H, F, G = (random_poly(rng) for _ in range(3))
    b = nambu_bracket(H, F, G)
    ok = nambu_bracket(F, H, G) == -b and nambu_bracket(H, G, F) == -b and nambu_bracket(G, F, H) == -b
    return ok, (H, F, G)


def _leibniz(rng):
    H, F, G1, G2 = (random_poly(rng, 2, 3) for _ in range(4))
    lhs = nambu_bracket(H, F, G1 * G2)
    rhs = G1 * nambu_bracket(H, F, G2) + G2 * nambu_bracket(H, F, G1)
    return lhs == rhs, (H, F, G1, G2)


def _nambu_div(rng):
    pair = NambuPair(random_poly(rng), random_poly(rng))
    return div(nambu_flow_field(pair)).is_zero(), pair


IDENTITIES = {
    "d(d(w)) = 0": _dd,
    "rot(grad f) = 0": _rot_grad,
    "div(rot F) = 0": _div_rot,
    "d(H(d a)) = d a": _homotopy,
    "Nambu antisymmetry": _antisymmetry,
    "Nambu Leibniz rule": _leibniz,
    "div(nambu_flow_field) = 0": _nambu_div,
}


def run_identity_suite(seed: int | None = None, cases: int = DEFAULT_CASES) -> list:
    """Run every identity on ``cases`` random inputs; one RNG stream per identity."""
    seed = seed_from_env() if seed is None else seed
    results = []
    for index, (name, check) in enumerate(IDENTITIES.items()):
        rng = random.Random(f"{seed}:{index}")
        failures, first = 0, None
        for _ in range(cases):
            ok, case = check(rng)
            if not ok:
                failures += 1
                first = first or repr(case)
        results.append(IdentityResult(name, cases, failures, first))
    return results
