"""Lax representation of the Frenet system and its trace invariants."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from .forms import VecField, grad
from .mechanics import FitReport, NambuPair, fit_scalar
from .poly import POSITION, Poly, parse_poly

Matrix = tuple  # 3x3 tuple of tuples of Poly


def as_poly_matrix(M) -> Matrix:
    """Coerce a nested sequence of rationals/Polys into a square Poly matrix."""
    rows = tuple(tuple(e if isinstance(e, Poly) else Poly.const(e) for e in row) for row in M)
    n = len(rows)
    if n == 0 or any(len(r) != n for r in rows):
        raise ValueError(f"expected a square matrix, got shape {[len(r) for r in rows]}")
    return rows


def matmul(A, B) -> Matrix:
    A, B = as_poly_matrix(A), as_poly_matrix(B)
    if len(A) != len(B):
        raise ValueError(f"shape mismatch: {len(A)}x{len(A)} vs {len(B)}x{len(B)}")
    n = len(A)
    return tuple(
        tuple(sum((A[i][k] * B[k][j] for k in range(n)), Poly.zero()) for j in range(n))
        for i in range(n)
    )


def mat_sub(A, B) -> Matrix:
    A, B = as_poly_matrix(A), as_poly_matrix(B)
    if len(A) != len(B):
        raise ValueError("shape mismatch")
    return tuple(tuple(a - b for a, b in zip(ra, rb)) for ra, rb in zip(A, B))


def commutator(A, B) -> Matrix:
    """``AB - BA``."""
    return mat_sub(matmul(A, B), matmul(B, A))


def identity(n: int = 3) -> Matrix:
    return tuple(tuple(Poly.const(int(i == j)) for j in range(n)) for i in range(n))


def trace(A) -> Poly:
    A = as_poly_matrix(A)
    return sum((A[i][i] for i in range(len(A))), Poly.zero())


def matrix_to_json(A) -> str:
    return json.dumps([[str(e) for e in row] for row in as_poly_matrix(A)])


def matrix_from_json(text: str) -> Matrix:
    return as_poly_matrix([[parse_poly(e, POSITION) for e in row] for row in json.loads(text)])


@dataclass(frozen=True)
class LaxPair:
    A: Matrix
    B: Matrix
    c: Optional[Fraction] = field(default=None)

    def __post_init__(self):
        A, B = as_poly_matrix(self.A), as_poly_matrix(self.B)
        if len(A) != len(B):
            raise ValueError("A and B must have the same shape")
        if any(not e.is_constant() for row in B for e in row):
            raise ValueError("B must be constant")
        object.__setattr__(self, "A", A)
        object.__setattr__(self, "B", B)


def frenet_lax_pair() -> LaxPair:
    x, y, z = Poly.variables()
    A = ((x, y, x), (y, 2 * z, y), (x, y, x))
    B = ((0, 1, 0), (-1, 0, -1), (0, 1, 0))
    return LaxPair(A, B)


def time_derivative(A, motion: VecField) -> Matrix:
    """Entrywise ``dA/dt = grad(A_ij) . motion``."""
    return tuple(tuple(grad(e).dot(motion) for e in row) for row in as_poly_matrix(A))


def lax_fit(pair: LaxPair, motion: VecField) -> FitReport:
    """Fit rational ``c`` with ``dA/dt = c [A, B]``.

    The residual in the report is flattened row-major.
    """
    Adot = time_derivative(pair.A, motion)
    C = commutator(pair.A, pair.B)
    return fit_scalar([e for row in Adot for e in row], [e for row in C for e in row])


def trace_invariant(A, k: int) -> Poly:
    """``Tr(A^k) / k``."""
    if k < 1:
        raise ValueError("k must be >= 1")
    A = as_poly_matrix(A)
    P = A
    for _ in range(k - 1):
        P = matmul(P, A)
    return trace(P) / k


def closed_form_invariants() -> tuple:
    """``(x+z, (x^2+y^2+z^2)/2, (x^3 + 3/2 y^2 (x+z) + z^3)/3)``."""
    x, y, z = Poly.variables()
    I1 = x + z
    I2 = (x**2 + y**2 + z**2) / 2
    I3 = (x**3 + y**2 * (x + z) * Fraction(3, 2) + z**3) / 3
    return I1, I2, I3


@dataclass(frozen=True)
class Relation:
    name: str
    passed: bool
    residual: Poly


def hamiltonian_relations(pair: NambuPair, invariants: Optional[Sequence[Poly]] = None) -> list:
    """Check ``I1 = H1``, ``I2 = H1^2/2 - H2``, ``I3 = H1 (H1^2 - 3 H2) / 3``."""
    I1, I2, I3 = closed_form_invariants() if invariants is None else invariants
    H1, H2 = pair.H1, pair.H2
    predicted = (
        ("I1 = H1", I1, H1),
        ("I2 = H1^2/2 - H2", I2, H1 * H1 / 2 - H2),
        ("I3 = H1(H1^2 - 3H2)/3", I3, H1 * (H1 * H1 - 3 * H2) / 3),
    )
    out = []
    for name, lhs, rhs in predicted:
        residual = lhs - rhs
        out.append(Relation(name, residual.is_zero(), residual))
    return out
