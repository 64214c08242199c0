"""Nambu and vector-Hamiltonian brackets, vector Lagrangians, multipliers.

Index conventions: ``L1, L2, L3`` and ``lambda1..3`` are 1-based as in the
mechanics literature; coordinates and velocities are 0-based
(``x0, x1, x2`` and ``v0, v1, v2``), so ``L^i`` pairs with ``x_{i-1}``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .forms import BiVec, VecField, div, grad, rot
from .poly import EXTENDED, POSITION, Poly

VELOCITIES = ("v0", "v1", "v2")


class BracketConvention(enum.Enum):
    """Normalization of the bivector contraction.

    ``UNIT`` gives the plain Jacobian determinant; ``HALF`` keeps the
    explicit 1/2 prefactor of the bivector field.
    """

    UNIT = "unit"
    HALF = "half"

    @property
    def factor(self) -> Fraction:
        return Fraction(1) if self is BracketConvention.UNIT else Fraction(1, 2)

    @classmethod
    def coerce(cls, value) -> "BracketConvention":
        return value if isinstance(value, cls) else cls(str(value).lower())


UNIT = BracketConvention.UNIT
HALF = BracketConvention.HALF


@dataclass(frozen=True)
class NambuPair:
    H1: Poly
    H2: Poly


@dataclass(frozen=True)
class VectorLagrangian:
    """Three Lagrangian densities over ``EXTENDED``."""

    L1: Poly
    L2: Poly
    L3: Poly

    def __post_init__(self):
        for name in ("L1", "L2", "L3"):
            value = getattr(self, name)
            if not isinstance(value, Poly):
                value = Poly.const(value, EXTENDED)
            object.__setattr__(self, name, value.convert(EXTENDED))

    def __getitem__(self, i: int) -> Poly:
        """1-based access, ``L[1]`` is ``L1``."""
        if i not in (1, 2, 3):
            raise IndexError(f"Lagrangian index {i} outside 1..3")
        return (self.L1, self.L2, self.L3)[i - 1]

    def __iter__(self):
        return iter((self.L1, self.L2, self.L3))

    def __add__(self, other: "VectorLagrangian") -> "VectorLagrangian":
        return VectorLagrangian(*(a + b for a, b in zip(self, other)))

    def scale(self, c) -> "VectorLagrangian":
        return VectorLagrangian(*(a.scale(c) for a in self))


@dataclass(frozen=True)
class FitReport:
    """Outcome of fitting ``target = constant * basis``.

    ``constant`` is ``None`` when no rational constant fits; ``residual``
    is then ``target - c*basis`` for the trial constant (or ``target``
    itself when no trial was possible).
    """

    constant: Optional[Fraction]
    residual: tuple

    @property
    def fits(self) -> bool:
        return self.constant is not None


def fit_scalar(target: Sequence[Poly], basis: Sequence[Poly]) -> FitReport:
    """Find rational ``c`` with ``target[i] == c * basis[i]`` for all ``i``."""
    target, basis = tuple(target), tuple(basis)
    if len(target) != len(basis):
        raise ValueError("target and basis differ in length")
    trial = None
    for b, t in zip(basis, target):
        if not b.is_zero():
            exps, coeff = min(b.items())
            trial = t.terms.get(exps, Fraction(0)) / coeff
            break
    if trial is None:
        # basis vanishes: only c = 0 is meaningful, and only if target vanishes too
        ok = all(t.is_zero() for t in target)
        return FitReport(Fraction(0) if ok else None, target)
    residual = tuple(t - b.scale(trial) for t, b in zip(target, basis))
    if all(r.is_zero() for r in residual):
        return FitReport(trial, residual)
    return FitReport(None, residual)


# ----------------------------------------------------------------------
# brackets and flow fields


def nambu_bracket(H: Poly, F: Poly, G: Poly, conv=UNIT) -> Poly:
    """Triple bracket ``{H, F, G}``: the Jacobian determinant of (H, F, G),
    times 1/2 under the ``half`` convention."""
    conv = BracketConvention.coerce(conv)
    return grad(H).dot(grad(F).cross(grad(G))).scale(conv.factor)


def nambu_flow_field(pair: NambuPair, conv=UNIT) -> VecField:
    xs = Poly.variables()
    return VecField(*(nambu_bracket(pair.H1, pair.H2, x, conv) for x in xs))


def vector_bracket(h: VecField, G: Poly) -> Poly:
    """``{h, G} = rot(h) . grad(G)``."""
    return rot(h).dot(grad(G))


def vh_flow_field(h: VecField) -> VecField:
    return rot(h)


def bivector_field(H: Poly, conv=UNIT) -> BiVec:
    """Hamiltonian bivector of ``H``.

    Contracting it with ``dF ^ dG`` (default contraction, no extra factor)
    gives ``nambu_bracket(H, F, G, conv)``.
    """
    conv = BracketConvention.coerce(conv)
    return BiVec(grad(H).scale(conv.factor))


def is_conservative(F: VecField) -> tuple:
    """``(div F == 0, div F)``."""
    residual = div(F)
    return residual.is_zero(), residual


# ----------------------------------------------------------------------
# vector Lagrangians


def vector_lagrangian_from_h(h: VecField) -> VectorLagrangian:
    """``L = -(x cross v) - h`` over the extended alphabet."""
    x0, x1, x2, v0, v1, v2 = Poly.variables(EXTENDED)
    h0, h1, h2 = (c.convert(EXTENDED) for c in h)
    return VectorLagrangian(
        x2 * v1 - x1 * v2 - h0,
        x0 * v2 - x2 * v0 - h1,
        x1 * v0 - x0 * v1 - h2,
    )


def _dv(p: Poly, i: int) -> Poly:
    """Partial by the 1-based velocity ``v_{i-1}``."""
    return p.diff(VELOCITIES[i - 1])


def _dx(p: Poly, i: int) -> Poly:
    return p.diff(POSITION[i - 1])


def _project(p: Poly) -> Poly:
    return p.convert(POSITION) if not any(p.depends_on(v) for v in VELOCITIES) else p


def lagrange_multipliers(L: VectorLagrangian):
    """Multipliers from ``L3_v2 - L2_v3 = 2 lambda1`` and its cyclic shifts (1-based).

    Returns a :class:`VecField` when the result is velocity-free, else a
    tuple of three extended-alphabet polynomials.
    """
    half = Fraction(1, 2)
    lam = (
        (_dv(L[3], 2) - _dv(L[2], 3)).scale(half),
        (_dv(L[1], 3) - _dv(L[3], 1)).scale(half),
        (_dv(L[2], 1) - _dv(L[1], 2)).scale(half),
    )
    projected = tuple(_project(c) for c in lam)
    if all(c.alphabet == POSITION for c in projected):
        return VecField(*projected)
    return lam


def on_shell_substitution(motion: VecField) -> dict:
    return {v: c.convert(EXTENDED) for v, c in zip(VELOCITIES, motion)}


def on_shell_derivative(p: Poly, motion: VecField) -> Poly:
    """Total time derivative of ``p(x, v)`` along ``x' = motion(x)``.

    Chain rule ``sum dp/dx_j v_j + dp/dv_j a_j`` with
    ``a = (D motion) . motion``, then ``v -> motion``. The result is over
    ``POSITION``.
    """
    p = p.convert(EXTENDED)
    ext = [c.convert(EXTENDED) for c in motion]
    v = Poly.variables(EXTENDED)[3:]
    accel = [sum((motion[i].diff(POSITION[j]).convert(EXTENDED) * ext[j] for j in range(3)), Poly.zero(EXTENDED))
             for i in range(3)]
    total = Poly.zero(EXTENDED)
    for j in range(3):
        total = total + p.diff(POSITION[j]) * v[j] + p.diff(VELOCITIES[j]) * accel[j]
    return total.substitute(on_shell_substitution(motion)).convert(POSITION)


def el_residual(L: VectorLagrangian, i: int, k: int, motion: VecField) -> Poly:
    """On-shell residual of the vector Euler-Lagrange equation for ``(i, k)``::

        1/2 D_t(L^i_{v_k} - L^k_{v_i}) - (L^k_{x_i} - L^i_{x_k})

    Indices are 1-based; position partials are taken at fixed velocity.
    """
    if i not in (1, 2, 3) or k not in (1, 2, 3):
        raise IndexError(f"indices ({i}, {k}) outside 1..3")
    lhs = on_shell_derivative(_dv(L[i], k) - _dv(L[k], i), motion).scale(Fraction(1, 2))
    rhs = (_dx(L[k], i) - _dx(L[i], k)).substitute(on_shell_substitution(motion)).convert(POSITION)
    return lhs - rhs


def multiplier_rate(lam: VecField, motion: VecField) -> VecField:
    """``lambda_dot`` along ``motion`` (velocity-free multipliers)."""
    return VecField(*(grad(c).dot(motion) for c in lam))


def multiplier_flow_report(lam: VecField, h: VecField, motion: VecField) -> FitReport:
    """Fit ``s`` in ``lambda_dot = s * rot(h)``."""
    if not isinstance(lam, VecField):
        raise ValueError("multipliers must be velocity-free")
    return fit_scalar(tuple(multiplier_rate(lam, motion)), tuple(rot(h)))


def rot_position(L: VectorLagrangian) -> tuple:
    """Curl of ``L`` in the positions at fixed velocity (1-based cyclic)."""
    return (
        _dx(L[3], 2) - _dx(L[2], 3),
        _dx(L[1], 3) - _dx(L[3], 1),
        _dx(L[2], 1) - _dx(L[1], 2),
    )


def rot_L_check(L: VectorLagrangian, lam: VecField, motion: VecField) -> VecField:
    """Residual ``rot(L) + lambda_dot`` on shell, componentwise."""
    sub = on_shell_substitution(motion)
    rot_l = [c.substitute(sub).convert(POSITION) for c in rot_position(L)]
    rate = multiplier_rate(lam, motion)
    return VecField(*(a + b for a, b in zip(rot_l, rate)))
