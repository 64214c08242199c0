"""Fixed-step RK4 integration of polynomial vector fields.

Fields are compiled once into plain Python callables (monomials summed in
ascending exponent order) so a 1e5-step run stays in pure float arithmetic.
Volume drift integrates the variational equation ``J' = Df(x) J`` next to
the state.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Sequence

import numpy as np

from .forms import VecField
from .poly import POSITION, Poly


class IntegrationError(ArithmeticError):
    """A step produced a non-finite value."""


@dataclass(frozen=True)
class PhaseState:
    t: float
    x: tuple

    def __post_init__(self):
        x = tuple(float(v) for v in self.x)
        if len(x) != 3:
            raise ValueError("state must have 3 coordinates")
        if not (math.isfinite(self.t) and all(math.isfinite(v) for v in x)):
            raise ValueError(f"non-finite state t={self.t}, x={x}")
        object.__setattr__(self, "x", x)


@dataclass
class Trajectory:
    """Times ``t`` of shape ``(n,)`` and states ``x`` of shape ``(n, 3)``."""

    t: np.ndarray
    x: np.ndarray
    field: str = ""
    dt: float = 0.0
    method: str = "rk4"
    jacobian_det: np.ndarray | None = None

    def __len__(self):
        return len(self.t)

    def __getitem__(self, i) -> PhaseState:
        return PhaseState(float(self.t[i]), tuple(self.x[i]))

    @property
    def states(self) -> list:
        return [self[i] for i in range(len(self))]


# ----------------------------------------------------------------------
# compilation


def _expr(p: Poly, names: Sequence[str]) -> str:
    parts = []
    for exps, c in p.sorted_terms():
        factors = [repr(float(c))]
        for name, k in zip(names, exps):
            factors.extend([name] * k)
        parts.append("*".join(factors))
    return " + ".join(parts) if parts else "0.0"


def _build(exprs: Sequence[str], nargs: int) -> Callable:
    args = ", ".join(f"y{i}" for i in range(nargs))
    src = f"def _f({args}):\n    return ({', '.join(exprs)},)\n"
    namespace: dict = {}
    exec(compile(src, "<nambu3d-field>", "exec"), namespace)
    return namespace["_f"]


@lru_cache(maxsize=128)
def compile_field(F: VecField) -> Callable:
    """``f(y0, y1, y2) -> (f0, f1, f2)`` as floats."""
    names = ("y0", "y1", "y2")
    return _build([_expr(c, names) for c in F], 3)


@lru_cache(maxsize=128)
def compile_variational(F: VecField) -> Callable:
    """Right-hand side of the 12-dim system ``(x, J)``; ``J`` is row-major."""
    names = ("y0", "y1", "y2")
    exprs = [_expr(c, names) for c in F]
    jac = [[_expr(F[i].diff(POSITION[j]), names) for j in range(3)] for i in range(3)]
    for i in range(3):
        for k in range(3):
            terms = [f"({jac[i][j]})*y{3 + 3 * j + k}" for j in range(3) if jac[i][j] != "0.0"]
            exprs.append(" + ".join(terms) if terms else "0.0")
    return _build(exprs, 12)


def _rk4(f: Callable, y: tuple, dt: float) -> tuple:
    k1 = f(*y)
    k2 = f(*[a + 0.5 * dt * b for a, b in zip(y, k1)])
    k3 = f(*[a + 0.5 * dt * b for a, b in zip(y, k2)])
    k4 = f(*[a + dt * b for a, b in zip(y, k3)])
    return tuple(a + dt / 6.0 * (p + 2.0 * q + 2.0 * r + s) for a, p, q, r, s in zip(y, k1, k2, k3, k4))


def _check_finite(y, step=None):
    if not all(math.isfinite(v) for v in y):
        where = "" if step is None else f" at step {step}"
        raise IntegrationError(f"non-finite state{where}: {y}")


def rk4_step(F: VecField, s: PhaseState, dt: float) -> PhaseState:
    if not dt > 0:
        raise ValueError("dt must be positive")
    y = _rk4(compile_field(F), s.x, dt)
    _check_finite(y)
    return PhaseState(s.t + dt, y)


def _n_steps(dt: float, T: float) -> int:
    if not dt > 0:
        raise ValueError("dt must be positive")
    if T < dt * (1 - 1e-12):
        raise ValueError("T must be at least dt")
    # absorb representation error in T/dt (100/1e-3 etc.)
    return max(1, math.ceil(T / dt * (1 - 1e-12)))


def _run(f, y0: tuple, dt: float, T: float):
    n = _n_steps(dt, T)
    out = np.empty((n + 1, len(y0)))
    y = tuple(float(v) for v in y0)
    _check_finite(y, 0)
    out[0] = y
    for step in range(1, n + 1):
        y = _rk4(f, y, dt)
        _check_finite(y, step)
        out[step] = y
    return np.arange(n + 1) * dt, out


def integrate(F: VecField, x0: Sequence[float], dt: float, T: float, jacobian: bool = False) -> Trajectory:
    """``ceil(T/dt)`` RK4 steps from ``x0``; all states recorded.

    With ``jacobian=True`` the variational equation is carried along and
    ``det J(t)`` is stored on the trajectory.
    """
    x0 = tuple(float(v) for v in x0)
    if jacobian:
        y0 = x0 + (1.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 1.0)
        t, ys = _run(compile_variational(F), y0, dt, T)
        dets = np.linalg.det(ys[:, 3:].reshape(-1, 3, 3))
        return Trajectory(t, ys[:, :3].copy(), str(F.strings()), dt, "rk4", dets)
    t, xs = _run(compile_field(F), x0, dt, T)
    return Trajectory(t, xs, str(F.strings()), dt, "rk4")


def invariant_drift(traj: Trajectory, invariants: Sequence[Poly]) -> list:
    """``max_t |I(x(t)) - I(x0)| / max(|I(x0)|, 1)`` for each invariant."""
    if len(traj) == 0:
        raise ValueError("empty trajectory")
    cols = [traj.x[:, i] for i in range(3)]
    out = []
    for inv in invariants:
        values = np.asarray(inv.evaluate(cols), dtype=float) * np.ones(len(traj))
        ref = values[0]
        out.append(float(np.max(np.abs(values - ref)) / max(abs(ref), 1.0)))
    return out


@dataclass
class VolumeDrift:
    max_drift: float
    t: np.ndarray
    det: np.ndarray
    trajectory: Trajectory = field(repr=False, default=None)


def volume_drift(F: VecField, x0: Sequence[float], dt: float, T: float) -> VolumeDrift:
    """Max ``|det J(t) - 1|`` along the RK4 run of the variational system."""
    traj = integrate(F, x0, dt, T, jacobian=True)
    drift = float(np.max(np.abs(traj.jacobian_det - 1.0)))
    return VolumeDrift(drift, traj.t, traj.jacobian_det, traj)


# ----------------------------------------------------------------------
# exact linear flow


def linear_matrix(F: VecField) -> tuple:
    """Matrix ``A`` with ``F(x) = A x``; raises if ``F`` is not linear homogeneous."""
    A = []
    for comp in F:
        if any(sum(e) != 1 for e, _ in comp.items()):
            raise ValueError(f"component {comp} is not linear homogeneous")
        A.append(tuple(comp.diff(name).constant_value() for name in POSITION))
    return tuple(A)


def _mat(A) -> np.ndarray:
    return np.array([[float(a) for a in row] for row in A])


def _expm_series(M: np.ndarray) -> np.ndarray:
    """Scaling and squaring with a 20-term Taylor polynomial.

    After scaling ``||M|| <= 1/2``, so the truncated tail is below
    ``e * 0.5**21 / 21! < 3e-26`` relative.
    """
    norm = np.linalg.norm(M, ord=1)
    s = max(0, int(math.ceil(math.log2(norm / 0.5)))) if norm > 0.5 else 0
    S = M / 2.0**s
    E = np.eye(len(M))
    term = np.eye(len(M))
    for k in range(1, 21):
        term = term @ S / k
        E = E + term
    for _ in range(s):
        E = E @ E
    return E


def exact_linear_flow(A, x0: Sequence[float], t: float) -> np.ndarray:
    """``exp(A t) x0`` for a constant rational 3x3 matrix.

    When ``tr A = det A = 0`` the characteristic polynomial is
    ``l^3 + c2 l`` and ``exp(At) = I + a(t) A + b(t) A^2`` in closed form
    (trigonometric for ``c2 > 0``, hyperbolic for ``c2 < 0``, polynomial
    for ``c2 = 0``). Other matrices use the series fallback.
    """
    Aq = [[Fraction(a) for a in row] for row in A]
    if len(Aq) != 3 or any(len(r) != 3 for r in Aq):
        raise ValueError("A must be 3x3")
    x0 = np.asarray(x0, dtype=float)
    M = _mat(Aq)
    tr = Aq[0][0] + Aq[1][1] + Aq[2][2]
    det = (
        Aq[0][0] * (Aq[1][1] * Aq[2][2] - Aq[1][2] * Aq[2][1])
        - Aq[0][1] * (Aq[1][0] * Aq[2][2] - Aq[1][2] * Aq[2][0])
        + Aq[0][2] * (Aq[1][0] * Aq[2][1] - Aq[1][1] * Aq[2][0])
    )
    if tr != 0 or det != 0:
        return _expm_series(M * t) @ x0
    c2 = (
        Aq[0][0] * Aq[1][1] - Aq[0][1] * Aq[1][0]
        + Aq[0][0] * Aq[2][2] - Aq[0][2] * Aq[2][0]
        + Aq[1][1] * Aq[2][2] - Aq[1][2] * Aq[2][1]
    )
    if c2 > 0:
        w = math.sqrt(c2)
        a, b = math.sin(w * t) / w, (1.0 - math.cos(w * t)) / c2
    elif c2 < 0:
        w = math.sqrt(-c2)
        a, b = math.sinh(w * t) / w, (math.cosh(w * t) - 1.0) / (-c2)
    else:
        a, b = t, t * t / 2.0
    E = np.eye(3) + a * M + b * (M @ M)
    return E @ x0


# ----------------------------------------------------------------------
# CSV output

CSV_HEADER = ("t", "x0", "x1", "x2", "I1", "I2", "I3", "divJ")


def write_csv(path, traj: Trajectory, invariants: Sequence[Poly | None] = (None, None, None)) -> None:
    """Write ``t,x0,x1,x2,I1,I2,I3,divJ``; ``divJ`` holds ``det J(t)``.

    Missing invariants or Jacobian data are written as ``nan``.
    """
    n = len(traj)
    cols = [traj.x[:, i] for i in range(3)]
    inv_cols = []
    for inv in list(invariants) + [None] * (3 - len(invariants)):
        if inv is None:
            inv_cols.append(np.full(n, np.nan))
        else:
            inv_cols.append(np.asarray(inv.evaluate(cols), dtype=float) * np.ones(n))
    dets = traj.jacobian_det if traj.jacobian_det is not None else np.full(n, np.nan)
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(CSV_HEADER)
        for i in range(n):
            row = (traj.t[i], *traj.x[i], inv_cols[0][i], inv_cols[1][i], inv_cols[2][i], dets[i])
            writer.writerow(["%.17g" % v for v in row])

