"""Differential forms, vector fields and the homotopy operator on 3-space.

Forms have :class:`~nambu3d.poly.Poly` coefficients over ``POSITION``.
A k-form is stored as ``{sorted index tuple: Poly}``; ``(0, 2)`` means
``dx0 ^ dx2``.

Pseudo-vector identifications use the Plücker area elements
``dS0 = dx1^dx2``, ``dS1 = dx2^dx0``, ``dS2 = dx0^dx1``, so that
``d(h . dx) = rot(h) . dS`` and ``X _| Omega = X . dS``.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Union

from .poly import POSITION, Poly, parse_poly

DIM = 3
# (i, j, k) cyclic: dS_i = dx_j ^ dx_k
_CYCLIC = ((0, 1, 2), (1, 2, 0), (2, 0, 1))


class DegreeError(ValueError):
    """Requested operation would move a form outside degrees 0..3."""


class NotClosedError(ValueError):
    """Homotopy reconstruction was asked for a form with ``d(form) != 0``."""

    def __init__(self, residual: "KForm"):
        super().__init__(f"form is not closed; d(form) = {residual.to_dict()['components']}")
        self.residual = residual


def _sort_indices(idx):
    """Return (sign, sorted tuple), or (0, None) if an index repeats."""
    if len(set(idx)) != len(idx):
        return 0, None
    idx = list(idx)
    sign = 1
    # insertion sort, counting transpositions
    for i in range(1, len(idx)):
        j = i
        while j > 0 and idx[j - 1] > idx[j]:
            idx[j - 1], idx[j] = idx[j], idx[j - 1]
            sign = -sign
            j -= 1
    return sign, tuple(idx)


class KForm:
    """Differential form of degree 0..3 with polynomial coefficients.

    ``degenerate`` marks a zero produced by a request that falls outside
    the degree range (``d`` of a 3-form, contraction past degree 0).
    """

    __slots__ = ("degree", "_components", "degenerate")

    def __init__(self, degree: int, components: Mapping | None = None, degenerate: bool = False):
        if not 0 <= degree <= DIM:
            raise DegreeError(f"degree {degree} outside 0..{DIM}")
        comps: dict = {}
        for key, coeff in (components or {}).items():
            key = tuple(key)
            if len(key) != degree or any(not 0 <= i < DIM for i in key):
                raise ValueError(f"bad index tuple {key} for a {degree}-form")
            if not isinstance(coeff, Poly):
                coeff = Poly.const(coeff)
            if coeff.alphabet != POSITION:
                raise ValueError("form coefficients must be over the position alphabet")
            sign, skey = _sort_indices(key)
            if sign == 0:
                continue
            total = comps.get(skey, Poly.zero()) + coeff.scale(sign)
            if total.is_zero():
                comps.pop(skey, None)
            else:
                comps[skey] = total
        self.degree = degree
        self._components = comps
        self.degenerate = degenerate

    @classmethod
    def zero(cls, degree: int, degenerate: bool = False) -> "KForm":
        return cls(degree, {}, degenerate)

    @classmethod
    def function(cls, f: Poly) -> "KForm":
        return cls(0, {(): f})

    @classmethod
    def basis(cls, *indices: int) -> "KForm":
        """``basis(0, 1)`` is ``dx0 ^ dx1``."""
        return cls(len(indices), {tuple(indices): Poly.const(1)})

    @property
    def components(self) -> dict:
        return dict(self._components)

    def __getitem__(self, key) -> Poly:
        sign, skey = _sort_indices(tuple(key))
        if sign == 0:
            return Poly.zero()
        return self._components.get(skey, Poly.zero()).scale(sign)

    def is_zero(self) -> bool:
        return not self._components

    def __eq__(self, other):
        if not isinstance(other, KForm):
            return NotImplemented
        return self.degree == other.degree and self._components == other._components

    def __hash__(self):
        return hash((self.degree, frozenset(self._components.items())))

    def __add__(self, other: "KForm") -> "KForm":
        if self.degree != other.degree:
            raise DegreeError("cannot add forms of different degree")
        comps = dict(self._components)
        for k, v in other._components.items():
            comps[k] = comps.get(k, Poly.zero()) + v
        return KForm(self.degree, comps)

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "KForm":
        """Multiply by a rational or a polynomial function."""
        return KForm(self.degree, {k: v * c for k, v in self._components.items()})

    def __mul__(self, c):
        return self.scale(c)

    __rmul__ = __mul__

    def __repr__(self):
        inner = ", ".join(f"{''.join(map(str, k)) or '()'}: {v}" for k, v in sorted(self._components.items()))
        return f"KForm({self.degree}, {{{inner}}})"

    # -- serialization --------------------------------------------------

    def to_dict(self) -> dict:
        return {
            "degree": self.degree,
            "components": {"".join(map(str, k)): str(v) for k, v in sorted(self._components.items())},
        }

    def to_json(self, **kwargs) -> str:
        return json.dumps(self.to_dict(), **kwargs)

    @classmethod
    def from_dict(cls, data: Mapping) -> "KForm":
        degree = int(data["degree"])
        comps = {}
        for key, text in data.get("components", {}).items():
            if degree == 0 and key in ("", "()"):
                idx = ()
            else:
                if not key.isdigit():
                    raise ValueError(f"bad component key {key!r}")
                idx = tuple(int(ch) for ch in key)
            comps[idx] = comps.get(idx, Poly.zero()) + parse_poly(text, POSITION)
        return cls(degree, comps)

    @classmethod
    def from_json(cls, text: str) -> "KForm":
        return cls.from_dict(json.loads(text))


@dataclass(frozen=True)
class VecField:
    """Polynomial vector field (or pseudo-vector) on 3-space."""

    c0: Poly
    c1: Poly
    c2: Poly

    def __post_init__(self):
        for name in ("c0", "c1", "c2"):
            value = getattr(self, name)
            if not isinstance(value, Poly):
                value = Poly.const(value)
                object.__setattr__(self, name, value)
            if value.alphabet != POSITION:
                raise ValueError("VecField components must be over the position alphabet")

    @classmethod
    def of(cls, *components: Union[Poly, str, int, Fraction]) -> "VecField":
        comps = [parse_poly(c, POSITION) if isinstance(c, str) else c for c in components]
        return cls(*comps)

    @classmethod
    def zero(cls) -> "VecField":
        return cls(Poly.zero(), Poly.zero(), Poly.zero())

    def __iter__(self):
        return iter((self.c0, self.c1, self.c2))

    def __getitem__(self, i: int) -> Poly:
        return (self.c0, self.c1, self.c2)[i]

    def __add__(self, other: "VecField") -> "VecField":
        return VecField(*(a + b for a, b in zip(self, other)))

    def __sub__(self, other: "VecField") -> "VecField":
        return VecField(*(a - b for a, b in zip(self, other)))

    def __neg__(self):
        return VecField(*(-a for a in self))

    def scale(self, c) -> "VecField":
        return VecField(*(a * c for a in self))

    def dot(self, other: "VecField") -> Poly:
        return self.c0 * other.c0 + self.c1 * other.c1 + self.c2 * other.c2

    def cross(self, other: "VecField") -> "VecField":
        a, b = self, other
        return VecField(a.c1 * b.c2 - a.c2 * b.c1, a.c2 * b.c0 - a.c0 * b.c2, a.c0 * b.c1 - a.c1 * b.c0)

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self)

    def strings(self) -> list:
        return [str(c) for c in self]

    # -- duality with forms ------------------------------------------------

    def to_one_form(self) -> KForm:
        return KForm(1, {(i,): c for i, c in enumerate(self)})

    @classmethod
    def from_one_form(cls, form: KForm) -> "VecField":
        if form.degree != 1:
            raise DegreeError("expected a 1-form")
        return cls(*(form[(i,)] for i in range(DIM)))

    def to_two_form(self) -> KForm:
        """``F . dS``."""
        return KForm(2, {(j, k): self[i] for i, j, k in _CYCLIC})

    @classmethod
    def from_two_form(cls, form: KForm) -> "VecField":
        if form.degree != 2:
            raise DegreeError("expected a 2-form")
        return cls(*(form[(j, k)] for _, j, k in _CYCLIC))


@dataclass(frozen=True)
class BiVec:
    """Bivector ``P = b0 d1^d2 + b1 d2^d0 + b2 d0^d1`` stored by its dual vector ``b``."""

    dual: VecField

    def component(self, a: int, b: int) -> Poly:
        """Antisymmetric coefficient ``P^{ab}``."""
        if a == b:
            return Poly.zero()
        for i, j, k in _CYCLIC:
            if (a, b) == (j, k):
                return self.dual[i]
            if (a, b) == (k, j):
                return -self.dual[i]
        raise IndexError((a, b))

    def is_zero(self) -> bool:
        return self.dual.is_zero()


def dS(i: int) -> KForm:
    """Plücker area element ``dS_i``."""
    _, j, k = _CYCLIC[i]
    return KForm.basis(j, k)


def volume_form() -> KForm:
    return KForm.basis(0, 1, 2)


# ----------------------------------------------------------------------
# operators


def _var(i: int) -> str:
    return POSITION[i]


def exterior_derivative(form: KForm) -> KForm:
    if form.degree == DIM:
        return KForm.zero(DIM, degenerate=True)
    comps: dict = {}
    for key, coeff in form.components.items():
        for i in range(DIM):
            sign, skey = _sort_indices((i,) + key)
            if sign == 0:
                continue
            part = coeff.diff(_var(i))
            if part:
                comps[skey] = comps.get(skey, Poly.zero()) + part.scale(sign)
    return KForm(form.degree + 1, comps)


d = exterior_derivative


def wedge(a: KForm, b: KForm) -> KForm:
    deg = a.degree + b.degree
    if deg > DIM:
        return KForm.zero(DIM, degenerate=True)
    comps: dict = {}
    for ka, ca in a.components.items():
        for kb, cb in b.components.items():
            sign, key = _sort_indices(ka + kb)
            if sign:
                comps[key] = comps.get(key, Poly.zero()) + (ca * cb).scale(sign)
    return KForm(deg, comps)


def _contract_vector(X: VecField, form: KForm) -> KForm:
    comps: dict = {}
    for key, coeff in form.components.items():
        # X _| dx_{i1}^...^dx_{ik} = sum_r (-1)^r X_{ir} dx_{...without ir...}
        for r, i in enumerate(key):
            rest = key[:r] + key[r + 1:]
            term = X[i] * coeff
            if r % 2:
                term = -term
            comps[rest] = comps.get(rest, Poly.zero()) + term
    return KForm(form.degree - 1, comps)


def interior_product(X: Union[VecField, BiVec], form: KForm, half: bool = False, strict: bool = False) -> KForm:
    """Contract a vector or bivector field into ``form``.

    For a bivector, ``d_a ^ d_b _| (dx_a ^ dx_b) = 1`` (``half=False``) or
    ``1/2`` (``half=True``). Contracting past degree 0 returns a zero form
    flagged ``degenerate``, or raises :class:`DegreeError` if ``strict``.
    """
    if isinstance(X, BiVec):
        if form.degree < 2:
            if strict:
                raise DegreeError("bivector contraction needs a form of degree >= 2")
            return KForm.zero(0, degenerate=True)
        comps: dict = {}
        for a, b in itertools.combinations(range(DIM), 2):
            pab = X.component(a, b)
            if pab.is_zero():
                continue
            # P^{ab} d_a^d_b acts as i_{d_b} i_{d_a}
            inner = _contract_vector(_unit(b), _contract_vector(_unit(a), form))
            for k, v in inner.components.items():
                comps[k] = comps.get(k, Poly.zero()) + pab * v
        out = KForm(form.degree - 2, comps)
        return out.scale(Fraction(1, 2)) if half else out
    if form.degree < 1:
        if strict:
            raise DegreeError("cannot contract a 0-form")
        return KForm.zero(0, degenerate=True)
    return _contract_vector(X, form)


def _unit(i: int) -> VecField:
    comps = [Poly.zero()] * DIM
    comps[i] = Poly.const(1)
    return VecField(*comps)


def lie_derivative(X: VecField, form: KForm) -> KForm:
    """Cartan formula ``X _| d(form) + d(X _| form)``."""
    first = interior_product(X, exterior_derivative(form)) if form.degree < DIM else KForm.zero(DIM)
    if form.degree == 0:
        return first
    return first + exterior_derivative(interior_product(X, form))


def grad(f: Poly) -> VecField:
    return VecField(*(f.diff(_var(i)) for i in range(DIM)))


def rot(F: VecField) -> VecField:
    return VecField(*(F[k].diff(_var(j)) - F[j].diff(_var(k)) for _, j, k in _CYCLIC))


def div(F: VecField) -> Poly:
    return F.c0.diff("x0") + F.c1.diff("x1") + F.c2.diff("x2")


def homotopy_potential(form: KForm) -> KForm:
    """Radial-gauge potential of a closed polynomial form.

    A monomial of total degree ``m`` in a ``k``-form picks up the weight
    ``1/(m+k)`` and is contracted with the radial field ``R = x . d/dx``;
    the result ``P`` satisfies ``d(P) = form`` exactly.

    Raises
    ------
    NotClosedError
        If ``d(form)`` is not the zero form.
    DegreeError
        For 0-forms.
    """
    if form.degree < 1:
        raise DegreeError("homotopy operator needs degree >= 1")
    if form.degree < DIM:
        residual = exterior_derivative(form)
        if not residual.is_zero():
            raise NotClosedError(residual)
    k = form.degree
    radial = VecField(*Poly.variables())
    weighted: dict = {}
    for key, coeff in form.components.items():
        parts = {}
        for exps, c in coeff.items():
            parts[exps] = c / (sum(exps) + k)
        weighted[key] = Poly(parts)
    return interior_product(radial, KForm(k, weighted))
