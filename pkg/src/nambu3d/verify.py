"""System descriptions and the symbolic verification report.

A report is a list of entries ``{property, status, residual?, fitted_constant?}``
where ``status`` is ``pass``/``fail`` for asserted properties and
``report`` for fitted constants that document a normalization choice.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Optional

from . import frenet
from .forms import VecField, homotopy_potential, interior_product, lie_derivative, volume_form
from .lax import closed_form_invariants, frenet_lax_pair, hamiltonian_relations, lax_fit, trace_invariant
from .mechanics import (
    HALF,
    UNIT,
    BracketConvention,
    NambuPair,
    fit_scalar,
    is_conservative,
    lagrange_multipliers,
    multiplier_flow_report,
    nambu_bracket,
    nambu_flow_field,
    on_shell_derivative,
    el_residual,
    rot_L_check,
    vector_lagrangian_from_h,
    vh_flow_field,
)
from .poly import POSITION, PolyParseError, parse_poly
from .randomized import run_identity_suite, seed_from_env


class SystemSpecError(ValueError):
    """A system file could not be read or parsed."""


@dataclass(frozen=True)
class SystemSpec:
    name: str
    field: VecField
    pair: Optional[NambuPair] = None
    vector_hamiltonian: Optional[VecField] = None

    @property
    def is_frenet(self) -> bool:
        return self.name == "frenet"


def frenet_system() -> SystemSpec:
    return SystemSpec("frenet", frenet.FIELD, frenet.PAIR, frenet.VECTOR_HAMILTONIAN)


def _parse(text, where: str):
    try:
        return parse_poly(text, POSITION)
    except PolyParseError as exc:
        raise SystemSpecError(f"{where}: {exc}") from exc


def load_system(source: str) -> SystemSpec:
    """``"frenet"`` or a JSON file with keys ``field``, ``hamiltonians``,
    ``vector_hamiltonian`` (lists of polynomial strings; at least one)."""
    if source == "frenet":
        return frenet_system()
    path = Path(source)
    try:
        data = json.loads(path.read_text())
    except OSError as exc:
        raise OSError(f"cannot read system file {source}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise SystemSpecError(f"{source}: invalid JSON at line {exc.lineno} column {exc.colno}") from exc
    if not isinstance(data, dict):
        raise SystemSpecError(f"{source}: expected a JSON object")

    def triple(key, n=3):
        raw = data.get(key)
        if raw is None:
            return None
        if not isinstance(raw, list) or len(raw) != n:
            raise SystemSpecError(f"{source}: {key} must be a list of {n} polynomial strings")
        return [_parse(t, f"{source}: {key}[{i}]") for i, t in enumerate(raw)]

    field = triple("field")
    hams = triple("hamiltonians", 2)
    vh = triple("vector_hamiltonian")
    pair = NambuPair(*hams) if hams else None
    vh = VecField(*vh) if vh else None
    if field is not None:
        field = VecField(*field)
    elif pair is not None:
        field = nambu_flow_field(pair, UNIT)
    elif vh is not None:
        field = vh_flow_field(vh)
    else:
        raise SystemSpecError(f"{source}: need field, hamiltonians or vector_hamiltonian")
    return SystemSpec(path.stem, field, pair, vh)


def _entry(prop: str, status: str, residual=None, fitted=None) -> dict:
    out = {"property": prop, "status": status}
    if residual is not None:
        out["residual"] = residual
    if fitted is not None:
        out["fitted_constant"] = str(fitted)
    return out


def _strs(polys) -> list:
    return [str(p) for p in polys]


def _check(prop: str, residuals) -> dict:
    residuals = list(residuals)
    ok = all(r.is_zero() for r in residuals)
    return _entry(prop, "pass" if ok else "fail", None if ok else _strs(residuals))


def run_verify(system: SystemSpec, convention=UNIT, seed: Optional[int] = None, cases: int = 100) -> dict:
    """Full symbolic suite; ``passed`` is False iff some entry is ``fail``."""
    conv = BracketConvention.coerce(convention)
    seed = seed_from_env() if seed is None else seed
    X = system.field
    entries = []

    for res in run_identity_suite(seed, cases):
        entries.append(_entry(f"identity: {res.name} ({res.cases} cases)",
                              "pass" if res.passed else "fail",
                              None if res.passed else res.first_failure))

    ok, residual = is_conservative(X)
    entries.append(_check("div(field) = 0", [residual]))
    entries.append(_check("Lie_X(Omega) = 0", lie_derivative(X, volume_form()).components.values()))

    if system.pair is not None:
        H1, H2 = system.pair.H1, system.pair.H2
        nf = nambu_flow_field(system.pair, conv)
        prop = f"nambu_flow_field(H1, H2, {conv.value}) = field"
        if conv is UNIT:
            entries.append(_check(prop, (a - b for a, b in zip(nf, X))))
        else:
            fit = fit_scalar(tuple(nf), tuple(X))
            if fit.constant == Fraction(1, 2):
                entries.append(_entry(prop + " (factor 1/2 mismatch)", "report", fitted=fit.constant))
            else:
                entries.append(_entry(prop, "fail", _strs(fit.residual), fit.constant))
        entries.append(_check("{H1, H2, H1} = {H1, H2, H2} = 0",
                              [nambu_bracket(H1, H2, H1, conv), nambu_bracket(H1, H2, H2, conv)]))
        if conv is UNIT:
            half = fit_scalar(tuple(nambu_flow_field(system.pair, HALF)), tuple(X))
            entries.append(_entry("half-convention Nambu field / field", "report", fitted=half.constant))

    if system.vector_hamiltonian is not None:
        entries.append(_check("rot(h) = field", (a - b for a, b in zip(vh_flow_field(system.vector_hamiltonian), X))))

    # reconstruction only makes sense for divergence-free fields
    if ok:
        h = VecField.from_one_form(homotopy_potential(interior_product(X, volume_form())))
        entries.append(_check("rot(homotopy h) = field", (a - b for a, b in zip(vh_flow_field(h), X))))
        if system.is_frenet:
            entries.append(_check("homotopy h = paper h", (a - b for a, b in zip(h, frenet.VECTOR_HAMILTONIAN))))
        L = vector_lagrangian_from_h(h)
        entries.append(_check("Euler-Lagrange on shell, (i,k) in (1,2),(2,3),(3,1)",
                              [el_residual(L, i, k, X) for i, k in ((1, 2), (2, 3), (3, 1))]))
        lam = lagrange_multipliers(L)
        mfit = multiplier_flow_report(lam, h, X)
        entries.append(_entry("lambda_dot = s rot(h)", "report",
                              None if mfit.fits else _strs(mfit.residual), mfit.constant))
        entries.append(_entry("rot(L) + lambda_dot", "report", _strs(rot_L_check(L, lam, X))))

    if system.is_frenet:
        pair = frenet_lax_pair()
        lfit = lax_fit(pair, X)
        entries.append(_entry("dA/dt = c [A, B]", "report",
                              None if lfit.fits else _strs(lfit.residual), lfit.constant))
        invs = closed_form_invariants()
        entries.append(_check("D_t I_k = 0 (k = 1..3)", [on_shell_derivative(I, X) for I in invs]))
        entries.append(_check("D_t Tr(A^k)/k = 0 (k = 1..3)",
                              [on_shell_derivative(trace_invariant(pair.A, k), X) for k in (1, 2, 3)]))
        for k, I in enumerate(invs, start=1):
            tfit = fit_scalar([trace_invariant(pair.A, k)], [I])
            entries.append(_entry(f"Tr(A^{k})/{k} / I{k}", "report",
                                  None if tfit.fits else _strs(tfit.residual), tfit.constant))
        for rel in hamiltonian_relations(system.pair):
            entries.append(_entry(rel.name, "pass" if rel.passed else "fail",
                                  None if rel.passed else str(rel.residual)))

    passed = all(e["status"] != "fail" for e in entries)
    return {
        "system": system.name,
        "convention": conv.value,
        "seed": seed,
        "passed": passed,
        "results": entries,
    }


def report_json(report: dict) -> str:
    return json.dumps(report, indent=2, sort_keys=True)
