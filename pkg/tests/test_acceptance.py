"""Exit criteria for the package, one test per criterion.

Each test appends a PASS/FAIL line to ``ACCEPTANCE`` which the terminal
summary hook in ``conftest.py`` prints at the end of the run.
"""

import time
from fractions import Fraction

import numpy as np

from nambu3d import frenet
from nambu3d.cli import main
from nambu3d.forms import KForm, VecField, div, lie_derivative, rot, volume_form
from nambu3d.integrate import exact_linear_flow, integrate, invariant_drift, volume_drift
from nambu3d.lax import closed_form_invariants, frenet_lax_pair, hamiltonian_relations, lax_fit
from nambu3d.mechanics import (
    UNIT,
    el_residual,
    lagrange_multipliers,
    multiplier_flow_report,
    nambu_flow_field,
    on_shell_derivative,
)
from nambu3d.poly import Poly, parse_poly
from nambu3d.randomized import run_identity_suite, seed_from_env
from nambu3d.verify import frenet_system, run_verify

from conftest import ACCEPTANCE

x0, x1, x2 = Poly.variables()
third = Fraction(1, 3)
EQ10 = VecField(x1, x2 - x0, -x1)
H_PAPER = VecField(
    (x1**2 + x2**2 - x0 * x2) * third,
    -x1 * (x0 + x2) * third,
    (x1**2 + x0**2 - x0 * x2) * third,
)


def record(number, title, ok, detail=""):
    line = f"[{'PASS' if ok else 'FAIL'}] criterion {number}: {title}" + (f" ({detail})" if detail else "")
    ACCEPTANCE.append(line)
    print(line)
    assert ok, line


def test_1_homotopy_reconstruction(tmp_path, capsys):
    psi = KForm(2, {(1, 2): x1, (2, 0): x2 - x0, (0, 1): -x1})
    path = tmp_path / "psi.json"
    path.write_text(psi.to_json())
    start = time.perf_counter()
    code = main(["reconstruct", str(path), "--check"])
    elapsed = time.perf_counter() - start
    out = capsys.readouterr().out
    lines = dict(line.split(": ", 1) for line in out.splitlines())
    h = VecField(*(parse_poly(lines[f"dx{i}"]) for i in range(3)))
    ok = code == 0 and h == H_PAPER and lines["check"] == "pass" and elapsed < 1.0
    record(1, "homotopy reconstruction gives the paper's h exactly", ok, f"{elapsed:.3f} s")


def test_2_formulation_equivalence():
    start = time.perf_counter()
    a = rot(H_PAPER)
    b = nambu_flow_field(frenet.PAIR, UNIT)
    elapsed = time.perf_counter() - start
    ok = a == b == EQ10 and elapsed < 1.0
    record(2, "rot(h) = Nambu field (unit) = linear Frenet field", ok, f"{elapsed:.3f} s")


def test_3_liouville():
    ok = div(EQ10).is_zero() and lie_derivative(EQ10, volume_form()).is_zero()
    record(3, "div X = 0 and Lie_X(Omega) = 0", ok)


def test_4_euler_lagrange_on_shell():
    L = frenet.LAGRANGIAN
    residuals = [el_residual(L, i, k, EQ10) for i, k in ((1, 2), (2, 3), (3, 1))]
    record(4, "vector Euler-Lagrange residuals vanish on shell", all(r.is_zero() for r in residuals),
           str([str(r) for r in residuals]))


def test_5_hamiltonian_relations():
    rels = hamiltonian_relations(frenet.PAIR, closed_form_invariants())
    record(5, "I1 = H1, I2 = H1^2/2 - H2, I3 = H1(H1^2 - 3H2)/3", all(r.passed for r in rels))


def test_6_lax_consistency():
    fit = lax_fit(frenet_lax_pair(), EQ10)
    conserved = all(on_shell_derivative(I, EQ10).is_zero() for I in closed_form_invariants())
    record(6, "Lax fit c = -1/2 and D_t I_k = 0", fit.constant == Fraction(-1, 2) and conserved,
           f"c = {fit.constant}")


def test_7_numeric_conservation():
    start = time.perf_counter()
    traj = integrate(EQ10, (1, 0, 0), 1e-3, 100.0)
    drifts = invariant_drift(traj, closed_form_invariants())
    vol = volume_drift(EQ10, (1, 0, 0), 1e-3, 100.0)
    elapsed = time.perf_counter() - start

    errs = []
    for dt in (0.1, 0.05, 0.025):
        t = integrate(EQ10, (1, 0, 0), dt, 10.0)
        errs.append(np.max(np.abs(t.x[-1] - exact_linear_flow(frenet.MATRIX, (1, 0, 0), 10.0))))
    ratios = [a / b for a, b in zip(errs, errs[1:])]

    ok = (
        elapsed <= 10.0
        and all(dr <= 1e-8 for dr in drifts)
        and vol.max_drift <= 1e-9
        and all(12 <= r <= 20 for r in ratios)
    )
    detail = (f"{elapsed:.2f} s, drift I1..I3 = {', '.join(f'{v:.1e}' for v in drifts)}, "
              f"volume = {vol.max_drift:.1e}, ratios = {', '.join(f'{r:.2f}' for r in ratios)}")
    record(7, "RK4 conserves I1..I3 and volume; 4th-order convergence", ok, detail)


def test_8_identity_suite():
    seed = seed_from_env()
    results = run_identity_suite(seed, cases=100)
    again = run_identity_suite(seed, cases=100)
    ok = (
        len(results) == 7
        and all(r.cases >= 100 and r.passed for r in results)
        and [(r.name, r.failures) for r in results] == [(r.name, r.failures) for r in again]
    )
    failed = [r.name for r in results if not r.passed]
    record(8, "randomized identity suite, 7 x 100 exact cases", ok, f"seed {seed}" + (f", failed {failed}" if failed else ""))


def test_9_convention_transparency(capsys):
    report = run_verify(frenet_system(), "half", cases=10)
    half_entries = [e for e in report["results"] if e["property"].startswith("nambu_flow_field(H1, H2, half)")]
    code = main(["verify", "--convention", "half", "--json"])
    capsys.readouterr()
    lam = lagrange_multipliers(frenet.LAGRANGIAN)
    s = multiplier_flow_report(lam, H_PAPER, EQ10).constant
    ok = (
        code == 0
        and report["passed"]
        and len(half_entries) == 1
        and half_entries[0]["status"] == "report"
        and s == -1
    )
    record(9, "half convention reported, multiplier sign s = -1, run not failed", ok, f"s = {s}")
