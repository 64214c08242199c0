"""Command-line interface.

Exit codes: 0 pass, 1 property failure, 2 parse error, 3 I/O error,
4 non-closed input, 5 unsupported combination.
"""

from __future__ import annotations

import argparse
import itertools
import json
import sys
from pathlib import Path

from . import frenet
from .forms import KForm, NotClosedError, d, homotopy_potential
from .integrate import IntegrationError, integrate, invariant_drift, write_csv
from .lax import closed_form_invariants, frenet_lax_pair, hamiltonian_relations, lax_fit, trace_invariant
from .mechanics import NambuPair, nambu_bracket
from .poly import POSITION, PolyParseError, parse_poly
from .verify import SystemSpecError, load_system, report_json, run_verify

EXIT_OK, EXIT_FAIL, EXIT_PARSE, EXIT_IO, EXIT_NOT_CLOSED, EXIT_UNSUPPORTED = range(6)


def _err(msg: str) -> None:
    print(f"error: {msg}", file=sys.stderr)


def _load(source: str):
    try:
        return load_system(source), None
    except SystemSpecError as exc:
        _err(str(exc))
        return None, EXIT_PARSE
    except OSError as exc:
        _err(str(exc))
        return None, EXIT_IO


def cmd_verify(args) -> int:
    system, code = _load(args.system)
    if system is None:
        return code
    report = run_verify(system, args.convention)
    if args.json:
        print(report_json(report))
    else:
        for e in report["results"]:
            extra = f"  c = {e['fitted_constant']}" if "fitted_constant" in e else ""
            if "residual" in e:
                extra += f"  residual = {e['residual']}"
            print(f"{e['status']:6s} {e['property']}{extra}")
        print("PASS" if report["passed"] else "FAIL")
    return EXIT_OK if report["passed"] else EXIT_FAIL


def _floats(text: str, n: int = 3) -> tuple:
    parts = [float(p) for p in text.split(",")]
    if len(parts) != n:
        raise ValueError(f"expected {n} comma-separated numbers, got {text!r}")
    return tuple(parts)


def cmd_simulate(args) -> int:
    system, code = _load(args.system)
    if system is None:
        return code
    try:
        x0 = _floats(args.x0)
    except ValueError as exc:
        _err(str(exc))
        return EXIT_PARSE
    if system.is_frenet:
        invariants = list(closed_form_invariants())
    elif system.pair is not None:
        invariants = [system.pair.H1, system.pair.H2, None]
    else:
        invariants = [None, None, None]
    try:
        traj = integrate(system.field, x0, args.dt, args.T, jacobian=True)
    except (ValueError, IntegrationError) as exc:
        _err(str(exc))
        return EXIT_PARSE if isinstance(exc, ValueError) else EXIT_FAIL
    try:
        write_csv(args.out, traj, invariants)
    except OSError as exc:
        _err(f"cannot write {args.out}: {exc}")
        return EXIT_IO
    present = [I for I in invariants if I is not None]
    drifts = invariant_drift(traj, present)
    names = [f"I{i + 1}" for i, I in enumerate(invariants) if I is not None]
    for name, value in zip(names, drifts):
        print(f"{name} drift: {value:.3e}")
    print(f"volume drift: {float(abs(traj.jacobian_det - 1.0).max()):.3e}")
    print(f"wrote {len(traj)} rows to {args.out}")
    return EXIT_OK


def _form_lines(form: KForm) -> list:
    if form.degree == 0:
        return [f"f: {form[()]}"]
    return [
        f"{'^'.join(f'dx{i}' for i in key)}: {form[key]}"
        for key in itertools.combinations(range(3), form.degree)
    ]


def cmd_reconstruct(args) -> int:
    try:
        text = Path(args.form).read_text()
    except OSError as exc:
        _err(f"cannot read {args.form}: {exc}")
        return EXIT_IO
    try:
        form = KForm.from_json(text)
    except (ValueError, KeyError, TypeError) as exc:
        _err(f"{args.form}: {exc}")
        return EXIT_PARSE
    if form.degree == 0:
        _err("cannot reconstruct a potential for a 0-form")
        return EXIT_UNSUPPORTED
    try:
        potential = homotopy_potential(form)
    except NotClosedError as exc:
        _err(str(exc))
        return EXIT_NOT_CLOSED
    if args.json:
        print(potential.to_json(sort_keys=True))
    else:
        print("\n".join(_form_lines(potential)))
    if args.check:
        # re-parse the printed form to confirm the text round-trip too
        again = KForm.from_json(potential.to_json())
        ok = d(again) == form
        print(f"check: {'pass' if ok else 'fail'}")
        if not ok:
            return EXIT_FAIL
    return EXIT_OK


def cmd_bracket(args) -> int:
    try:
        H, F, G = (parse_poly(t, POSITION) for t in (args.H, args.F, args.G))
    except PolyParseError as exc:
        _err(str(exc))
        return EXIT_PARSE
    print(nambu_bracket(H, F, G, args.convention))
    return EXIT_OK


def cmd_lax(args) -> int:
    if args.system != "frenet":
        _err("lax reports are only available for the builtin frenet system")
        return EXIT_UNSUPPORTED
    pair = frenet.PAIR
    if args.perturb:
        pair = NambuPair(pair.H1, pair.H2 + 1)
    lax = frenet_lax_pair()
    fit = lax_fit(lax, frenet.FIELD)
    traces = [trace_invariant(lax.A, k) for k in (1, 2, 3)]
    relations = hamiltonian_relations(pair)
    report = {
        "fitted_c": None if fit.constant is None else str(fit.constant),
        "trace_invariants": [str(t) for t in traces],
        "closed_form_invariants": [str(I) for I in closed_form_invariants()],
        "relations": [
            {"relation": r.name, "status": "pass" if r.passed else "fail", "residual": str(r.residual)}
            for r in relations
        ],
    }
    if args.json:
        print(json.dumps(report, indent=2, sort_keys=True))
    else:
        print(f"dA/dt = c [A, B] with c = {report['fitted_c']}")
        for k, t in enumerate(report["trace_invariants"], start=1):
            print(f"Tr(A^{k})/{k} = {t}")
        for k, I in enumerate(report["closed_form_invariants"], start=1):
            print(f"I{k} = {I}")
        for r in report["relations"]:
            print(f"{r['status']:4s} {r['relation']}" + ("" if r["status"] == "pass" else f"  residual = {r['residual']}"))
    return EXIT_OK if all(r.passed for r in relations) else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="nambu3d", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def add_system(p):
        p.add_argument("--system", default="frenet", help="'frenet' or a JSON system file")

    def add_convention(p):
        p.add_argument("--convention", choices=("unit", "half"), default="unit")

    p = sub.add_parser("verify", help="run the symbolic verification suite")
    add_system(p)
    add_convention(p)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("simulate", help="integrate the flow and write a CSV")
    add_system(p)
    p.add_argument("--x0", default="1,0,0")
    p.add_argument("--dt", type=float, default=1e-3)
    p.add_argument("--T", type=float, default=100.0)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("reconstruct", help="radial homotopy potential of a closed form")
    p.add_argument("form", help="JSON form file {degree, components}")
    p.add_argument("--check", action="store_true")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_reconstruct)

    p = sub.add_parser("bracket", help="evaluate the Nambu bracket {H, F, G}")
    p.add_argument("H")
    p.add_argument("F")
    p.add_argument("G")
    add_convention(p)
    p.set_defaults(func=cmd_bracket)

    p = sub.add_parser("lax", help="Lax-pair and invariant report")
    add_system(p)
    p.add_argument("--json", action="store_true")
    p.add_argument("--perturb", action="store_true", help=argparse.SUPPRESS)
    p.set_defaults(func=cmd_lax)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
