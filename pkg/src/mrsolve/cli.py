"""Command-line front end: ``mrsolve {energy,wavefunction,table,verify,hulthen,coulomb}``.

Exit status is 0 on success, 1 for domain errors (unbound state, unknown
molecule, bad config file) and 2 for usage errors.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from .core import ATOMIC, HBAR_C_EV_ANGSTROM, PotentialParams, QuantumState, UnitSystem
from .errors import MRSolveError
from .oracle import approximation_error_report
from .spectrum import coulomb_limit, energy_nl, hulthen_energy
from .tables import (
    STATE_LABELS,
    TableRequest,
    amu_to_energy_default,
    build_errata,
    compare_with_published,
    fit_amu_constant,
    format_energy,
    generate_table,
    load_golden,
    molecule_table,
    molecular_units,
    rows_to_csv,
    rows_to_json,
)
from .wavefunctions import radial_wavefunction

log = logging.getLogger("mrsolve")


class _UsageError(Exception):
    pass


def _add_potential_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--state", required=True, help="spectroscopic label, e.g. 2p")
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--invb", type=float, required=True,
                   help="inverse range 1/b (bohr^-1 in atomic units, pm^-1 with --molecule)")
    p.add_argument("--A", dest="A", type=float, default=None, help="explicit coupling A")
    p.add_argument("--A-rule", dest="a_rule", choices=["2b"], default="2b",
                   help="convention for A when --A is not given (default: 2b)")
    _add_unit_args(p)


def _add_unit_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--units", choices=["atomic", "ev"], default=None)
    p.add_argument("--molecule", default=None, help="built-in or user molecule name")
    p.add_argument("--molecules-file", default=None)
    p.add_argument("--amu-ev", type=float, default=None,
                   help="amu -> eV constant (default 931.494e6 or $MRSOLVE_AMU_EV)")
    p.add_argument("--hbar-c", type=float, default=HBAR_C_EV_ANGSTROM)


def _add_output_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--format", choices=["csv", "json"], default="csv")
    p.add_argument("--out", default=None, help="write here instead of standard output")


def _resolve_setup(args) -> tuple[PotentialParams, UnitSystem, bool]:
    """Potential parameters and units from the shared flags."""
    molecular = args.molecule is not None
    if args.units == "ev" and not molecular:
        raise _UsageError("--units ev needs --molecule")
    if args.units == "atomic" and molecular:
        raise _UsageError("--molecule implies --units ev")
    if not args.invb > 0:
        raise _UsageError("--invb must be positive")
    b = 1.0 / args.invb
    A = 2.0 * b if args.A is None else args.A
    if molecular:
        mols = molecule_table(args.molecules_file)
        if args.molecule not in mols:
            raise MRSolveError(f"unknown molecule {args.molecule!r}; known: {', '.join(sorted(mols))}")
        amu = amu_to_energy_default() if args.amu_ev is None else args.amu_ev
        u = molecular_units(mols[args.molecule], amu, args.hbar_c)
        return PotentialParams(A, args.alpha, b / 100.0), u, True
    return PotentialParams(A, args.alpha, b), ATOMIC, False


def _emit(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        Path(out).write_text(text, encoding="utf-8", newline="\n")


def cmd_energy(args) -> int:
    s = QuantumState.from_label(args.state)
    p, u, molecular = _resolve_setup(args)
    print(format_energy(energy_nl(s, p, u), molecular))
    return 0


def cmd_wavefunction(args) -> int:
    s = QuantumState.from_label(args.state)
    p, u, _ = _resolve_setup(args)
    grid = None
    if args.points is not None:
        from .wavefunctions import default_grid

        grid = default_grid(s, p, args.points)
    rf = radial_wavefunction(s, p, u, grid, method=args.norm)
    if args.format == "csv":
        text = rf.to_csv()
    else:
        doc = rf.to_json_dict()
        doc["units"] = {"length": u.length_unit}
        text = json.dumps(doc) + "\n"
    _emit(text, args.out)
    return 0


def cmd_table(args) -> int:
    req = TableRequest(
        table_id=args.id,
        states=tuple(args.states) if args.states else STATE_LABELS,
        invb_values=tuple(args.invb) if args.invb else None,
        alphas=tuple(args.alpha) if args.alpha else None,
        output=args.format,
        out_path=args.out,
        amu_to_energy=args.amu_ev,
        molecules_file=args.molecules_file,
        molecules=tuple(args.molecule) if args.molecule else None,
    )
    rows = generate_table(req)
    text = rows_to_csv(rows, req.molecular) if req.output == "csv" else rows_to_json(rows, req)
    _emit(text, req.out_path)
    return 0


def cmd_verify(args) -> int:
    amu = args.amu_ev
    if amu is None:
        amu = fit_amu_constant()[0] if args.fit_amu else amu_to_energy_default()
    report: dict = {"amu_to_energy": amu, "tables": {}}
    for tid in args.id or [1, 2, 3]:
        comps = compare_with_published(tid, amu)
        counts = {k: sum(c.status == k for c in comps) for k in ("ok", "mismatch", "excluded")}
        report["tables"][str(tid)] = {
            "counts": counts,
            "mismatches": [c.as_dict() for c in comps if c.status == "mismatch"],
        }
        print(f"table {tid}: {counts['ok']} ok, {counts['mismatch']} mismatch, "
              f"{counts['excluded']} excluded", file=sys.stderr)
    if args.oracle:
        groups: dict[tuple[str, float], set[QuantumState]] = {}
        for c in load_golden(1):
            groups.setdefault((c.invb, c.alpha), set()).add(QuantumState.from_label(c.state))
        entries = []
        for (invb, alpha), states in sorted(groups.items()):
            b = 1.0 / float(invb)
            p = PotentialParams(2 * b, alpha, b)
            for e in approximation_error_report(p, sorted(states), ATOMIC):
                entries.append({"invb": invb, "alpha": alpha, **e.as_dict()})
        report["oracle"] = entries
    if args.errata:
        Path(args.errata).write_text(json.dumps(build_errata(amu), indent=2) + "\n", encoding="utf-8")
    if args.format == "json":
        _emit(json.dumps(report, indent=2) + "\n", args.out)
    else:
        lines = ["table,molecule,state,invb,alpha,printed,computed,diff,status"]
        for tid, t in report["tables"].items():
            for m in t["mismatches"]:
                lines.append(f"{tid},{m['molecule'] or ''},{m['state']},{m['invb']},{m['alpha']:g},"
                             f"{m['printed']!r},{m['computed']!r},{m['diff']:.3e},{m['status']}")
        for e in report.get("oracle", []):
            lines.append(f"oracle,,{e['state']},{e['invb']},{e['alpha']:g},{e['e_oracle_exact']!r},"
                         f"{e['e_closed']!r},{e['err_approx']:.3e},approx-error")
        _emit("\n".join(lines) + "\n", args.out)
    return 0


def cmd_hulthen(args) -> int:
    s = QuantumState.from_label(args.state)
    e = hulthen_energy(s, args.strength, args.delta, ATOMIC)
    print(format_energy(e, False))
    return 0


def cmd_coulomb(args) -> int:
    s = QuantumState.from_label(args.state)
    print(format_energy(coulomb_limit(s, args.Z, ATOMIC), False))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="mrsolve", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("energy", help="closed-form level of one state")
    _add_potential_args(p)
    p.set_defaults(func=cmd_energy)

    p = sub.add_parser("wavefunction", help="sample the normalised radial function")
    _add_potential_args(p)
    _add_output_args(p)
    p.add_argument("--points", type=int, default=None)
    p.add_argument("--norm", choices=["closed_form", "quadrature"], default="closed_form")
    p.set_defaults(func=cmd_wavefunction)

    p = sub.add_parser("table", help="regenerate published table 1, 2 or 3")
    p.add_argument("--id", type=int, choices=[1, 2, 3], required=True)
    p.add_argument("--states", nargs="+", default=None)
    p.add_argument("--invb", nargs="+", default=None, help="override the published 1/b grid")
    p.add_argument("--alpha", nargs="+", type=float, default=None, help="override the alpha columns")
    p.add_argument("--molecule", action="append", default=None)
    p.add_argument("--molecules-file", default=None)
    p.add_argument("--amu-ev", type=float, default=None)
    _add_output_args(p)
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("verify", help="compare against the published tables and the Numerov oracle")
    p.add_argument("--id", type=int, choices=[1, 2, 3], action="append", default=None)
    p.add_argument("--oracle", action="store_true", help="also run the Numerov check over table 1")
    p.add_argument("--amu-ev", type=float, default=None)
    p.add_argument("--fit-amu", action="store_true",
                   help="fit the amu constant within [931.494e6, 931.502e6] first")
    p.add_argument("--errata", default=None, help="write errata.json here")
    _add_output_args(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("hulthen", help="Hulthen level (atomic units)")
    p.add_argument("--state", required=True)
    p.add_argument("--delta", type=float, required=True)
    p.add_argument("--strength", type=float, default=1.0, help="Z e^2 (default 1)")
    p.set_defaults(func=cmd_hulthen)

    p = sub.add_parser("coulomb", help="hydrogen-like level (atomic units)")
    p.add_argument("--state", required=True)
    p.add_argument("--Z", type=float, default=1.0)
    p.set_defaults(func=cmd_coulomb)
    return parser


def run_cli(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s: %(message)s")
    try:
        return args.func(args)
    except _UsageError as exc:
        print(f"mrsolve: usage error: {exc}", file=sys.stderr)
        return 2
    except (MRSolveError, OSError) as exc:
        print(f"mrsolve: error: {exc}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(run_cli())
