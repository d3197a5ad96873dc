"""Command-line interface: spectrum tables, texture grids, gauge checks, verification.

Exit codes: 0 success, 1 verification failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import datetime as _dt
import hashlib
import json
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .gauge import gauge_check
from .grid import GridSpec
from .params import InvalidConfigError, NaturalParams, PhysicalConfig, derive_natural, load_config
from .spectrum import Branch, LevelKey, eigenspinor, levels
from .suite import run_suite
from .texture import spin_density, superpose, to_csv, to_json

DEFAULT_A_TILDE = 0.3
DEFAULT_G_TILDE = 0.1

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _json_default(obj):
    if isinstance(obj, (np.bool_,)):
        return bool(obj)
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, np.floating):
        return float(obj)
    if isinstance(obj, complex):
        return [obj.real, obj.imag]
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def dumps(doc) -> str:
    return json.dumps(doc, sort_keys=True, indent=2, default=_json_default) + "\n"


def fmt(v: float) -> str:
    return format(v, ".17g")


def _add_param_flags(p: argparse.ArgumentParser):
    nat = p.add_argument_group("natural units")
    nat.add_argument("--a-tilde", type=float, help=f"Rashba strength alpha/(r hbar omega) (default {DEFAULT_A_TILDE})")
    zee = nat.add_mutually_exclusive_group()
    zee.add_argument("--g-tilde", type=float, help=f"Zeeman ratio g mu B/(hbar omega) (default {DEFAULT_G_TILDE})")
    zee.add_argument("--xi", type=float, help="lowest-level energy 1/2 - g_tilde")
    si = p.add_argument_group("SI inputs (alternative to natural units)")
    si.add_argument("--b-tesla", type=float)
    si.add_argument("--mass-ratio", type=float)
    si.add_argument("--g-factor", type=float)
    si.add_argument("--alpha-ev-nm", type=float)
    si.add_argument("--config", type=Path, help="JSON file with b_z_tesla, mass_ratio, g_factor, alpha_ev_nm")


def resolve_params(args) -> NaturalParams:
    natural = any(v is not None for v in (args.a_tilde, args.g_tilde, args.xi))
    si_flags = {k: getattr(args, k) for k in ("b_tesla", "mass_ratio", "g_factor", "alpha_ev_nm")}
    si = any(v is not None for v in si_flags.values()) or args.config is not None
    if natural and si:
        raise UsageError("natural-unit flags and SI flags/--config are mutually exclusive")
    if si:
        try:
            if args.config is not None:
                if any(v is not None for v in si_flags.values()):
                    raise UsageError("--config cannot be combined with SI flags")
                cfg = load_config(args.config)
            else:
                missing = [k for k in ("b_tesla", "mass_ratio", "g_factor") if si_flags[k] is None]
                if missing:
                    raise UsageError("SI input needs --b-tesla, --mass-ratio and --g-factor")
                cfg = PhysicalConfig.from_mapping({
                    "b_z_tesla": args.b_tesla, "mass_ratio": args.mass_ratio,
                    "g_factor": args.g_factor, "alpha_ev_nm": args.alpha_ev_nm or 0.0})
        except (InvalidConfigError, OSError, json.JSONDecodeError) as exc:
            raise UsageError(str(exc)) from exc
        return derive_natural(cfg)
    a = DEFAULT_A_TILDE if args.a_tilde is None else args.a_tilde
    if args.xi is not None:
        return NaturalParams.from_xi(args.xi, a)
    return NaturalParams(a_tilde=a, g_tilde=DEFAULT_G_TILDE if args.g_tilde is None else args.g_tilde)


def write_output(text: str, out: Path | None, command: str, params: NaturalParams, extra=None):
    """Write ``text`` to ``out`` (or stdout) and a ``.manifest.json`` beside any file."""
    if out is None:
        sys.stdout.write(text)
        return
    out = Path(out)
    out.parent.mkdir(parents=True, exist_ok=True)
    data = text.encode()
    out.write_bytes(data)
    manifest = {
        "command": command,
        "parameters": params.as_dict(),
        "options": extra or {},
        "version": __version__,
        "output": out.name,
        "sha256": hashlib.sha256(data).hexdigest(),
        "created": _dt.datetime.now(_dt.timezone.utc).isoformat(timespec="seconds"),
    }
    out.with_name(out.name + ".manifest.json").write_text(dumps(manifest))


def cmd_spectrum(args) -> int:
    p = resolve_params(args)
    rows = levels(args.s_max, p)
    if args.format == "csv":
        head = "s,branch,E_hbar_omega" + (",E_meV" if p.has_si else "")
        lines = [head]
        for s, b, e in rows:
            line = f"{s},{b.value},{fmt(e)}"
            if p.has_si:
                line += f",{fmt(p.energy_to_mev(e))}"
            lines.append(line)
        text = "\n".join(lines) + "\n"
    else:
        recs = []
        for s, b, e in rows:
            rec = {"s": s, "branch": b.value, "E_hbar_omega": e}
            if p.has_si:
                rec["E_meV"] = p.energy_to_mev(e)
            recs.append(rec)
        text = dumps({"parameters": p.as_dict(), "levels": recs})
    write_output(text, args.out, "spectrum", p, {"s_max": args.s_max, "format": args.format})
    return EXIT_OK


def _parse_weight(text: str):
    try:
        m, re, im = text.split(":")
        return int(m), complex(float(re), float(im))
    except ValueError as exc:
        raise UsageError(f"--weight expects m:re:im, got {text!r}") from exc


def cmd_texture(args) -> int:
    p = resolve_params(args)
    branch = Branch(args.branch)
    s = args.s if args.s is not None else (0 if branch is Branch.LLL else 1)
    if branch is Branch.LLL and s != 0:
        raise UsageError("--branch lll requires --s 0")
    if branch is not Branch.LLL and s == 0:
        raise UsageError("--s 0 is the lowest level; use --branch lll")
    if args.weight and args.m is not None:
        raise UsageError("use either --m or --weight")
    try:
        grid = GridSpec(args.extent, args.resolution)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    if args.weight:
        state = superpose([_parse_weight(w) for w in args.weight], s, branch, p)
    else:
        state = eigenspinor(LevelKey(s, branch, 1 if args.m is None else args.m), p)
    t = spin_density(state, grid, normalized=args.normalized)
    text = to_csv(t) if args.format == "csv" else to_json(t, p.as_dict(), state.label)
    write_output(text, args.out, "texture", p,
                 {"state": state.label, "grid": grid.as_dict(), "normalized": args.normalized,
                  "format": args.format})
    return EXIT_OK


def cmd_gauge_check(args) -> int:
    p = resolve_params(args)
    try:
        region = GridSpec(args.extent, args.resolution)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    if args.terms < 1:
        raise UsageError("--terms must be at least 1")
    report = gauge_check(args.branch, p, region, args.terms, args.tolerance)
    doc = report.as_dict()
    doc["parameters"] = p.as_dict()
    write_output(dumps(doc), args.out, "gauge-check", p,
                 {"branch": args.branch, "terms": args.terms, "tolerance": args.tolerance})
    print(report.summary(), file=sys.stderr if args.out is None else sys.stdout)
    return EXIT_OK if report.passed else EXIT_FAIL


def cmd_verify(args) -> int:
    p = resolve_params(args)
    report = run_suite(p, quick=not args.full)
    write_output(dumps(report), args.out, "verify", p, {"mode": report["mode"]})
    stream = sys.stderr if args.out is None else sys.stdout
    for c in report["checks"]:
        print(f"{'PASS' if c['passed'] else 'FAIL'}  {c['name']}  ({c['seconds']:.2f} s)", file=stream)
    return EXIT_OK if report["passed"] else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rashba-landau",
        description="Landau levels with Rashba and Zeeman coupling in the symmetric gauge.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("spectrum", help="level energies E/hbar omega (and meV with SI input)")
    sp.add_argument("--s-max", type=int, default=10)
    sp.add_argument("--format", choices=("csv", "json"), default="csv")
    sp.add_argument("--out", type=Path)
    _add_param_flags(sp)
    sp.set_defaults(func=cmd_spectrum)

    tx = sub.add_parser("texture", help="spin-density grid of an eigenstate or m-superposition")
    tx.add_argument("--s", type=int)
    tx.add_argument("--m", type=int)
    tx.add_argument("--weight", action="append", metavar="M:RE:IM",
                    help="superposition weight; repeat for several m")
    tx.add_argument("--branch", choices=[b.value for b in Branch], default="plus")
    tx.add_argument("--extent", type=float, default=6.0)
    tx.add_argument("--resolution", type=int, default=256)
    tx.add_argument("--normalized", action="store_true", help="divide spin fields by rho")
    tx.add_argument("--format", choices=("csv", "json"), default="csv")
    tx.add_argument("--out", type=Path)
    _add_param_flags(tx)
    tx.set_defaults(func=cmd_texture)

    gc = sub.add_parser("gauge-check", help="symmetric vs Landau gauge s = 1 states")
    gc.add_argument("--extent", type=float, default=4.0)
    gc.add_argument("--resolution", type=int, default=128)
    gc.add_argument("--terms", type=int, default=40)
    gc.add_argument("--tolerance", type=float, default=1e-8)
    gc.add_argument("--branch", choices=("plus", "minus"), default="plus")
    gc.add_argument("--out", type=Path)
    _add_param_flags(gc)
    gc.set_defaults(func=cmd_gauge_check)

    vf = sub.add_parser("verify", help="run the oracle verification suite")
    mode = vf.add_mutually_exclusive_group()
    mode.add_argument("--quick", action="store_true", help="reduced grids (default)")
    mode.add_argument("--full", action="store_true", help="full grids and state ranges")
    vf.add_argument("--out", type=Path)
    _add_param_flags(vf)
    vf.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"rashba-landau {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
