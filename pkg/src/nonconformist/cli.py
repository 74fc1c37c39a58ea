"""Command-line driver: simulate, spectrum, lyapunov, verify, witness, generate.

Systems are read in the line format of :mod:`nonconformist.textformat` from a
file argument, or standard input when the argument is ``-``.
"""
from __future__ import annotations

import argparse
import json
import sys
from typing import Optional, Sequence

from . import __version__
from .analysis.constructions import gk_system, preset_system
from .analysis.spectrum import period_spectrum
from .analysis.sweeps import THEOREMS, Family, SweepError, verify_theorem
from .analysis.witness import find_witness
from .engine import EngineError, State, run_to_cycle, trajectory
from .graph import PRESETS, GraphError
from .lyapunov import LyapunovError, check_settled_flips, trace
from .rules import RuleError
from .textformat import SystemDocument, SystemFormatError, parse_rule, parse_system, render_system

CYCLE_SCHEMA = "nonconformist.cycle/1"
SPECTRUM_SCHEMA = "nonconformist.spectrum/1"
LYAPUNOV_SCHEMA = "nonconformist.lyapunov/1"

# errors from inner modules that are reported as a message and exit status 2
USER_ERRORS = (SystemFormatError, GraphError, RuleError, EngineError, LyapunovError, SweepError, OSError)


class CliError(Exception):
    pass


def _read_doc(path: str) -> SystemDocument:
    text = sys.stdin.read() if path == "-" else open(path, encoding="utf-8").read()
    return parse_system(text)


def _starts(doc: SystemDocument, override: Optional[str]) -> list[State]:
    if override:
        return [State.from_string(override)]
    if not doc.inits:
        raise CliError("no initial state: add an 'init' line or pass --init")
    return list(doc.inits)


def _dump(obj) -> str:
    return json.dumps(obj, indent=2)


def cmd_simulate(args, out) -> int:
    doc = _read_doc(args.system)
    reports = []
    for s0 in _starts(doc, args.init):
        if args.trajectory is not None:
            for st in trajectory(doc.config, s0, args.trajectory):
                out.write(f"{st}\n")
            continue
        rep = run_to_cycle(doc.config, s0)
        reports.append({"schema": CYCLE_SCHEMA, "init": str(s0), **rep.to_dict()})
    if reports:
        out.write(_dump(reports[0] if len(reports) == 1 else reports) + "\n")
    return 0


def cmd_spectrum(args, out) -> int:
    doc = _read_doc(args.system)
    spec = period_spectrum(doc.config)
    out.write(_dump({"schema": SPECTRUM_SCHEMA, **spec.to_dict()}) + "\n")
    return 0


def cmd_lyapunov(args, out) -> int:
    doc = _read_doc(args.system)
    ok = True
    results = []
    for s0 in _starts(doc, args.init):
        tr = trace(doc.config, s0, args.steps)
        flips = check_settled_flips(doc.config, run_to_cycle(doc.config, s0))
        monotone = tr.is_monotone()
        ok = ok and monotone and not flips
        results.append((s0, tr, monotone, flips))
    if args.json:
        payload = [
            {
                "schema": LYAPUNOV_SCHEMA,
                "init": str(s0),
                "t": [e.t for e in tr.entries],
                "x": [e.x for e in tr.entries],
                "2y": [e.y2 for e in tr.entries],
                "2z": tr.z2,
                "settlement_index": tr.settlement_index,
                "monotone": monotone,
                "flip_violations": [vars(f) for f in flips],
                "passed": monotone and not flips,
            }
            for s0, tr, monotone, flips in results
        ]
        out.write(_dump(payload[0] if len(payload) == 1 else payload) + "\n")
    else:
        for s0, tr, monotone, flips in results:
            out.write(f"# init {s0}\n")
            out.write(tr.to_csv())
            out.write(f"# settlement_index {tr.settlement_index}\n")
            out.write(f"# monotone {'yes' if monotone else 'no'}\n")
            out.write(f"# flip_violations {len(flips)}\n")
            for f in flips:
                out.write(f"#   t={f.position} vertex={f.vertex}: {f.reason}\n")
    return 0 if ok else 1


def _family_overrides(fam: Family, args) -> Family:
    kw = {}
    if args.nmax is not None:
        kw["nmax"] = args.nmax
        kw["nmin"] = min(fam.nmin, args.nmax)
    if args.loops is not None:
        if not args.loops:
            kw["loops"] = "none"
        elif fam.loops == "none":
            kw["loops"] = "all"
    if args.rule_mode is not None:
        if fam.v1_rules not in ("auto", "count", "full"):
            raise CliError(f"--rule-mode applies to count/subset families, not v1_rules={fam.v1_rules!r}")
        kw["v1_rules"] = args.rule_mode
    if args.samples is not None:
        kw["samples"] = args.samples
    if args.seed is not None:
        kw["seed"] = args.seed
    return fam.replace(**kw) if kw else fam


def cmd_verify(args, out) -> int:
    names = sorted(THEOREMS) if args.theorem == "all" else [args.theorem]
    reports = []
    for name in names:
        fam = _family_overrides(THEOREMS[name].family, args)
        reports += verify_theorem(name, fam, workers=args.workers)
    payload = [r.to_dict(timestamp=not args.no_timestamp) for r in reports]
    out.write(_dump(payload[0] if len(payload) == 1 else payload) + "\n")
    return 0 if all(r.passed for r in reports) else 1


def cmd_witness(args, out) -> int:
    loops = "all" if args.loops else "none"
    fam = Family(
        nmax=args.nmax,
        loops=loops,
        v1_independent=args.independent,
        v1_rules=args.rule_mode or "minority",
        conformists=args.conformists,
    )
    v1_rule = parse_rule(f"count {args.v1_count}", 64) if args.v1_count else None
    res = find_witness(
        args.period,
        fam,
        budget=args.budget,
        sample_n=args.sample_n,
        seed=args.seed or 0,
        edge_p=tuple(args.edge_p),
        loop_p=args.loop_p,
        v1_loop=args.v1_loop,
        v1_rule=v1_rule,
        triangle_free=args.triangle_free,
        odd_degrees=args.odd_degrees,
        min_v1_degree=args.min_v1_degree,
    )
    if args.json:
        out.write(_dump(res.to_dict()) + "\n")
    elif res.found:
        out.write(render_system(res.config, [res.state], comment=f"period {res.target} witness ({res.stage})"))
    else:
        scope = "exhaustive family covered" if res.exhaustive else "budget exhausted"
        out.write(f"not found: period {args.period} ({scope}, {res.configs_examined} configurations)\n")
    return 0 if res.found else 1


def cmd_generate(args, out) -> int:
    if args.gk is not None:
        config, s0 = gk_system(args.gk, odd=not args.even)
        period = 2 * args.gk if args.even else 2 * args.gk + 1
        inits, comment = [s0], f"G_{args.gk}, expected period {period}"
    else:
        config = preset_system(args.preset, args.v1)
        inits, comment = [], f"preset {args.preset}, {args.v1} at v1"
    if args.dot:
        out.write(config.graph.to_dot())
    else:
        out.write(render_system(config, inits, comment=comment))
    return 0


def _add_family_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--nmax", type=int, help="largest graph size")
    p.add_argument("--loops", action=argparse.BooleanOptionalAction, default=None, help="allow loops")
    p.add_argument("--rule-mode", choices=("count", "full", "auto"), help="rule class at vertex 1")
    p.add_argument("--seed", type=int, help="seed for sampled families")
    p.add_argument("--workers", type=int, default=1, help="worker processes for sweeps")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="nonconformist", description=__doc__.splitlines()[0])
    ap.add_argument("--version", action="version", version=__version__)
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("simulate", help="run to a cycle and print the cycle report")
    p.add_argument("system", help="system file, or - for stdin")
    p.add_argument("--init", help="initial state as a +/- string (overrides the file)")
    p.add_argument("--trajectory", type=int, metavar="T", help="print T states, one per line, instead")
    p.add_argument("--json", action="store_true", help="JSON output (the default)")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("spectrum", help="period reached from every initial state")
    p.add_argument("system")
    p.add_argument("--json", action="store_true", help="JSON output (the default)")
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("lyapunov", help="x, 2y, 2z trace and settled-flip check")
    p.add_argument("system")
    p.add_argument("--init")
    p.add_argument("--steps", type=int, default=32, help="number of states in the trace")
    fmt = p.add_mutually_exclusive_group()
    fmt.add_argument("--csv", action="store_false", dest="json", help="CSV output (the default)")
    fmt.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_lyapunov, json=False)

    p = sub.add_parser("verify", help="sweep a family and check its period set")
    p.add_argument("--theorem", required=True, choices=sorted(THEOREMS) + ["all"])
    _add_family_flags(p)
    p.add_argument("--samples", type=int, help="sample this many systems instead of enumerating")
    p.add_argument("--no-timestamp", action="store_true", help="omit the timestamp field")
    p.add_argument("--json", action="store_true", help="JSON output (the default)")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("witness", help="search for a system reaching a given period")
    p.add_argument("--period", type=int, required=True)
    p.add_argument("--nmax", type=int, default=5, help="largest size for the exhaustive pass")
    p.add_argument("--loops", action=argparse.BooleanOptionalAction, default=True)
    p.add_argument(
        "--rule-mode",
        choices=("minority", "anti", "count", "full", "auto", "threshold"),
        help="rule class at vertex 1 (default minority)",
    )
    p.add_argument("--conformists", choices=("all", "majority"), default="all")
    p.add_argument("--independent", action="store_true", help="no edges inside N_1")
    p.add_argument("--budget", type=int, default=1_000_000, help="configurations to try")
    p.add_argument("--sample-n", type=int, nargs="+", help="sizes for the random stage")
    p.add_argument("--v1-loop", action=argparse.BooleanOptionalAction, default=None)
    p.add_argument("--edge-p", type=float, nargs="+", default=[0.5], help="edge densities for the random stage")
    p.add_argument("--loop-p", type=float, default=0.5, help="loop probability for the random stage")
    p.add_argument("--triangle-free", action="store_true", help="random stage: no triangles anywhere")
    p.add_argument("--odd-degrees", action="store_true", help="random stage: toggle loops so degrees are odd")
    p.add_argument("--min-v1-degree", type=int, default=0)
    p.add_argument("--v1-count", metavar="{a,b,...}", help="random stage: fixed count rule at v1")
    p.add_argument("--seed", type=int)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_witness)

    p = sub.add_parser("generate", help="print a preset or G_k system")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--gk", type=int, metavar="K")
    src.add_argument("--preset", choices=sorted(PRESETS))
    p.add_argument("--even", action="store_true", help="G_k rule for period 2k instead of 2k+1")
    p.add_argument("--v1", choices=("majority", "minority"), default="majority", help="preset rule at v1")
    p.add_argument("--dot", action="store_true", help="Graphviz DOT instead of the system format")
    p.set_defaults(func=cmd_generate)
    return ap


def main(argv: Optional[Sequence[str]] = None, out=None) -> int:
    args = build_parser().parse_args(argv)
    out = out or sys.stdout
    try:
        return args.func(args, out)
    except (CliError, *USER_ERRORS) as exc:
        print(f"nonconformist {args.command}: {exc}", file=sys.stderr)
        return 2


__all__ = ["build_parser", "main", "parse_system", "render_system"]

if __name__ == "__main__":
    sys.exit(main())
