"""``curvlab`` command-line front end.

Exit status: 0 when every check passes, 1 when a check fails or a weight
system is infeasible, 2 on usage, input or output errors.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from collections.abc import Callable, Sequence
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from pathlib import Path

from curvlab import generators, weight_lp
from curvlab.admissibility import enumerate_admissible, render_table
from curvlab.chains import chain_audit, chain_surgery, find_chains
from curvlab.core_map import PlanarMap
from curvlab.discharging import all_contributions, build_pairing, global_audit, refinement_audit
from curvlab.errors import CurvlabError, Infeasible, ParseError
from curvlab.report import AuditReport, Check, _jsonable
from curvlab.rotmap import export_dot, export_rotmap, format_rotmap, import_rotmap
from curvlab.validate import validate_pcc

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
THREADS_ENV = "CURVLAB_THREADS"


class UsageError(Exception):
    pass


def thread_cap() -> int:
    raw = os.environ.get(THREADS_ENV)
    if raw is None or not raw.strip():
        return min(4, os.cpu_count() or 1)
    try:
        n = int(raw)
    except ValueError:
        raise UsageError(f"{THREADS_ENV} must be a positive integer, got {raw!r}") from None
    if n < 1:
        raise UsageError(f"{THREADS_ENV} must be a positive integer, got {raw!r}")
    return n


def _emit(report: AuditReport, fmt: str) -> int:
    print(report.dumps() if fmt == "json" else report.render_text())
    return EXIT_OK if report.passed else EXIT_FAIL


def _full_audit(m: PlanarMap, refine: bool = True) -> AuditReport:
    """Validation first; the pairing-based audits run only on PCC inputs."""
    report = validate_pcc(m)
    if not report.passed:
        report.info["skipped"] = "pairing, bounds, refinement and chain audits need a PCC graph"
        return report
    p = build_pairing(m)
    jobs: list[Callable[[], AuditReport]] = [lambda: global_audit(m, p), lambda: chain_audit(m)]
    if refine:
        jobs.append(lambda: refinement_audit(m, p))
    with ThreadPoolExecutor(max_workers=thread_cap()) as pool:
        for part in pool.map(lambda job: job(), jobs):
            report.merge(part)
    return report


# ------------------------------------------------------------- subcommands
def cmd_gen(args: argparse.Namespace) -> int:
    kind, n = args.kind, args.n
    needs_n = kind in ("prism", "antiprism", "gN")
    if needs_n and n is None:
        raise UsageError(f"gen {kind} needs an integer N")
    if not needs_n and n is not None:
        raise UsageError(f"gen {kind} takes no N")
    builders: dict[str, Callable[[], PlanarMap]] = {
        "prism": lambda: generators.prism(n),
        "antiprism": lambda: generators.antiprism(n),
        "gN": lambda: generators.g_family(n),
        "g208": generators.graph208_chain,
        "g208-11-13": generators.graph208_eleven_thirteen,
    }
    m = builders[kind]()
    comment = f"{kind}{'' if n is None else ' ' + str(n)}: V={m.n_vertices} E={m.n_edges} F={m.n_faces}"
    if args.out:
        export_rotmap(m, args.out, comment)
    if args.dot:
        export_dot(m, args.dot)
    if not args.out:
        sys.stdout.write(format_rotmap(m, comment))
    return EXIT_OK


def cmd_audit(args: argparse.Namespace) -> int:
    m = import_rotmap(args.path)
    return _emit(_full_audit(m, refine=not args.no_refine), args.format)


def cmd_discharge(args: argparse.Namespace) -> int:
    m = import_rotmap(args.input)
    p = build_pairing(m)
    report = global_audit(m, p)
    if args.refine:
        report.merge(refinement_audit(m, p))
    if args.per_face:
        rows = {}
        for t, fc in sorted(all_contributions(m, p).items(), key=lambda kv: str(kv[0])):
            rows[str(t)] = {
                "size": m.face_size(t) if isinstance(t, int) else t,
                "mass": fc.mass,
                "c": fc.c,
                "c_plus": fc.c_plus,
                "c_minus": fc.c_minus,
            }
        report.info["contributions"] = rows
    if args.report:
        payload = report.to_json()
        payload["pairing"] = [
            {
                "vertex": v,
                "target": t,
                "weight": _jsonable(w),
                "rules": list(p.provenance.get((v, t), [])),
            }
            for (v, t), w in sorted(p.entries.items(), key=lambda kv: (kv[0][0], str(kv[0][1])))
        ]
        try:
            Path(args.report).write_text(json.dumps(payload, indent=2) + "\n", encoding="utf-8")
        except OSError as exc:
            raise UsageError(f"cannot write {args.report}: {exc.strerror or exc}") from exc
    return _emit(report, args.format)


def cmd_chains(args: argparse.Namespace) -> int:
    m = import_rotmap(args.path)
    chains = find_chains(m)
    report = chain_audit(m, chains)
    report.info["segments"] = [c.to_json() for c in chains]
    return _emit(report, args.format)


def cmd_surgery(args: argparse.Namespace) -> int:
    m = import_rotmap(args.path)
    chains = find_chains(m)
    if not 0 <= args.chain < len(chains):
        raise UsageError(f"chain index {args.chain} out of range (found {len(chains)} chains)")
    out = chain_surgery(m, chains[args.chain])
    export_rotmap(out, args.out, f"chain surgery on chain {args.chain}: V={out.n_vertices} E={out.n_edges}")
    report = validate_pcc(out)
    report.info["input_vertices"] = m.n_vertices
    return _emit(report, args.format)


def cmd_table(args: argparse.Namespace) -> int:
    fams = enumerate_admissible()
    if args.json or args.format == "json":
        print(json.dumps([f.to_json() for f in fams], indent=2))
    else:
        print(render_table(fams))
    return EXIT_OK


def _parse_fix(items: Sequence[str]) -> dict[str, Fraction]:
    fixed: dict[str, Fraction] = {}
    for item in items:
        name, sep, value = item.partition("=")
        if not sep:
            raise UsageError(f"--fix expects name=value, got {item!r}")
        try:
            fixed[name.strip()] = Fraction(value.strip())
        except (ValueError, ZeroDivisionError):
            raise UsageError(f"--fix {name}: bad value {value!r}") from None
    return fixed


def cmd_lp(args: argparse.Namespace) -> int:
    weights = dict(weight_lp.DEFAULT_WEIGHTS)
    if args.weights:
        weights.update(weight_lp.load_weights(args.weights))
    fixed = _parse_fix(args.fix)
    scenarios = weight_lp.load_scenarios(args.scenarios, weights=set(weights) | set(fixed))
    report = weight_lp.verify_paper_weights(scenarios, {**weights, **fixed})
    if args.rows:
        report.merge(weight_lp.certify_rows(weight_lp.load_rows(args.rows)))
    if args.optimize:
        try:
            sol = weight_lp.solve(scenarios, fixed=fixed)
        except Infeasible as exc:
            report.add("lp", Check("lp.optimum", False, str(exc), witnesses=exc.violated))
        else:
            report.info["optimum"] = sol.to_json()
            report.add(
                "lp",
                Check(
                    "lp.optimum",
                    sol.feasible and sol.certified,
                    "no constraints" if sol.margin is None else f"best smallest margin {float(sol.margin):.6g}",
                    values={"margin": sol.margin, "weights": sol.weights},
                ),
            )
    return _emit(report, args.format)


# ------------------------------------------------------------------ parser
def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="curvlab", description="Positively curved planar graph toolkit.")
    parser.add_argument("--format", choices=("text", "json"), default="text")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default=argparse.SUPPRESS)
    sub = parser.add_subparsers(dest="command", metavar="COMMAND")

    g = sub.add_parser("gen", parents=[common], help="write a generated map as a rotmap")
    g.add_argument("kind", choices=("prism", "antiprism", "g208", "gN", "g208-11-13"))
    g.add_argument("n", nargs="?", type=int)
    g.add_argument("--out", help="rotmap output path (default: stdout)")
    g.add_argument("--dot", help="Graphviz output path")
    g.set_defaults(func=cmd_gen)

    a = sub.add_parser("audit", parents=[common], help="validate a map and run every audit")
    a.add_argument("path")
    a.add_argument("--no-refine", action="store_true", help="skip the edge refinement audit")
    a.set_defaults(func=cmd_audit)

    d = sub.add_parser("discharge", parents=[common], help="build the pairing and check the bounds")
    d.add_argument("--input", required=True)
    d.add_argument("--report", help="write the full JSON report with pairing provenance here")
    d.add_argument("--per-face", action="store_true", help="list the contribution of every target")
    d.add_argument("--refine", action="store_true", help="also run the edge refinement audit")
    d.set_defaults(func=cmd_discharge)

    c = sub.add_parser("chains", parents=[common], help="report red-triangle chains")
    c.add_argument("path")
    c.set_defaults(func=cmd_chains)

    s = sub.add_parser("surgery", parents=[common], help="mirror one side of a closed chain")
    s.add_argument("path")
    s.add_argument("--chain", type=int, default=0)
    s.add_argument("--out", required=True)
    s.set_defaults(func=cmd_surgery)

    t = sub.add_parser("table", parents=[common], help="print the admissible face vector families")
    t.add_argument("--json", action="store_true")
    t.set_defaults(func=cmd_table)

    lp = sub.add_parser("lp", parents=[common], help="check or optimise the discharge shares")
    lp.add_argument("--scenarios", default=str(weight_lp.DEFAULT_SCENARIOS))
    lp.add_argument("--weights", help="file of 'name = value' lines overriding the default shares")
    lp.add_argument("--optimize", action="store_true", help="maximise the smallest margin over [0,1] shares")
    lp.add_argument("--fix", action="append", default=[], metavar="NAME=VALUE", help="hold a share fixed")
    lp.add_argument("--rows", nargs="?", const=str(weight_lp.DEFAULT_ROWS), help="also certify row bounds")
    lp.set_defaults(func=cmd_lp)
    return parser


def run(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    if not getattr(args, "func", None):
        parser.print_usage(sys.stderr)
        return EXIT_USAGE
    try:
        return args.func(args)
    except (UsageError, ParseError) as exc:
        print(f"curvlab: {exc}", file=sys.stderr)
        parser.print_usage(sys.stderr)
        return EXIT_USAGE
    except CurvlabError as exc:
        print(f"curvlab: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
