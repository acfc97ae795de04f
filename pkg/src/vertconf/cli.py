"""Command-line interface.

Tables go to stdout as CSV (``degree,rank`` with a header).  ``--json``
replaces every output with one structured document that also carries the
run manifest.  Exit codes: 0 success, 2 bad input, 3 size guard, 4 a
requested check failed.
"""
from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import asdict, dataclass, field

from . import __version__, kernel
from .clusters import (
    DEFAULT_MAX_WK,
    enumerate_distributions,
    enumerate_irreducible,
    insertion_map,
    load_labeled,
    stability_range,
)
from .enumeration import (
    DEFAULT_MAX_TOTAL,
    arnold_reference_polynomial,
    betti_table,
    conjecture_scan,
)
from .errors import SizeGuard, VertconfError
from .geometry import analyze, load_configuration
from .oracles import BRUTE_FORCE_MAX_TOTAL, SuiteLimits, consistency_suite, verify_maximality
from .partitions import ClusterShape, ComponentLabel

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_GUARD = 3
EXIT_CHECK = 4


@dataclass
class RunManifest:
    command: str
    parameters: dict
    guards: dict
    version: str = __version__
    kernel: str = kernel.IMPLEMENTATION
    wall_clock_seconds: float = 0.0
    outputs: list = field(default_factory=list)


class Run:
    """Collects results and checks for one invocation."""

    def __init__(self, args):
        self.args = args
        self.results = {}
        self.checks = {}
        self.lines = []
        self.started = time.perf_counter()
        params = {
            k: v if isinstance(v, (int, str, type(None))) else str(v)
            for k, v in sorted(vars(args).items())
            if k not in ("func", "json", "output", "max_total", "max_wk", "command")
        }
        self.manifest = RunManifest(
            command=args.command,
            parameters=params,
            guards={"max_total": args.max_total, "max_wk": args.max_wk},
        )

    def emit(self, text=""):
        self.lines.append(text)

    def check(self, name, passed):
        self.checks[name] = "PASS" if passed else "FAIL"

    def finish(self) -> int:
        self.manifest.wall_clock_seconds = round(time.perf_counter() - self.started, 6)
        if self.args.output:
            self.manifest.outputs.append(self.args.output)
        if self.args.json:
            doc = {
                "command": self.args.command,
                "inputs": self.manifest.parameters,
                "results": self.results,
                "checks": self.checks,
                "manifest": asdict(self.manifest),
            }
            text = json.dumps(doc, indent=2, sort_keys=True) + "\n"
        else:
            text = "".join(line + "\n" for line in self.lines)
        if self.args.output:
            with open(self.args.output, "w", newline="\n") as fh:
                fh.write(text)
        else:
            sys.stdout.write(text)
        return EXIT_CHECK if "FAIL" in self.checks.values() else EXIT_OK


def _shape(text):
    try:
        return ClusterShape.parse(text)
    except VertconfError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def cmd_betti(run: Run):
    a = run.args
    component = None
    if a.component is not None:
        if a.q != 1:
            raise VertconfError(f"--component needs q = 1, got q = {a.q}")
        component = ComponentLabel.parse(a.component, a.shape)
    if a.check_arnold and a.p != 0:
        raise VertconfError("--check-arnold applies only to p = 0")
    table = betti_table(a.shape, a.p, a.q, component, jobs=a.jobs, max_total=a.max_total)
    run.results = table.to_dict()
    run.results["poincare"] = str(table.poincare())
    if a.poincare:
        run.emit(str(table.poincare()))
    else:
        run.lines.extend(table.to_csv().splitlines())
    if a.check_arnold:
        want = arnold_reference_polynomial(a.shape.total, a.q) if a.q >= 2 else None
        ok = want is not None and table.poincare() == want
        run.check("arnold", ok)
        print(f"check arnold: {'PASS' if ok else 'FAIL'} (reference {want})", file=sys.stderr)


def cmd_analyze(run: Run):
    a = run.args
    Z = load_configuration(a.file)
    report = analyze(Z)
    run.results = report
    for key in ("shape", "p", "q", "component", "ray_partition", "weight", "length",
                "agility", "degree", "stratum_dim", "dexterity", "filtration_index"):
        if key in report:
            value = report[key]
            if key == "shape":
                value = ",".join(map(str, value))
            run.emit(f"{key}: {value}")
    if a.verify:
        if Z.shape.total > min(a.max_total, BRUTE_FORCE_MAX_TOTAL):
            run.emit("verify: skipped (|k| above the brute-force guard)")
        else:
            rep = verify_maximality(Z)
            run.check("maximality", rep.passed)
            run.emit(f"verify: {'PASS' if rep.passed else 'FAIL'}")
            if not rep.passed:
                run.emit(f"counterexample: {rep.counterexample}")


def cmd_scan(run: Run):
    report = conjecture_scan(run.args.kmax)
    run.lines.extend(report.to_csv().splitlines())
    first = report.first_failure
    if first is None:
        run.emit(f"# no failure for k <= {run.args.kmax}")
    else:
        row = report.rows[first - 1]
        run.emit(f"# minimal failing k: {first} ({row.lhs} > {row.rhs})")
    run.results = {
        "rows": [asdict(r) for r in report.rows],
        "first_failure": first,
    }


def cmd_irreducible(run: Run):
    a = run.args
    parts = enumerate_irreducible(a.k, a.w, max_wk=a.max_wk)
    run.results = {"k": a.k, "w": a.w, "count": len(parts)}
    if a.list:
        run.results["partitions"] = [str(e) for e in parts]
        run.lines.extend(str(e) for e in parts)
    else:
        run.emit(str(len(parts)))


def cmd_distributions(run: Run):
    a = run.args
    dists = enumerate_distributions(a.k, a.r, a.s, max_wk=a.max_wk)
    run.results = {"count": len(dists), "distributions": [str(d) for d in dists]}
    run.lines.extend(str(d) for d in dists)
    run.emit(f"# {len(dists)} distributions of degree ({a.r},{a.s})")


def cmd_insert(run: Run):
    theta = load_labeled(run.args.file)
    Z = insertion_map(theta)
    run.results = Z.to_dict()
    run.emit(json.dumps(Z.to_dict(), sort_keys=True))


def cmd_stability(run: Run):
    m = stability_range(run.args.r)
    run.results = {"r": run.args.r, "range": m}
    run.emit(str(m))


def cmd_selftest(run: Run):
    a = run.args
    limits = SuiteLimits(
        max_total=min(6, a.max_total),
        max_wk=min(SuiteLimits.max_wk, a.max_wk),
        random_trials=a.trials,
        seed=a.seed,
    )
    reports = consistency_suite(limits, jobs=a.jobs)
    run.results = {"reports": [r.to_dict() for r in reports]}
    for r in reports:
        run.check(f"{r.name}:{r.instance}", r.passed)
        line = f"{'PASS' if r.passed else 'FAIL'} {r.name} {r.instance}"
        if not r.passed:
            line += f" :: {r.counterexample}"
        run.emit(line)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit a JSON report with the run manifest")
    common.add_argument("--output", "-o", help="write to this file instead of stdout")
    common.add_argument("--jobs", type=int, default=1, help="worker processes (default 1)")
    common.add_argument("--max-total", type=int, default=DEFAULT_MAX_TOTAL,
                        help=f"largest |k| to enumerate (default {DEFAULT_MAX_TOTAL})")
    common.add_argument("--max-wk", type=int, default=DEFAULT_MAX_WK,
                        help=f"largest w*k for cluster partitions (default {DEFAULT_MAX_WK})")

    parser = argparse.ArgumentParser(prog="vertconf", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("betti", parents=[common], help="Betti table of an ordered space")
    p.add_argument("--shape", type=_shape, required=True, help="cluster sizes, e.g. 2,2,2")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--component", help="'id' or permutations like 2,1;1,2 (q = 1 only)")
    p.add_argument("--poincare", action="store_true", help="print the Poincare polynomial")
    p.add_argument("--check-arnold", action="store_true", help="compare with the p = 0 product formula")
    p.set_defaults(func=cmd_betti)

    p = sub.add_parser("analyze", parents=[common], help="analyse a configuration file")
    p.add_argument("file")
    p.add_argument("--verify", action="store_true", help="brute-force check of maximality")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("conjecture-scan", parents=[common], help="degree-2p rank vs square bound")
    p.add_argument("--kmax", type=int, required=True)
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("irreducible", parents=[common], help="irreducible cluster partitions")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--w", type=int, required=True)
    p.add_argument("--list", action="store_true")
    p.set_defaults(func=cmd_irreducible)

    p = sub.add_parser("distributions", parents=[common], help="distributions of a given degree")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--s", type=int, required=True)
    p.set_defaults(func=cmd_distributions)

    p = sub.add_parser("insert", parents=[common], help="apply the insertion map to a labelled file")
    p.add_argument("file")
    p.set_defaults(func=cmd_insert)

    p = sub.add_parser("stability", parents=[common], help="stable range for r clusters")
    p.add_argument("--r", type=int, required=True)
    p.set_defaults(func=cmd_stability)

    p = sub.add_parser("selftest", parents=[common], help="run the oracle suite")
    p.add_argument("--trials", type=int, default=100, help="random greedy trials")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_selftest)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.jobs < 1:
        parser.error("--jobs must be at least 1")
    run = Run(args)
    try:
        args.func(run)
    except SizeGuard as exc:
        print(f"guard: {exc}", file=sys.stderr)
        return EXIT_GUARD
    except VertconfError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    return run.finish()


if __name__ == "__main__":
    sys.exit(main())
