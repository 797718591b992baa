"""charflow command line.

Exit codes: 0 ok, 2 bad input or usage, 3 iteration cap, 4 empty region,
5 verification failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import re
import sys


from . import ergodic, fricke, oracle, reduction, sampling
from .core import Character, Component, character_from_json, kappa, tau
from .errors import CharflowError, DepthCapExceeded, EmptyRegion, VerificationFailed
from .group import GroupWord, orbit_tree
from .numeric import Backend, Tolerance, format_scalar

EXIT_OK, EXIT_PARSE, EXIT_CAP, EXIT_EMPTY, EXIT_VERIFY = 0, 2, 3, 4, 5


class InputError(Exception):
    pass


def parse_point(text: str, backend: Backend, component: str | None = None) -> Character:
    """Accept a JSON object ``{"x":..,"y":..,"z":..}``, a JSON array or ``(x,y,z)``."""
    text = text.strip()
    try:
        if text.startswith("("):
            m = re.fullmatch(r"\(\s*([^,]+),([^,]+),([^,]+)\)", text)
            if not m:
                raise InputError(f"cannot parse point {text!r}")
            obj = {"x": m.group(1).strip(), "y": m.group(2).strip(), "z": m.group(3).strip()}
        else:
            # numbers stay strings so the exact backend sees the literal
            obj = json.loads(text, parse_float=str, parse_int=str)
            if isinstance(obj, list):
                if len(obj) != 3:
                    raise InputError("point arrays need three entries")
                obj = dict(zip("xyz", obj))
        if not isinstance(obj, dict):
            raise InputError("point must be an object, array or (x,y,z)")
        if component is not None:
            obj["component"] = component
        return character_from_json(obj, backend)
    except (ValueError, TypeError, CharflowError) as exc:
        raise InputError(str(exc)) from exc


def _scalar_cell(v):
    v = format_scalar(v)
    return repr(v) if isinstance(v, float) else v


def _tolerance(args) -> Tolerance:
    return Tolerance(args.eps, args.eps)


class Output:
    def __init__(self, path: str | None):
        self.path = path

    def write(self, text: str):
        if self.path in (None, "-"):
            sys.stdout.write(text)
        else:
            with open(self.path, "w", newline="") as fh:
                fh.write(text)


def _json_text(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def _csv_text(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for r in rows:
        w.writerow([_scalar_cell(v) if not isinstance(v, str) else v for v in r])
    return buf.getvalue()


def _point(args) -> Character:
    return parse_point(args.point, Backend(args.backend), getattr(args, "component", None))


def cmd_classify(args) -> int:
    u = _point(args)
    trace = reduction.classify(u, _tolerance(args), args.max_steps)
    Output(args.out).write(_json_text(trace.summary()))
    return EXIT_CAP if trace.cls is reduction.TerminatorClass.ITERATION_CAP else EXIT_OK


def cmd_reduce(args) -> int:
    u = _point(args)
    trace = reduction.tau_reduce(u, _tolerance(args), args.max_steps)
    summary = trace.summary()
    plane = reduction.detect_terminal_plane(trace)
    summary["terminal_plane"] = None if plane is None else {
        "axis": plane.axis, "value": format_scalar(plane.value), "entry_step": plane.entry_step}
    if args.trace:
        with open(args.trace, "w", newline="") as fh:
            fh.write(_csv_text(["step", "letter", "x", "y", "z", "zbar", "tau"], trace.rows()))
    Output(args.out).write(_json_text(summary))
    return EXIT_CAP if trace.cls is reduction.TerminatorClass.ITERATION_CAP else EXIT_OK


def cmd_orbit(args) -> int:
    u = _point(args)
    tree = orbit_tree(u, args.depth)
    rows = [(w or "e", *v.coords, tau(v)) for w, v in tree.nodes.items()]
    Output(args.out).write(_csv_text(["word", "x", "y", "z", "tau"], rows))
    return EXIT_OK


def cmd_sample(args) -> int:
    if Backend(args.backend) is not Backend.FLOAT:
        raise InputError("sampling produces float characters; use --backend float")
    rng = ergodic.make_rng(args.seed)
    pts = sampling.sample_region(args.c, args.region, args.n, rng)
    rows = [(*u.coords, kappa(u) - args.c) for u in pts]
    Output(args.out).write(_csv_text(["x", "y", "z", "kappa_residual"], rows))
    return EXIT_OK


def cmd_fricke(args) -> int:
    u = _point(args)
    tol = _tolerance(args)
    surface = fricke.Surface(args.surface)
    if args.word:
        verdict = fricke.translate_fricke(u, GroupWord.parse(args.word), surface, tol)
    else:
        verdict = fricke.in_base_domain(u, surface, tol)
    Output(args.out).write(_json_text(verdict.to_json()))
    return EXIT_OK


def cmd_ergodic(args) -> int:
    if args.markoff:
        report = ergodic.markoff_probe(args.radius, args.iters, args.seed)
    elif args.sweep:
        rng = ergodic.make_rng(args.seed)
        z0 = args.z if args.z is not None else 0.3
        start = ergodic.elliptic_start(args.c, z0, float(rng.uniform(-math.pi, math.pi)))
        report = ergodic.slice_chain_walk(args.c, start, args.iters, args.seed, args.bins)
    else:
        if args.z is None:
            raise InputError("ergodic needs --z, --sweep or --markoff")
        report = ergodic.zbar_coverage(args.c, args.z, args.iters, args.bins, args.seed)
    Output(args.out).write(_csv_text(["bin_lo", "bin_hi", "count"], report.histogram))
    if args.out not in (None, "-"):
        sys.stdout.write(_json_text(report.to_json()))
    return EXIT_OK


def cmd_oracle(args) -> int:
    if args.suite == "agreement":
        report = oracle.run_agreement(args.seed, args.count or 500)
    elif args.suite == "certify":
        report = oracle.run_certify(args.seed, args.count or 200)
    else:
        report = oracle.run_threshold(args.seed)
    text = _json_text(report)
    if args.report:
        with open(args.report, "w") as fh:
            fh.write(text)
    Output(args.out).write(text)
    return EXIT_OK if report["ok"] else EXIT_VERIFY


def _common(parser: argparse.ArgumentParser, suppress: bool):
    d = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    parser.add_argument("--backend", choices=["float", "exact"], default=d("float"))
    parser.add_argument("--seed", type=int, default=d(0))
    parser.add_argument("--eps", type=float, default=d(1e-9), help="float comparison slack")
    parser.add_argument("--max-steps", type=int, default=d(reduction.DEFAULT_MAX_STEPS))
    parser.add_argument("--out", default=d(None), help="output file (default stdout)")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise InputError(message)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="charflow", description="Modular group dynamics on real character varieties")
    _common(p, suppress=False)
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, fn, help_text):
        sp = sub.add_parser(name, help=help_text)
        _common(sp, suppress=True)
        sp.set_defaults(func=fn)
        return sp

    def add_point(sp):
        sp.add_argument("--point", required=True, help='JSON character or "(x,y,z)"')
        sp.add_argument("--component", choices=[c.value for c in Component])

    sp = add("classify", cmd_classify, "classify a character by tau-reduction")
    add_point(sp)
    sp = add("reduce", cmd_reduce, "run tau-reduction and optionally dump the trace")
    add_point(sp)
    sp.add_argument("--trace", help="CSV path for the step-by-step trace")
    sp = add("orbit", cmd_orbit, "enumerate the orbit tree")
    add_point(sp)
    sp.add_argument("--depth", type=int, required=True)
    sp = add("sample", cmd_sample, "sample a region of a level set")
    sp.add_argument("--c", type=float, required=True)
    sp.add_argument("--region", choices=[r.value for r in sampling.Region], required=True)
    sp.add_argument("--n", type=int, default=100)
    sp = add("fricke", cmd_fricke, "test base Fricke-domain membership")
    add_point(sp)
    sp.add_argument("--surface", choices=[s.value for s in fricke.Surface], required=True)
    sp.add_argument("--word", help="test the translate by this word instead")
    sp = add("ergodic", cmd_ergodic, "rotation and slice-walk experiments")
    sp.add_argument("--c", type=float, default=-2.0)
    sp.add_argument("--z", type=float)
    sp.add_argument("--sweep", action="store_true", help="walk across slices")
    sp.add_argument("--markoff", action="store_true", help="probe kappa = -2 near the origin")
    sp.add_argument("--radius", type=float, default=1.0)
    sp.add_argument("--iters", type=int, default=100_000)
    sp.add_argument("--bins", type=int, default=ergodic.DEFAULT_BINS)
    sp = add("oracle", cmd_oracle, "run a verification suite")
    sp.add_argument("--suite", choices=["agreement", "certify", "threshold"], required=True)
    sp.add_argument("--count", type=int)
    sp.add_argument("--report", help="JSON report path")
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except InputError as exc:
        print(f"charflow: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except DepthCapExceeded as exc:
        print(f"charflow: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except EmptyRegion as exc:
        print(f"charflow: {exc}", file=sys.stderr)
        return EXIT_EMPTY
    except VerificationFailed as exc:
        print(f"charflow: {exc}", file=sys.stderr)
        return EXIT_VERIFY
    except (CharflowError, ValueError) as exc:
        print(f"charflow: {exc}", file=sys.stderr)
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())
