"""Command-line front end: ``partreg check|gen|search|verify|sweep|hunt``.

Exit codes: 0 for a definitive outcome (a BadColoring is definitive),
2 for Inconclusive, 1 for usage or input errors. The JSON report (``--json``)
is the machine interface; stdout text is for people.
"""
from __future__ import annotations

import argparse
import hashlib
import json
import os
import platform
import sys
from pathlib import Path

from . import __version__
from . import conditions as cond
from .matrixspec import Literal, MatrixSpec, parse_shortcut, spec_from_dict
from .rational import MatrixFormatError, format_matrix, parse_matrix
from .search import engine
from .search import structures as st

EXIT_OK, EXIT_ERROR, EXIT_INCONCLUSIVE = 0, 1, 2
BUDGET_ENV = "PARTREG_BUDGET_NODES"


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


class _Inputs:
    """Files read during one invocation, with their digests for the report."""

    def __init__(self):
        self.digests = {}

    def read(self, path: str) -> str:
        try:
            data = Path(path).read_bytes()
        except OSError as exc:
            raise UsageError(f"cannot read {path}: {exc.strerror or exc}") from None
        self.digests[path] = hashlib.sha256(data).hexdigest()
        return data.decode()

    def matrix_spec(self, arg: str) -> MatrixSpec:
        if os.path.exists(arg):
            text = self.read(arg)
            if arg.endswith(".json"):
                return spec_from_dict(json.loads(text))
            try:
                return Literal(parse_matrix(text))
            except MatrixFormatError as exc:
                raise UsageError(f"{arg}: {exc}") from None
        try:
            return parse_shortcut(arg)
        except ValueError as exc:
            raise UsageError(f"{arg!r} is neither a readable file nor a matrix shortcut ({exc})") from None


def _ints(text: str) -> tuple:
    try:
        return tuple(int(t) for t in text.replace(" ", "").split(",") if t)
    except ValueError:
        raise UsageError(f"expected comma-separated integers, got {text!r}") from None


def default_max_nodes() -> int:
    raw = os.environ.get(BUDGET_ENV)
    if raw is None:
        return engine.DEFAULT_MAX_NODES
    try:
        val = int(raw)
    except ValueError:
        raise UsageError(f"{BUDGET_ENV} must be a positive integer, got {raw!r}") from None
    if val < 1:
        raise UsageError(f"{BUDGET_ENV} must be a positive integer, got {raw!r}")
    return val


# ---------------------------------------------------------------- parser

def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="partreg", description="Partition regularity checks and finite witness search.")
    p.add_argument("--version", action="version", version=f"partreg {__version__}")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp):
        sp.add_argument("--json", metavar="PATH", help="write the JSON report here ('-' for stdout)")

    c = sub.add_parser("check", help="test a matrix against a condition")
    c.add_argument("condition", choices=["columns-condition", "first-entries", "monic", "segmented",
                                         "mt", "subtracted"])
    c.add_argument("matrix", help="matrix file (text or spec JSON) or shortcut")
    c.add_argument("--alpha", help="segment boundaries, e.g. 0,1,4 (searched if omitted)")
    c.add_argument("--mode", default="first-entries", choices=["first-entries", "monic", "general"])
    c.add_argument("--a", help="compressed vector for the mt check")
    c.add_argument("--n", type=int, help="first band column for subtracted")
    c.add_argument("--k", type=int, help="band width for subtracted")
    c.add_argument("--variant", default="centrally", choices=["centrally", "segmented"])
    c.add_argument("--empirical-r", type=int, default=2)
    c.add_argument("--empirical-N", type=int, default=12)
    common(c)

    g = sub.add_parser("gen", help="print a generated matrix")
    g.add_argument("kind", choices=["schur", "vdw", "fs", "mt", "ex212", "spec"])
    g.add_argument("--n", type=int, help="vdw length")
    g.add_argument("--k", type=int, help="fs length")
    g.add_argument("--a", help="mt compressed vector")
    g.add_argument("--cols", type=int, help="mt support columns")
    g.add_argument("--depth", type=int, help="ex212 rows")
    g.add_argument("--spec-file", help="matrix spec JSON (kind 'spec')")
    g.add_argument("-o", "--output", help="write matrix text here instead of stdout")
    common(g)

    def structure(sp):
        sp.add_argument("--spec", required=True,
                        help=f"structure variant ({', '.join(st.VARIANTS)}) or a structure JSON file")
        sp.add_argument("--matrix", action="append", default=[],
                        help="matrix file or shortcut; repeat for multi-matrix variants")
        sp.add_argument("--length", type=int, help="sequence length for fsfp / psm")
        sp.add_argument("--m", type=int, help="block count for psm")
        sp.add_argument("--distinct", action="store_true", help="psm: one-to-one sequence")
        budget(sp)

    def budget(sp):
        sp.add_argument("--max-component", type=int, help="bound on vector entries (default N)")
        sp.add_argument("--max-nodes", type=int, help=f"node cap (default ${BUDGET_ENV} or "
                                                      f"{engine.DEFAULT_MAX_NODES})")
        sp.add_argument("--time-cap", type=float, help="seconds")
        common(sp)

    s = sub.add_parser("search", help="look for a witness inside one colouring")
    structure(s)
    s.add_argument("--coloring", required=True, help="colouring file: 'N r' then N colours")

    v = sub.add_parser("verify", help="decide all r-colourings of [1..N]")
    structure(v)
    v.add_argument("-r", type=int, required=True)
    v.add_argument("-N", type=int, required=True)
    v.add_argument("--workers", type=int, default=1)
    v.add_argument("--cover", action="store_true", help="include covering prefixes in the report")

    w = sub.add_parser("sweep", help="verify for N = lo..hi until the first AllAdmit")
    structure(w)
    w.add_argument("-r", type=int, required=True)
    w.add_argument("--from", dest="n_from", type=int, default=1)
    w.add_argument("--to", dest="n_to", type=int, required=True)
    w.add_argument("--all", action="store_true", help="keep going after the first AllAdmit")
    w.add_argument("--workers", type=int, default=1)

    h = sub.add_parser("hunt", help="desk-scale search for the open questions Q3_8, Q3_18, Q3_19")
    h.add_argument("question", choices=["Q3_8", "Q3_18", "Q3_19"])
    h.add_argument("--matrix", action="append", default=[])
    h.add_argument("--m", type=int, help="Q3_19 block count")
    h.add_argument("--length", type=int, help="Q3_19 sequence length (default m)")
    h.add_argument("-r", type=int, required=True)
    h.add_argument("-N", type=int, required=True)
    h.add_argument("--workers", type=int, default=1)
    budget(h)
    return p


# ---------------------------------------------------------------- commands

def _budget(args) -> engine.SearchBudget:
    nodes = args.max_nodes if args.max_nodes is not None else default_max_nodes()
    try:
        return engine.SearchBudget(args.max_component, nodes, args.time_cap)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _structure(args, inputs: _Inputs) -> st.StructureSpec:
    name = args.spec
    if os.path.exists(name):
        return st.structure_from_dict(json.loads(inputs.read(name)))
    mats = [inputs.matrix_spec(m) for m in args.matrix]
    if name in ("additive-image", "mult-image", "kernel", "mult-kernel", "both-images",
                "same-vector-both", "kernel-both"):
        if len(mats) != 1:
            raise UsageError(f"--spec {name} needs exactly one --matrix")
        return st.structure_from_dict({"variant": name, "matrix": mats[0].to_dict()})
    if name in ("product-of-images", "same-vector-product", "sum-of-power-images"):
        if not mats:
            raise UsageError(f"--spec {name} needs at least one --matrix")
        return st.structure_from_dict({"variant": name, "matrices": [m.to_dict() for m in mats]})
    if name == "fsfp":
        if args.length is None:
            raise UsageError("--spec fsfp needs --length")
        return st.FSFP(args.length)
    if name == "psm":
        if args.length is None or args.m is None:
            raise UsageError("--spec psm needs --m and --length")
        return st.PSm(args.m, args.length, args.distinct)
    raise UsageError(f"unknown structure {name!r}; composite specs must be given as a JSON file")


def _cmd_check(args, inputs):
    spec = inputs.matrix_spec(args.matrix)
    A = spec.materialize()
    budget = cond.EmpiricalBudget(args.empirical_r, args.empirical_N) if args.mode == "general" else None
    c = args.condition
    if c == "columns-condition":
        result = cond.witness_to_dict(cond.check_columns_condition(A))
    elif c in ("first-entries", "monic"):
        rep = cond.check_first_entries(A)
        result = rep.to_dict()
        result["condition"] = c
        result["certification"] = "exact"
        if c == "monic":
            result["satisfied"] = rep.satisfies and rep.first_entries == (1,)
    elif c == "segmented":
        if args.alpha:
            v = cond.check_segmented(A, _ints(args.alpha), args.mode, budget)
        else:
            v = cond.find_segmentation(A, args.mode, budget)
        result = v.to_dict()
    elif c == "mt":
        if not args.a:
            raise UsageError("check mt needs --a")
        result = {"condition": "milliken-taylor", "a": list(_ints(args.a)),
                  "satisfied": cond.check_milliken_taylor(A, _ints(args.a)), "certification": "exact"}
    else:
        if args.n is None or args.k is None:
            raise UsageError("check subtracted needs --n and --k")
        alpha = _ints(args.alpha) if args.alpha else None
        result = cond.check_subtracted(A, args.n, args.k, args.variant, budget, alpha).to_dict()
    result["matrix"] = spec.to_dict()
    if spec.truncation() is not None:
        result["truncation"] = spec.truncation()
    lines = [f"{result['condition']}: {'satisfied' if result['satisfied'] else 'not satisfied'}"]
    if result.get("witness"):
        w = result["witness"]
        lines.append(f"blocks: {w['blocks']}")
        lines.append(f"coefficients: {w['coefficients']}")
    for why in result.get("violations", []):
        lines.append(f"  {why if isinstance(why, str) else why[1]}")
    return EXIT_OK, result, "\n".join(lines)


def _cmd_gen(args, inputs):
    k = args.kind
    if k == "schur":
        spec = parse_shortcut("schur")
    elif k == "vdw":
        spec = parse_shortcut(f"vdw:{_need(args.n, '--n')}")
    elif k == "fs":
        spec = parse_shortcut(f"fs:{_need(args.k, '--k')}")
    elif k == "mt":
        a = _ints(_need(args.a, "--a"))
        spec = parse_shortcut(f"mt:{','.join(map(str, a))}/{_need(args.cols, '--cols')}")
    elif k == "ex212":
        spec = parse_shortcut(f"ex212:{args.depth}" if args.depth else "ex212")
    else:
        spec = spec_from_dict(json.loads(inputs.read(_need(args.spec_file, "--spec-file"))))
    text = format_matrix(spec.materialize())
    result = {"kind": spec.kind, "params": {kk: vv for kk, vv in spec.to_dict().items() if kk != "kind"},
              "truncation": spec.truncation()}
    if args.output:
        try:
            Path(args.output).write_text(text)
        except OSError as exc:
            raise UsageError(f"cannot write {args.output}: {exc.strerror or exc}") from None
        return EXIT_OK, result, f"wrote {args.output}"
    return EXIT_OK, result, text.rstrip("\n")


def _need(value, flag):
    if value is None:
        raise UsageError(f"missing {flag}")
    return value


def _exit_for(outcome: str) -> int:
    return EXIT_INCONCLUSIVE if outcome == "Inconclusive" else EXIT_OK


def _cmd_search(args, inputs):
    spec = _structure(args, inputs)
    try:
        coloring = engine.parse_coloring(inputs.read(args.coloring))
    except ValueError as exc:
        raise UsageError(f"{args.coloring}: {exc}") from None
    cert = engine.find_witness(spec, coloring, _budget(args))
    text = cert.outcome
    if cert.witness:
        text += f": color {cert.witness['color']}, vectors {cert.witness['vectors']}, values {cert.witness['values']}"
    return _exit_for(cert.outcome), cert.to_dict(), text


def _cmd_verify(args, inputs):
    spec = _structure(args, inputs)
    _positive(args.r, "-r")
    _positive(args.N, "-N")
    _positive(args.workers, "--workers")
    cert = engine.verify_all_colorings(spec, args.r, args.N, _budget(args), args.workers,
                                       keep_cover=args.cover)
    text = f"{cert.outcome} (r={args.r}, N={args.N}, nodes={cert.nodes_explored})"
    if cert.bad_coloring:
        text += "\nbad coloring: " + " ".join(map(str, cert.bad_coloring))
    return _exit_for(cert.outcome), cert.to_dict(), text


def _cmd_sweep(args, inputs):
    spec = _structure(args, inputs)
    _positive(args.r, "-r")
    _positive(args.n_from, "--from")
    if args.n_to < args.n_from:
        raise UsageError("--to must be >= --from")
    res = engine.threshold_sweep(spec, args.r, range(args.n_from, args.n_to + 1), _budget(args),
                                 args.workers, stop_at_first=not args.all)
    lines = [f"N={n}: {o}" for n, o, _ in res.table]
    lines.append(f"least AllAdmit: {res.least_all_admit}")
    inconclusive = res.least_all_admit is None and any(o == "Inconclusive" for _, o, _ in res.table)
    return (EXIT_INCONCLUSIVE if inconclusive or res.flagged else EXIT_OK), res.to_dict(), "\n".join(lines)


def _cmd_hunt(args, inputs):
    mats = [inputs.matrix_spec(m) for m in args.matrix]
    if args.question == "Q3_8":
        if len(mats) != 1:
            raise UsageError("Q3_8 needs exactly one --matrix")
        q = ("Q3.8", mats[0])
    elif args.question == "Q3_18":
        if not mats:
            raise UsageError("Q3_18 needs at least one --matrix")
        q = ("Q3.18", mats)
    else:
        m = _need(args.m, "--m")
        q = ("Q3.19", m, args.length or m)
    try:
        report = engine.hunt_counterexample(q, args.r, args.N, _budget(args), args.workers)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    text = f"{report['question']}: {report['verdict']}\n({report['label']})"
    return _exit_for(report["certificate"]["outcome"]), report, text


def _positive(v, flag):
    if v is None or v < 1:
        raise UsageError(f"{flag} must be a positive integer")


_COMMANDS = {"check": _cmd_check, "gen": _cmd_gen, "search": _cmd_search, "verify": _cmd_verify,
             "sweep": _cmd_sweep, "hunt": _cmd_hunt}


def _strip_timing(obj):
    if isinstance(obj, dict):
        return {k: _strip_timing(v) for k, v in obj.items() if k != "wall_time_ms"}
    if isinstance(obj, list):
        return [_strip_timing(v) for v in obj]
    return obj


def outcome_json(report: dict) -> str:
    """The report's outcome part with timing removed, for replay comparisons."""
    return json.dumps(_strip_timing(report["result"]), sort_keys=True)


def run(argv=None, stdout=None, stderr=None) -> tuple[int, dict | None]:
    """Run one command. Returns (exit code, report dict or None on usage error)."""
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    argv = list(sys.argv[1:] if argv is None else argv)
    inputs = _Inputs()
    try:
        args = build_parser().parse_args(argv)
        code, result, text = _COMMANDS[args.command](args, inputs)
    except UsageError as exc:
        print(f"partreg: error: {exc}", file=stderr)
        return EXIT_ERROR, None
    except (ValueError, MatrixFormatError, KeyError, json.JSONDecodeError) as exc:
        print(f"partreg: error: {exc}", file=stderr)
        return EXIT_ERROR, None
    report = {"command": args.command, "argv": argv, "inputs": inputs.digests, "result": result,
              "exit_code": code, "versions": {"partreg": __version__, "python": platform.python_version()}}
    payload = json.dumps(report, sort_keys=True, indent=2, default=str)
    if args.json == "-":
        print(payload, file=stdout)
    else:
        print(text, file=stdout)
        if args.json:
            try:
                Path(args.json).write_text(payload + "\n")
            except OSError as exc:
                print(f"partreg: error: cannot write {args.json}: {exc.strerror or exc}", file=stderr)
                return EXIT_ERROR, report
    return code, report


def main(argv=None) -> int:
    code, _ = run(argv)
    return code


if __name__ == "__main__":
    sys.exit(main())
