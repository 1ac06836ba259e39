"""Command-line front end over the JSON wire formats.

Exit codes: 0 when the requested property holds or the command succeeds,
1 when a checked property is violated (the witness is printed), 2 on input
errors.  All results go to standard output, diagnostics to standard error.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from typing import Optional, Sequence

from . import fixtures as fixtures_mod
from .analysis import (
    NotRegular,
    QuotientNotQCycleSet,
    perm_group,
    retract,
    retract_tower,
)
from .core import (
    DegreeMismatch,
    InvalidStructure,
    NotLeftNonDegenerate,
    QCycleError,
    QCycleSet,
    SolutionMap,
    dumps_canonical,
    flat_map,
    is_cycle_set,
    is_nondegenerate,
    is_regular,
    load_qcs_tables,
    load_solution_table,
    qcs_to_obj,
    qcs_to_solution,
    solution_to_obj,
    solution_to_qcs,
    squaring_maps,
    verify_qcycle,
    verify_solution,
)
from .enumeration import (
    CapExceeded,
    EnumFilter,
    default_cap,
    enumerate_qcs,
    naive_enumerate_qcs,
)
from .extensions import (
    CoveringMap,
    DynamicalPair,
    InvalidPair,
    build_extension,
    extension_equivalence,
    factor_covering,
    is_simple,
    kernel_partition,
    random_pair_tables,
    semidirect_product,
    verify_covering,
    verify_dynamical_pair,
)


class CliError(Exception):
    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code


def _read_json(path: str):
    try:
        if path == "-":
            text = sys.stdin.read()
        else:
            with open(path, "r", encoding="utf-8") as handle:
                text = handle.read()
    except OSError as exc:
        raise CliError(2, f"cannot read {path}: {exc}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise CliError(2, f"{path}: invalid JSON at line {exc.lineno} column {exc.colno}: {exc.msg}") from exc


def _detect_kind(obj) -> str:
    if not isinstance(obj, dict):
        raise CliError(2, "top-level JSON value must be an object")
    has_tables = "dot" in obj and "colon" in obj
    has_map = "r" in obj
    if has_tables and has_map:
        raise CliError(2, "ambiguous input: contains both 'dot'/'colon' and 'r'")
    if has_tables:
        return "qcs"
    if has_map:
        return "solution"
    raise CliError(2, "unrecognized input: expected 'dot'/'colon' or 'r' keys")


def _load_pair_obj(obj) -> DynamicalPair:
    if not isinstance(obj, dict) or not {"base", "alpha", "alpha_prime"} <= obj.keys():
        raise CliError(2, "pair file must contain 'base', 'alpha', and 'alpha_prime'")
    try:
        dot, colon = load_qcs_tables(obj["base"])
        base = QCycleSet(len(dot), dot, colon)
        m = obj.get("m") or len(obj["alpha"][0][0])
        alpha = tuple(
            tuple(tuple(tuple(f) for f in cell) for cell in row) for row in obj["alpha"]
        )
        alpha_prime = tuple(
            tuple(tuple(tuple(f) for f in cell) for cell in row) for row in obj["alpha_prime"]
        )
        return DynamicalPair(base, m, alpha, alpha_prime)
    except (QCycleError, TypeError, IndexError) as exc:
        raise CliError(2, f"malformed pair: {exc}") from exc


def _load_covering_obj(obj) -> CoveringMap:
    if not isinstance(obj, dict) or not {"source", "target", "p"} <= obj.keys():
        raise CliError(2, "covering file must contain 'source', 'target', and 'p'")
    try:
        sdot, scolon = load_qcs_tables(obj["source"])
        tdot, tcolon = load_qcs_tables(obj["target"])
        return CoveringMap(
            QCycleSet(len(sdot), sdot, scolon),
            QCycleSet(len(tdot), tdot, tcolon),
            tuple(obj["p"]),
        )
    except (QCycleError, TypeError) as exc:
        raise CliError(2, f"malformed covering: {exc}") from exc


def _load_verified_qcs(obj) -> QCycleSet:
    try:
        dot, colon = load_qcs_tables(obj)
    except QCycleError as exc:
        raise CliError(2, str(exc)) from exc
    report = verify_qcycle(dot, colon)
    if not report.ok:
        raise CliError(1, f"not a valid structure: {report.violations[0].describe()}")
    return QCycleSet(len(dot), dot, colon)


class Output:
    def __init__(self, as_json: bool, path: Optional[str]):
        self.as_json = as_json
        self.handle = sys.stdout if path in (None, "-") else open(path, "w", encoding="utf-8")
        self.owns = self.handle is not sys.stdout

    def emit(self, obj, text_lines) -> None:
        if self.as_json:
            print(dumps_canonical(obj), file=self.handle)
        else:
            for line in text_lines:
                print(line, file=self.handle)

    def raw_line(self, line: str) -> None:
        print(line, file=self.handle)

    def close(self) -> None:
        if self.owns:
            self.handle.close()


def _report_obj(report) -> dict:
    return {
        "ok": report.ok,
        "violations": [
            {"law": v.law, "witness": list(v.witness), "lhs": v.lhs, "rhs": v.rhs}
            for v in report.violations
        ],
    }


def _report_lines(report, limit: int = 20) -> list[str]:
    lines = [f"ok: {report.ok}"]
    for v in report.violations[:limit]:
        lines.append(f"  violated {v.describe()}")
    if len(report.violations) > limit:
        lines.append(f"  ... and {len(report.violations) - limit} more")
    return lines


def _cmd_verify(args, out: Output) -> int:
    obj = _read_json(args.file)
    kind = _detect_kind(obj)
    if kind == "qcs":
        try:
            dot, colon = load_qcs_tables(obj)
        except QCycleError as exc:
            raise CliError(2, str(exc))
        report = verify_qcycle(dot, colon)
    else:
        try:
            s = load_solution_table(obj)
        except QCycleError as exc:
            raise CliError(2, str(exc))
        report = verify_solution(s)
    out.emit({"kind": kind, **_report_obj(report)}, [f"kind: {kind}"] + _report_lines(report))
    return 0 if report.ok else 1


def _cmd_convert(args, out: Output) -> int:
    obj = _read_json(args.file)
    kind = _detect_kind(obj)
    if args.to == "solution":
        if kind == "solution":
            raise CliError(2, "input is already a solution")
        x = _load_verified_qcs(obj)
        result = qcs_to_solution(x)
        out.emit(solution_to_obj(result), [dumps_canonical(solution_to_obj(result))])
        return 0
    if kind == "qcs":
        raise CliError(2, "input is already a q-cycle set")
    s = load_solution_table(obj)
    report = verify_solution(s)
    if not report.ok:
        raise CliError(1, f"braid law fails: {report.violations[0].describe()}")
    try:
        x = solution_to_qcs(s)
    except NotLeftNonDegenerate as exc:
        raise CliError(1, f"cannot convert: {exc}")
    out.emit(qcs_to_obj(x), [dumps_canonical(qcs_to_obj(x))])
    return 0


def _minimal_power_identity(s: SolutionMap, bound: int) -> Optional[tuple[int, int]]:
    """First (a, b) with a > b >= 0 and the a-th iterate equal to the b-th."""
    m = flat_map(s)
    seen = {tuple(range(len(m))): 0}
    cur = tuple(range(len(m)))
    for a in range(1, bound + 1):
        cur = tuple(m[v] for v in cur)
        if cur in seen:
            return (a, seen[cur])
        seen[cur] = a
    return None


def _cmd_analyze(args, out: Output) -> int:
    obj = _read_json(args.file)
    kind = _detect_kind(obj)
    if kind == "qcs":
        x = _load_verified_qcs(obj)
        s = qcs_to_solution(x)
    else:
        s = load_solution_table(obj)
        report = verify_solution(s)
        if not report.ok:
            raise CliError(1, f"braid law fails: {report.violations[0].describe()}")
        try:
            x = solution_to_qcs(s)
        except NotLeftNonDegenerate as exc:
            raise CliError(1, f"cannot analyze: {exc}")
    q, qp = squaring_maps(x)
    info: dict = {
        "n": x.n,
        "regular": is_regular(x),
        "nondegenerate": is_nondegenerate(x),
        "cycle_set": is_cycle_set(x),
        "squaring_dot": list(q),
        "squaring_colon": list(qp),
    }
    lines = [
        f"n: {x.n}",
        f"regular: {info['regular']}",
        f"nondegenerate: {info['nondegenerate']}",
        f"cycle set: {info['cycle_set']}",
        f"squaring maps: {list(q)} {list(qp)}",
    ]
    if info["regular"]:
        group = perm_group(x)
        rq = retract(x)
        info["group_order"] = group.order
        info["orbits"] = [list(o) for o in group.orbits]
        info["retract_classes"] = len(rq.classes)
        lines.append(f"permutation group order: {group.order}")
        lines.append(f"orbits: {[list(o) for o in group.orbits]}")
        lines.append(f"retract classes: {len(rq.classes)}")
    else:
        info["group_order"] = None
        info["orbits"] = None
        info["retract_classes"] = None
        lines.append("permutation group: undefined (not regular)")
    identity_pair = _minimal_power_identity(s, args.power_bound)
    if identity_pair is None:
        info["power_identity"] = None
        lines.append(f"no power identity up to bound {args.power_bound}")
    else:
        a, b = identity_pair
        info["power_identity"] = [a, b]
        rhs = "id" if b == 0 else f"r^{b}"
        lines.append(f"r^{a} = {rhs}: true")
    out.emit(info, lines)
    return 0


def _cmd_retract(args, out: Output) -> int:
    x = _load_verified_qcs(_read_json(args.file))
    try:
        if args.tower:
            tower = retract_tower(x, args.max_steps)
            obj = {"tower": [qcs_to_obj(t) for t in tower], "sizes": [t.n for t in tower]}
            lines = [f"tower sizes: {[t.n for t in tower]}"]
            out.emit(obj, lines)
            return 0
        rq = retract(x)
        obj = qcs_to_obj(rq.quotient)
        obj["classes"] = [list(c) for c in rq.classes]
        out.emit(obj, [f"classes: {[list(c) for c in rq.classes]}", dumps_canonical(obj)])
        return 0
    except NotRegular as exc:
        raise CliError(1, str(exc))
    except QuotientNotQCycleSet as exc:
        raise CliError(1, f"quotient is not a q-cycle set: {exc}")


def _cmd_extend(args, out: Output) -> int:
    if args.pair:
        pair = _load_pair_obj(_read_json(args.pair))
        report = verify_dynamical_pair(pair)
        if not report.ok:
            out.emit(
                _report_obj(report),
                ["pair does not verify:"] + _report_lines(report),
            )
            return 1
        ext = build_extension(pair)
        obj = qcs_to_obj(ext)
        obj["base_n"] = pair.base.n
        obj["m"] = pair.m
        out.emit(obj, [dumps_canonical(obj)])
        return 0
    x = _load_verified_qcs(_read_json(args.semidirect[0]))
    s = _load_verified_qcs(_read_json(args.semidirect[1]))
    theta_obj = _read_json(args.semidirect[2])
    if not isinstance(theta_obj, dict) or "theta" not in theta_obj:
        raise CliError(2, "twist file must contain a 'theta' key")
    try:
        product = semidirect_product(x, s, [tuple(t) for t in theta_obj["theta"]])
    except QCycleError as exc:
        raise CliError(1, str(exc))
    obj = qcs_to_obj(product)
    obj["base_n"] = x.n
    obj["m"] = s.n
    out.emit(obj, [dumps_canonical(obj)])
    return 0


def _cmd_cover(args, out: Output) -> int:
    path = args.check or args.factor
    covering = _load_covering_obj(_read_json(path))
    report = verify_covering(covering)
    if args.check:
        out.emit(_report_obj(report), _report_lines(report))
        return 0 if report.ok else 1
    if not report.ok:
        raise CliError(1, f"not a covering: {report.violations[0].describe()}")
    factored = factor_covering(covering)
    obj = {
        "m": factored.fiber_size,
        "base": qcs_to_obj(factored.pair.base),
        "alpha": [
            [[list(f) for f in cell] for cell in row] for row in factored.pair.alpha
        ],
        "alpha_prime": [
            [[list(f) for f in cell] for cell in row] for row in factored.pair.alpha_prime
        ],
        "iso": list(factored.iso),
    }
    out.emit(obj, [f"fiber size: {factored.fiber_size}", f"iso: {list(factored.iso)}"])
    return 0


def _cmd_simple(args, out: Output) -> int:
    x = _load_verified_qcs(_read_json(args.file))
    from .extensions import enumerate_congruences

    witness = None
    for part in enumerate_congruences(x):
        sizes = {len(b) for b in part.blocks}
        if len(sizes) == 1 and 1 < len(part.blocks) < x.n:
            witness = part
            break
    if witness is None:
        out.emit({"simple": True}, ["simple: true"])
        return 0
    obj = {"simple": False, "witness_blocks": [list(b) for b in witness.blocks]}
    out.emit(obj, [f"simple: false", f"witness congruence: {[list(b) for b in witness.blocks]}"])
    return 1


def _cmd_enumerate(args, out: Output) -> int:
    filt = EnumFilter(
        regular=args.regular,
        nondegenerate=args.nondeg,
        cycle_set_only=args.cycle_set,
        up_to_iso=args.up_to_iso,
    )
    if args.cap is not None and args.cap > default_cap(filt) and not args.ack_long_run:
        raise CliError(2, "raising the cap above the default requires --ack-long-run")
    try:
        if args.oracle:
            result = naive_enumerate_qcs(args.n, filt)
        else:
            result = enumerate_qcs(args.n, filt, cap=args.cap, threads=args.threads)
    except CapExceeded as exc:
        raise CliError(2, str(exc))
    for x in result.structures:
        out.raw_line(dumps_canonical(qcs_to_obj(x)))
    summary = {
        "summary": True,
        "order": result.order,
        "count": result.count,
        "filter": {
            "regular": filt.regular,
            "nondegenerate": filt.nondegenerate,
            "cycle_set_only": filt.cycle_set_only,
            "up_to_iso": filt.up_to_iso,
        },
        "stats": result.stats,
        "oracle": bool(args.oracle),
    }
    out.raw_line(dumps_canonical(summary))
    return 0


def _cmd_fixtures(args, out: Output) -> int:
    catalog = fixtures_mod.fixture_catalog()
    if args.action == "list":
        if out.as_json:
            out.raw_line(dumps_canonical([fx.name for fx in catalog]))
        else:
            for fx in catalog:
                out.raw_line(fx.name)
        return 0
    if args.name:
        try:
            targets = [fixtures_mod.fixture_by_name(args.name)]
        except KeyError as exc:
            raise CliError(2, str(exc))
    else:
        targets = list(catalog)
    failed = 0
    records = []
    for fx in targets:
        for res in fixtures_mod.check_fixture(fx):
            status = "PASS" if res.passed else "FAIL"
            if not res.passed:
                failed += 1
            records.append(
                {
                    "fixture": fx.name,
                    "claim": res.claim.prop,
                    "expected": res.claim.expected,
                    "observed": res.observed,
                    "passed": res.passed,
                    "note": res.claim.note,
                }
            )
            if not out.as_json:
                out.raw_line(
                    f"{status} {fx.name}/{res.claim.prop}: {res.claim.note} "
                    f"(expected {res.claim.expected!r}, observed {res.observed!r})"
                )
    if out.as_json:
        out.raw_line(dumps_canonical({"results": records, "failed": failed}))
    return 0 if failed == 0 else 1


def _cmd_falsify(args, out: Output) -> int:
    rng = random.Random(args.seed)
    bases = [
        fixtures_mod.trivial_qcs(args.n),
        fixtures_mod.shift_qcs(args.n, 1 % args.n),
    ]
    failures = []
    for i in range(args.samples):
        base = bases[i % len(bases)]
        alpha, alpha_prime = random_pair_tables(base, args.m, rng)
        if not extension_equivalence(base, alpha, alpha_prime):
            failures.append({"sample": i, "alpha": alpha, "alpha_prime": alpha_prime})
    obj = {"samples": args.samples, "failures": len(failures)}
    lines = [f"samples: {args.samples}", f"equivalence failures: {len(failures)}"]
    out.emit(obj, lines)
    return 0 if not failures else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qcycle",
        description="Verify, transform, extend, and enumerate finite q-cycle sets "
        "and the Yang-Baxter solutions they encode.",
    )
    common = argparse.ArgumentParser(add_help=False)
    mode = common.add_mutually_exclusive_group()
    mode.add_argument("--json", dest="as_json", action="store_true", help="machine-readable output")
    mode.add_argument("--text", dest="as_json", action="store_false", help="human-readable output")
    common.set_defaults(as_json=False)
    common.add_argument("-o", "--output", default=None, help="output path (default stdout)")
    common.add_argument("--threads", type=int, default=1, help="work-unit parallelism")
    common.add_argument("--seed", type=int, default=0, help="seed for randomized sampling")
    common.add_argument("--cap", type=int, default=None, help="enumeration order cap override")
    common.add_argument(
        "--ack-long-run",
        action="store_true",
        help="acknowledge a cap override above the defaults",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", parents=[common], help="check a q-cycle set or solution file")
    p.add_argument("file")
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("convert", parents=[common], help="convert between the two encodings")
    p.add_argument("--to", choices=["solution", "qcs"], required=True)
    p.add_argument("file")
    p.set_defaults(func=_cmd_convert)

    p = sub.add_parser("analyze", parents=[common], help="structural report for one input")
    p.add_argument("file")
    p.add_argument("--power-bound", type=int, default=24, help="bound for power identities")
    p.set_defaults(func=_cmd_analyze)

    p = sub.add_parser("retract", parents=[common], help="retract quotient (optionally iterated)")
    p.add_argument("file")
    p.add_argument("--tower", action="store_true")
    p.add_argument("--max-steps", type=int, default=None)
    p.set_defaults(func=_cmd_retract)

    p = sub.add_parser("extend", parents=[common], help="build a dynamical or semidirect extension")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--pair", help="dynamical pair file")
    group.add_argument(
        "--semidirect",
        nargs=3,
        metavar=("X", "S", "THETA"),
        help="base file, fiber file, twist file",
    )
    p.set_defaults(func=_cmd_extend)

    p = sub.add_parser("cover", parents=[common], help="check or factor a covering map")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--check", help="covering file to verify")
    group.add_argument("--factor", help="covering file to factor through an extension")
    p.set_defaults(func=_cmd_cover)

    p = sub.add_parser("simple", parents=[common], help="test for proper uniform quotients")
    p.add_argument("file")
    p.set_defaults(func=_cmd_simple)

    p = sub.add_parser("enumerate", parents=[common], help="exhaustive search at one order")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--regular", action="store_true")
    p.add_argument("--nondeg", action="store_true")
    p.add_argument("--cycle-set", action="store_true")
    p.add_argument("--up-to-iso", action="store_true")
    p.add_argument("--oracle", action="store_true", help="use the unpruned reference oracle")
    p.set_defaults(func=_cmd_enumerate)

    p = sub.add_parser("fixtures", parents=[common], help="list or check catalogued structures")
    p.add_argument("action", choices=["list", "check"])
    p.add_argument("name", nargs="?", default=None)
    p.set_defaults(func=_cmd_fixtures)

    p = sub.add_parser(
        "falsify",
        parents=[common],
        help="seeded random search for equivalence counterexamples in extension building",
    )
    p.add_argument("--n", type=int, default=2, help="base order")
    p.add_argument("--m", type=int, default=2, help="fiber size")
    p.add_argument("--samples", type=int, default=100)
    p.set_defaults(func=_cmd_falsify)

    return parser


def run(argv: Sequence[str]) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(list(argv))
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    out = Output(args.as_json, getattr(args, "output", None))
    try:
        return args.func(args, out)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except (InvalidStructure, DegreeMismatch) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except QCycleError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    finally:
        out.close()


def main() -> None:
    sys.exit(run(sys.argv[1:]))
