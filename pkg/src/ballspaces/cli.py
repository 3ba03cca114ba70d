"""Command line front end.

Exit codes: 0 success or property holds, 1 property fails or witness
found, 2 input error, 3 soundness alarm.
"""

from __future__ import annotations

import argparse
import io
import json
import os
import sys
from typing import Sequence, TextIO

from . import formats
from .constructions import (
    ClosureOp,
    ProductMode,
    associated_topology,
    close,
    product,
    spherical_closure,
    subspace,
    union,
    with_singletons,
    with_top,
)
from .core import BallSpaceError, InputError, PreconditionError, ResourceLimitError, SoundnessAlarm
from .fixedpoint import (
    BX_THEOREMS,
    POSET_THEOREMS,
    SelfMap,
    TheoremId,
    check_bx_conditions,
    greedy_fixed_point,
    knaster_tarski_suite,
    verify_theorem,
)
from .hierarchy import EXTRA_NAMES, KINDS, LEVELS, Mode, classify, parse_prop_name, prop_name, validate_report
from .instances import (
    caristi_kirk_balls,
    metric_balls,
    oettli_thera_balls,
    poset_balls,
    topology_balls,
    ultrametric_balls,
)
from .miner import (
    MinerMode,
    find_witness,
    verify_equivalence_table,
    verify_implications,
    verify_implications_sample,
)

EXIT_OK, EXIT_NEGATIVE, EXIT_INPUT, EXIT_ALARM = 0, 1, 2, 3


class _Colors:
    def __init__(self, stream: TextIO):
        self.on = "NO_COLOR" not in os.environ and hasattr(stream, "isatty") and stream.isatty()

    def flag(self, value: bool) -> str:
        text = "true" if value else "false"
        if not self.on:
            return text
        code = "32" if value else "31"
        return f"\033[{code}m{text}\033[0m"


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as e:
        raise InputError(f"cannot read {path}: {e.strerror}") from None


def _load_space(path: str):
    return formats.parse(_read(path))


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=False, default=str) + "\n"


# ------------------------------------------------------------- commands


def _report_table(report, colors: _Colors, width: int = 10) -> str:
    header = "".ljust(6) + "".join(k.value.ljust(width) for k in KINDS)
    lines = [header.rstrip()]
    for level in LEVELS:
        row = f"S{level}".ljust(6)
        for k in KINDS:
            row += colors.flag(report.values[prop_name(level, k)]).ljust(width)
        lines.append(row.rstrip())
    for name in EXTRA_NAMES:
        lines.append(f"{name:<18}{colors.flag(report.values[name])}")
    return "\n".join(lines)


def cmd_classify(args, out: TextIO) -> int:
    space = _load_space(args.file)
    report = classify(space, Mode.EXHAUSTIVE if args.exhaustive else Mode.FAST)
    bad = validate_report(report)
    if args.json:
        payload = {"space": formats.to_json(space), "report": dict(report.values), "violations": bad}
        if args.witness:
            payload["witnesses"] = {
                k: {
                    "kind": w.kind.value,
                    "system": [list(space.ground.labels_of(b)) for b in w.system],
                    "region": list(space.ground.labels_of(w.region)),
                    "reason": w.reason.value,
                }
                for k, w in report.witnesses.items()
            }
        out.write(_dump(payload))
    else:
        out.write(_report_table(report, _Colors(out)) + "\n")
        if args.witness:
            for name, w in report.witnesses.items():
                out.write(f"{name}: {w.format(space)}\n")
        for v in bad:
            out.write(f"violation: {v}\n")
    if bad:
        return EXIT_ALARM
    if args.property:
        return EXIT_OK if report[parse_prop_name(args.property)] else EXIT_NEGATIVE
    return EXIT_OK


def _emit_space(space, args, out: TextIO):
    out.write(_dump(formats.to_json(space)) if args.json else formats.emit(space))


def cmd_construct(args, out: TextIO) -> int:
    space = _load_space(args.file)
    op = args.op
    if op == "with-singletons":
        _emit_space(with_singletons(space), args, out)
    elif op == "with-top":
        _emit_space(with_top(space), args, out)
    elif op == "union":
        if not args.other:
            raise InputError("union needs --other FILE")
        _emit_space(union(space, _load_space(args.other)), args, out)
    elif op == "close":
        if not args.closure:
            raise InputError("close needs --closure")
        _emit_space(close(space, ClosureOp(args.closure)), args, out)
    elif op == "subspace":
        _emit_space(subspace(space, formats.parse_subset(space.ground, args.subset or "")), args, out)
    elif op == "topology":
        t = associated_topology(space)
        if args.json:
            g = t.ground
            out.write(_dump({"format": "topology v1", "ground": list(g.labels),
                             "closed": [list(g.labels_of(c)) for c in t.closed_sets]}))
        else:
            out.write(formats.emit_topology(t))
    else:
        s = formats.parse_subset(space.ground, args.subset or "")
        result = spherical_closure(space, s)
        labels = list(space.ground.labels_of(result))
        out.write(_dump({"closure": labels}) if args.json else " ".join(labels) + "\n")
    return EXIT_OK


def cmd_product(args, out: TextIO) -> int:
    spaces = [_load_space(p) for p in args.files]
    _emit_space(product(spaces, ProductMode(args.mode)), args, out)
    return EXIT_OK


def _build_instance(kind: str, text: str, variant: str | None):
    """Returns ``(space, assignment or None)``."""
    if kind == "metric":
        m, radii = formats.parse_metric(text)
        return metric_balls(m, radii), None
    if kind == "ultrametric":
        u, v = formats.parse_ultrametric(text)
        return ultrametric_balls(u, variant or v or "Closed"), None
    if kind == "poset":
        p, v = formats.parse_poset(text)
        return poset_balls(p, variant or v or "PrincipalFinal"), None
    if kind == "topology":
        return topology_balls(formats.parse_topology(text)), None
    if kind == "ck":
        return caristi_kirk_balls(formats.parse_ck(text))
    return oettli_thera_balls(formats.parse_ot(text))


def cmd_instance(args, out: TextIO) -> int:
    text = _read(args.file)
    header = formats.instance_header(text)
    if header is not None and header != args.kind:
        raise InputError(f"document header is {header!r} but --kind is {args.kind!r}")
    space, assignment = _build_instance(args.kind, text, args.variant)
    if args.json:
        payload = formats.to_json(space)
        if assignment is not None:
            g = assignment.ground
            payload["assignment"] = {g.labels[x]: list(g.labels_of(b)) for x, b in enumerate(assignment.balls)}
            payload["conditions"] = check_bx_conditions(space, assignment).as_dict()
        out.write(_dump(payload))
    else:
        out.write(formats.emit(space))
        if assignment is not None:
            out.write(f"# assignment {formats.format_assignment(assignment)}\n")
            flags = check_bx_conditions(space, assignment).as_dict()
            out.write("# " + " ".join(f"{k}={str(v).lower()}" for k, v in flags.items() if v is not None) + "\n")
    return EXIT_OK


def cmd_fixpoint(args, out: TextIO) -> int:
    text = _read(args.file)
    header = formats.instance_header(text)
    bundle = {}
    if header == "ballspace" or text.lstrip().startswith("{"):
        space = formats.parse(text)
        ground = space.ground
        bundle["space"] = space
    elif header == "poset":
        poset, _ = formats.parse_poset(text)
        ground = poset.elements
        bundle["poset"] = poset
    elif header == "ck":
        ck = formats.parse_ck(text)
        ground = ck.metric.points
        bundle["ck"] = ck
        bundle["space"], bundle["assignment"] = caristi_kirk_balls(ck)
    elif header == "ot":
        ot = formats.parse_ot(text)
        ground = ot.metric.points
        bundle["ot"] = ot
    else:
        raise InputError("fixpoint expects a ballspace, poset, ck or ot document")
    f = SelfMap.parse(args.map, ground)
    if args.bx:
        bundle["assignment"] = formats.parse_assignment(ground, args.bx)

    if args.greedy is not None:
        space = bundle.get("space")
        if space is None:
            raise InputError("--greedy needs a ball space document")
        start = formats.parse_subset(ground, args.greedy) if args.greedy else space.full
        result = greedy_fixed_point(space, f, start)
        trace = [list(ground.labels_of(b)) for b in result.trace]
        fp = None if result.fixed_point is None else ground.labels[result.fixed_point]
        if args.json:
            out.write(_dump({"fixed_point": fp, "trace": trace}))
        else:
            out.write("trace: " + " > ".join(ground.format(b) for b in result.trace) + "\n")
            out.write(f"fixed point: {fp}\n" if fp is not None else
                      f"no fixed point in terminal ball {ground.format(result.terminal)}\n")
        return EXIT_OK if result.found else EXIT_NEGATIVE

    if args.kt:
        space = bundle.get("space")
        if space is None:
            raise InputError("--kt needs a ball space document")
        rep = knaster_tarski_suite(space, f)
        if args.json:
            out.write(_dump({
                "hypothesis": rep.hypothesis, "hypothesis_f": rep.hypothesis_f,
                "fixed": list(ground.labels_of(rep.fixed)),
                "induced_s_star": rep.induced_s_star, "induced_f_s_star": rep.induced_f_s_star,
                "ball_continuous": rep.ball_continuous, "families_equal": rep.families_equal,
            }))
        else:
            out.write(rep.format(ground) + "\n")
        return EXIT_OK if rep.hypothesis else EXIT_NEGATIVE

    if not args.theorem:
        raise InputError("fixpoint needs --theorem, --greedy or --kt")
    theorem = TheoremId.parse(args.theorem)
    if theorem in BX_THEOREMS and "assignment" not in bundle:
        raise InputError(f"{theorem.value} needs --bx")
    if theorem in POSET_THEOREMS and "poset" not in bundle:
        raise InputError(f"{theorem.value} needs a poset document")
    check = verify_theorem(theorem, f, **bundle)
    if args.json:
        out.write(_dump({
            "theorem": theorem.value,
            "hypotheses_hold": check.hypotheses_hold,
            "conclusion_holds": check.conclusion_holds,
            "fixed_points": list(ground.labels_of(check.fixed_points)),
            "parts": [{"name": p.name, "hypotheses": p.hypotheses, "conclusion": p.conclusion,
                       "detail": p.detail} for p in check.parts],
            "witness": check.witness,
        }))
    else:
        out.write(check.summary() + "\n")
    if check.alarm:
        return EXIT_ALARM
    return EXIT_OK if check.hypotheses_hold else EXIT_NEGATIVE


def cmd_mine(args, out: TextIO) -> int:
    mode = MinerMode(args.mode)
    if mode is MinerMode.WITNESS:
        if not (args.propA and args.propB):
            raise InputError("witness mode needs --propA and --propB")
        try:
            a, b = parse_prop_name(args.propA), parse_prop_name(args.propB)
        except ValueError as e:
            raise InputError(str(e)) from None
        result = find_witness(a, b, args.n)
        if result is None:
            out.write(_dump({"witness": None}) if args.json else f"exhausted: no space on {args.n} points with {a} and not {b}\n")
            return EXIT_OK
        if args.json:
            out.write(_dump({"witness": result.to_dict()}))
        else:
            out.write(f"# {result.note}\n" + formats.emit(result.space))
        return EXIT_NEGATIVE
    if mode is MinerMode.IMPLICATIONS:
        if args.sample:
            summary = verify_implications_sample(args.n, args.sample, args.seed)
        else:
            summary = verify_implications(args.n, args.canonical, args.jobs)
    else:
        summary = verify_equivalence_table(args.n, args.canonical, args.jobs)
    out.write(_dump(summary.to_dict()) if args.json else summary.format() + "\n")
    return EXIT_OK if summary.violations == 0 else EXIT_ALARM


# --------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="ballspaces", description="Finite ball space toolkit.")
    p.add_argument("--json", action="store_true", help="machine-readable output")
    p.add_argument("--seed", type=int, default=0, help="seed for sampled runs (default 0)")
    sub = p.add_subparsers(dest="command", required=True)

    def common(q):
        q.add_argument("--json", action="store_true", default=argparse.SUPPRESS)
        q.add_argument("--seed", type=int, default=argparse.SUPPRESS)

    q = sub.add_parser("classify", help="print the property report of a ball space")
    common(q)
    q.add_argument("file")
    q.add_argument("--exhaustive", action="store_true", help="use the enumeration oracle")
    q.add_argument("--witness", action="store_true", help="show failing systems")
    q.add_argument("--property", help="exit 1 unless this property holds")
    q.set_defaults(func=cmd_classify)

    q = sub.add_parser("construct", help="apply a construction")
    common(q)
    q.add_argument("file")
    q.add_argument("--op", required=True, choices=[
        "with-singletons", "with-top", "union", "close", "subspace", "topology", "spherical-closure"])
    q.add_argument("--closure", choices=[c.value for c in ClosureOp])
    q.add_argument("--other", help="second document for union")
    q.add_argument("--subset", help="labels for subspace or spherical-closure")
    q.set_defaults(func=cmd_construct)

    q = sub.add_parser("product", help="product of ball spaces")
    common(q)
    q.add_argument("files", nargs="+")
    q.add_argument("--mode", required=True, choices=[m.value for m in ProductMode])
    q.set_defaults(func=cmd_product)

    q = sub.add_parser("instance", help="build a ball space from instance data")
    common(q)
    q.add_argument("file")
    q.add_argument("--kind", required=True, choices=formats.INSTANCE_KINDS)
    q.add_argument("--variant", help="Closed|Precise|Full or PrincipalFinal|Segments")
    q.set_defaults(func=cmd_instance)

    q = sub.add_parser("fixpoint", help="check a fixed-point theorem for a self-map")
    common(q)
    q.add_argument("file")
    q.add_argument("--map", required=True, help='self-map as "a:b,c:d,..."')
    q.add_argument("--theorem", help=", ".join(t.value for t in TheoremId))
    q.add_argument("--bx", help='B_x assignment as "x=a b;y=b;..."')
    q.add_argument("--greedy", nargs="?", const="", help="run the descent from this ball (default X)")
    q.add_argument("--kt", action="store_true", help="run the Knaster-Tarski suite")
    q.set_defaults(func=cmd_fixpoint)

    q = sub.add_parser("mine", help="exhaustive verification and witness search")
    common(q)
    q.add_argument("--n", type=int, required=True)
    q.add_argument("--mode", required=True, choices=[m.value for m in MinerMode])
    q.add_argument("--propA")
    q.add_argument("--propB")
    q.add_argument("--canonical", action="store_true", help="one space per isomorphism class")
    q.add_argument("--jobs", type=int, default=1)
    q.add_argument("--sample", type=int, help="check this many random families instead")
    q.set_defaults(func=cmd_mine)
    return p


def main(argv: Sequence[str] | None = None, out: TextIO | None = None, err: TextIO | None = None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code == 0 else EXIT_INPUT
    try:
        return args.func(args, out)
    except SoundnessAlarm as e:
        err.write(f"soundness alarm: {e}\n")
        return EXIT_ALARM
    except (InputError, PreconditionError, ResourceLimitError, BallSpaceError, ValueError) as e:
        err.write(f"error: {e}\n")
        return EXIT_INPUT


def dispatch(argv: Sequence[str]) -> tuple[int, str, str]:
    """Run the CLI in-process and return ``(exit code, stdout, stderr)``."""
    buf, ebuf = io.StringIO(), io.StringIO()
    code = main(list(argv), buf, ebuf)
    return code, buf.getvalue(), ebuf.getvalue()


if __name__ == "__main__":
    sys.exit(main())
