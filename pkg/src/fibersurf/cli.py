"""Command line interface.

Exit codes: 0 on success, 1 on a script or usage error, 2 when an invariant
violation is detected.
"""
from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path

from . import oracle
from .curves import SurfaceModel, natural_key, validate
from .errors import ClassificationError, FiberSurfError, MMPStuckError
from .mmp import classify_mori_fiber, count_nonreduced, to_mori_fiber
from .pluriforms import pluriform_dim
from .script import ScriptError, parse_script, run_script

EXIT_OK, EXIT_SCRIPT, EXIT_INVARIANT = 0, 1, 2


class InvariantViolation(Exception):
    pass


def fiber_record(model: SurfaceModel, label: str) -> dict:
    config = model.fiber(label)
    return {
        "curves": [
            {"id": c.id, "self_int": c.self_int, "k_deg": c.k_deg, "genus": c.genus, "fiber_mult": c.fiber_mult}
            for c in sorted(config.curves, key=lambda c: natural_key(c.id))
        ],
        "edges": [
            [*sorted(pair, key=natural_key), w]
            for pair, w in sorted(config.edges.items(), key=lambda kv: sorted(map(natural_key, kv[0])))
        ],
        "singular_points": [p.to_record() for p in model.singular_points(label)],
        "surviving": model.surviving_ids(label),
    }


def model_record(model: SurfaceModel) -> dict:
    return {q: fiber_record(model, q) for q in model.marked_points}


def to_dot(model: SurfaceModel, label: str) -> str:
    """DOT graph of one fiber; contracted curves get a doubled border."""
    config = model.fiber(label)
    gone = model.contracted_ids(label)
    lines = [f'graph "{label}" {{', "  node [shape=ellipse];"]
    for c in sorted(config.curves, key=lambda c: natural_key(c.id)):
        lines.append(f'  "{c.id}" [label="{c.label()}", peripheries={2 if c.id in gone else 1}];')
    for pair, w in sorted(config.edges.items(), key=lambda kv: sorted(map(natural_key, kv[0]))):
        a, b = sorted(pair, key=natural_key)
        lines.append(f'  "{a}" -- "{b}" [weight={w}, label="{w}"];' if w > 1 else f'  "{a}" -- "{b}";')
    lines.append("}")
    return "\n".join(lines) + "\n"


def _load(path: str) -> SurfaceModel:
    text = Path(path).read_text(encoding="utf-8")
    return run_script(parse_script(text))


def _check_fibers(model: SurfaceModel) -> None:
    for q, config in model.iter_fibers():
        problems = validate(config)
        if problems:
            raise InvariantViolation(f"fiber {q}: " + "; ".join(v.detail for v in problems))


def _mori(model: SurfaceModel):
    try:
        return to_mori_fiber(model)
    except MMPStuckError as exc:
        raise InvariantViolation(str(exc)) from exc


def _points_text(model: SurfaceModel, q: str) -> str:
    pts = model.singular_points(q)
    if not pts:
        return "smooth"
    return ", ".join(f"{p.ade_type}{{{' '.join(p.contracted_ids)}}}" for p in pts)


def cmd_build(args, out) -> dict:
    model = _load(args.script)
    _check_fibers(model)
    for q in model.marked_points:
        print(f"{q}: {len(model.fiber(q))} curves, surviving {' '.join(model.surviving_ids(q))}; {_points_text(model, q)}", file=out)
    return {"fibers": model_record(model)}


def cmd_mmp(args, out) -> dict:
    model = _load(args.script)
    _check_fibers(model)
    mori, log = _mori(model)
    for step in log:
        print(f"{step.fiber}: contract {step.curve} (blown down {' '.join(step.contracted)})", file=out)
    if not log:
        print("already a Mori fiber model", file=out)
    for q in mori.marked_points:
        print(f"{q}: support {' '.join(mori.surviving_ids(q))}; {_points_text(mori, q)}", file=out)
    return {"mmp_log": [s.to_record() for s in log], "fibers": model_record(mori)}


def _classify(model: SurfaceModel):
    mori, log = _mori(model)
    types = {}
    for q in mori.marked_points:
        try:
            types[q] = str(classify_mori_fiber(mori, q))
        except ClassificationError as exc:
            raise InvariantViolation(str(exc)) from exc
    return mori, log, types


def cmd_classify(args, out) -> dict:
    model = _load(args.script)
    _check_fibers(model)
    mori, log, types = _classify(model)
    for q, kind in types.items():
        print(f"{q}: {kind}  [{_points_text(mori, q)}]", file=out)
    r = count_nonreduced(mori)
    print(f"non-reduced fibers: {r}", file=out)
    return {"types": types, "nonreduced": r, "mmp_log": [s.to_record() for s in log], "fibers": model_record(mori)}


def _parse_ms(text: str) -> list[int]:
    try:
        ms = [int(x) for x in text.replace(",", " ").split()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad --m list {text!r}") from None
    if not ms or any(m < 1 for m in ms):
        raise argparse.ArgumentTypeError("--m values must be positive integers")
    return ms


def cmd_dims(args, out) -> dict:
    model = _load(args.script)
    _check_fibers(model)
    mori, log = _mori(model)
    r = count_nonreduced(mori)
    dims = {m: pluriform_dim(m, r) for m in args.m}
    for m, d in dims.items():
        print(f"m={m}: {d}", file=out)
    return {"nonreduced": r, "dims": {str(m): d for m, d in dims.items()}, "mmp_log": [s.to_record() for s in log]}


def cmd_verify(args, out) -> dict:
    if not 0 <= args.depth <= oracle.MAX_DEPTH:
        raise ScriptError(f"--depth must be between 0 and {oracle.MAX_DEPTH}")
    start = time.perf_counter()
    reports = oracle.run_suite(args.depth)
    elapsed = time.perf_counter() - start
    for name, rep in reports.items():
        status = "ok" if rep.ok else f"{len(rep.violations)} violation(s)"
        seen = ", ".join(f"{k}: {v}" for k, v in sorted(rep.seen.items(), key=lambda kv: natural_key(kv[0])))
        print(f"{name}: checked {rep.checked}, {status}" + (f" ({seen})" if seen else ""), file=out)
    print(f"scope: blow-up sequences of length <= {args.depth}; {elapsed:.2f}s", file=out)
    record = {"depth": args.depth, "reports": {k: v.to_record() for k, v in reports.items()}}
    if not all(rep.ok for rep in reports.values()):
        raise InvariantViolation("oracle suite found violations", record)
    return record


def cmd_export_dot(args, out) -> dict:
    model = _load(args.script)
    if args.mori:
        model, _ = _mori(model)
    target = Path(args.out)
    target.mkdir(parents=True, exist_ok=True)
    written = []
    for q in model.marked_points:
        path = target / f"{q}.dot"
        path.write_text(to_dot(model, q), encoding="utf-8")
        written.append(str(path))
        print(path, file=out)
    return {"files": written}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="fibersurf", description="Fibered surfaces as weighted dual graphs.")
    parser.add_argument("--report", metavar="PATH", help="also write a JSON record of the run")
    sub = parser.add_subparsers(dest="command", required=True)

    for name, func, help_ in (
        ("build", cmd_build, "replay a construction script and validate every fiber"),
        ("mmp", cmd_mmp, "run the relative MMP down to a Mori fiber model"),
        ("classify", cmd_classify, "fiber type of every marked fiber of the Mori model"),
    ):
        p = sub.add_parser(name, help=help_)
        p.add_argument("script")
        p.set_defaults(func=func)

    p = sub.add_parser("dims", help="pluri-form dimensions for the given tensor powers")
    p.add_argument("script")
    p.add_argument("--m", type=_parse_ms, default=[1, 2, 3, 4, 5, 6], help="comma separated, default 1..6")
    p.set_defaults(func=cmd_dims)

    p = sub.add_parser("verify", help="bounded-depth oracle checks of the fiber propositions")
    p.add_argument("--depth", type=int, default=oracle.DEFAULT_DEPTH)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("export-dot", help="one DOT file per marked fiber")
    p.add_argument("script")
    p.add_argument("--out", required=True, metavar="DIR")
    p.add_argument("--mori", action="store_true", help="export the Mori fiber model instead")
    p.set_defaults(func=cmd_export_dot)
    return parser


def _write_report(path: str | None, command: str, status: str, body: dict) -> None:
    if not path:
        return
    doc = {"command": command, "status": status, **body}
    Path(path).write_text(json.dumps(doc, indent=2, sort_keys=True) + "\n", encoding="utf-8")


def main(argv: list[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        body = args.func(args, out)
    except InvariantViolation as exc:
        print(f"invariant violation: {exc.args[0]}", file=sys.stderr)
        _write_report(args.report, args.command, "invariant_violation", exc.args[1] if len(exc.args) > 1 else {})
        return EXIT_INVARIANT
    except (FiberSurfError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        _write_report(args.report, args.command, "error", {"error": str(exc)})
        return EXIT_SCRIPT
    _write_report(args.report, args.command, "ok", body)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
