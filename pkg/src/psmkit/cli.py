"""Command-line front end: offline session work, analysis, layout, and
log verification. Exit codes: 0 success, 1 validation/verification or
engine failure, 2 usage error.
"""
from __future__ import annotations

import argparse
import csv
import io
import sys
from pathlib import Path

from .applicability import (
    ComplexityMeasure,
    build_dependency_network,
    check_congruence,
    closure_residual,
    complexity_gate,
)
from .canonical import canonical_dumps, canonical_loads
from .errors import PsmError
from .impact import progress_rollup, sroi
from .layout import LayoutConfig, compute_layout, to_svg
from .persistence import (
    append_event,
    complexity_report_to_doc,
    congruence_analysis_doc,
    deserialize_model,
    event_from_doc,
    impact_report_to_doc,
    replay,
    sector_to_doc,
    serialize_session,
    sroi_report_to_doc,
    verify_log,
)
from .session import EventKind, apply_event, empty_session, make_event


def _parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="psm",
        description="facilitated problem-solving model toolkit")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("init", help="create an empty session log")
    p.add_argument("log", help="path of the new .psm.log file")

    p = sub.add_parser("serve", help="run the facilitation HTTP server")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8765)
    p.add_argument("--data-dir", default=".",
                   help="directory holding .psm.log session files")

    p = sub.add_parser("apply", help="apply a file of events to a session log")
    p.add_argument("events", help="JSON-lines file of events; either full "
                                  "logged events or {kind, actor, payload, "
                                  "timestamp?} stubs")
    p.add_argument("--out", required=True, help="session log to extend")

    p = sub.add_parser("validate", help="validate a model snapshot")
    p.add_argument("model", help=".psm.json model file")

    p = sub.add_parser("analyze", help="run an analysis over a model or log")
    p.add_argument("kind",
                   choices=["impact", "sroi", "complexity", "congruence"])
    p.add_argument("input", help=".psm.json model or .psm.log session log")
    p.add_argument("--csv", action="store_true", dest="as_csv")
    p.add_argument("--epsilon", type=float, default=0.2,
                   help="congruence threshold (default 0.2)")
    p.add_argument("--measure", default="PARASITIC_RATIO",
                   choices=[m.value for m in ComplexityMeasure])
    p.add_argument("--h-crit", type=float, default=0.25, dest="h_crit")

    p = sub.add_parser("layout", help="compute sunburst sectors or SVG")
    p.add_argument("input", help=".psm.json model or .psm.log session log")
    p.add_argument("--svg", help="write an SVG document to this path")
    p.add_argument("--goal-radius", type=float, default=60.0)
    p.add_argument("--ring-thickness", type=float, default=40.0)
    p.add_argument("--start-angle", type=float, default=0.0)

    p = sub.add_parser("replay", help="rebuild a session from its log")
    p.add_argument("log", help=".psm.log file")

    p = sub.add_parser("verify-log", help="check hash chain and seq order")
    p.add_argument("log", help=".psm.log file")

    return parser


def _load_model_or_session(path: str):
    """Returns (model, declared_dependencies, congruence_records)."""
    if path.endswith(".log"):
        session = replay(path)
        return (session.model, session.declared_dependencies,
                session.congruence_records)
    model = deserialize_model(Path(path).read_text(encoding="utf-8"))
    return model, (), ()


def _print_doc(doc) -> None:
    sys.stdout.write(canonical_dumps(doc) + "\n")


def _csv_out(header: list[str], rows: list[list]) -> None:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    sys.stdout.write(buf.getvalue())


def _cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    return str(value)


def _cmd_init(args) -> int:
    path = Path(args.log)
    if path.exists():
        print(f"error: {path} already exists", file=sys.stderr)
        return 1
    path.parent.mkdir(parents=True, exist_ok=True)
    path.touch()
    print(f"initialized {path}")
    return 0


def _cmd_serve(args) -> int:
    import uvicorn

    from .server import create_app

    uvicorn.run(create_app(args.data_dir), host=args.host, port=args.port,
                log_level="info")
    return 0


def _cmd_apply(args) -> int:
    out = Path(args.out)
    if out.exists() and out.read_text(encoding="utf-8").strip():
        session = replay(out)
    else:
        stem = out.name
        for suffix in (".psm.log", ".log"):
            if stem.endswith(suffix):
                stem = stem[: -len(suffix)]
                break
        session = empty_session(stem)
    text = Path(args.events).read_text(encoding="utf-8")
    applied = 0
    for lineno, line in enumerate(text.splitlines(), 1):
        if not line.strip():
            continue
        doc = canonical_loads(line)
        if isinstance(doc, dict) and "hash" in doc:
            event = event_from_doc(doc)
        else:
            if not isinstance(doc, dict) or "kind" not in doc \
                    or "actor" not in doc:
                print(f"error: line {lineno}: event stub needs kind and "
                      f"actor", file=sys.stderr)
                return 1
            event = make_event(session, EventKind(doc["kind"]), doc["actor"],
                               doc.get("payload", {}),
                               int(doc.get("timestamp", 0)))
        session = apply_event(session, event)
        append_event(out, event)
        applied += 1
    print(f"applied {applied} event(s); last seq {session.last_seq}")
    return 0


def _cmd_validate(args) -> int:
    from .errors import ValidationError
    try:
        deserialize_model(Path(args.model).read_text(encoding="utf-8"))
    except ValidationError as exc:
        for violation in exc.violations:
            print(f"{violation['code']} at {violation['path']}: "
                  f"{violation['message']}", file=sys.stderr)
        return 1
    print("valid")
    return 0


def _cmd_analyze(args) -> int:
    model, declared, records = _load_model_or_session(args.input)
    if args.kind == "impact":
        report = progress_rollup(model)
        if not args.as_csv:
            _print_doc(impact_report_to_doc(report))
            return 0
        leaves = [n.id for n in model.obstacles
                  if not model.children_of(n.id)]
        _csv_out(["nodeId", "impact", "progress"],
                 [[leaf, _cell(report.per_node[leaf]),
                   _cell(report.node_progress[leaf])] for leaf in leaves])
        return 0
    if args.kind == "sroi":
        report = sroi(model)
        if not args.as_csv:
            _print_doc(sroi_report_to_doc(report))
            return 0
        rows = [["solution", sid, _cell(e.needle_movement), _cell(e.spend),
                 _cell(e.sroi)] for sid, e in report.per_solution.items()]
        rows += [["resource", rid, _cell(e.needle_movement), _cell(e.spend),
                  _cell(e.sroi)] for rid, e in report.per_resource.items()]
        _csv_out(["kind", "id", "needleMovement", "spend", "sroi"], rows)
        return 0
    if args.kind == "complexity":
        network = build_dependency_network(model, declared)
        report = complexity_gate(network,
                                 measure=ComplexityMeasure(args.measure),
                                 h_crit=args.h_crit)
        if not args.as_csv:
            _print_doc(complexity_report_to_doc(report))
            return 0
        _csv_out(["measure", "h", "hCrit", "applicable", "cyclomatic",
                  "parasiticRatio", "density", "degreeEntropy"],
                 [[report.measure.value, _cell(report.h),
                   _cell(report.h_crit), _cell(report.applicable),
                   _cell(report.cyclomatic), _cell(report.parasitic_ratio),
                   _cell(report.density), _cell(report.degree_entropy)]])
        return 0
    # congruence
    if not args.as_csv:
        _print_doc(congruence_analysis_doc(records, args.epsilon))
        return 0
    rows = []
    for record in records:
        check = check_congruence(record, args.epsilon)
        rows.append([record.stakeholder_id, _cell(check.ratio_c),
                     _cell(check.ratio_cbar), _cell(check.congruent),
                     _cell(closure_residual(record))])
    _csv_out(["stakeholderId", "ratioC", "ratioCbar", "congruent",
              "closureResidual"], rows)
    return 0


def _cmd_layout(args) -> int:
    model, _, _ = _load_model_or_session(args.input)
    config = LayoutConfig(goal_radius=args.goal_radius,
                          ring_thickness=args.ring_thickness,
                          start_angle_deg=args.start_angle)
    sectors = compute_layout(model, config)
    if args.svg:
        Path(args.svg).write_text(to_svg(sectors, config), encoding="utf-8")
        print(f"wrote {args.svg}")
        return 0
    _print_doc({"sectors": [sector_to_doc(s) for s in sectors]})
    return 0


def _cmd_replay(args) -> int:
    session = replay(args.log)
    sys.stdout.write(serialize_session(session))
    return 0


def _cmd_verify_log(args) -> int:
    result = verify_log(args.log)
    if result.ok:
        print(f"OK seq={result.last_seq}")
        return 0
    print(f"BAD seq={result.first_bad_seq}: {result.reason}")
    return 1


_COMMANDS = {
    "init": _cmd_init,
    "serve": _cmd_serve,
    "apply": _cmd_apply,
    "validate": _cmd_validate,
    "analyze": _cmd_analyze,
    "layout": _cmd_layout,
    "replay": _cmd_replay,
    "verify-log": _cmd_verify_log,
}


def main(argv: list[str] | None = None) -> int:
    args = _parser().parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except PsmError as exc:
        print(f"error [{exc.code}]: {exc.message}"
              + (f" (details: {exc.details})" if exc.details else ""),
              file=sys.stderr)
        return 1
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
