"""Wire documents, snapshot/log files, chain verification, and replay.

Snapshots are `.psm.json`, logs `.psm.log` (one canonical event per line);
both UTF-8 with LF endings. Field names on the wire are camelCase.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from pathlib import Path
from typing import Any

from . import model as m
from .applicability import (
    CongruenceRecord,
    ComplexityReport,
    ParasiticEdge,
    ParasiticKind,
    check_congruence,
    closure_residual,
)
from .canonical import canonical_dumps, canonical_loads
from .errors import ChainError, IoError, PsmError, SchemaError, ValidationError
from .impact import ImpactReport, SroiReport
from .layout import Sector
from .session import (
    ZERO_HASH,
    Event,
    EventKind,
    Phase,
    RevisionPolicy,
    Session,
    apply_event,
    empty_session,
    event_hash,
)


# --- generic readers ----------------------------------------------------------

def _expect(doc: Any, required: set[str], optional: set[str],
            path: str) -> None:
    if not isinstance(doc, dict):
        raise SchemaError(f"expected an object at {path or 'top level'}",
                          path=path)
    missing = required - doc.keys()
    if missing:
        raise SchemaError(f"missing field {sorted(missing)[0]!r}",
                          path=_join(path, sorted(missing)[0]))
    unknown = doc.keys() - required - optional
    if unknown:
        raise SchemaError(f"unknown field {sorted(unknown)[0]!r}",
                          path=_join(path, sorted(unknown)[0]))


def _join(path: str, key: str) -> str:
    return f"{path}.{key}" if path else key


def _r_str(doc: dict, key: str, path: str) -> str:
    v = doc[key]
    if not isinstance(v, str):
        raise SchemaError(f"{key} must be a string", path=_join(path, key))
    return v


def _r_num(doc: dict, key: str, path: str) -> float:
    v = doc[key]
    if isinstance(v, bool) or not isinstance(v, (int, float)) \
            or not math.isfinite(v):
        raise SchemaError(f"{key} must be a finite number",
                          path=_join(path, key))
    return float(v)


def _r_int(doc: dict, key: str, path: str) -> int:
    v = doc[key]
    if isinstance(v, bool) or not isinstance(v, int):
        raise SchemaError(f"{key} must be an integer", path=_join(path, key))
    return v


def _r_list(doc: dict, key: str, path: str) -> list:
    v = doc[key]
    if not isinstance(v, list):
        raise SchemaError(f"{key} must be a list", path=_join(path, key))
    return v


def _r_enum(doc: dict, key: str, enum_cls, path: str):
    v = doc[key]
    try:
        return enum_cls(v)
    except (ValueError, TypeError):
        raise SchemaError(
            f"{key} must be one of {[e.value for e in enum_cls]}, got {v!r}",
            path=_join(path, key)) from None


# --- model documents ----------------------------------------------------------

def model_to_doc(model: m.ProblemModel) -> dict:
    return {
        "id": model.id,
        "title": model.title,
        "goal": {
            "text": model.goal.text,
            "currentStateDescription": model.goal.current_state_description,
            "status": model.goal.status.value,
            "agreedBy": list(model.goal.agreed_by),
            "sentenceCountOverride": model.goal.sentence_count_override,
        },
        "obstacles": [
            {"id": n.id, "label": n.label,
             "parents": [{"parentId": l.parent_id, "weight": l.weight}
                         for l in n.parents],
             "isLeaf": n.is_leaf}
            for n in model.obstacles],
        "solutions": [
            {"id": s.id, "leafObstacleId": s.leaf_obstacle_id,
             "label": s.label, "share": s.share, "progress": s.progress,
             "metrics": [{"name": mt.name, "value": mt.value,
                          "unit": mt.unit} for mt in s.metrics]}
            for s in model.solutions],
        "resources": [
            {"id": r.id, "name": r.name, "kind": r.kind.value}
            for r in model.resources],
        "assignments": [
            {"resourceId": a.resource_id, "solutionId": a.solution_id,
             "share": a.share, "spend": a.spend}
            for a in model.assignments],
        "stakeholders": [
            {"id": s.id, "name": s.name, "constituency": s.constituency}
            for s in model.stakeholders],
    }


def model_from_doc(doc: Any) -> m.ProblemModel:
    _expect(doc, {"id", "title", "goal", "obstacles", "solutions",
                  "resources", "assignments", "stakeholders"}, set(), "")
    goal_doc = doc["goal"]
    _expect(goal_doc, {"text", "currentStateDescription", "status",
                       "agreedBy", "sentenceCountOverride"}, set(), "goal")
    override = goal_doc["sentenceCountOverride"]
    if override is not None and (isinstance(override, bool)
                                 or not isinstance(override, int)
                                 or override < 0):
        raise SchemaError("sentenceCountOverride must be a non-negative "
                          "integer or null", path="goal.sentenceCountOverride")
    agreed_by = _r_list(goal_doc, "agreedBy", "goal")
    if not all(isinstance(x, str) for x in agreed_by):
        raise SchemaError("agreedBy must contain strings",
                          path="goal.agreedBy")
    goal = m.SuperordinateGoal(
        text=_r_str(goal_doc, "text", "goal"),
        current_state_description=_r_str(goal_doc, "currentStateDescription",
                                         "goal"),
        status=_r_enum(goal_doc, "status", m.GoalStatus, "goal"),
        agreed_by=tuple(agreed_by),
        sentence_count_override=override)

    obstacles = []
    for i, nd in enumerate(_r_list(doc, "obstacles", "")):
        path = f"obstacles[{i}]"
        _expect(nd, {"id", "label", "parents", "isLeaf"}, set(), path)
        parents = []
        for j, ld in enumerate(_r_list(nd, "parents", path)):
            lpath = f"{path}.parents[{j}]"
            _expect(ld, {"parentId", "weight"}, set(), lpath)
            parents.append(m.ParentLink(
                parent_id=_r_str(ld, "parentId", lpath),
                weight=_r_num(ld, "weight", lpath)))
        is_leaf = nd["isLeaf"]
        if not isinstance(is_leaf, bool):
            raise SchemaError("isLeaf must be a boolean",
                              path=f"{path}.isLeaf")
        obstacles.append(m.ObstacleNode(
            id=_r_str(nd, "id", path), label=_r_str(nd, "label", path),
            parents=tuple(parents), is_leaf=is_leaf))

    solutions = []
    for i, sd in enumerate(_r_list(doc, "solutions", "")):
        path = f"solutions[{i}]"
        _expect(sd, {"id", "leafObstacleId", "label", "share", "progress",
                     "metrics"}, set(), path)
        metrics = []
        for j, md in enumerate(_r_list(sd, "metrics", path)):
            mpath = f"{path}.metrics[{j}]"
            _expect(md, {"name", "value", "unit"}, set(), mpath)
            metrics.append(m.Metric(name=_r_str(md, "name", mpath),
                                    value=_r_num(md, "value", mpath),
                                    unit=_r_str(md, "unit", mpath)))
        solutions.append(m.Solution(
            id=_r_str(sd, "id", path),
            leaf_obstacle_id=_r_str(sd, "leafObstacleId", path),
            label=_r_str(sd, "label", path),
            share=_r_num(sd, "share", path),
            progress=_r_num(sd, "progress", path),
            metrics=tuple(metrics)))

    resources = []
    for i, rd in enumerate(_r_list(doc, "resources", "")):
        path = f"resources[{i}]"
        _expect(rd, {"id", "name", "kind"}, set(), path)
        resources.append(m.Resource(
            id=_r_str(rd, "id", path), name=_r_str(rd, "name", path),
            kind=_r_enum(rd, "kind", m.ResourceKind, path)))

    assignments = []
    for i, ad in enumerate(_r_list(doc, "assignments", "")):
        path = f"assignments[{i}]"
        _expect(ad, {"resourceId", "solutionId", "share", "spend"}, set(),
                path)
        assignments.append(m.ResourceAssignment(
            resource_id=_r_str(ad, "resourceId", path),
            solution_id=_r_str(ad, "solutionId", path),
            share=_r_num(ad, "share", path),
            spend=_r_num(ad, "spend", path)))

    stakeholders = []
    for i, hd in enumerate(_r_list(doc, "stakeholders", "")):
        path = f"stakeholders[{i}]"
        _expect(hd, {"id", "name", "constituency"}, set(), path)
        stakeholders.append(m.Stakeholder(
            id=_r_str(hd, "id", path), name=_r_str(hd, "name", path),
            constituency=_r_str(hd, "constituency", path)))

    return m.ProblemModel(
        id=_r_str(doc, "id", ""), title=_r_str(doc, "title", ""),
        goal=goal, obstacles=tuple(obstacles), solutions=tuple(solutions),
        resources=tuple(resources), assignments=tuple(assignments),
        stakeholders=tuple(stakeholders))


def serialize_model(model: m.ProblemModel) -> str:
    return canonical_dumps(model_to_doc(model)) + "\n"


def deserialize_model(text: str) -> m.ProblemModel:
    model = model_from_doc(canonical_loads(text))
    violations = m.validate(model)
    if violations:
        raise ValidationError(
            f"model fails validation with {len(violations)} violation(s)",
            violations=tuple(
                {"code": v.code, "path": v.path, "message": v.message}
                for v in violations))
    return model


# --- session and event documents ----------------------------------------------

def congruence_record_to_doc(record: CongruenceRecord) -> dict:
    return {
        "stakeholderId": record.stakeholder_id,
        "mS": record.m_s, "mC": record.m_c, "mCbar": record.m_cbar,
        "refactoredObstacleIds": list(record.refactored_obstacle_ids),
        "mObar": list(record.m_obar),
        "mI": record.m_i,
    }


def parasitic_edge_to_doc(edge: ParasiticEdge) -> dict:
    return {"fromId": edge.from_id, "toId": edge.to_id,
            "kind": edge.kind.value, "note": edge.note}


def parasitic_edge_from_doc(doc: Any, path: str = "") -> ParasiticEdge:
    _expect(doc, {"fromId", "toId", "kind", "note"}, set(), path)
    return ParasiticEdge(
        from_id=_r_str(doc, "fromId", path), to_id=_r_str(doc, "toId", path),
        kind=_r_enum(doc, "kind", ParasiticKind, path),
        note=_r_str(doc, "note", path))


def session_to_doc(session: Session) -> dict:
    """Snapshot view of a session; the log itself lives in the .psm.log."""
    return {
        "id": session.id,
        "phase": session.phase.value,
        "model": model_to_doc(session.model),
        "lastSeq": session.last_seq,
        "lastHash": session.last_hash,
        "lastMinorRevision": session.last_minor_revision,
        "lastMajorRevision": session.last_major_revision,
        "policy": {"tMinorDays": session.policy.t_minor_days,
                   "tMajorDays": session.policy.t_major_days},
        "declaredDependencies": [parasitic_edge_to_doc(e)
                                 for e in session.declared_dependencies],
        "congruenceRecords": [congruence_record_to_doc(r)
                              for r in session.congruence_records],
    }


def serialize_session(session: Session) -> str:
    return canonical_dumps(session_to_doc(session)) + "\n"


def policy_from_doc(doc: Any, path: str = "policy") -> RevisionPolicy:
    _expect(doc, {"tMinorDays", "tMajorDays"}, set(), path)
    return RevisionPolicy(t_minor_days=_r_num(doc, "tMinorDays", path),
                          t_major_days=_r_num(doc, "tMajorDays", path))


def event_to_doc(event: Event) -> dict:
    return {"seq": event.seq, "timestamp": event.timestamp,
            "actor": event.actor, "kind": event.kind.value,
            "payload": event.payload, "prevHash": event.prev_hash,
            "hash": event.hash}


def event_from_doc(doc: Any, path: str = "") -> Event:
    _expect(doc, {"seq", "timestamp", "actor", "kind", "payload",
                  "prevHash", "hash"}, set(), path)
    return Event(
        seq=_r_int(doc, "seq", path),
        timestamp=_r_int(doc, "timestamp", path),
        actor=_r_str(doc, "actor", path),
        kind=_r_enum(doc, "kind", EventKind, path),
        payload=doc["payload"],
        prev_hash=_r_str(doc, "prevHash", path),
        hash=_r_str(doc, "hash", path))


def event_line(event: Event) -> str:
    return canonical_dumps(event_to_doc(event))


# --- report documents -----------------------------------------------------------

def impact_report_to_doc(report: ImpactReport) -> dict:
    return {"perNode": dict(report.per_node),
            "perSolution": dict(report.per_solution),
            "nodeProgress": dict(report.node_progress),
            "goalProgress": report.goal_progress}


def sroi_report_to_doc(report: SroiReport) -> dict:
    def entry(e):
        return {"needleMovement": e.needle_movement, "spend": e.spend,
                "sroi": e.sroi}
    return {"perSolution": {k: entry(v)
                            for k, v in report.per_solution.items()},
            "perResource": {k: entry(v)
                            for k, v in report.per_resource.items()}}


def complexity_report_to_doc(report: ComplexityReport) -> dict:
    return {"cyclomatic": report.cyclomatic,
            "parasiticRatio": report.parasitic_ratio,
            "density": report.density,
            "degreeEntropy": report.degree_entropy,
            "measure": report.measure.value,
            "h": report.h, "hCrit": report.h_crit,
            "applicable": report.applicable}


def congruence_analysis_doc(records: tuple[CongruenceRecord, ...],
                            epsilon: float) -> dict:
    out = []
    for record in records:
        check = check_congruence(record, epsilon)
        doc = congruence_record_to_doc(record)
        doc["ratioC"] = check.ratio_c
        doc["ratioCbar"] = check.ratio_cbar
        doc["congruent"] = check.congruent
        doc["closureResidual"] = closure_residual(record)
        out.append(doc)
    return {"epsilon": epsilon, "records": out}


def sector_to_doc(sector: Sector) -> dict:
    return {"pathId": sector.path_id, "kind": sector.kind.value,
            "innerRadius": sector.inner_radius,
            "outerRadius": sector.outer_radius,
            "startAngleDeg": sector.start_angle_deg,
            "spanDeg": sector.span_deg, "label": sector.label}


# --- log files ------------------------------------------------------------------

@dataclass(frozen=True, slots=True)
class VerifyResult:
    ok: bool
    last_seq: int
    first_bad_seq: int | None = None
    reason: str = ""


def _read_text(path: str | Path) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except UnicodeDecodeError as exc:
        raise IoError(f"cannot read {path}: not valid UTF-8 at byte "
                      f"{exc.start}") from None
    except OSError as exc:
        raise IoError(f"cannot read {path}: {exc}") from None


def append_event(path: str | Path, event: Event) -> None:
    """Append one canonical event line after checking it chains onto the
    file's current tail."""
    path = Path(path)
    prev_seq, prev_hash = 0, ZERO_HASH
    if path.exists():
        text = _read_text(path)
        lines = text.splitlines()
        if lines:
            tail = event_from_doc(canonical_loads(lines[-1]))
            prev_seq, prev_hash = tail.seq, tail.hash
    if event.seq != prev_seq + 1:
        raise ChainError(f"expected seq {prev_seq + 1}, got {event.seq}",
                         expected=prev_seq + 1, seq=event.seq)
    if event.prev_hash != prev_hash:
        raise ChainError(f"prevHash mismatch at seq {event.seq}",
                         seq=event.seq)
    try:
        with path.open("a", encoding="utf-8", newline="\n") as fh:
            fh.write(event_line(event) + "\n")
    except OSError as exc:
        raise IoError(f"cannot append to {path}: {exc}") from None


def read_log(path: str | Path) -> list[Event]:
    events = []
    for lineno, line in enumerate(_read_text(path).splitlines(), 1):
        try:
            events.append(event_from_doc(canonical_loads(line)))
        except PsmError as exc:
            exc.details.setdefault("line", lineno)
            raise
    return events


def verify_log(path: str | Path) -> VerifyResult:
    """Recompute the whole chain: parse, canonical-byte check, seq
    gaplessness, hash linkage. Total — always returns a verdict."""
    try:
        data = Path(path).read_bytes()
    except OSError as exc:
        raise IoError(f"cannot read {path}: {exc}") from None
    undecodable = None
    try:
        text = data.decode("utf-8")
    except UnicodeDecodeError as exc:
        # Verify the clean whole-line prefix, then report the bad line.
        cut = data.rfind(b"\n", 0, exc.start) + 1
        text = data[:cut].decode("utf-8")
        undecodable = text.count("\n") + 1
    prev_hash = ZERO_HASH
    seq = 0
    # Strict \n framing: splitlines() would also break on \x0b and friends,
    # letting a flipped separator byte go unnoticed.
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    for lineno, line in enumerate(lines, 1):
        try:
            doc = canonical_loads(line)
            event = event_from_doc(doc)
        except PsmError as exc:
            return VerifyResult(ok=False, last_seq=seq, first_bad_seq=lineno,
                                reason=f"line {lineno}: {exc}")
        if event_line(event) != line:
            return VerifyResult(ok=False, last_seq=seq, first_bad_seq=lineno,
                                reason=f"line {lineno}: not in canonical form")
        if event.seq != seq + 1:
            return VerifyResult(
                ok=False, last_seq=seq, first_bad_seq=lineno,
                reason=f"line {lineno}: expected seq {seq + 1}, "
                       f"found {event.seq}")
        if event.prev_hash != prev_hash:
            return VerifyResult(ok=False, last_seq=seq, first_bad_seq=event.seq,
                                reason=f"seq {event.seq}: prevHash mismatch")
        recomputed = event_hash(event.seq, event.timestamp, event.actor,
                                event.kind, event.payload, event.prev_hash)
        if event.hash != recomputed:
            return VerifyResult(ok=False, last_seq=seq, first_bad_seq=event.seq,
                                reason=f"seq {event.seq}: hash mismatch")
        seq = event.seq
        prev_hash = event.hash
    if undecodable is not None:
        return VerifyResult(ok=False, last_seq=seq, first_bad_seq=undecodable,
                            reason=f"line {undecodable}: not valid UTF-8")
    return VerifyResult(ok=True, last_seq=seq)


def replay(path: str | Path, session_id: str | None = None,
           policy: RevisionPolicy | None = None) -> Session:
    """Fold a log file from the empty session; deterministic."""
    if session_id is None:
        stem = Path(path).name
        for suffix in (".psm.log", ".log"):
            if stem.endswith(suffix):
                stem = stem[: -len(suffix)]
                break
        session_id = stem
    session = empty_session(session_id, policy)
    for event in read_log(path):
        try:
            session = apply_event(session, event)
        except PsmError as exc:
            exc.details.setdefault("seq", event.seq)
            raise
    return session
