"""Phase-coherent, event-sourced session engine.

Every change is an Event appended to a hash-chained log; the session's
model is always exactly the fold of that log from the empty state. The
gate table decides which event kinds the current phase admits.
"""
from __future__ import annotations

import hashlib
import math
from dataclasses import dataclass, field, replace
from enum import Enum
from typing import Any

from . import model as m
from .applicability import CongruenceRecord, ParasiticEdge, ParasiticKind
from .canonical import canonical_dumps, canonicalize
from .errors import (
    AgreementError,
    ChainError,
    DanglingDependency,
    IncompletePhase,
    InvalidRevisionTarget,
    InvalidValue,
    MinorCannotTargetGoal,
    NonPositiveMS,
    NotInImplementation,
    PhaseCoherenceError,
    SchemaError,
    UnknownNode,
    UnknownStakeholder,
)

ZERO_HASH = "0" * 64

MS_PER_DAY = 86_400_000


class Phase(Enum):
    GOAL = "GOAL"
    OBSTACLES = "OBSTACLES"
    SOLUTIONS = "SOLUTIONS"
    RESOURCES = "RESOURCES"
    IMPLEMENTATION = "IMPLEMENTATION"


PHASE_ORDER = (Phase.GOAL, Phase.OBSTACLES, Phase.SOLUTIONS,
               Phase.RESOURCES, Phase.IMPLEMENTATION)


def next_phase(phase: Phase) -> Phase | None:
    idx = PHASE_ORDER.index(phase)
    return PHASE_ORDER[idx + 1] if idx + 1 < len(PHASE_ORDER) else None


class EventKind(Enum):
    STAKEHOLDER_REGISTERED = "STAKEHOLDER_REGISTERED"
    GOAL_DRAFTED = "GOAL_DRAFTED"
    GOAL_EDITED = "GOAL_EDITED"
    GOAL_AGREED = "GOAL_AGREED"
    PHASE_ADVANCED = "PHASE_ADVANCED"
    OBSTACLE_ADDED = "OBSTACLE_ADDED"
    OBSTACLE_SUBDIVIDED = "OBSTACLE_SUBDIVIDED"
    WEIGHTS_SET = "WEIGHTS_SET"
    LEAF_MARKED = "LEAF_MARKED"
    SOLUTION_ADDED = "SOLUTION_ADDED"
    RESOURCE_REGISTERED = "RESOURCE_REGISTERED"
    RESOURCE_ASSIGNED = "RESOURCE_ASSIGNED"
    PROGRESS_REPORTED = "PROGRESS_REPORTED"
    SPEND_REPORTED = "SPEND_REPORTED"
    DEPENDENCY_DECLARED = "DEPENDENCY_DECLARED"
    CONGRUENCE_RECORDED = "CONGRUENCE_RECORDED"
    MINOR_REVISION_OPENED = "MINOR_REVISION_OPENED"
    MAJOR_REVISION_OPENED = "MAJOR_REVISION_OPENED"


class RevisionScope(Enum):
    MINOR = "MINOR"
    MAJOR = "MAJOR"


# Which event kinds each phase admits. PHASE_ADVANCED moves forward one
# step and so never applies in IMPLEMENTATION; revisions only apply there.
GATE_TABLE: dict[Phase, frozenset[EventKind]] = {
    Phase.GOAL: frozenset({
        EventKind.STAKEHOLDER_REGISTERED, EventKind.GOAL_DRAFTED,
        EventKind.GOAL_EDITED, EventKind.GOAL_AGREED,
        EventKind.CONGRUENCE_RECORDED, EventKind.PHASE_ADVANCED}),
    Phase.OBSTACLES: frozenset({
        EventKind.OBSTACLE_ADDED, EventKind.OBSTACLE_SUBDIVIDED,
        EventKind.WEIGHTS_SET, EventKind.LEAF_MARKED,
        EventKind.PHASE_ADVANCED}),
    Phase.SOLUTIONS: frozenset({
        EventKind.SOLUTION_ADDED, EventKind.PHASE_ADVANCED}),
    Phase.RESOURCES: frozenset({
        EventKind.RESOURCE_REGISTERED, EventKind.RESOURCE_ASSIGNED,
        EventKind.PHASE_ADVANCED}),
    Phase.IMPLEMENTATION: frozenset({
        EventKind.PROGRESS_REPORTED, EventKind.SPEND_REPORTED,
        EventKind.DEPENDENCY_DECLARED, EventKind.MINOR_REVISION_OPENED,
        EventKind.MAJOR_REVISION_OPENED}),
}


def gate_check(phase: Phase, kind: EventKind) -> bool:
    return kind in GATE_TABLE[phase]


@dataclass(frozen=True, slots=True)
class Event:
    seq: int
    timestamp: int  # milliseconds UTC; informational, seq is authoritative
    actor: str
    kind: EventKind
    payload: Any
    prev_hash: str
    hash: str


@dataclass(frozen=True, slots=True)
class RevisionPolicy:
    t_minor_days: float = 365.0
    t_major_days: float = 1095.0

    def __post_init__(self):
        if not (0 < self.t_minor_days < self.t_major_days):
            raise InvalidValue(
                f"policy requires 0 < tMinor < tMajor, got "
                f"{self.t_minor_days}/{self.t_major_days}")


@dataclass(frozen=True, slots=True)
class PolicyWarning:
    scope: RevisionScope
    elapsed_days: float
    required_days: float
    message: str


@dataclass(frozen=True, slots=True)
class Session:
    id: str
    phase: Phase = Phase.GOAL
    model: m.ProblemModel = field(default_factory=m.ProblemModel)
    log: tuple[Event, ...] = ()
    last_minor_revision: int | None = None
    last_major_revision: int | None = None
    policy: RevisionPolicy = field(default_factory=RevisionPolicy)
    declared_dependencies: tuple[ParasiticEdge, ...] = ()
    congruence_records: tuple[CongruenceRecord, ...] = ()

    @property
    def last_seq(self) -> int:
        return self.log[-1].seq if self.log else 0

    @property
    def last_hash(self) -> str:
        return self.log[-1].hash if self.log else ZERO_HASH


def empty_session(session_id: str,
                  policy: RevisionPolicy | None = None) -> Session:
    return Session(id=session_id, model=m.ProblemModel(id=session_id),
                   policy=policy or RevisionPolicy())


def event_hash(seq: int, timestamp: int, actor: str, kind: EventKind,
               payload: Any, prev_hash: str) -> str:
    material = canonical_dumps(
        [seq, timestamp, actor, kind.value, payload, prev_hash])
    return hashlib.sha256(material.encode("utf-8")).hexdigest()


def make_event(session: Session, kind: EventKind, actor: str, payload: Any,
               timestamp: int) -> Event:
    """Build the next chain-valid event for this session."""
    if not isinstance(actor, str) or not actor:
        raise SchemaError("actor must be a non-empty string", path="actor")
    if isinstance(timestamp, bool) or not isinstance(timestamp, int) \
            or timestamp < 0:
        raise SchemaError("timestamp must be a non-negative integer",
                          path="timestamp")
    try:
        payload = canonicalize(payload)
    except ValueError as exc:
        raise SchemaError(f"payload is not canonicalizable: {exc}",
                          path="payload") from None
    seq = session.last_seq + 1
    prev = session.last_hash
    return Event(seq=seq, timestamp=timestamp, actor=actor, kind=kind,
                 payload=payload, prev_hash=prev,
                 hash=event_hash(seq, timestamp, actor, kind, payload, prev))


# --- payload readers ---------------------------------------------------------

def _keys(payload: Any, required: set[str], optional: set[str] = frozenset()):
    if not isinstance(payload, dict):
        raise SchemaError("payload must be an object", path="payload")
    missing = required - payload.keys()
    if missing:
        raise SchemaError(f"payload missing {sorted(missing)}",
                          path=sorted(missing)[0])
    unknown = payload.keys() - required - optional
    if unknown:
        raise SchemaError(f"unknown payload fields {sorted(unknown)}",
                          path=sorted(unknown)[0])


def _str(payload: dict, key: str, *, default=None, empty_ok=False):
    if key not in payload:
        return default
    v = payload[key]
    if not isinstance(v, str) or (not v and not empty_ok):
        raise SchemaError(f"{key} must be a non-empty string", path=key)
    return v


def _num(payload: dict, key: str, *, default=None):
    if key not in payload:
        return default
    v = payload[key]
    if isinstance(v, bool) or not isinstance(v, (int, float)) \
            or not math.isfinite(v):
        raise SchemaError(f"{key} must be a finite number", path=key)
    return float(v)


def _weight_map(value: Any, key: str) -> dict[str, float]:
    if not isinstance(value, dict):
        raise SchemaError(f"{key} must be an object of weights", path=key)
    out = {}
    for node_id, w in value.items():
        if isinstance(w, bool) or not isinstance(w, (int, float)) \
                or not math.isfinite(w):
            raise SchemaError(f"{key}[{node_id!r}] must be a finite number",
                              path=key)
        out[str(node_id)] = float(w)
    return out


def _enum(payload: dict, key: str, enum_cls, *, default=None):
    if key not in payload:
        return default
    v = payload[key]
    try:
        return enum_cls(v)
    except ValueError:
        raise SchemaError(
            f"{key} must be one of {[e.value for e in enum_cls]}, got {v!r}",
            path=key) from None


# --- event application -------------------------------------------------------

def apply_event(session: Session, event: Event) -> Session:
    """Verify chain linkage and the phase gate, then fold the event in."""
    expected_seq = session.last_seq + 1
    if event.seq != expected_seq:
        raise ChainError(
            f"expected seq {expected_seq}, got {event.seq}",
            expected=expected_seq, seq=event.seq)
    if event.prev_hash != session.last_hash:
        raise ChainError(
            f"prevHash mismatch at seq {event.seq}", seq=event.seq)
    if isinstance(event.timestamp, bool) or not isinstance(event.timestamp, int) \
            or event.timestamp < 0:
        raise SchemaError("timestamp must be a non-negative integer",
                          path="timestamp")
    if not isinstance(event.actor, str) or not event.actor:
        raise SchemaError("actor must be a non-empty string", path="actor")
    try:
        payload = canonicalize(event.payload)
    except ValueError as exc:
        raise SchemaError(f"payload is not canonicalizable: {exc}",
                          path="payload") from None
    recomputed = event_hash(event.seq, event.timestamp, event.actor,
                            event.kind, payload, event.prev_hash)
    if event.hash != recomputed:
        raise ChainError(f"hash mismatch at seq {event.seq}", seq=event.seq)
    if not gate_check(session.phase, event.kind):
        raise PhaseCoherenceError(
            f"{event.kind.value} is not allowed during the "
            f"{session.phase.value} phase",
            phase=session.phase.value, kind=event.kind.value)
    canonical_event = replace(event, payload=payload)
    updated = _DISPATCH[event.kind](session, canonical_event)
    return replace(updated, log=session.log + (canonical_event,))


def _apply_stakeholder_registered(session: Session, event: Event) -> Session:
    p = event.payload
    _keys(p, {"stakeholderId", "name"}, {"constituency"})
    new_model = m.register_stakeholder(
        session.model, _str(p, "stakeholderId"), _str(p, "name"),
        _str(p, "constituency", default="", empty_ok=True))
    # A changed roster invalidates any standing agreement.
    if new_model.goal.status is m.GoalStatus.AGREED:
        new_model = replace(
            new_model,
            goal=replace(new_model.goal, status=m.GoalStatus.DRAFT,
                         agreed_by=()))
    return replace(session, model=new_model)


def _apply_goal_drafted(session: Session, event: Event) -> Session:
    p = event.payload
    _keys(p, {"text"},
          {"currentStateDescription", "title", "sentenceCountOverride"})
    override = p.get("sentenceCountOverride")
    if override is not None and (isinstance(override, bool)
                                 or not isinstance(override, int)
                                 or override < 0):
        raise SchemaError("sentenceCountOverride must be a non-negative "
                          "integer", path="sentenceCountOverride")
    new_model = m.draft_goal(
        session.model, _str(p, "text", empty_ok=True),
        current_state_description=_str(p, "currentStateDescription",
                                       default=None, empty_ok=True),
        title=_str(p, "title", default=None, empty_ok=True),
        sentence_count_override=override)
    return replace(session, model=new_model)


def _apply_goal_agreed(session: Session, event: Event) -> Session:
    p = event.payload
    _keys(p, {"agreedBy"})
    agreed_by = p["agreedBy"]
    if not isinstance(agreed_by, list) \
            or not all(isinstance(x, str) for x in agreed_by):
        raise SchemaError("agreedBy must be a list of stakeholder ids",
                          path="agreedBy")
    goal = session.model.goal
    if not goal.text:
        raise AgreementError("cannot agree an empty goal statement")
    count = goal.effective_sentence_count()
    if not 1 <= count <= 3:
        raise AgreementError(
            f"goal statement must be 1-3 sentences, counted {count}",
            sentence_count=count)
    roster = {s.id for s in session.model.stakeholders}
    if not roster:
        raise AgreementError("no stakeholders registered")
    if set(agreed_by) != roster:
        raise AgreementError(
            "agreement requires every registered stakeholder",
            missing=sorted(roster - set(agreed_by)),
            unknown=sorted(set(agreed_by) - roster))
    return replace(session, model=m.agree_goal(session.model,
                                               tuple(agreed_by)))


def _apply_phase_advanced(session: Session, event: Event) -> Session:
    p = event.payload
    _keys(p, {"from", "to"})
    target = next_phase(session.phase)
    if _enum(p, "from", Phase) is not session.phase or target is None:
        raise InvalidValue(
            f"cannot advance from {p.get('from')!r} while in "
            f"{session.phase.value}")
    if _enum(p, "to", Phase) is not target:
        raise InvalidValue(f"advance from {session.phase.value} must target "
                           f"{target.value}, got {p.get('to')!r}")
    unmet = phase_unmet(session)
    if unmet:
        raise IncompletePhase(
            f"{session.phase.value} phase is not complete", unmet=unmet)
    return replace(session, phase=target)


def phase_unmet(session: Session) -> tuple[str, ...]:
    """Completion conditions blocking advance out of the current phase."""
    model = session.model
    if session.phase is Phase.GOAL:
        if model.goal.status is not m.GoalStatus.AGREED:
            return ("goal is not agreed by the full roster",)
        return ()
    if session.phase is Phase.OBSTACLES:
        return tuple(
            f"obstacle {n.id} is neither subdivided nor marked leaf"
            for n in model.obstacles
            if not n.is_leaf and not model.children_of(n.id))
    if session.phase is Phase.SOLUTIONS:
        return tuple(
            f"leaf {n.id} has no solution"
            for n in model.obstacles
            if n.is_leaf and not model.solutions_of(n.id))
    if session.phase is Phase.RESOURCES:
        return ()
    return ("implementation is the final phase",)


def _apply_obstacle_added(session: Session, event: Event) -> Session:
    p = event.payload
    _keys(p, {"label", "parents"}, {"obstacleId"})
    raw_parents = p["parents"]
    if not isinstance(raw_parents, list) or not raw_parents:
        raise SchemaError("parents must be a non-empty list", path="parents")
    parents = []
    for entry in raw_parents:
        if not isinstance(entry, dict):
            raise SchemaError("each parent must be an object", path="parents")
        _keys(entry, {"parentId", "weight"}, {"siblingWeights"})
        parents.append((
            _str(entry, "parentId"),
            _num(entry, "weight"),
            _weight_map(entry.get("siblingWeights", {}), "siblingWeights")))
    new_model = m.add_obstacle(session.model, _str(p, "label", empty_ok=True),
                               parents, node_id=_str(p, "obstacleId",
                                                     default=None))
    return replace(session, model=new_model)


def _apply_obstacle_subdivided(session: Session, event: Event) -> Session:
    p = event.payload
    _keys(p, {"obstacleId", "parts"})
    raw_parts = p["parts"]
    if not isinstance(raw_parts, list) or not raw_parts:
        raise SchemaError("parts must be a non-empty list", path="parts")
    parts = []
    for entry in raw_parts:
        if not isinstance(entry, dict):
            raise SchemaError("each part must be an object", path="parts")
        _keys(entry, {"label", "weight"}, {"childId"})
        parts.append((_str(entry, "label", empty_ok=True),
                      _num(entry, "weight"),
                      _str(entry, "childId", default=None)))
    new_model = m.subdivide_obstacle(session.model, _str(p, "obstacleId"),
                                     parts)
    return replace(session, model=new_model)


def _apply_weights_set(session: Session, event: Event) -> Session:
    p = event.payload
    _keys(p, {"parentId", "weights"})
    new_model = m.set_weights(session.model, _str(p, "parentId"),
                              _weight_map(p["weights"], "weights"))
    return replace(session, model=new_model)


def _apply_leaf_marked(session: Session, event: Event) -> Session:
    p = event.payload
    _keys(p, {"obstacleId"})
    return replace(session, model=m.mark_leaf(session.model,
                                              _str(p, "obstacleId")))


def _apply_solution_added(session: Session, event: Event) -> Session:
    p = event.payload
    _keys(p, {"leafId", "label", "share"}, {"solutionId"})
    new_model = m.add_solution(
        session.model, _str(p, "leafId"), _str(p, "label", empty_ok=True),
        _num(p, "share"), solution_id=_str(p, "solutionId", default=None))
    return replace(session, model=new_model)


def _apply_resource_registered(session: Session, event: Event) -> Session:
    p = event.payload
    _keys(p, {"name"}, {"resourceId", "kind"})
    kind = _enum(p, "kind", m.ResourceKind, default=m.ResourceKind.OTHER)
    new_model = m.register_resource(
        session.model, _str(p, "name"), kind=kind,
        resource_id=_str(p, "resourceId", default=None))
    return replace(session, model=new_model)


def _apply_resource_assigned(session: Session, event: Event) -> Session:
    p = event.payload
    _keys(p, {"solutionId", "resourceId", "share"}, {"spend"})
    new_model = m.assign_resource(
        session.model, _str(p, "solutionId"), _str(p, "resourceId"),
        _num(p, "share"), spend=_num(p, "spend", default=0.0))
    return replace(session, model=new_model)


def _apply_progress_reported(session: Session, event: Event) -> Session:
    p = event.payload
    _keys(p, {"solutionId", "progress"}, {"metrics"})
    metrics = None
    if "metrics" in p:
        raw = p["metrics"]
        if not isinstance(raw, list):
            raise SchemaError("metrics must be a list", path="metrics")
        metrics = []
        for entry in raw:
            if not isinstance(entry, dict):
                raise SchemaError("each metric must be an object",
                                  path="metrics")
            _keys(entry, {"name", "value", "unit"})
            metrics.append(m.Metric(name=_str(entry, "name"),
                                    value=_num(entry, "value"),
                                    unit=_str(entry, "unit", empty_ok=True)))
        metrics = tuple(metrics)
    new_model = m.report_progress(session.model, _str(p, "solutionId"),
                                  _num(p, "progress"), metrics=metrics)
    return replace(session, model=new_model)


def _apply_spend_reported(session: Session, event: Event) -> Session:
    p = event.payload
    _keys(p, {"solutionId", "resourceId", "spend"})
    new_model = m.report_spend(session.model, _str(p, "solutionId"),
                               _str(p, "resourceId"), _num(p, "spend"))
    return replace(session, model=new_model)


def _apply_dependency_declared(session: Session, event: Event) -> Session:
    p = event.payload
    _keys(p, {"fromId", "toId", "kind"}, {"note"})
    from_id = _str(p, "fromId")
    to_id = _str(p, "toId")
    kind = _enum(p, "kind", ParasiticKind)
    model = session.model
    known = {n.id for n in model.obstacles if n.is_leaf}
    known |= {s.id for s in model.solutions}
    known |= {r.id for r in model.resources}
    if from_id not in known:
        raise DanglingDependency(f"unknown dependency endpoint {from_id!r}",
                                 id=from_id)
    if to_id not in known:
        raise DanglingDependency(f"unknown dependency endpoint {to_id!r}",
                                 id=to_id)
    if from_id == to_id:
        raise InvalidValue(f"dependency cannot be a self-loop on {from_id!r}",
                           id=from_id)
    edge = ParasiticEdge(from_id=from_id, to_id=to_id, kind=kind,
                         note=_str(p, "note", default="", empty_ok=True))
    return replace(session,
                   declared_dependencies=session.declared_dependencies
                   + (edge,))


def _apply_congruence_recorded(session: Session, event: Event) -> Session:
    p = event.payload
    _keys(p, {"stakeholderId", "mS", "mC", "mCbar"},
          {"refactoredObstacleIds", "mObar", "mI"})
    sid = _str(p, "stakeholderId")
    if not any(s.id == sid for s in session.model.stakeholders):
        raise UnknownStakeholder(f"unknown stakeholder {sid!r}", id=sid)
    m_s = _num(p, "mS")
    if m_s <= 0:
        raise NonPositiveMS(f"mS must be positive, got {m_s}", m_s=m_s)
    m_c = _num(p, "mC")
    m_cbar = _num(p, "mCbar")
    if m_c < 0 or m_cbar < 0:
        raise InvalidValue("congruence magnitudes must be non-negative",
                           m_c=m_c, m_cbar=m_cbar)
    refactored = p.get("refactoredObstacleIds", [])
    if not isinstance(refactored, list) \
            or not all(isinstance(x, str) for x in refactored):
        raise SchemaError("refactoredObstacleIds must be a list of ids",
                          path="refactoredObstacleIds")
    for node_id in refactored:
        if session.model.obstacle(node_id) is None:
            raise UnknownNode(f"refactored obstacle {node_id!r} does not "
                              f"exist", id=node_id)
    m_obar_raw = p.get("mObar", [])
    if not isinstance(m_obar_raw, list):
        raise SchemaError("mObar must be a list of numbers", path="mObar")
    m_obar = []
    for v in m_obar_raw:
        if isinstance(v, bool) or not isinstance(v, (int, float)) \
                or not math.isfinite(v) or v < 0:
            raise InvalidValue("mObar magnitudes must be non-negative")
        m_obar.append(float(v))
    if len(m_obar) != len(refactored):
        raise InvalidValue(
            "mObar must have one magnitude per refactored obstacle",
            refactored=len(refactored), m_obar=len(m_obar))
    m_i = _num(p, "mI", default=None)
    if m_i is not None and m_i <= 0:
        raise InvalidValue(f"mI must be positive when supplied, got {m_i}",
                           m_i=m_i)
    record = CongruenceRecord(
        stakeholder_id=sid, m_s=m_s, m_c=m_c, m_cbar=m_cbar,
        refactored_obstacle_ids=tuple(refactored), m_obar=tuple(m_obar),
        m_i=m_i)
    return replace(session,
                   congruence_records=session.congruence_records + (record,))


def _apply_minor_revision(session: Session, event: Event) -> Session:
    p = event.payload
    _keys(p, {"targetPhase"}, {"reason"})
    target = _enum(p, "targetPhase", Phase)
    if target is Phase.GOAL:
        raise MinorCannotTargetGoal(
            "a minor revision cannot reopen the goal; open a major revision")
    if target is Phase.IMPLEMENTATION:
        raise InvalidRevisionTarget(
            "revision must target GOAL, OBSTACLES, SOLUTIONS or RESOURCES",
            target=target.value)
    return replace(session, phase=target,
                   last_minor_revision=event.timestamp)


def _apply_major_revision(session: Session, event: Event) -> Session:
    p = event.payload
    _keys(p, {"targetPhase"}, {"reason"})
    target = _enum(p, "targetPhase", Phase)
    if target is Phase.IMPLEMENTATION:
        raise InvalidRevisionTarget(
            "revision must target GOAL, OBSTACLES, SOLUTIONS or RESOURCES",
            target=target.value)
    return replace(session, phase=target,
                   last_major_revision=event.timestamp)


_DISPATCH = {
    EventKind.STAKEHOLDER_REGISTERED: _apply_stakeholder_registered,
    EventKind.GOAL_DRAFTED: _apply_goal_drafted,
    EventKind.GOAL_EDITED: _apply_goal_drafted,
    EventKind.GOAL_AGREED: _apply_goal_agreed,
    EventKind.PHASE_ADVANCED: _apply_phase_advanced,
    EventKind.OBSTACLE_ADDED: _apply_obstacle_added,
    EventKind.OBSTACLE_SUBDIVIDED: _apply_obstacle_subdivided,
    EventKind.WEIGHTS_SET: _apply_weights_set,
    EventKind.LEAF_MARKED: _apply_leaf_marked,
    EventKind.SOLUTION_ADDED: _apply_solution_added,
    EventKind.RESOURCE_REGISTERED: _apply_resource_registered,
    EventKind.RESOURCE_ASSIGNED: _apply_resource_assigned,
    EventKind.PROGRESS_REPORTED: _apply_progress_reported,
    EventKind.SPEND_REPORTED: _apply_spend_reported,
    EventKind.DEPENDENCY_DECLARED: _apply_dependency_declared,
    EventKind.CONGRUENCE_RECORDED: _apply_congruence_recorded,
    EventKind.MINOR_REVISION_OPENED: _apply_minor_revision,
    EventKind.MAJOR_REVISION_OPENED: _apply_major_revision,
}


# --- facilitation conveniences ------------------------------------------------

def advance_phase(session: Session, actor: str, timestamp: int) -> Session:
    target = next_phase(session.phase)
    if target is None:
        raise PhaseCoherenceError(
            "PHASE_ADVANCED is not allowed during the IMPLEMENTATION phase",
            phase=session.phase.value, kind=EventKind.PHASE_ADVANCED.value)
    event = make_event(session, EventKind.PHASE_ADVANCED, actor,
                       {"from": session.phase.value, "to": target.value},
                       timestamp)
    return apply_event(session, event)


def revision_warnings(session: Session, scope: RevisionScope,
                      timestamp: int) -> list[PolicyWarning]:
    """Timing advisories for opening a revision now; never errors."""
    if scope is RevisionScope.MINOR:
        last = session.last_minor_revision
        required = session.policy.t_minor_days
    else:
        last = session.last_major_revision
        required = session.policy.t_major_days
    if last is None:
        last = session.log[0].timestamp if session.log else None
    if last is None:
        return []
    elapsed = (timestamp - last) / MS_PER_DAY
    if elapsed >= required:
        return []
    return [PolicyWarning(
        scope=scope, elapsed_days=elapsed, required_days=required,
        message=(f"{scope.value} revision after {elapsed:.1f} days; policy "
                 f"suggests at least {required:.0f} days between "
                 f"{scope.value.lower()} revisions"))]


def open_revision(session: Session, scope: RevisionScope, target_phase: Phase,
                  actor: str, timestamp: int,
                  reason: str = "") -> tuple[Session, list[PolicyWarning]]:
    if session.phase is not Phase.IMPLEMENTATION:
        raise NotInImplementation(
            f"revisions open only during IMPLEMENTATION, not "
            f"{session.phase.value}", phase=session.phase.value)
    kind = (EventKind.MINOR_REVISION_OPENED
            if scope is RevisionScope.MINOR
            else EventKind.MAJOR_REVISION_OPENED)
    payload: dict[str, Any] = {"targetPhase": target_phase.value}
    if reason:
        payload["reason"] = reason
    warnings = revision_warnings(session, scope, timestamp)
    event = make_event(session, kind, actor, payload, timestamp)
    return apply_event(session, event), warnings
