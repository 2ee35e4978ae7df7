"""Domain types for the problem-solving model and pure structural operations.

Everything here is an immutable value; operations are snapshot-to-snapshot
functions that never touch their input. Phases, logs, and events live in
the session engine, not here.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from enum import Enum

from .errors import (
    DuplicateAssignment,
    DuplicateId,
    HasChildren,
    HasSolutions,
    InvalidValue,
    NotALeaf,
    ShareOverflow,
    UnknownNode,
    UnknownResource,
    UnknownSolution,
    WeightSumViolation,
)

# Identifier of the goal root when referenced as a parent.
ROOT_ID = "goal"

# Tolerance for all weight/share sum checks.
SUM_TOL = 1e-9

_TERMINATORS = frozenset(".!?")


class GoalStatus(Enum):
    DRAFT = "DRAFT"
    AGREED = "AGREED"


class ResourceKind(Enum):
    GOVERNMENT = "GOVERNMENT"
    PHILANTHROPY = "PHILANTHROPY"
    ACADEMIA = "ACADEMIA"
    CORPORATE = "CORPORATE"
    CITIZEN = "CITIZEN"
    OTHER = "OTHER"


@dataclass(frozen=True, slots=True)
class SuperordinateGoal:
    text: str = ""
    current_state_description: str = ""
    status: GoalStatus = GoalStatus.DRAFT
    agreed_by: tuple[str, ...] = ()
    # Facilitator override for the naive sentence counter (editorial call).
    sentence_count_override: int | None = None

    def effective_sentence_count(self) -> int:
        if self.sentence_count_override is not None:
            return self.sentence_count_override
        return sentence_count(self.text)


@dataclass(frozen=True, slots=True)
class ParentLink:
    parent_id: str
    weight: float


@dataclass(frozen=True, slots=True)
class ObstacleNode:
    id: str
    label: str
    parents: tuple[ParentLink, ...]
    is_leaf: bool = False


@dataclass(frozen=True, slots=True)
class Metric:
    name: str
    value: float
    unit: str


@dataclass(frozen=True, slots=True)
class Solution:
    id: str
    leaf_obstacle_id: str
    label: str
    share: float
    progress: float = 0.0
    metrics: tuple[Metric, ...] = ()


@dataclass(frozen=True, slots=True)
class Resource:
    id: str
    name: str
    kind: ResourceKind = ResourceKind.OTHER


@dataclass(frozen=True, slots=True)
class ResourceAssignment:
    resource_id: str
    solution_id: str
    share: float
    spend: float = 0.0


@dataclass(frozen=True, slots=True)
class Stakeholder:
    id: str
    name: str
    constituency: str = ""


@dataclass(frozen=True, slots=True)
class ProblemModel:
    id: str = ""
    title: str = ""
    goal: SuperordinateGoal = field(default_factory=SuperordinateGoal)
    obstacles: tuple[ObstacleNode, ...] = ()
    solutions: tuple[Solution, ...] = ()
    resources: tuple[Resource, ...] = ()
    assignments: tuple[ResourceAssignment, ...] = ()
    stakeholders: tuple[Stakeholder, ...] = ()

    # -- lookups (linear scans; models are meeting-sized) --

    def obstacle(self, node_id: str) -> ObstacleNode | None:
        for node in self.obstacles:
            if node.id == node_id:
                return node
        return None

    def solution(self, solution_id: str) -> Solution | None:
        for sol in self.solutions:
            if sol.id == solution_id:
                return sol
        return None

    def resource(self, resource_id: str) -> Resource | None:
        for res in self.resources:
            if res.id == resource_id:
                return res
        return None

    def children_of(self, parent_id: str) -> tuple[ObstacleNode, ...]:
        return tuple(
            node for node in self.obstacles
            if any(link.parent_id == parent_id for link in node.parents)
        )

    def solutions_of(self, leaf_id: str) -> tuple[Solution, ...]:
        return tuple(s for s in self.solutions if s.leaf_obstacle_id == leaf_id)

    def assignments_of(self, solution_id: str) -> tuple[ResourceAssignment, ...]:
        return tuple(a for a in self.assignments if a.solution_id == solution_id)


@dataclass(frozen=True, slots=True)
class Violation:
    code: str
    path: str
    message: str


def empty_model(model_id: str = "", title: str = "") -> ProblemModel:
    return ProblemModel(id=model_id, title=title)


# --- sentence counting ------------------------------------------------------

def sentence_count(text: str) -> int:
    """Count sentences: segments ended by '.', '!' or '?' before whitespace
    or end of text; a trailing unterminated non-empty segment counts as one.
    """
    count = 0
    has_content = False
    n = len(text)
    for i, ch in enumerate(text):
        if ch in _TERMINATORS:
            at_boundary = i + 1 >= n or text[i + 1].isspace()
            if at_boundary and has_content:
                count += 1
                has_content = False
        elif not ch.isspace():
            has_content = True
    if has_content:
        count += 1
    return count


# --- goal operations --------------------------------------------------------

def draft_goal(model: ProblemModel, text: str,
               current_state_description: str | None = None,
               title: str | None = None,
               sentence_count_override: int | None = None) -> ProblemModel:
    """Set or replace the draft goal statement. Resets any prior agreement."""
    goal = SuperordinateGoal(
        text=text,
        current_state_description=(
            current_state_description
            if current_state_description is not None
            else model.goal.current_state_description),
        status=GoalStatus.DRAFT,
        agreed_by=(),
        sentence_count_override=sentence_count_override,
    )
    out = replace(model, goal=goal)
    if title is not None:
        out = replace(out, title=title)
    return out


def agree_goal(model: ProblemModel, agreed_by: tuple[str, ...]) -> ProblemModel:
    goal = replace(model.goal, status=GoalStatus.AGREED,
                   agreed_by=tuple(agreed_by))
    return replace(model, goal=goal)


def register_stakeholder(model: ProblemModel, stakeholder_id: str,
                         name: str, constituency: str = "") -> ProblemModel:
    if any(s.id == stakeholder_id for s in model.stakeholders):
        raise DuplicateId(f"stakeholder {stakeholder_id!r} already registered",
                          id=stakeholder_id)
    entry = Stakeholder(id=stakeholder_id, name=name, constituency=constituency)
    return replace(model, stakeholders=model.stakeholders + (entry,))


# --- obstacle operations ----------------------------------------------------

def _check_weight(weight: float, where: str) -> None:
    if not (isinstance(weight, (int, float)) and math.isfinite(weight)
            and 0.0 < weight <= 1.0):
        raise InvalidValue(f"weight at {where} must be in (0,1], got {weight!r}",
                           where=where, weight=weight)


def _parent_exists(model: ProblemModel, parent_id: str) -> bool:
    return parent_id == ROOT_ID or model.obstacle(parent_id) is not None


def _assert_new_id(model: ProblemModel, node_id: str) -> None:
    if node_id == ROOT_ID or model.obstacle(node_id) is not None:
        raise DuplicateId(f"obstacle id {node_id!r} already in use", id=node_id)


def add_obstacle(model: ProblemModel, label: str,
                 parents: list[tuple[str, float, dict[str, float]]],
                 node_id: str | None = None) -> ProblemModel:
    """Add one obstacle node under one or more parents.

    Each parents entry is (parent_id, weight, sibling_weights): the new
    node's weight under that parent plus a full re-spec of the existing
    children's weights, so every snapshot keeps sibling sums at 1.
    """
    if not parents:
        raise InvalidValue("an obstacle needs at least one parent")
    if node_id is None:
        node_id = _next_free_id(model, "o")
    _assert_new_id(model, node_id)

    links = []
    updated: dict[str, dict[str, float]] = {}
    seen_parents: set[str] = set()
    for parent_id, weight, siblings in parents:
        if parent_id in seen_parents:
            raise InvalidValue(f"parent {parent_id!r} listed twice",
                               parent=parent_id)
        seen_parents.add(parent_id)
        if not _parent_exists(model, parent_id):
            raise UnknownNode(f"unknown parent {parent_id!r}", id=parent_id)
        if model.solutions_of(parent_id):
            raise HasSolutions(
                f"obstacle {parent_id!r} carries solutions; adding children "
                f"would orphan them", id=parent_id)
        _check_weight(weight, f"{node_id} under {parent_id}")
        existing = model.children_of(parent_id)
        existing_ids = {c.id for c in existing}
        if set(siblings) != existing_ids:
            raise InvalidValue(
                f"sibling weights for {parent_id!r} must cover exactly its "
                f"children {sorted(existing_ids)}", parent=parent_id)
        for sid, w in siblings.items():
            _check_weight(w, f"{sid} under {parent_id}")
        total = weight + sum(siblings.values())
        if abs(total - 1.0) > SUM_TOL:
            raise WeightSumViolation(
                f"weights under {parent_id!r} sum to {total}, expected 1",
                parent=parent_id, total=total)
        links.append(ParentLink(parent_id=parent_id, weight=weight))
        updated[parent_id] = dict(siblings)

    new_obstacles = []
    for node in model.obstacles:
        new_links = tuple(
            replace(link, weight=updated[link.parent_id][node.id])
            if link.parent_id in updated and node.id in updated[link.parent_id]
            else link
            for link in node.parents
        )
        changed = replace(node, parents=new_links) \
            if new_links != node.parents else node
        # A parent that gains a child is no longer a leaf.
        if changed.id in seen_parents and changed.is_leaf:
            changed = replace(changed, is_leaf=False)
        new_obstacles.append(changed)
    new_node = ObstacleNode(id=node_id, label=label, parents=tuple(links))
    return replace(model, obstacles=tuple(new_obstacles) + (new_node,))


def _next_free_id(model: ProblemModel, prefix: str) -> str:
    k = 1
    while model.obstacle(f"{prefix}{k}") is not None:
        k += 1
    return f"{prefix}{k}"


def subdivide_obstacle(model: ProblemModel, obstacle_id: str,
                       parts: list[tuple[str, float]] |
                              list[tuple[str, float, str | None]]) -> ProblemModel:
    """Split an obstacle (or the goal root) into weighted component children.

    Part child ids default to a positional convention: top-level themes
    become o1, o2, ...; children of oX become oX-1, oX-2, ...
    """
    is_root = obstacle_id == ROOT_ID
    if not is_root:
        target = model.obstacle(obstacle_id)
        if target is None:
            raise UnknownNode(f"unknown obstacle {obstacle_id!r}", id=obstacle_id)
        if model.solutions_of(obstacle_id):
            raise HasSolutions(
                f"obstacle {obstacle_id!r} already carries solutions",
                id=obstacle_id)
    if model.children_of(obstacle_id):
        raise HasChildren(f"obstacle {obstacle_id!r} already has children",
                          id=obstacle_id)
    if not parts:
        raise InvalidValue("parts must be non-empty")

    normalized: list[tuple[str, float, str | None]] = [
        part if len(part) == 3 else (part[0], part[1], None)  # type: ignore[misc]
        for part in parts
    ]
    total = sum(weight for _, weight, _ in normalized)
    for label, weight, _ in normalized:
        _check_weight(weight, f"part {label!r} of {obstacle_id}")
    if abs(total - 1.0) > SUM_TOL:
        raise WeightSumViolation(
            f"part weights sum to {total}, expected 1",
            parent=obstacle_id, total=total)

    out = model
    children: list[ObstacleNode] = []
    index = 1
    taken = {n.id for n in model.obstacles}
    for label, weight, child_id in normalized:
        if child_id is None:
            prefix = "o" if is_root else f"{obstacle_id}-"
            while f"{prefix}{index}" in taken:
                index += 1
            child_id = f"{prefix}{index}"
            index += 1
        if child_id in taken or child_id == ROOT_ID:
            raise DuplicateId(f"obstacle id {child_id!r} already in use",
                              id=child_id)
        taken.add(child_id)
        children.append(ObstacleNode(
            id=child_id, label=label,
            parents=(ParentLink(parent_id=obstacle_id, weight=weight),)))
    new_obstacles = tuple(
        replace(n, is_leaf=False) if n.id == obstacle_id else n
        for n in out.obstacles
    ) + tuple(children)
    return replace(out, obstacles=new_obstacles)


def mark_leaf(model: ProblemModel, obstacle_id: str) -> ProblemModel:
    node = model.obstacle(obstacle_id)
    if node is None:
        raise UnknownNode(f"unknown obstacle {obstacle_id!r}", id=obstacle_id)
    if model.children_of(obstacle_id):
        raise HasChildren(f"obstacle {obstacle_id!r} has children",
                          id=obstacle_id)
    if node.is_leaf:
        return model
    new_obstacles = tuple(
        replace(n, is_leaf=True) if n.id == obstacle_id else n
        for n in model.obstacles
    )
    return replace(model, obstacles=new_obstacles)


def set_weights(model: ProblemModel, parent_id: str,
                weights: dict[str, float]) -> ProblemModel:
    """Re-specify the sibling weights of all children under one parent."""
    if not _parent_exists(model, parent_id):
        raise UnknownNode(f"unknown parent {parent_id!r}", id=parent_id)
    children = model.children_of(parent_id)
    child_ids = {c.id for c in children}
    if not child_ids:
        raise InvalidValue(f"{parent_id!r} has no children to weight",
                           parent=parent_id)
    if set(weights) != child_ids:
        raise InvalidValue(
            f"weights must cover exactly the children of {parent_id!r}",
            parent=parent_id)
    for cid, w in weights.items():
        _check_weight(w, f"{cid} under {parent_id}")
    total = sum(weights.values())
    if abs(total - 1.0) > SUM_TOL:
        raise WeightSumViolation(
            f"weights under {parent_id!r} sum to {total}, expected 1",
            parent=parent_id, total=total)
    new_obstacles = tuple(
        replace(node, parents=tuple(
            replace(link, weight=weights[node.id])
            if link.parent_id == parent_id else link
            for link in node.parents))
        if node.id in child_ids else node
        for node in model.obstacles
    )
    return replace(model, obstacles=new_obstacles)


# --- solution and resource operations ---------------------------------------

def _check_share(share: float, where: str) -> None:
    if not (isinstance(share, (int, float)) and math.isfinite(share)
            and 0.0 < share <= 1.0):
        raise InvalidValue(f"share at {where} must be in (0,1], got {share!r}",
                           where=where, share=share)


def add_solution(model: ProblemModel, leaf_id: str, label: str,
                 share: float, solution_id: str | None = None) -> ProblemModel:
    node = model.obstacle(leaf_id)
    if node is None:
        raise UnknownNode(f"unknown obstacle {leaf_id!r}", id=leaf_id)
    if not node.is_leaf:
        raise NotALeaf(f"obstacle {leaf_id!r} is not a leaf", id=leaf_id)
    _check_share(share, f"solution on {leaf_id}")
    existing = model.solutions_of(leaf_id)
    total = sum(s.share for s in existing) + share
    if total > 1.0 + SUM_TOL:
        raise ShareOverflow(
            f"solution shares on {leaf_id!r} would sum to {total}",
            leaf=leaf_id, total=total)
    if solution_id is None:
        k = len(existing) + 1
        taken = {s.id for s in model.solutions}
        while f"{leaf_id}-s{k}" in taken:
            k += 1
        solution_id = f"{leaf_id}-s{k}"
    if model.solution(solution_id) is not None:
        raise DuplicateId(f"solution id {solution_id!r} already in use",
                          id=solution_id)
    sol = Solution(id=solution_id, leaf_obstacle_id=leaf_id, label=label,
                   share=share, progress=0.0)
    return replace(model, solutions=model.solutions + (sol,))


def register_resource(model: ProblemModel, name: str,
                      kind: ResourceKind = ResourceKind.OTHER,
                      resource_id: str | None = None) -> ProblemModel:
    if resource_id is None:
        k = len(model.resources) + 1
        taken = {r.id for r in model.resources}
        while f"r{k}" in taken:
            k += 1
        resource_id = f"r{k}"
    if model.resource(resource_id) is not None:
        raise DuplicateId(f"resource id {resource_id!r} already in use",
                          id=resource_id)
    res = Resource(id=resource_id, name=name, kind=kind)
    return replace(model, resources=model.resources + (res,))


def assign_resource(model: ProblemModel, solution_id: str, resource_id: str,
                    share: float, spend: float = 0.0) -> ProblemModel:
    if model.solution(solution_id) is None:
        raise UnknownSolution(f"unknown solution {solution_id!r}",
                              id=solution_id)
    if model.resource(resource_id) is None:
        raise UnknownResource(f"unknown resource {resource_id!r}",
                              id=resource_id)
    _check_share(share, f"{resource_id} on {solution_id}")
    if not (isinstance(spend, (int, float)) and math.isfinite(spend)
            and spend >= 0.0):
        raise InvalidValue(f"spend must be non-negative, got {spend!r}",
                           spend=spend)
    existing = model.assignments_of(solution_id)
    if any(a.resource_id == resource_id for a in existing):
        raise DuplicateAssignment(
            f"{resource_id!r} already assigned to {solution_id!r}",
            resource=resource_id, solution=solution_id)
    total = sum(a.share for a in existing) + share
    if total > 1.0 + SUM_TOL:
        raise ShareOverflow(
            f"assignment shares on {solution_id!r} would sum to {total}",
            solution=solution_id, total=total)
    entry = ResourceAssignment(resource_id=resource_id,
                               solution_id=solution_id,
                               share=share, spend=spend)
    return replace(model, assignments=model.assignments + (entry,))


def report_progress(model: ProblemModel, solution_id: str, progress: float,
                    metrics: tuple[Metric, ...] | None = None) -> ProblemModel:
    sol = model.solution(solution_id)
    if sol is None:
        raise UnknownSolution(f"unknown solution {solution_id!r}",
                              id=solution_id)
    if not (isinstance(progress, (int, float)) and math.isfinite(progress)
            and 0.0 <= progress <= 1.0):
        raise InvalidValue(f"progress must be in [0,1], got {progress!r}",
                           progress=progress)
    updated = replace(sol, progress=progress,
                      metrics=sol.metrics if metrics is None else metrics)
    return replace(model, solutions=tuple(
        updated if s.id == solution_id else s for s in model.solutions))


def report_spend(model: ProblemModel, solution_id: str, resource_id: str,
                 spend: float) -> ProblemModel:
    """Set the cumulative spend recorded on one assignment."""
    if not (isinstance(spend, (int, float)) and math.isfinite(spend)
            and spend >= 0.0):
        raise InvalidValue(f"spend must be non-negative, got {spend!r}",
                           spend=spend)
    for a in model.assignments:
        if a.solution_id == solution_id and a.resource_id == resource_id:
            updated = replace(a, spend=spend)
            return replace(model, assignments=tuple(
                updated if x is a else x for x in model.assignments))
    if model.solution(solution_id) is None:
        raise UnknownSolution(f"unknown solution {solution_id!r}",
                              id=solution_id)
    if model.resource(resource_id) is None:
        raise UnknownResource(f"unknown resource {resource_id!r}",
                              id=resource_id)
    raise InvalidValue(
        f"no assignment of {resource_id!r} to {solution_id!r} to report on",
        resource=resource_id, solution=solution_id)


# --- validation --------------------------------------------------------------

def validate(model: ProblemModel) -> list[Violation]:
    """Check every structural invariant; returns [] exactly when all hold."""
    out: list[Violation] = []
    nodes = {n.id: n for n in model.obstacles}

    if len(nodes) != len(model.obstacles):
        out.append(Violation("DUPLICATE_ID", "obstacles",
                             "duplicate obstacle ids"))
    if ROOT_ID in nodes:
        out.append(Violation("DUPLICATE_ID", f"obstacles.{ROOT_ID}",
                             f"obstacle id {ROOT_ID!r} shadows the goal root"))

    goal = model.goal
    if goal.status is GoalStatus.AGREED:
        if not goal.text:
            out.append(Violation("GOAL_TEXT", "goal.text",
                                 "agreed goal must have text"))
        count = goal.effective_sentence_count()
        if not 1 <= count <= 3:
            out.append(Violation(
                "GOAL_SENTENCES", "goal.text",
                f"agreed goal must be 1-3 sentences, counted {count}"))
        roster = {s.id for s in model.stakeholders}
        if set(goal.agreed_by) != roster or not roster:
            out.append(Violation(
                "GOAL_ROSTER", "goal.agreedBy",
                "agreed goal requires confirmation by the full roster"))

    children: dict[str, list[tuple[str, float]]] = {}
    for node in model.obstacles:
        if not node.parents:
            out.append(Violation("UNREACHABLE", f"obstacles.{node.id}",
                                 "node has no parents"))
        seen_parents = set()
        for link in node.parents:
            if link.parent_id in seen_parents:
                out.append(Violation(
                    "DUPLICATE_PARENT", f"obstacles.{node.id}.parents",
                    f"parent {link.parent_id!r} listed twice"))
            seen_parents.add(link.parent_id)
            if link.parent_id != ROOT_ID and link.parent_id not in nodes:
                out.append(Violation(
                    "UNKNOWN_NODE", f"obstacles.{node.id}.parents",
                    f"unknown parent {link.parent_id!r}"))
            if not (math.isfinite(link.weight) and 0.0 < link.weight <= 1.0):
                out.append(Violation(
                    "WEIGHT_RANGE", f"obstacles.{node.id}.parents",
                    f"weight {link.weight} outside (0,1]"))
            children.setdefault(link.parent_id, []).append(
                (node.id, link.weight))

    for parent_id, entries in children.items():
        if parent_id != ROOT_ID and parent_id not in nodes:
            continue
        total = sum(w for _, w in entries)
        if abs(total - 1.0) > SUM_TOL:
            out.append(Violation(
                "WEIGHT_SUM_VIOLATION", f"obstacles.{parent_id}",
                f"children weights sum to {total}, expected 1"))
        if parent_id != ROOT_ID and nodes[parent_id].is_leaf:
            out.append(Violation(
                "LEAF_WITH_CHILDREN", f"obstacles.{parent_id}",
                "leaf node has children"))

    # Acyclicity and reachability via Kahn ordering from the root.
    reached = {ROOT_ID}
    frontier = [ROOT_ID]
    while frontier:
        pid = frontier.pop()
        for cid, _ in children.get(pid, ()):  # type: ignore[arg-type]
            if cid not in reached:
                reached.add(cid)
                frontier.append(cid)
    unreachable = [nid for nid in nodes if nid not in reached]
    for nid in unreachable:
        out.append(Violation("UNREACHABLE", f"obstacles.{nid}",
                             "node not reachable from the goal root"))
    if _has_cycle(nodes, children):
        out.append(Violation("CYCLE", "obstacles",
                             "obstacle graph contains a cycle"))

    sol_ids = set()
    per_leaf: dict[str, float] = {}
    for sol in model.solutions:
        path = f"solutions.{sol.id}"
        if sol.id in sol_ids:
            out.append(Violation("DUPLICATE_ID", path, "duplicate solution id"))
        sol_ids.add(sol.id)
        node = nodes.get(sol.leaf_obstacle_id)
        if node is None:
            out.append(Violation("UNKNOWN_NODE", path,
                                 f"unknown leaf {sol.leaf_obstacle_id!r}"))
        elif not node.is_leaf:
            out.append(Violation(
                "NOT_A_LEAF", path,
                f"solution attached to non-leaf {sol.leaf_obstacle_id!r}"))
        if not (math.isfinite(sol.share) and 0.0 < sol.share <= 1.0):
            out.append(Violation("SHARE_RANGE", f"{path}.share",
                                 f"share {sol.share} outside (0,1]"))
        if not (math.isfinite(sol.progress) and 0.0 <= sol.progress <= 1.0):
            out.append(Violation("PROGRESS_RANGE", f"{path}.progress",
                                 f"progress {sol.progress} outside [0,1]"))
        per_leaf[sol.leaf_obstacle_id] = \
            per_leaf.get(sol.leaf_obstacle_id, 0.0) + sol.share
    for leaf_id, total in per_leaf.items():
        if total > 1.0 + SUM_TOL:
            out.append(Violation(
                "SHARE_OVERFLOW", f"obstacles.{leaf_id}",
                f"solution shares sum to {total} > 1"))

    res_ids = set()
    for res in model.resources:
        if res.id in res_ids:
            out.append(Violation("DUPLICATE_ID", f"resources.{res.id}",
                                 "duplicate resource id"))
        res_ids.add(res.id)

    seen_pairs = set()
    per_solution: dict[str, float] = {}
    for a in model.assignments:
        path = f"assignments.{a.resource_id}:{a.solution_id}"
        if (a.resource_id, a.solution_id) in seen_pairs:
            out.append(Violation("DUPLICATE_ASSIGNMENT", path,
                                 "duplicate (resource, solution) pair"))
        seen_pairs.add((a.resource_id, a.solution_id))
        if a.resource_id not in res_ids:
            out.append(Violation("UNKNOWN_RESOURCE", path,
                                 f"unknown resource {a.resource_id!r}"))
        if a.solution_id not in sol_ids:
            out.append(Violation("UNKNOWN_SOLUTION", path,
                                 f"unknown solution {a.solution_id!r}"))
        if not (math.isfinite(a.share) and 0.0 < a.share <= 1.0):
            out.append(Violation("SHARE_RANGE", f"{path}.share",
                                 f"share {a.share} outside (0,1]"))
        if not (math.isfinite(a.spend) and a.spend >= 0.0):
            out.append(Violation("SPEND_RANGE", f"{path}.spend",
                                 f"spend {a.spend} must be >= 0"))
        per_solution[a.solution_id] = \
            per_solution.get(a.solution_id, 0.0) + a.share
    for sid, total in per_solution.items():
        if total > 1.0 + SUM_TOL:
            out.append(Violation(
                "SHARE_OVERFLOW", f"solutions.{sid}",
                f"assignment shares sum to {total} > 1"))

    sh_ids = set()
    for sh in model.stakeholders:
        if sh.id in sh_ids:
            out.append(Violation("DUPLICATE_ID", f"stakeholders.{sh.id}",
                                 "duplicate stakeholder id"))
        sh_ids.add(sh.id)

    return out


def _has_cycle(nodes: dict[str, ObstacleNode],
               children: dict[str, list[tuple[str, float]]]) -> bool:
    state: dict[str, int] = {}  # 1 = visiting, 2 = done

    def visit(nid: str) -> bool:
        mark = state.get(nid)
        if mark == 1:
            return True
        if mark == 2:
            return False
        state[nid] = 1
        for cid, _ in children.get(nid, ()):
            if cid in nodes and visit(cid):
                return True
        state[nid] = 2
        return False

    return any(visit(nid) for nid in nodes)
