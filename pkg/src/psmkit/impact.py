"""Impact, progress rollup, and sROI analytics over a model snapshot."""
from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import UnknownNode, UnknownSolution
from .model import ROOT_ID, ObstacleNode, ProblemModel


@dataclass(frozen=True, slots=True)
class ImpactReport:
    per_node: dict[str, float]
    per_solution: dict[str, float]
    node_progress: dict[str, float]
    goal_progress: float


@dataclass(frozen=True, slots=True)
class SroiEntry:
    needle_movement: float
    spend: float
    sroi: float | None  # None encodes UNDEFINED (zero spend)


@dataclass(frozen=True, slots=True)
class SroiReport:
    per_solution: dict[str, SroiEntry]
    per_resource: dict[str, SroiEntry]


def _path_products(model: ProblemModel, node: ObstacleNode):
    """Yield the weight product of every root-to-node path.

    Each product is accumulated root-downward so regrouping cannot change
    the floats; paths come out in parent-link order.
    """
    for link in node.parents:
        if link.parent_id == ROOT_ID:
            yield link.weight
        else:
            parent = model.obstacle(link.parent_id)
            if parent is None:
                raise UnknownNode(f"unknown parent {link.parent_id!r}",
                                  id=link.parent_id)
            for product in _path_products(model, parent):
                yield product * link.weight


def goal_impact(model: ProblemModel, node_id: str) -> float:
    """Fraction of the goal this node accounts for: the sum over all
    root-to-node paths of the product of edge weights along each path.
    """
    if node_id == ROOT_ID:
        return 1.0
    node = model.obstacle(node_id)
    if node is None:
        raise UnknownNode(f"unknown obstacle {node_id!r}", id=node_id)
    return math.fsum(_path_products(model, node))


def leaf_progress(model: ProblemModel, leaf_id: str) -> float:
    """Share-weighted progress over a leaf's solutions; the uncovered
    remainder contributes zero."""
    return math.fsum(s.share * s.progress
                     for s in model.solutions_of(leaf_id))


def _node_progress(model: ProblemModel, node_id: str,
                   cache: dict[str, float]) -> float:
    if node_id in cache:
        return cache[node_id]
    children = model.children_of(node_id)
    if children:
        value = math.fsum(
            link.weight * _node_progress(model, child.id, cache)
            for child in children
            for link in child.parents if link.parent_id == node_id)
    else:
        value = leaf_progress(model, node_id)
    cache[node_id] = value
    return value


def progress_rollup(model: ProblemModel) -> ImpactReport:
    per_node = {ROOT_ID: 1.0}
    per_node.update(
        (n.id, goal_impact(model, n.id)) for n in model.obstacles)
    per_solution = {
        s.id: per_node[s.leaf_obstacle_id] * s.share for s in model.solutions}
    progress_cache: dict[str, float] = {}
    node_progress = {
        n.id: _node_progress(model, n.id, progress_cache)
        for n in model.obstacles}
    node_progress[ROOT_ID] = _node_progress(model, ROOT_ID, progress_cache)
    leaves = [n for n in model.obstacles if not model.children_of(n.id)]
    goal_progress = math.fsum(
        per_node[leaf.id] * leaf_progress(model, leaf.id) for leaf in leaves)
    return ImpactReport(per_node=per_node, per_solution=per_solution,
                        node_progress=node_progress,
                        goal_progress=goal_progress)


def needle_movement(model: ProblemModel, solution_id: str) -> float:
    sol = model.solution(solution_id)
    if sol is None:
        raise UnknownSolution(f"unknown solution {solution_id!r}",
                              id=solution_id)
    return goal_impact(model, sol.leaf_obstacle_id) * sol.share * sol.progress


def sroi(model: ProblemModel) -> SroiReport:
    per_solution: dict[str, SroiEntry] = {}
    for sol in model.solutions:
        nm = goal_impact(model, sol.leaf_obstacle_id) * sol.share * sol.progress
        spend = math.fsum(a.spend for a in model.assignments_of(sol.id))
        per_solution[sol.id] = SroiEntry(
            needle_movement=nm, spend=spend,
            sroi=nm / spend if spend > 0 else None)

    per_resource: dict[str, SroiEntry] = {}
    for res in model.resources:
        assignments = [a for a in model.assignments
                       if a.resource_id == res.id]
        nm = math.fsum(
            per_solution[a.solution_id].needle_movement * a.share
            for a in assignments)
        spend = math.fsum(a.spend for a in assignments)
        per_resource[res.id] = SroiEntry(
            needle_movement=nm, spend=spend,
            sroi=nm / spend if spend > 0 else None)

    return SroiReport(per_solution=per_solution, per_resource=per_resource)
