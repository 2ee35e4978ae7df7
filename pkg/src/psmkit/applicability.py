"""Applicability checks: per-stakeholder goal congruence and the
dependency-network complexity gate.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

from .errors import DanglingDependency, InvalidValue, NonPositiveMS
from .model import ProblemModel

DEFAULT_EPSILON = 0.2
DEFAULT_H_CRIT = 0.25


# --- goal congruence ---------------------------------------------------------

@dataclass(frozen=True, slots=True)
class CongruenceRecord:
    """One stakeholder's decomposition of their individual goal state:
    the part matching the shared goal (mS), a congruent surplus (mC),
    an incongruent remainder (mCbar), and parts refactored into obstacle
    nodes (mObar per refactored node). Magnitudes are facilitator-elicited
    scalars on any consistent positive scale; only ratios matter.
    """
    stakeholder_id: str
    m_s: float
    m_c: float
    m_cbar: float
    refactored_obstacle_ids: tuple[str, ...] = ()
    m_obar: tuple[float, ...] = ()
    m_i: float | None = None


@dataclass(frozen=True, slots=True)
class CongruenceCheck:
    congruent: bool
    ratio_c: float
    ratio_cbar: float


def check_congruence(record: CongruenceRecord,
                     epsilon: float = DEFAULT_EPSILON) -> CongruenceCheck:
    """Congruent iff both surplus and remainder are small next to the
    shared goal: mC/mS <= epsilon and mCbar/mS <= epsilon."""
    if not (0.0 < epsilon < 1.0):
        raise InvalidValue(f"epsilon must be in (0,1), got {epsilon!r}",
                           epsilon=epsilon)
    if not (math.isfinite(record.m_s) and record.m_s > 0.0):
        raise NonPositiveMS(f"mS must be positive, got {record.m_s!r}",
                            m_s=record.m_s)
    ratio_c = record.m_c / record.m_s
    ratio_cbar = record.m_cbar / record.m_s
    return CongruenceCheck(
        congruent=ratio_c <= epsilon and ratio_cbar <= epsilon,
        ratio_c=ratio_c, ratio_cbar=ratio_cbar)


def closure_residual(record: CongruenceRecord) -> float | None:
    """mI - (mS + mC + mCbar + sum of mObar), or None when mI was not
    supplied (NOT_SUPPLIED)."""
    if record.m_i is None:
        return None
    return record.m_i - math.fsum(
        (record.m_s, record.m_c, record.m_cbar, *record.m_obar))


# --- dependency network ------------------------------------------------------

class NetNodeKind(Enum):
    LEAF_OBSTACLE = "LEAF_OBSTACLE"
    SOLUTION = "SOLUTION"
    RESOURCE = "RESOURCE"


class ParasiticKind(Enum):
    AGGRAVATES = "AGGRAVATES"
    DEPENDS_ON = "DEPENDS_ON"
    EMERGENT = "EMERGENT"


class ComplexityMeasure(Enum):
    PARASITIC_RATIO = "PARASITIC_RATIO"
    CYCLOMATIC = "CYCLOMATIC"
    DENSITY = "DENSITY"
    DEGREE_ENTROPY = "DEGREE_ENTROPY"


@dataclass(frozen=True, slots=True)
class NetNode:
    id: str
    kind: NetNodeKind


@dataclass(frozen=True, slots=True)
class ParasiticEdge:
    from_id: str
    to_id: str
    kind: ParasiticKind
    note: str = ""


@dataclass(frozen=True, slots=True)
class DependencyNetwork:
    nodes: tuple[NetNode, ...]
    primary_edges: tuple[tuple[str, str], ...]
    parasitic_edges: tuple[ParasiticEdge, ...] = ()


@dataclass(frozen=True, slots=True)
class ComplexityReport:
    cyclomatic: int
    parasitic_ratio: float
    density: float
    degree_entropy: float
    measure: ComplexityMeasure
    h: float
    h_crit: float
    applicable: bool


def build_dependency_network(
        model: ProblemModel,
        declared_parasitic: tuple[ParasiticEdge, ...] = ()) -> DependencyNetwork:
    """Nodes are the model's leaves, solutions, and resources; primary
    edges are induced (solution addresses leaf, resource implements
    solution); parasitic edges are taken as declared, after checking
    they connect known nodes and are not self-loops.
    """
    nodes = [NetNode(n.id, NetNodeKind.LEAF_OBSTACLE)
             for n in model.obstacles if n.is_leaf]
    nodes += [NetNode(s.id, NetNodeKind.SOLUTION) for s in model.solutions]
    nodes += [NetNode(r.id, NetNodeKind.RESOURCE) for r in model.resources]
    known = {n.id for n in nodes}

    primary = [(s.id, s.leaf_obstacle_id) for s in model.solutions]
    primary += [(a.resource_id, a.solution_id) for a in model.assignments]

    for edge in declared_parasitic:
        if edge.from_id not in known:
            raise DanglingDependency(
                f"parasitic edge from unknown node {edge.from_id!r}",
                id=edge.from_id)
        if edge.to_id not in known:
            raise DanglingDependency(
                f"parasitic edge to unknown node {edge.to_id!r}",
                id=edge.to_id)
        if edge.from_id == edge.to_id:
            raise InvalidValue(
                f"parasitic self-loop on {edge.from_id!r}", id=edge.from_id)

    return DependencyNetwork(nodes=tuple(nodes), primary_edges=tuple(primary),
                             parasitic_edges=tuple(declared_parasitic))


def _components(node_ids: list[str],
                edges: list[tuple[str, str]]) -> int:
    parent = {nid: nid for nid in node_ids}

    def find(x: str) -> str:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a, b in edges:
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[ra] = rb
    return len({find(nid) for nid in node_ids})


def cyclomatic_number(network: DependencyNetwork) -> int:
    """mu = E - N + C on the undirected multigraph (every edge counts,
    parallels included), so each added parasitic edge raises mu by one."""
    node_ids = [n.id for n in network.nodes]
    edges = list(network.primary_edges) + [
        (e.from_id, e.to_id) for e in network.parasitic_edges]
    if not node_ids:
        return 0
    c = _components(node_ids, edges)
    return len(edges) - len(node_ids) + c


def degree_entropy(network: DependencyNetwork) -> float:
    """Shannon entropy (bits) of the multigraph degree distribution."""
    if not network.nodes:
        return 0.0
    degree = {n.id: 0 for n in network.nodes}
    for a, b in network.primary_edges:
        degree[a] += 1
        degree[b] += 1
    for e in network.parasitic_edges:
        degree[e.from_id] += 1
        degree[e.to_id] += 1
    counts: dict[int, int] = {}
    for d in degree.values():
        counts[d] = counts.get(d, 0) + 1
    n = len(degree)
    return -math.fsum((c / n) * math.log2(c / n) for c in counts.values())


def edge_density(network: DependencyNetwork) -> float:
    """Distinct undirected adjacencies over C(N,2); parallels collapse."""
    n = len(network.nodes)
    if n < 2:
        return 0.0
    pairs = {frozenset((a, b)) for a, b in network.primary_edges}
    pairs |= {frozenset((e.from_id, e.to_id))
              for e in network.parasitic_edges}
    return len(pairs) / (n * (n - 1) / 2)


def parasitic_ratio(network: DependencyNetwork) -> float:
    return len(network.parasitic_edges) / max(1, len(network.primary_edges))


def complexity_gate(network: DependencyNetwork,
                    measure: ComplexityMeasure =
                        ComplexityMeasure.PARASITIC_RATIO,
                    h_crit: float = DEFAULT_H_CRIT) -> ComplexityReport:
    """Compute all measures, pick h, and gate on h < hCrit (strictly)."""
    if not (isinstance(h_crit, (int, float)) and math.isfinite(h_crit)
            and h_crit > 0):
        raise InvalidValue(f"hCrit must be positive, got {h_crit!r}",
                           h_crit=h_crit)
    mu = cyclomatic_number(network)
    ratio = parasitic_ratio(network)
    density = edge_density(network)
    entropy = degree_entropy(network)
    h = {
        ComplexityMeasure.PARASITIC_RATIO: ratio,
        ComplexityMeasure.CYCLOMATIC: float(mu),
        ComplexityMeasure.DENSITY: density,
        ComplexityMeasure.DEGREE_ENTROPY: entropy,
    }[measure]
    return ComplexityReport(
        cyclomatic=mu, parasitic_ratio=ratio, density=density,
        degree_entropy=entropy, measure=measure, h=h, h_crit=h_crit,
        applicable=h < h_crit)
