"""Shared fixtures: reference sessions built through the event engine,
random model and event-sequence generators, and independent oracles.

Reference sessions are constructed exclusively via make_event/apply_event
so every fixture doubles as an engine exercise. Random generators are
seeded; oracles are written independently of the implementation they
check (path enumeration for impact, direct formula recomputation for
sROI and congruence).
"""
from __future__ import annotations

import itertools
import math
import random
import socket
import threading
import time
from collections import defaultdict

import pytest

from psmkit import (
    ROOT_ID,
    EventKind,
    GATE_TABLE,
    ObstacleNode,
    ParentLink,
    Phase,
    ProblemModel,
    PsmError,
    Resource,
    ResourceAssignment,
    ResourceKind,
    Session,
    Solution,
    apply_event,
    empty_session,
    gate_check,
    make_event,
    next_phase,
    serialize_session,
    validate,
)

ACTORS = ("fac", "ana", "bo")

# Verbatim goal statements used across fixtures.
GOAL_ECOSYSTEM = ("Make the innovation and start-up eco-system in our "
                  "country renowned in the world, sustainably.")
GOAL_BLOCKS = ("Our children in these 100 blocks of Harlem will enjoy a "
               "school and community ecosystem that will eliminate the "
               "education gap between them and successful, suburban "
               "students.")

STREETLIGHT_CHAIN = (
    "Unsafe neighborhoods",
    "Crime committed on the streets",
    "Crime-prone street conditions",
    "Streets too dark at night",
)
STREETLIGHT_SOLUTIONS = (
    "Install new streetlamps",
    "Replace street lighting",
    "Fix street lighting",
    "Adjust the automatic switch on/off times of streetlamps so that they "
    "start shining earlier, stay on longer, and are off for shorter "
    "periods at night",
)

SIX_THEMES = ("Housing affordability", "Public safety", "Transit access",
              "Local economy", "Public health", "Education quality")


# --- session builders --------------------------------------------------------

def step(session: Session, kind: EventKind, payload, actor: str = "fac",
         ts: int | None = None) -> Session:
    """Apply one event built for the session's current chain tip."""
    if ts is None:
        ts = 1_600_000_000_000 + 1000 * (session.last_seq + 1)
    return apply_event(session, make_event(session, kind, actor, payload, ts))


def goal_agreed_session(session_id: str = "base",
                        goal_text: str = GOAL_ECOSYSTEM,
                        stakeholders: tuple[str, ...] = ("st1", "st2")) -> Session:
    s = empty_session(session_id)
    for sid in stakeholders:
        s = step(s, EventKind.STAKEHOLDER_REGISTERED,
                 {"stakeholderId": sid, "name": sid.upper()})
    s = step(s, EventKind.GOAL_DRAFTED, {"text": goal_text})
    return step(s, EventKind.GOAL_AGREED, {"agreedBy": list(stakeholders)})


def single_obstacle_session() -> Session:
    """One obstacle, one solution: the smallest complete model."""
    s = goal_agreed_session("single")
    s = step(s, EventKind.PHASE_ADVANCED, {"from": "GOAL", "to": "OBSTACLES"})
    s = step(s, EventKind.OBSTACLE_SUBDIVIDED, {
        "obstacleId": ROOT_ID,
        "parts": [{"label": "The only obstacle", "weight": 1.0}]})
    s = step(s, EventKind.LEAF_MARKED, {"obstacleId": "o1"})
    s = step(s, EventKind.PHASE_ADVANCED,
             {"from": "OBSTACLES", "to": "SOLUTIONS"})
    s = step(s, EventKind.SOLUTION_ADDED,
             {"leafId": "o1", "label": "The fix", "share": 1.0})
    return s


def two_obstacle_session() -> Session:
    """Two weighted top-level obstacles, one solution each."""
    s = goal_agreed_session("pair")
    s = step(s, EventKind.PHASE_ADVANCED, {"from": "GOAL", "to": "OBSTACLES"})
    s = step(s, EventKind.OBSTACLE_SUBDIVIDED, {
        "obstacleId": ROOT_ID,
        "parts": [{"label": "First barrier", "weight": 0.45},
                  {"label": "Second barrier", "weight": 0.55}]})
    s = step(s, EventKind.LEAF_MARKED, {"obstacleId": "o1"})
    s = step(s, EventKind.LEAF_MARKED, {"obstacleId": "o2"})
    s = step(s, EventKind.PHASE_ADVANCED,
             {"from": "OBSTACLES", "to": "SOLUTIONS"})
    s = step(s, EventKind.SOLUTION_ADDED,
             {"leafId": "o1", "label": "Fix one", "share": 1.0})
    s = step(s, EventKind.SOLUTION_ADDED,
             {"leafId": "o2", "label": "Fix two", "share": 1.0})
    return s


def quartered_session() -> Session:
    """0.5/0.5 at the top, first obstacle split 0.5/0.5 again."""
    s = goal_agreed_session("quarters")
    s = step(s, EventKind.PHASE_ADVANCED, {"from": "GOAL", "to": "OBSTACLES"})
    s = step(s, EventKind.OBSTACLE_SUBDIVIDED, {
        "obstacleId": ROOT_ID,
        "parts": [{"label": "Left half", "weight": 0.5},
                  {"label": "Right half", "weight": 0.5}]})
    s = step(s, EventKind.OBSTACLE_SUBDIVIDED, {
        "obstacleId": "o1",
        "parts": [{"label": "Left-left", "weight": 0.5},
                  {"label": "Left-right", "weight": 0.5}]})
    for leaf in ("o1-1", "o1-2", "o2"):
        s = step(s, EventKind.LEAF_MARKED, {"obstacleId": leaf})
    return s


def cooperating_resources_session() -> Session:
    """Two resources with unequal shares cooperating on one solution.

    Shape: two top themes; the first subdivided 0.6/0.4; solutions on all
    three leaves plus a second partial solution on the second theme; two
    resources, both assigned to the first leaf's solution at 0.25/0.75.
    """
    s = goal_agreed_session("coop")
    s = step(s, EventKind.PHASE_ADVANCED, {"from": "GOAL", "to": "OBSTACLES"})
    s = step(s, EventKind.OBSTACLE_SUBDIVIDED, {
        "obstacleId": ROOT_ID,
        "parts": [{"label": "Theme one", "weight": 0.5},
                  {"label": "Theme two", "weight": 0.5}]})
    s = step(s, EventKind.OBSTACLE_SUBDIVIDED, {
        "obstacleId": "o1",
        "parts": [{"label": "Component A", "weight": 0.6},
                  {"label": "Component B", "weight": 0.4}]})
    for leaf in ("o1-1", "o1-2", "o2"):
        s = step(s, EventKind.LEAF_MARKED, {"obstacleId": leaf})
    s = step(s, EventKind.PHASE_ADVANCED,
             {"from": "OBSTACLES", "to": "SOLUTIONS"})
    s = step(s, EventKind.SOLUTION_ADDED,
             {"leafId": "o1-1", "label": "Joint fix", "share": 1.0})
    s = step(s, EventKind.SOLUTION_ADDED,
             {"leafId": "o1-2", "label": "Side fix", "share": 1.0})
    s = step(s, EventKind.SOLUTION_ADDED,
             {"leafId": "o2", "label": "Main fix", "share": 0.5})
    s = step(s, EventKind.SOLUTION_ADDED,
             {"leafId": "o2", "label": "Backup fix", "share": 0.3})
    s = step(s, EventKind.PHASE_ADVANCED,
             {"from": "SOLUTIONS", "to": "RESOURCES"})
    s = step(s, EventKind.RESOURCE_REGISTERED,
             {"resourceId": "r1", "name": "City works", "kind": "GOVERNMENT"})
    s = step(s, EventKind.RESOURCE_REGISTERED,
             {"resourceId": "r2", "name": "Local trust", "kind": "PHILANTHROPY"})
    s = step(s, EventKind.RESOURCE_ASSIGNED,
             {"solutionId": "o1-1-s1", "resourceId": "r1", "share": 0.25})
    s = step(s, EventKind.RESOURCE_ASSIGNED,
             {"solutionId": "o1-1-s1", "resourceId": "r2", "share": 0.75})
    s = step(s, EventKind.PHASE_ADVANCED,
             {"from": "RESOURCES", "to": "IMPLEMENTATION"})
    s = step(s, EventKind.PROGRESS_REPORTED,
             {"solutionId": "o1-1-s1", "progress": 0.4})
    s = step(s, EventKind.SPEND_REPORTED,
             {"solutionId": "o1-1-s1", "resourceId": "r1", "spend": 100.0})
    s = step(s, EventKind.SPEND_REPORTED,
             {"solutionId": "o1-1-s1", "resourceId": "r2", "spend": 300.0})
    return s


def six_theme_session() -> Session:
    """Six equally weighted top-level themes around a city goal."""
    s = goal_agreed_session("city", goal_text=GOAL_BLOCKS,
                            stakeholders=("st1", "st2", "st3"))
    s = step(s, EventKind.PHASE_ADVANCED, {"from": "GOAL", "to": "OBSTACLES"})
    s = step(s, EventKind.OBSTACLE_SUBDIVIDED, {
        "obstacleId": ROOT_ID,
        "parts": [{"label": label, "weight": 1 / 6} for label in SIX_THEMES]})
    return s


def streetlight_session() -> Session:
    """A four-deep subdivision chain ending in a leaf with four solutions."""
    s = goal_agreed_session("streets", goal_text=GOAL_BLOCKS)
    s = step(s, EventKind.PHASE_ADVANCED, {"from": "GOAL", "to": "OBSTACLES"})
    parent = ROOT_ID
    for depth, label in enumerate(STREETLIGHT_CHAIN, 1):
        s = step(s, EventKind.OBSTACLE_SUBDIVIDED, {
            "obstacleId": parent,
            "parts": [{"label": label, "weight": 1.0}]})
        parent = "o1" + "-1" * (depth - 1)
    s = step(s, EventKind.LEAF_MARKED, {"obstacleId": parent})
    s = step(s, EventKind.PHASE_ADVANCED,
             {"from": "OBSTACLES", "to": "SOLUTIONS"})
    for label, share in zip(STREETLIGHT_SOLUTIONS, (0.3, 0.3, 0.2, 0.2)):
        s = step(s, EventKind.SOLUTION_ADDED,
                 {"leafId": parent, "label": label, "share": share})
    return s


def phase_snapshots() -> dict[Phase, Session]:
    """One live session snapshot per phase, rich enough that every
    gate-admitted event kind has a payload that can actually apply."""
    snaps: dict[Phase, Session] = {}
    s = goal_agreed_session("phases")
    snaps[Phase.GOAL] = s
    s = step(s, EventKind.PHASE_ADVANCED, {"from": "GOAL", "to": "OBSTACLES"})
    s = step(s, EventKind.OBSTACLE_SUBDIVIDED, {
        "obstacleId": ROOT_ID,
        "parts": [{"label": "One", "weight": 0.5},
                  {"label": "Two", "weight": 0.5}]})
    s = step(s, EventKind.LEAF_MARKED, {"obstacleId": "o1"})
    s = step(s, EventKind.LEAF_MARKED, {"obstacleId": "o2"})
    snaps[Phase.OBSTACLES] = s
    s = step(s, EventKind.PHASE_ADVANCED,
             {"from": "OBSTACLES", "to": "SOLUTIONS"})
    s = step(s, EventKind.SOLUTION_ADDED,
             {"leafId": "o1", "label": "Fix one", "share": 0.5})
    s = step(s, EventKind.SOLUTION_ADDED,
             {"leafId": "o2", "label": "Fix two", "share": 1.0})
    snaps[Phase.SOLUTIONS] = s
    s = step(s, EventKind.PHASE_ADVANCED,
             {"from": "SOLUTIONS", "to": "RESOURCES"})
    s = step(s, EventKind.RESOURCE_REGISTERED,
             {"resourceId": "r1", "name": "Crew"})
    s = step(s, EventKind.RESOURCE_REGISTERED,
             {"resourceId": "r2", "name": "Fund"})
    s = step(s, EventKind.RESOURCE_ASSIGNED,
             {"solutionId": "o1-s1", "resourceId": "r1", "share": 0.5})
    snaps[Phase.RESOURCES] = s
    s = step(s, EventKind.PHASE_ADVANCED,
             {"from": "RESOURCES", "to": "IMPLEMENTATION"})
    snaps[Phase.IMPLEMENTATION] = s
    return snaps


# --- random model generator ---------------------------------------------------

def random_model(rng: random.Random, model_id: str = "rnd",
                 max_depth: int = 5, max_fanout: int = 6,
                 dag_prob: float = 0.15, node_cap: int = 45) -> ProblemModel:
    """A random valid model: layered DAG, per-parent weights summing to 1,
    solutions on leaves, resources with partial assignments."""
    counter = itertools.count(1)
    children: dict[str, list[str]] = {ROOT_ID: []}
    extra_parents: dict[str, list[str]] = defaultdict(list)
    layers: list[list[str]] = [[ROOT_ID]]
    primary_parent: dict[str, str] = {}
    total = 0
    depth = rng.randint(1, max_depth)
    for d in range(1, depth + 1):
        splitters = [p for p in layers[d - 1]
                     if d == 1 or rng.random() < 0.5]
        if not splitters or total >= node_cap:
            break
        layer: list[str] = []
        for p in splitters:
            fanout = rng.randint(1, max_fanout)
            fanout = min(fanout, node_cap - total)
            for _ in range(fanout):
                nid = f"n{next(counter)}"
                children[p].append(nid)
                children[nid] = []
                primary_parent[nid] = p
                layer.append(nid)
                total += 1
        if not layer:
            break
        # Optional extra parents from the previous layer form a DAG.
        for nid in layer:
            if rng.random() < dag_prob:
                options = [p for p in splitters
                           if p != primary_parent[nid]]
                if options:
                    extra = rng.choice(options)
                    children[extra].append(nid)
                    extra_parents[nid].append(extra)
        layers.append(layer)

    weights: dict[tuple[str, str], float] = {}
    for parent, kids in children.items():
        if not kids:
            continue
        raw = [rng.uniform(0.1, 1.0) for _ in kids]
        if len(kids) == 1:
            weights[(parent, kids[0])] = 1.0
            continue
        norm = sum(raw)
        for kid, r in zip(kids, raw):
            weights[(parent, kid)] = r / norm

    nodes = []
    for layer in layers[1:]:
        for nid in layer:
            parent_ids = [primary_parent[nid]] + extra_parents[nid]
            links = tuple(ParentLink(parent_id=p, weight=weights[(p, nid)])
                          for p in parent_ids)
            is_leaf = not children[nid] and rng.random() < 0.9
            nodes.append(ObstacleNode(id=nid, label=f"Obstacle {nid}",
                                      parents=links, is_leaf=is_leaf))

    solutions = []
    for node in nodes:
        if not node.is_leaf:
            continue
        count = rng.choice((0, 1, 1, 2, 3))
        if not count:
            continue
        raw = [rng.uniform(0.2, 1.0) for _ in range(count)]
        if rng.random() < 0.3:
            # Exact full coverage: the last share closes the sum to 1.
            scale = 1.0 / sum(raw)
            shares = [r * scale for r in raw[:-1]]
            shares.append(1.0 - sum(shares))
        else:
            scale = rng.uniform(0.3, 1.0) / sum(raw)
            shares = [r * scale for r in raw]
        for j, share in enumerate(shares, 1):
            solutions.append(Solution(
                id=f"{node.id}-s{j}", leaf_obstacle_id=node.id,
                label=f"Fix {node.id}.{j}", share=share,
                progress=rng.choice((0.0, rng.random(), 1.0))))

    kinds = list(ResourceKind)
    resources = [Resource(id=f"r{i}", name=f"Resource {i}",
                          kind=rng.choice(kinds))
                 for i in range(1, rng.randint(0, 4) + 1)]
    assignments = []
    for sol in solutions:
        if not resources or rng.random() > 0.6:
            continue
        picked = rng.sample(resources, k=min(len(resources),
                                             rng.randint(1, 2)))
        raw = [rng.uniform(0.2, 1.0) for _ in picked]
        scale = rng.uniform(0.3, 1.0) / sum(raw)
        for res, r in zip(picked, raw):
            assignments.append(ResourceAssignment(
                resource_id=res.id, solution_id=sol.id, share=r * scale,
                spend=rng.choice((0.0, 0.0, round(rng.uniform(1, 5000), 2)))))

    return ProblemModel(id=model_id, title=f"Random {model_id}",
                        obstacles=tuple(nodes), solutions=tuple(solutions),
                        resources=tuple(resources),
                        assignments=tuple(assignments))


# --- independent oracles ------------------------------------------------------

def oracle_impacts(model: ProblemModel) -> dict[str, float]:
    """Impact by exhaustive root-down path enumeration (implementation-
    independent; shares only the fsum contract of order-insensitive
    correctly rounded summation)."""
    down: dict[str, list[tuple[str, float]]] = defaultdict(list)
    for node in model.obstacles:
        for link in node.parents:
            down[link.parent_id].append((node.id, link.weight))
    products: dict[str, list[float]] = defaultdict(list)
    stack: list[tuple[str, float]] = [(ROOT_ID, 1.0)]
    while stack:
        nid, prod = stack.pop()
        for cid, w in down.get(nid, ()):
            p = prod * w
            products[cid].append(p)
            stack.append((cid, p))
    out = {nid: math.fsum(ps) for nid, ps in products.items()}
    out[ROOT_ID] = 1.0
    return out


def oracle_path_counts(model: ProblemModel) -> dict[str, int]:
    """Number of distinct root paths reaching each node."""
    down: dict[str, list[str]] = defaultdict(list)
    for node in model.obstacles:
        for link in node.parents:
            down[link.parent_id].append(node.id)
    counts: dict[str, int] = defaultdict(int)
    stack = [ROOT_ID]
    while stack:
        nid = stack.pop()
        for cid in down.get(nid, ()):
            counts[cid] += 1
            stack.append(cid)
    counts[ROOT_ID] = 1
    return dict(counts)


# --- random event walk ---------------------------------------------------------

_GOAL_TEXTS = (
    "Close the gap for good.",
    "Restore the river. Keep it clean. Make it last.",
    "One. Two. Three. Four.",
    "",
    "An endlessly unterminated goal statement",
)


def _weight_split(rng: random.Random, total: float, n: int) -> list[float]:
    raw = [rng.uniform(0.1, 1.0) for _ in range(n)]
    norm = sum(raw)
    return [total * r / norm for r in raw]


def fuzz_payload(rng: random.Random, session: Session, kind: EventKind):
    """A payload for `kind` that is usually valid for the current state,
    sometimes deliberately not."""
    model = session.model
    K = EventKind
    node_ids = [n.id for n in model.obstacles]
    leaf_ids = [n.id for n in model.obstacles if n.is_leaf]
    sol_ids = [s.id for s in model.solutions]
    res_ids = [r.id for r in model.resources]
    if kind is K.STAKEHOLDER_REGISTERED:
        return {"stakeholderId": f"st{rng.randrange(40)}", "name": "Someone"}
    if kind in (K.GOAL_DRAFTED, K.GOAL_EDITED):
        return {"text": rng.choice(_GOAL_TEXTS)}
    if kind is K.GOAL_AGREED:
        roster = [s.id for s in model.stakeholders]
        if roster and rng.random() < 0.2:
            roster = roster[:-1]
        return {"agreedBy": roster}
    if kind is K.PHASE_ADVANCED:
        nxt = next_phase(session.phase)
        return {"from": session.phase.value,
                "to": (nxt or session.phase).value}
    if kind is K.OBSTACLE_ADDED:
        parent = rng.choice([ROOT_ID] + node_ids)
        siblings = model.children_of(parent)
        if siblings:
            w = rng.uniform(0.2, 0.8)
            sib_w = dict(zip((c.id for c in siblings),
                             _weight_split(rng, 1.0 - w, len(siblings))))
        else:
            w, sib_w = 1.0, {}
        return {"label": "Something in the way",
                "parents": [{"parentId": parent, "weight": w,
                             "siblingWeights": sib_w}]}
    if kind is K.OBSTACLE_SUBDIVIDED:
        target = rng.choice([ROOT_ID] + node_ids) if node_ids else ROOT_ID
        n = rng.randint(1, 3)
        return {"obstacleId": target,
                "parts": [{"label": f"Part {i}", "weight": w}
                          for i, w in enumerate(_weight_split(rng, 1.0, n))]}
    if kind is K.WEIGHTS_SET:
        parents = [p for p in [ROOT_ID] + node_ids if model.children_of(p)]
        parent = rng.choice(parents) if parents else ROOT_ID
        kids = model.children_of(parent)
        return {"parentId": parent,
                "weights": dict(zip((c.id for c in kids),
                                    _weight_split(rng, 1.0, len(kids))))}
    if kind is K.LEAF_MARKED:
        return {"obstacleId": rng.choice(node_ids) if node_ids else "nope"}
    if kind is K.SOLUTION_ADDED:
        return {"leafId": rng.choice(leaf_ids) if leaf_ids else "nope",
                "label": "A fix", "share": rng.choice((0.2, 0.3, 0.5))}
    if kind is K.RESOURCE_REGISTERED:
        payload = {"name": f"Res {rng.randrange(30)}"}
        if rng.random() < 0.5:
            payload["kind"] = rng.choice(
                [k.value for k in ResourceKind])
        return payload
    if kind is K.RESOURCE_ASSIGNED:
        return {"solutionId": rng.choice(sol_ids) if sol_ids else "nope",
                "resourceId": rng.choice(res_ids) if res_ids else "nope",
                "share": rng.choice((0.2, 0.4)),
                "spend": rng.choice((0.0, 25.0))}
    if kind is K.PROGRESS_REPORTED:
        return {"solutionId": rng.choice(sol_ids) if sol_ids else "nope",
                "progress": rng.random()}
    if kind is K.SPEND_REPORTED:
        if model.assignments and rng.random() < 0.8:
            a = rng.choice(model.assignments)
            return {"solutionId": a.solution_id, "resourceId": a.resource_id,
                    "spend": round(rng.uniform(0, 500), 2)}
        return {"solutionId": rng.choice(sol_ids) if sol_ids else "nope",
                "resourceId": rng.choice(res_ids) if res_ids else "nope",
                "spend": 10.0}
    if kind is K.DEPENDENCY_DECLARED:
        pool = leaf_ids + sol_ids + res_ids
        a = rng.choice(pool) if pool else "nope"
        b = rng.choice(pool) if pool else "also-nope"
        return {"fromId": a, "toId": b,
                "kind": rng.choice(("AGGRAVATES", "DEPENDS_ON", "EMERGENT")),
                "note": "declared during review"}
    if kind is K.CONGRUENCE_RECORDED:
        roster = [s.id for s in model.stakeholders]
        return {"stakeholderId": rng.choice(roster) if roster else "nope",
                "mS": rng.uniform(0.5, 5.0),
                "mC": rng.uniform(0.0, 1.0),
                "mCbar": rng.uniform(0.0, 1.0)}
    # MINOR_REVISION_OPENED / MAJOR_REVISION_OPENED
    return {"targetPhase": rng.choice(
        ("GOAL", "OBSTACLES", "SOLUTIONS", "RESOURCES", "IMPLEMENTATION"))}


_ALL_KINDS = sorted(EventKind, key=lambda k: k.value)
_GATE_SORTED = {phase: sorted(kinds, key=lambda k: k.value)
                for phase, kinds in GATE_TABLE.items()}


def fuzz_walk(rng: random.Random, start: Session, steps: int = 8,
              bias_valid: float = 0.75) -> Session:
    """Random event walk asserting gate soundness at every step."""
    session = start
    ts = (session.log[-1].timestamp if session.log else 1_600_000_000_000)
    for _ in range(steps):
        if rng.random() < bias_valid:
            kind = rng.choice(_GATE_SORTED[session.phase])
        else:
            kind = rng.choice(_ALL_KINDS)
        payload = fuzz_payload(rng, session, kind)
        ts += rng.randrange(1, 10_000_000)
        event = make_event(session, kind, rng.choice(ACTORS), payload, ts)
        allowed = gate_check(session.phase, kind)
        try:
            session = apply_event(session, event)
        except PsmError:
            continue
        assert allowed, (f"gate-denied {kind.value} accepted in phase "
                         f"{session.phase.value}")
    return session


def replay_bytes(session: Session) -> str:
    """Serialize the session a fold of its own log would produce."""
    folded = empty_session(session.id, policy=session.policy)
    for event in session.log:
        folded = apply_event(folded, event)
    return serialize_session(folded)


# --- pytest fixtures -----------------------------------------------------------

@pytest.fixture(scope="session")
def single_session() -> Session:
    return single_obstacle_session()


@pytest.fixture(scope="session")
def pair_session() -> Session:
    return two_obstacle_session()


@pytest.fixture(scope="session")
def quarter_session() -> Session:
    return quartered_session()


@pytest.fixture(scope="session")
def coop_session() -> Session:
    return cooperating_resources_session()


@pytest.fixture(scope="session")
def city_session() -> Session:
    return six_theme_session()


@pytest.fixture(scope="session")
def streets_session() -> Session:
    return streetlight_session()


@pytest.fixture(scope="session")
def snapshots() -> dict[Phase, Session]:
    return phase_snapshots()


@pytest.fixture(scope="session")
def model_corpus() -> list[ProblemModel]:
    """200 random valid models for module-level property tests."""
    rng = random.Random(0xC0FFEE)
    corpus = [random_model(rng, f"m{i}") for i in range(200)]
    for model in corpus:
        assert validate(model) == []
    return corpus


def free_port() -> int:
    with socket.socket() as sock:
        sock.bind(("127.0.0.1", 0))
        return sock.getsockname()[1]


@pytest.fixture()
def live_server(tmp_path):
    """A real uvicorn server in a daemon thread; base URL yielded.

    The in-process test client buffers whole response bodies, which never
    terminates on an infinite SSE stream, so streaming tests need a socket.
    """
    import uvicorn

    from psmkit import create_app

    app = create_app(tmp_path)
    port = free_port()
    config = uvicorn.Config(app, host="127.0.0.1", port=port,
                            log_level="error")
    server = uvicorn.Server(config)
    thread = threading.Thread(target=server.run, daemon=True)
    thread.start()
    deadline = time.time() + 10
    while not server.started:
        if time.time() > deadline:
            raise RuntimeError("server did not start")
        time.sleep(0.01)
    yield f"http://127.0.0.1:{port}"
    server.should_exit = True
    thread.join(timeout=5)
