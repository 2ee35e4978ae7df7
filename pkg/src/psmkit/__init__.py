"""psmkit: an event-sourced engine for facilitated multi-stakeholder
problem-solving models — weighted obstacle hierarchies around a shared
goal, with impact/sROI analytics, applicability checks, and sunburst
layout.
"""
from .applicability import (
    DEFAULT_EPSILON,
    DEFAULT_H_CRIT,
    CongruenceCheck,
    CongruenceRecord,
    ComplexityMeasure,
    ComplexityReport,
    DependencyNetwork,
    NetNode,
    NetNodeKind,
    ParasiticEdge,
    ParasiticKind,
    build_dependency_network,
    check_congruence,
    closure_residual,
    complexity_gate,
    cyclomatic_number,
    degree_entropy,
    edge_density,
    parasitic_ratio,
)
from .canonical import canonical_dumps, canonical_loads, canonicalize, quantize
from .errors import (
    AgreementError,
    ChainError,
    DanglingDependency,
    DuplicateAssignment,
    DuplicateId,
    HasChildren,
    HasSolutions,
    IncompletePhase,
    InvalidRevisionTarget,
    InvalidValue,
    IoError,
    MinorCannotTargetGoal,
    NonPositiveMS,
    NotALeaf,
    NotInImplementation,
    ParseError,
    PhaseCoherenceError,
    PsmError,
    SchemaError,
    ShareOverflow,
    UnknownNode,
    UnknownResource,
    UnknownSolution,
    UnknownStakeholder,
    ValidationError,
    WeightSumViolation,
)
from .impact import (
    ImpactReport,
    SroiEntry,
    SroiReport,
    goal_impact,
    leaf_progress,
    needle_movement,
    progress_rollup,
    sroi,
)
from .layout import LayoutConfig, Sector, SectorKind, compute_layout, to_svg
from .model import (
    GoalStatus,
    Metric,
    ObstacleNode,
    ParentLink,
    ProblemModel,
    Resource,
    ResourceAssignment,
    ResourceKind,
    Solution,
    Stakeholder,
    SuperordinateGoal,
    Violation,
    ROOT_ID,
    add_obstacle,
    add_solution,
    agree_goal,
    assign_resource,
    draft_goal,
    empty_model,
    mark_leaf,
    register_resource,
    register_stakeholder,
    report_progress,
    report_spend,
    sentence_count,
    set_weights,
    subdivide_obstacle,
    validate,
)
from .persistence import (
    VerifyResult,
    append_event,
    complexity_report_to_doc,
    congruence_analysis_doc,
    deserialize_model,
    event_from_doc,
    event_line,
    event_to_doc,
    impact_report_to_doc,
    model_from_doc,
    model_to_doc,
    policy_from_doc,
    read_log,
    replay,
    sector_to_doc,
    serialize_model,
    serialize_session,
    session_to_doc,
    sroi_report_to_doc,
    verify_log,
)
from .server import create_app
from .session import (
    Event,
    EventKind,
    GATE_TABLE,
    Phase,
    PolicyWarning,
    RevisionPolicy,
    RevisionScope,
    Session,
    ZERO_HASH,
    advance_phase,
    apply_event,
    empty_session,
    event_hash,
    gate_check,
    make_event,
    next_phase,
    open_revision,
    phase_unmet,
    revision_warnings,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
