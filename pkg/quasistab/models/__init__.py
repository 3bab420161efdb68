"""
Toolkit Models Package
Data classes, type definitions and errors.
"""

from quasistab.models.models import (
    Vertex,
    Edge,
    MarkedDualGraph,
    ValidationResult,
    SubcurveInvariants,
    TailRecord,
    BridgeRecord,
    Classification,
    StabilityStatus,
    MappedGraph,
    Multidegree,
    DegreeBounds,
    Violation,
    BalanceReport,
    BridgeChoice,
    ForcedDegrees,
    OnVertex,
    AtNode,
    AtMarking,
    PointLocation,
    ContractionOutcome,
    StabilizationOutcome,
    ForgetOutcome,
    FiberEntry,
    CriterionWitness,
    CriterionReport,
    CorpusParams,
    GraphDocument,
    EXCEPTIONAL_DEGREE,
    TAIL_DEGREE,
    TAIL_VERTEX_FORCED,
    BRIDGE_PATTERN,
    CORE_INEQUALITY,
)
from quasistab.models.errors import (
    QuasistabError,
    DomainError,
    MalformedInputError,
    ConsistencyError,
    GenerationError,
)

__all__ = [
    'Vertex',
    'Edge',
    'MarkedDualGraph',
    'ValidationResult',
    'SubcurveInvariants',
    'TailRecord',
    'BridgeRecord',
    'Classification',
    'StabilityStatus',
    'MappedGraph',
    'Multidegree',
    'DegreeBounds',
    'Violation',
    'BalanceReport',
    'BridgeChoice',
    'ForcedDegrees',
    'OnVertex',
    'AtNode',
    'AtMarking',
    'PointLocation',
    'ContractionOutcome',
    'StabilizationOutcome',
    'ForgetOutcome',
    'FiberEntry',
    'CriterionWitness',
    'CriterionReport',
    'CorpusParams',
    'GraphDocument',
    'EXCEPTIONAL_DEGREE',
    'TAIL_DEGREE',
    'TAIL_VERTEX_FORCED',
    'BRIDGE_PATTERN',
    'CORE_INEQUALITY',
    'QuasistabError',
    'DomainError',
    'MalformedInputError',
    'ConsistencyError',
    'GenerationError',
]
