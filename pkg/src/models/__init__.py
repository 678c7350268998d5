"""数据模型"""

from .sets import NaturalSet, PatternKind, PatternFamily
from .hypergraph import Block, ForbiddenHypergraph, ProofStatus, SolveResult
from .grading import Cell, ConditionResult, Grading, GradingKind, GradingReport, PartitionView
from .records import (
    BoundReport, BoundTerm, Provenance, Quantity, QuantityKind,
    RamseyRecord, RecordStatus, TableFile, ThresholdResult, VerifyEntry, VerifyStatus,
)

__all__ = [
    'NaturalSet', 'PatternKind', 'PatternFamily',
    'Block', 'ForbiddenHypergraph', 'ProofStatus', 'SolveResult',
    'Cell', 'ConditionResult', 'Grading', 'GradingKind', 'GradingReport', 'PartitionView',
    'BoundReport', 'BoundTerm', 'Provenance', 'Quantity', 'QuantityKind',
    'RamseyRecord', 'RecordStatus', 'TableFile', 'ThresholdResult', 'VerifyEntry', 'VerifyStatus',
]
