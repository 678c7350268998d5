"""核心处理模块"""

from .grid import GridRamsey, enumerate_geometric_lines, enumerate_lines, enumerate_spaces
from .patterns import enumerate_instances, is_free
from .solver import PatternSolver, exhaustive_max_free, max_free
from .tables import TableStore

__all__ = [
    'GridRamsey',
    'enumerate_geometric_lines',
    'enumerate_lines',
    'enumerate_spaces',
    'enumerate_instances',
    'is_free',
    'PatternSolver',
    'exhaustive_max_free',
    'max_free',
    'TableStore',
]
