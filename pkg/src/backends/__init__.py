"""求解后端"""

from .solver_client import BaseSolverBackend, SolverClient

__all__ = ['BaseSolverBackend', 'SolverClient']
