"""
求解后端客户端
支持多种最大自由集求解后端
"""

from abc import ABC, abstractmethod
from typing import Optional, Tuple

from ..models.hypergraph import ForbiddenHypergraph, SolveResult
from .branch_bound import BranchBoundSolver
from .exhaustive import ExhaustiveSolver


class BaseSolverBackend(ABC):
    """求解后端基类（SAT/ILP 等后端从这里接入）"""

    @abstractmethod
    def solve(self, hypergraph: ForbiddenHypergraph, hint: Optional[int] = None) -> SolveResult:
        """
        求最大自由集

        Args:
            hypergraph: 禁用超图
            hint: 声称可达的下界（可选）

        Returns:
            SolveResult对象
        """
        pass

    def exists_free(self, hypergraph: ForbiddenHypergraph, target: int) -> Tuple[Optional[Tuple[int, ...]], int]:
        """判定是否存在规模 ≥ target 的自由集，默认通过完整求解实现"""
        result = self.solve(hypergraph, hint=target)
        if result.optimum >= target:
            return result.witness, result.nodes_explored
        return None, result.nodes_explored


class BranchBoundBackend(BaseSolverBackend):
    """分支定界后端"""

    def __init__(self, node_budget: int, workers: int, split_depth: int, parallel_min_vertices: int):
        self.solver = BranchBoundSolver(
            node_budget=node_budget,
            workers=workers,
            split_depth=split_depth,
            parallel_min_vertices=parallel_min_vertices,
        )

    def solve(self, hypergraph: ForbiddenHypergraph, hint: Optional[int] = None) -> SolveResult:
        return self.solver.solve(hypergraph, hint)

    def exists_free(self, hypergraph: ForbiddenHypergraph, target: int) -> Tuple[Optional[Tuple[int, ...]], int]:
        return self.solver.exists_free(hypergraph, target)


class ExhaustiveBackend(BaseSolverBackend):
    """穷举验证后端"""

    def __init__(self, cap: int):
        self.solver = ExhaustiveSolver(cap=cap)

    def solve(self, hypergraph: ForbiddenHypergraph, hint: Optional[int] = None) -> SolveResult:
        return self.solver.solve(hypergraph)


class SolverClient:
    """求解后端管理器"""

    def __init__(self, provider: str = "branch_bound", **config):
        """
        初始化求解客户端

        Args:
            provider: 后端（branch_bound/exhaustive）
            **config: 配置参数（node_budget, workers, split_depth,
                parallel_min_vertices, oracle_cap）
        """
        self.provider = provider
        self.config = config
        self.backend = self._create_backend()

    def _create_backend(self) -> BaseSolverBackend:
        """创建具体的后端实例"""
        if self.provider == "branch_bound":
            return BranchBoundBackend(
                node_budget=self.config.get('node_budget', 10 ** 9),
                workers=self.config.get('workers', 1),
                split_depth=self.config.get('split_depth', 4),
                parallel_min_vertices=self.config.get('parallel_min_vertices', 48),
            )
        elif self.provider == "exhaustive":
            return ExhaustiveBackend(cap=self.config.get('oracle_cap', 24))
        else:
            raise ValueError(f"不支持的求解后端: {self.provider}")

    @classmethod
    def from_config(cls, solver_config, provider: Optional[str] = None) -> "SolverClient":
        """由 SolverConfig 构造"""
        return cls(
            provider=provider or solver_config.provider,
            node_budget=solver_config.node_budget,
            workers=solver_config.worker_count,
            split_depth=solver_config.split_depth,
            parallel_min_vertices=solver_config.parallel_min_vertices,
            oracle_cap=solver_config.oracle_cap,
        )

    def solve(self, hypergraph: ForbiddenHypergraph, hint: Optional[int] = None) -> SolveResult:
        """
        求最大自由集

        Args:
            hypergraph: 禁用超图
            hint: 声称可达的下界（可选）

        Returns:
            SolveResult对象
        """
        return self.backend.solve(hypergraph, hint)

    def exists_free(self, hypergraph: ForbiddenHypergraph, target: int) -> Tuple[Optional[Tuple[int, ...]], int]:
        """判定是否存在规模 ≥ target 的自由集"""
        return self.backend.exists_free(hypergraph, target)
