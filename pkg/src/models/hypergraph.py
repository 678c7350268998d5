"""
禁用超图与求解结果
"""

from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, Iterable, List, Sequence, Tuple


class ProofStatus(Enum):
    """求解状态"""
    EXACT = "exact"
    BUDGET_EXCEEDED = "budget_exceeded"


@dataclass(frozen=True)
class Block:
    """顶点块及其上界：任何自由集在该块内至多取 bound 个顶点"""
    vertices: Tuple[int, ...]
    bound: int


@dataclass(frozen=True)
class ForbiddenHypergraph:
    """
    禁用超图 (X, 𝒜 ∩ 2^X)

    顶点编号为 [0, vertex_count)，每条边是一个禁用子集。
    partitions 为可选的顶点块划分列表，用于加强分支定界的上界。
    """
    vertex_count: int
    edges: Tuple[Tuple[int, ...], ...]
    partitions: Tuple[Tuple[Block, ...], ...] = ()

    def __post_init__(self):
        seen = set()
        normalized = []
        for edge in self.edges:
            key = tuple(sorted(set(edge)))
            if len(key) < 2:
                raise ValueError(f"超图的边至少包含2个顶点: {edge}")
            if key[0] < 0 or key[-1] >= self.vertex_count:
                raise ValueError(f"边的顶点编号越界: {edge}")
            if key not in seen:
                seen.add(key)
                normalized.append(key)
        object.__setattr__(self, 'edges', tuple(normalized))

    @classmethod
    def from_sets(cls, vertex_count: int, edges: Iterable[Iterable[int]],
                  partitions: Sequence[Sequence[Block]] = ()) -> "ForbiddenHypergraph":
        return cls(vertex_count, tuple(tuple(e) for e in edges),
                   tuple(tuple(p) for p in partitions))

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def degrees(self) -> List[int]:
        """每个顶点所在的边数"""
        counts = [0] * self.vertex_count
        for edge in self.edges:
            for v in edge:
                counts[v] += 1
        return counts

    def is_free(self, vertices: Iterable[int]) -> bool:
        """顶点集是否不含任何整条边"""
        chosen = set(vertices)
        return not any(all(v in chosen for v in edge) for edge in self.edges)


@dataclass
class SolveResult:
    """最大自由子集求解结果"""
    optimum: int
    witness: Tuple[int, ...]
    nodes_explored: int = 0
    proof_status: ProofStatus = ProofStatus.EXACT
    labels: Dict[int, int] = field(default_factory=dict)  # 顶点编号 -> 原始元素

    @property
    def exact(self) -> bool:
        return self.proof_status == ProofStatus.EXACT

    def witness_labels(self) -> List[int]:
        """见证集映射回原始元素（无映射时返回顶点编号）"""
        if not self.labels:
            return list(self.witness)
        return sorted(self.labels[v] for v in self.witness)

    def to_dict(self) -> Dict:
        """转换为字典"""
        return {
            'optimum': self.optimum,
            'witness': self.witness_labels(),
            'nodes_explored': self.nodes_explored,
            'proof_status': self.proof_status.value,
        }
