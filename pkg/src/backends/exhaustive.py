"""
穷举验证器
对全部 2^n 个子集做向量化检查，用作分支定界的对照
"""

from typing import Optional, Tuple

import numpy as np

from ..exceptions import OracleCapExceeded
from ..models.hypergraph import ForbiddenHypergraph, ProofStatus, SolveResult

CHUNK_BITS = 20

# 16位查表求 popcount
_POPCOUNT16 = np.array([bin(i).count("1") for i in range(1 << 16)], dtype=np.int8)


def _popcount(values: np.ndarray) -> np.ndarray:
    counts = np.zeros(values.shape, dtype=np.int16)
    for shift in (0, 16, 32, 48):
        counts += _POPCOUNT16[(values >> np.uint64(shift)) & np.uint64(0xFFFF)]
    return counts


def _vertices(mask: int) -> Tuple[int, ...]:
    return tuple(v for v in range(mask.bit_length()) if mask >> v & 1)


class ExhaustiveSolver:
    """完全子集枚举"""

    def __init__(self, cap: int = 24):
        """
        初始化穷举验证器

        Args:
            cap: 允许的最大顶点数
        """
        self.cap = cap

    def solve(self, hypergraph: ForbiddenHypergraph, hint: Optional[int] = None) -> SolveResult:
        """
        枚举所有子集求最大自由集

        同规模的最优集合中取排序后字典序最小者。

        Args:
            hypergraph: 禁用超图
            hint: 忽略（接口一致）

        Returns:
            SolveResult对象
        """
        n = hypergraph.vertex_count
        if n > self.cap:
            raise OracleCapExceeded(f"穷举验证最多支持 {self.cap} 个顶点，实际 {n}")

        edge_masks = np.array(
            [sum(1 << v for v in edge) for edge in hypergraph.edges], dtype=np.uint64)
        total = 1 << n
        chunk = 1 << min(n, CHUNK_BITS)

        best = -1
        candidates = []
        for start in range(0, total, chunk):
            masks = np.arange(start, min(start + chunk, total), dtype=np.uint64)
            bad = np.zeros(masks.shape, dtype=bool)
            for e in edge_masks:
                bad |= (masks & e) == e
            counts = _popcount(masks).astype(np.int32)
            counts[bad] = -1
            chunk_best = int(counts.max())
            if chunk_best > best:
                best = chunk_best
                candidates = [int(m) for m in masks[counts == best]]
            elif chunk_best == best:
                candidates.extend(int(m) for m in masks[counts == best])

        witness = min(_vertices(m) for m in candidates)
        return SolveResult(
            optimum=best,
            witness=witness,
            nodes_explored=total,
            proof_status=ProofStatus.EXACT,
        )
