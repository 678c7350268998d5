"""
立方体 [k]^d 上的组合学模块
枚举组合线、几何线、组合子空间，并通过精确求解器计算
c_{d,k}（密度Hales-Jewett数）、c'_{d,k}（Moser数）、c_{d,s,k}（广义Sperner数）
"""

from functools import lru_cache
from itertools import product
from typing import Callable, Dict, FrozenSet, List, Optional, Sequence, Tuple

from loguru import logger

from ..exceptions import SolverBudgetExceeded
from ..models.hypergraph import Block, ForbiddenHypergraph, SolveResult

Word = Tuple[int, ...]
PointSet = FrozenSet[Word]

UP = "UP"
DOWN = "DOWN"


def rank(word: Word, k: int) -> int:
    """混合进制编号，坐标0为最低位"""
    value = 0
    for c in reversed(word):
        value = value * k + c
    return value


def unrank(index: int, k: int, d: int) -> Word:
    coords = []
    for _ in range(d):
        index, c = divmod(index, k)
        coords.append(c)
    return tuple(coords)


def _line_points(template: Sequence, k: int) -> PointSet:
    points = []
    for t in range(k):
        points.append(tuple(
            t if cell == UP else (k - 1 - t) if cell == DOWN else cell
            for cell in template
        ))
    return frozenset(points)


@lru_cache(maxsize=None)
def _lines(k: int, d: int) -> Tuple[PointSet, ...]:
    alphabet = list(range(k)) + [UP]
    result = []
    for template in product(alphabet, repeat=d):
        if UP in template:
            result.append(_line_points(template, k))
    return tuple(result)


def enumerate_lines(k: int, d: int) -> List[PointSet]:
    """
    枚举 [k]^d 中的全部组合线

    Args:
        k: 字母表大小
        d: 维数

    Returns:
        k 点集合的列表，共 (k+1)^d − k^d 条
    """
    if k < 2 or d < 1:
        raise ValueError(f"要求 k ≥ 2 且 d ≥ 1: k={k}, d={d}")
    return list(_lines(k, d))


@lru_cache(maxsize=None)
def _geometric_lines(k: int, d: int) -> Tuple[PointSet, ...]:
    alphabet = list(range(k)) + [UP, DOWN]
    seen: Dict[PointSet, None] = {}
    for template in product(alphabet, repeat=d):
        wildcards = [cell for cell in template if cell in (UP, DOWN)]
        # 规范朝向：第一个通配坐标为 UP
        if not wildcards or wildcards[0] != UP:
            continue
        seen.setdefault(_line_points(template, k), None)
    return tuple(seen)


def enumerate_geometric_lines(k: int, d: int) -> List[PointSet]:
    """
    枚举 [k]^d 中的全部几何线（按点集去重）

    Args:
        k: 字母表大小
        d: 维数

    Returns:
        k 点集合的列表
    """
    if k < 2 or d < 1:
        raise ValueError(f"要求 k ≥ 2 且 d ≥ 1: k={k}, d={d}")
    return list(_geometric_lines(k, d))


def _space_templates(d: int, s: int, k: int):
    """坐标取固定值或类别 0..s−1；类别按首次出现的坐标排序（限制增长串）"""
    choices = list(range(k)) + [("class", c) for c in range(s)]
    for template in product(choices, repeat=d):
        classes = [cell[1] for cell in template if isinstance(cell, tuple)]
        order = []
        for c in classes:
            if c not in order:
                order.append(c)
        if order == list(range(s)):
            yield template


@lru_cache(maxsize=None)
def _spaces(k: int, d: int, s: int) -> Tuple[PointSet, ...]:
    seen: Dict[PointSet, None] = {}
    for template in _space_templates(d, s, k):
        points = []
        for values in product(range(k), repeat=s):
            points.append(tuple(
                values[cell[1]] if isinstance(cell, tuple) else cell
                for cell in template
            ))
        seen.setdefault(frozenset(points), None)
    return tuple(seen)


def enumerate_spaces(k: int, d: int, s: int) -> List[PointSet]:
    """
    枚举 [k]^d 中维数为 s 的全部组合子空间

    Args:
        k: 字母表大小
        d: 维数
        s: 子空间维数

    Returns:
        k^s 点集合的列表
    """
    if k < 2 or not 1 <= s <= d:
        raise ValueError(f"要求 k ≥ 2 且 1 ≤ s ≤ d: k={k}, d={d}, s={s}")
    return list(_spaces(k, d, s))


def _slab_partitions(k: int, d: int, slab_bound: int, block_bound: Optional[int]) -> List[Tuple[Block, ...]]:
    """
    按单个方向切成 k 个厚片（上界为 d−1 维的数），
    以及按两个方向切成 k² 块（上界为 d−2 维的数）
    """
    size = k ** d
    words = [unrank(i, k, d) for i in range(size)]
    partitions = []
    for axis in range(d):
        blocks = tuple(
            Block(tuple(i for i, w in enumerate(words) if w[axis] == value), slab_bound)
            for value in range(k)
        )
        partitions.append(blocks)
    if block_bound is not None and d >= 3:
        for a in range(d):
            for b in range(a + 1, d):
                blocks = tuple(
                    Block(tuple(i for i, w in enumerate(words) if w[a] == va and w[b] == vb), block_bound)
                    for va in range(k) for vb in range(k)
                )
                partitions.append(blocks)
    return partitions


def grid_hypergraph(point_sets: Sequence[PointSet], k: int, d: int,
                    partitions: Sequence[Sequence[Block]] = ()) -> ForbiddenHypergraph:
    """点集合列表转换为以混合进制编号为顶点的超图"""
    edges = [tuple(sorted(rank(w, k) for w in points)) for points in point_sets]
    return ForbiddenHypergraph.from_sets(k ** d, edges, partitions)


class GridRamsey:
    """[k]^d 上的 Ramsey 数计算器"""

    def __init__(self, solve: Callable[[ForbiddenHypergraph], SolveResult]):
        """
        初始化计算器

        Args:
            solve: 精确求解函数（通常为 SolverClient.solve）
        """
        self.solve = solve
        self._cache: Dict[Tuple, int] = {}
        self.witnesses: Dict[Tuple, List[Word]] = {}

    def _compute(self, key: Tuple, k: int, d: int, point_sets: Sequence[PointSet],
                 slab_bound: int, block_bound: Optional[int]) -> int:
        if key in self._cache:
            return self._cache[key]

        partitions = _slab_partitions(k, d, slab_bound, block_bound)
        hypergraph = grid_hypergraph(point_sets, k, d, partitions)
        logger.info(f"正在计算 {key}: {hypergraph.vertex_count} 个顶点, {hypergraph.edge_count} 条边")

        result = self.solve(hypergraph)
        if not result.exact:
            raise SolverBudgetExceeded(
                f"{key} 超出节点预算（已知下界 {result.optimum}，节点 {result.nodes_explored}）",
                best_known=result.optimum, nodes=result.nodes_explored)

        logger.debug(f"{key} = {result.optimum}，节点 {result.nodes_explored}")
        self._cache[key] = result.optimum
        self.witnesses[key] = [unrank(v, k, d) for v in result.witness]
        return result.optimum

    def dhj_number(self, d: int, k: int) -> int:
        """c_{d,k}：[k]^d 中不含组合线的最大子集"""
        if k < 2 or d < 0:
            raise ValueError(f"要求 k ≥ 2 且 d ≥ 0: d={d}, k={k}")
        if d == 0:
            return 1
        slab = self.dhj_number(d - 1, k)
        block = self.dhj_number(d - 2, k) if d >= 2 else None
        return self._compute(("dhj", d, k), k, d, enumerate_lines(k, d), slab, block)

    def moser_number(self, d: int, k: int) -> int:
        """c'_{d,k}：[k]^d 中不含几何线的最大子集"""
        if k < 2 or d < 0:
            raise ValueError(f"要求 k ≥ 2 且 d ≥ 0: d={d}, k={k}")
        if d == 0:
            return 1
        slab = self.moser_number(d - 1, k)
        block = self.moser_number(d - 2, k) if d >= 2 else None
        return self._compute(("moser", d, k), k, d, enumerate_geometric_lines(k, d), slab, block)

    def space_number(self, d: int, s: int, k: int) -> int:
        """c_{d,s,k}：[k]^d 中不含 s 维组合子空间的最大子集"""
        if k < 2 or d < 0 or s < 1:
            raise ValueError(f"要求 k ≥ 2, d ≥ 0, s ≥ 1: d={d}, s={s}, k={k}")
        if d == 0:
            return 1
        if s > d:
            return k ** d
        slab = self.space_number(d - 1, s, k)
        block = self.space_number(d - 2, s, k) if d >= 2 else None
        return self._compute(("space", d, s, k), k, d, enumerate_spaces(k, d, s), slab, block)
