"""
最大自由子集求解模块
把禁用族与基础集合转换为超图，调用求解后端求 G_𝒜(X) 与 r_k(n)
"""

from typing import Dict, List, Optional, Sequence, Tuple

from loguru import logger

from ..backends.solver_client import SolverClient
from ..exceptions import SolverBudgetExceeded
from ..models.hypergraph import Block, ForbiddenHypergraph, SolveResult
from ..models.sets import NaturalSet, PatternFamily, PatternKind
from .numtheory import first_friable
from .patterns import enumerate_instances


def build_hypergraph(family: PatternFamily, ground: NaturalSet,
                     partitions: Sequence[Sequence[Block]] = ()) -> Tuple[ForbiddenHypergraph, Dict[int, int]]:
    """
    由禁用族与基础集合构造超图

    顶点 i 对应 ground 的第 i 个元素（升序）。

    Returns:
        (超图, 顶点编号 -> 元素)
    """
    index = {x: i for i, x in enumerate(ground.elements)}
    edges = [tuple(index[x] for x in inst) for inst in enumerate_instances(family, ground)]
    labels = dict(enumerate(ground.elements))
    return ForbiddenHypergraph.from_sets(len(ground), edges, partitions), labels


def max_free(hypergraph: ForbiddenHypergraph, client: Optional[SolverClient] = None,
             hint: Optional[int] = None) -> SolveResult:
    """
    最大自由集（分支定界）

    Args:
        hypergraph: 禁用超图
        client: 求解客户端，缺省为单进程分支定界
        hint: 声称可达的下界（可选）

    Returns:
        SolveResult对象；超出预算时 proof_status 为 BUDGET_EXCEEDED
    """
    client = client or SolverClient()
    return client.solve(hypergraph, hint)


def exhaustive_max_free(hypergraph: ForbiddenHypergraph, cap: int = 24) -> SolveResult:
    """最大自由集（完全枚举，顶点数不超过 cap）"""
    return SolverClient(provider="exhaustive", oracle_cap=cap).solve(hypergraph)


def _require_exact(result: SolveResult, what: str) -> SolveResult:
    if not result.exact:
        raise SolverBudgetExceeded(
            f"{what} 超出节点预算（已知下界 {result.optimum}，节点 {result.nodes_explored}）",
            best_known=result.optimum, nodes=result.nodes_explored)
    return result


class PatternSolver:
    """禁用族上的 G_𝒜 与 r_k 计算器"""

    def __init__(self, client: Optional[SolverClient] = None):
        """
        初始化计算器

        Args:
            client: 求解客户端
        """
        self.client = client or SolverClient()
        self._g_cache: Dict[Tuple, SolveResult] = {}
        self._r_cache: Dict[Tuple[int, int], int] = {}

    def g_value_of(self, family: PatternFamily, ground: NaturalSet,
                   hint: Optional[int] = None) -> SolveResult:
        """
        任意基础集合上的 G_𝒜(X)

        Args:
            family: 禁用族
            ground: 基础集合
            hint: 声称可达的下界（可选）

        Returns:
            精确的 SolveResult，labels 把顶点映射回元素
        """
        key = (family, ground.elements)
        if key in self._g_cache:
            return self._g_cache[key]

        hypergraph, labels = build_hypergraph(family, ground)
        result = self.client.solve(hypergraph, hint)
        _require_exact(result, f"G_{family.label}")
        result.labels = labels
        self._g_cache[key] = result
        return result

    def g_value(self, family: PatternFamily, n: int) -> int:
        """
        G_𝒜([n])

        Args:
            family: 禁用族
            n: 区间上端

        Returns:
            精确值
        """
        if n < 1:
            raise ValueError(f"要求 n ≥ 1: {n}")
        if family.kind == PatternKind.AP:
            return self.r_value(family.k, n)
        return self.g_value_of(family, NaturalSet.interval(n)).optimum

    # ------------------------------------------------------------------
    # r_k(n)

    def _chunk_partition(self, k: int, n: int, size: int) -> Tuple[Block, ...]:
        """[n] 切成长度 size 的连续段，每段上界 r_k(段长)"""
        blocks = []
        for start in range(0, n, size):
            length = min(size, n - start)
            blocks.append(Block(tuple(range(start, start + length)), self.r_value(k, length)))
        return tuple(blocks)

    def _ap_partitions(self, k: int, n: int) -> List[Tuple[Block, ...]]:
        sizes = sorted({k, n // 2, n // 3, n // 4, 2 * k} - {0})
        return [self._chunk_partition(k, n, size) for size in sizes if size < n]

    def r_result(self, k: int, n: int) -> SolveResult:
        """r_k(n) 的完整求解结果（含见证集，元素从 1 开始）"""
        family = PatternFamily.ap(k)
        ground = NaturalSet.interval(n)
        partitions = self._ap_partitions(k, n) if n > k else []
        hypergraph, labels = build_hypergraph(family, ground, partitions)
        hint = self.r_value(k, n - 1) if n > 1 else None
        result = _require_exact(self.client.solve(hypergraph, hint), f"r_{k}({n})")
        result.labels = labels
        return result

    def r_value(self, k: int, n: int) -> int:
        """
        r_k(n)：[n] 中不含 k 项等差数列的最大子集规模

        Args:
            k: 等差数列长度
            n: 区间上端（n ≥ 0）

        Returns:
            精确值，r_k(0) = 0
        """
        if k < 2 or n < 0:
            raise ValueError(f"要求 k ≥ 2 且 n ≥ 0: k={k}, n={n}")
        if n < k:
            return n
        key = (k, n)
        if key not in self._r_cache:
            result = self.r_result(k, n)
            logger.debug(f"r_{k}({n}) = {result.optimum}，节点 {result.nodes_explored}")
            self._r_cache[key] = result.optimum
        return self._r_cache[key]

    def r_values(self, k: int, count: int) -> List[int]:
        """[r_k(0), r_k(1), …, r_k(count−1)]"""
        return [self.r_value(k, n) for n in range(count)]

    # ------------------------------------------------------------------
    # 判定

    def exists_free(self, family: PatternFamily, ground: NaturalSet, target: int,
                    partitions: Sequence[Sequence[Block]] = ()) -> Optional[List[int]]:
        """
        判定 ground 中是否存在规模 ≥ target 的自由集

        Returns:
            见证集（元素），不存在时为 None
        """
        hypergraph, labels = build_hypergraph(family, ground, partitions)
        witness, nodes = self.client.exists_free(hypergraph, target)
        logger.debug(f"判定 {family.label} 规模 ≥ {target}: {'存在' if witness else '不存在'}，节点 {nodes}")
        return None if witness is None else [labels[v] for v in witness]

    def consecutive_blocks(self, k: int, n: int) -> Tuple[Block, ...]:
        """[n] 中每 k 个连续数至多取 k−1 个"""
        blocks = []
        for start in range(0, n, k):
            length = min(k, n - start)
            blocks.append(Block(tuple(range(start, start + length)), min(length, k - 1)))
        return tuple(blocks)

    def certify_easy_ap_bound(self, k: int, n: int) -> bool:
        """
        验证 r_k(n) ≤ n − ⌊n/k⌋：不存在规模 n − ⌊n/k⌋ + 1 的无 k 项等差数列子集

        Returns:
            验证成立时为 True
        """
        target = n - n // k + 1
        witness = self.exists_free(PatternFamily.ap(k), NaturalSet.interval(n), target,
                                   [self.consecutive_blocks(k, n)])
        return witness is None

    def reaches_easy_ap_bound(self, k: int, n: int) -> Optional[List[int]]:
        """存在规模为 n − ⌊n/k⌋ 的无 k 项等差数列子集时返回见证集"""
        target = n - n // k
        return self.exists_free(PatternFamily.ap(k), NaturalSet.interval(n), target,
                                [self.consecutive_blocks(k, n)])

    # ------------------------------------------------------------------
    # 光滑数前缀

    def friable_prefix_value(self, d: int, i: int) -> int:
        """R_i：{s_1, …, s_{i+1}} 中不含公比为 d-光滑数的3项等比数列的最大子集"""
        if d < 1 or i < 0:
            raise ValueError(f"要求 d ≥ 1 且 i ≥ 0: d={d}, i={i}")
        prefix = first_friable(d, i + 1)
        return self.g_value_of(PatternFamily.gp_friable3(d), NaturalSet.of(prefix)).optimum
