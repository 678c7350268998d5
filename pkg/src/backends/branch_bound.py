"""
分支定界求解器
超图最大自由集（不包含任何整条边的最大顶点集）的精确搜索
"""

import asyncio
from concurrent.futures import ProcessPoolExecutor
from typing import List, Optional, Sequence, Tuple

from loguru import logger

from ..exceptions import SolverBudgetExceeded
from ..models.hypergraph import ForbiddenHypergraph, ProofStatus, SolveResult

# 拆分子树前的热启动节点数
WARM_START_NODES = 5000


class _BudgetExhausted(Exception):
    pass


class _TargetReached(Exception):
    pass


def _bits(mask: int) -> Tuple[int, ...]:
    out = []
    v = 0
    while mask:
        if mask & 1:
            out.append(v)
        mask >>= 1
        v += 1
    return tuple(out)


class BranchAndBoundSearch:
    """
    深度优先分支定界

    顶点按边度数降序（同度按编号）分支，先“保留”后“删除”。
    上界取以下各项的最小值：
      - 已保留 + 未决 − 互不相交的存活边的贪心个数（每条至少删一个未决顶点）
      - 每个块划分上 Σ min(块内可用数, 块上界, 块内可用数 − 块内贪心包装数)
    """

    def __init__(self, hypergraph: ForbiddenHypergraph, node_budget: int):
        self.hypergraph = hypergraph
        self.node_budget = node_budget
        n = hypergraph.vertex_count
        self.full = (1 << n) - 1

        masks = [sum(1 << v for v in edge) for edge in hypergraph.edges]
        self.edges = sorted(masks, key=lambda m: (m.bit_count(), m))
        self.incident: List[List[int]] = [[] for _ in range(n)]
        for m in self.edges:
            for v in _bits(m):
                self.incident[v].append(m)

        degrees = hypergraph.degrees()
        self.order = sorted(range(n), key=lambda v: (-degrees[v], v))
        self.greedy_order = sorted(range(n), key=lambda v: (degrees[v], v))

        self.partitions = []
        for partition in hypergraph.partitions:
            blocks = []
            for block in partition:
                bm = sum(1 << v for v in block.vertices)
                inner = [m for m in self.edges if m & bm == m]
                blocks.append((bm, block.bound, inner))
            self.partitions.append(blocks)

        self.nodes = 0
        self.best_size = -1
        self.best_mask: Optional[int] = None
        self.stop_at_first = False

    # ------------------------------------------------------------------
    # 基本操作

    def keep(self, v: int, kept: int, removed: int) -> Optional[Tuple[int, int]]:
        """保留顶点 v 并传播：某条边只剩一个未保留顶点时该顶点被强制删除"""
        kept |= 1 << v
        forced = 0
        for m in self.incident[v]:
            if m & removed:
                continue
            rest = m & ~kept
            if rest == 0:
                return None
            if rest & (rest - 1) == 0:
                forced |= rest
        return kept, removed | forced

    def greedy(self) -> int:
        """按度数升序贪心构造初始自由集"""
        kept, removed = 0, 0
        for v in self.greedy_order:
            if (kept | removed) >> v & 1:
                continue
            state = self.keep(v, kept, removed)
            if state is None:
                removed |= 1 << v
            else:
                kept, removed = state
        return kept

    def _packing(self, edges: Sequence[int], removed: int, undecided: int) -> Tuple[int, bool]:
        used = 0
        count = 0
        alive = False
        for m in edges:
            if m & removed:
                continue
            alive = True
            part = m & undecided
            if part & used == 0:
                used |= part
                count += 1
        return count, alive

    def upper_bound(self, kept: int, removed: int) -> Tuple[int, bool]:
        """
        计算上界

        Returns:
            (上界, 是否仍有存活边)
        """
        undecided = self.full & ~(kept | removed)
        available = kept | undecided
        packing, alive = self._packing(self.edges, removed, undecided)
        bound = available.bit_count() - packing
        if not alive or bound <= self.best_size:
            return bound, alive

        for blocks in self.partitions:
            total = 0
            for bm, cap, inner in blocks:
                count = (available & bm).bit_count()
                if inner:
                    count -= self._packing(inner, removed, undecided)[0]
                total += cap if count > cap else count
            if total < bound:
                bound = total
                if bound <= self.best_size:
                    break
        return bound, alive

    def _record(self, mask: int) -> None:
        size = mask.bit_count()
        if size > self.best_size:
            self.best_size = size
            self.best_mask = mask
            if self.stop_at_first:
                raise _TargetReached()

    # ------------------------------------------------------------------
    # 搜索

    def _dfs(self, kept: int, removed: int, index: int) -> None:
        self.nodes += 1
        if self.nodes > self.node_budget:
            raise _BudgetExhausted()

        decided = kept | removed
        while index < len(self.order) and decided >> self.order[index] & 1:
            index += 1
        if index == len(self.order):
            self._record(kept)
            return

        bound, alive = self.upper_bound(kept, removed)
        if bound <= self.best_size:
            return
        if not alive:
            # 没有存活边：全部未决顶点都可保留
            self._record(self.full & ~removed)
            return

        v = self.order[index]
        state = self.keep(v, kept, removed)
        if state is not None:
            self._dfs(state[0], state[1], index + 1)
        self._dfs(kept, removed | (1 << v), index + 1)

    def run(self, kept: int = 0, removed: int = 0, index: int = 0) -> bool:
        """
        从给定状态搜索

        Returns:
            是否在预算内完成
        """
        try:
            self._dfs(kept, removed, index)
        except _BudgetExhausted:
            return False
        except _TargetReached:
            return True
        return True

    def split(self, depth: int) -> List[Tuple[int, int, int]]:
        """按顶点顺序展开前 depth 个决策，得到确定的子树列表"""
        frontier = [(0, 0, 0)]
        for _ in range(depth):
            nxt = []
            for kept, removed, index in frontier:
                decided = kept | removed
                while index < len(self.order) and decided >> self.order[index] & 1:
                    index += 1
                if index == len(self.order):
                    nxt.append((kept, removed, index))
                    continue
                v = self.order[index]
                state = self.keep(v, kept, removed)
                if state is not None:
                    nxt.append((state[0], state[1], index + 1))
                nxt.append((kept, removed | (1 << v), index + 1))
            frontier = nxt
        return frontier


def _solve_subtree(task) -> Tuple[int, Optional[Tuple[int, ...]], int, bool]:
    """进程池工作函数：求解一个子树，只报告严格优于起始下界的解"""
    hypergraph, node_budget, start_best, kept, removed, index = task
    search = BranchAndBoundSearch(hypergraph, node_budget)
    search.best_size = start_best
    finished = search.run(kept, removed, index)
    witness = _bits(search.best_mask) if search.best_mask is not None else None
    return search.best_size, witness, search.nodes, finished


def _merge(results, start_best: int, start_witness: Tuple[int, ...]):
    """按 (规模, 字典序最小见证集) 合并子树结果"""
    best_size, best_witness = start_best, start_witness
    nodes, finished = 0, True
    for size, witness, count, done in results:
        nodes += count
        finished = finished and done
        if witness is None:
            continue
        if size > best_size or (size == best_size and (best_witness is None or witness < best_witness)):
            best_size, best_witness = size, witness
    return best_size, best_witness, nodes, finished


class BranchBoundSolver:
    """分支定界求解器（可并行拆分根节点）"""

    def __init__(self,
                 node_budget: int = 10 ** 9,
                 workers: int = 1,
                 split_depth: int = 4,
                 parallel_min_vertices: int = 48):
        """
        初始化求解器

        Args:
            node_budget: 节点预算
            workers: 并行进程数
            split_depth: 根节点拆分深度
            parallel_min_vertices: 顶点数不少于该值时才拆分
        """
        self.node_budget = node_budget
        self.workers = max(1, workers)
        self.split_depth = split_depth
        self.parallel_min_vertices = parallel_min_vertices

    async def _run_subtrees(self, tasks: list, max_concurrent: int) -> list:
        """并发求解子树，结果顺序与任务顺序一致"""
        semaphore = asyncio.Semaphore(max_concurrent)
        loop = asyncio.get_running_loop()

        with ProcessPoolExecutor(max_workers=max_concurrent) as pool:
            async def solve_with_limit(task):
                async with semaphore:
                    return await loop.run_in_executor(pool, _solve_subtree, task)

            return await asyncio.gather(*(solve_with_limit(t) for t in tasks))

    def _search(self, hypergraph: ForbiddenHypergraph, floor: int) -> SolveResult:
        """floor 为已知可达下界减一（无提示时为 −1）"""
        root = BranchAndBoundSearch(hypergraph, self.node_budget)
        greedy_mask = root.greedy()
        root.best_size = greedy_mask.bit_count()
        root.best_mask = greedy_mask

        depth = self.split_depth if hypergraph.vertex_count >= self.parallel_min_vertices else 0
        if depth == 0:
            if floor > root.best_size:
                root.best_size, root.best_mask = floor, None
            finished = root.run()
            witness = _bits(root.best_mask) if root.best_mask is not None else None
            return self._result(root.best_size, witness, root.nodes, finished)

        # 热启动：有限节点的顺序搜索，改进所有子树共享的起始下界
        warm = BranchAndBoundSearch(hypergraph, WARM_START_NODES)
        warm.best_size, warm.best_mask = root.best_size, root.best_mask
        warm.run()
        start_best, start_mask = warm.best_size, warm.best_mask
        start_witness = _bits(start_mask)
        if floor > start_best:
            start_best, start_witness = floor, None

        subtrees = root.split(depth)
        tasks = [(hypergraph, self.node_budget, start_best, k, r, i) for k, r, i in subtrees]
        logger.debug(f"拆分为 {len(tasks)} 个子树，起始下界 {start_best}，并行数 {self.workers}")

        if self.workers == 1:
            results = [_solve_subtree(task) for task in tasks]
        else:
            results = asyncio.run(self._run_subtrees(tasks, self.workers))

        size, witness, nodes, finished = _merge(results, start_best, start_witness)
        nodes += warm.nodes
        finished = finished and nodes <= self.node_budget
        return self._result(size, witness, nodes, finished)

    @staticmethod
    def _result(size: int, witness: Optional[Tuple[int, ...]], nodes: int, finished: bool) -> SolveResult:
        return SolveResult(
            optimum=size if witness is not None else -1,
            witness=witness or (),
            nodes_explored=nodes,
            proof_status=ProofStatus.EXACT if finished else ProofStatus.BUDGET_EXCEEDED,
        )

    def solve(self, hypergraph: ForbiddenHypergraph, hint: Optional[int] = None) -> SolveResult:
        """
        求最大自由集

        Args:
            hypergraph: 禁用超图
            hint: 声称可达的下界；达不到时自动去掉提示重算

        Returns:
            SolveResult对象
        """
        if hint is not None and hint > 0:
            result = self._search(hypergraph, hint - 1)
            if result.optimum >= hint:
                return result
            logger.debug(f"提示下界 {hint} 未达到，重新搜索")
        result = self._search(hypergraph, -1)
        if result.optimum < 0:
            result.optimum = 0
        return result

    def exists_free(self, hypergraph: ForbiddenHypergraph, target: int) -> Tuple[Optional[Tuple[int, ...]], int]:
        """
        判定是否存在规模 ≥ target 的自由集

        Returns:
            (见证集或 None, 节点数)
        """
        search = BranchAndBoundSearch(hypergraph, self.node_budget)
        greedy_mask = search.greedy()
        if greedy_mask.bit_count() >= target:
            return _bits(greedy_mask), 0
        search.best_size = target - 1
        search.stop_at_first = True
        finished = search.run()
        if search.best_mask is not None:
            return _bits(search.best_mask), search.nodes
        if not finished:
            raise SolverBudgetExceeded(f"判定规模 ≥ {target} 时超出节点预算", nodes=search.nodes)
        return None, search.nodes
