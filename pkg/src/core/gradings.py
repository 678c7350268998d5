"""
分级构造与验证模块
构造 [n] 的四种分级，检查分级条件 (1)–(6)，导出划分与计数恒等式
"""

from fractions import Fraction
from itertools import product
from math import gcd, prod
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from loguru import logger

from ..exceptions import GradingError
from ..models.grading import Cell, ConditionResult, Grading, GradingKind, GradingReport, PartitionView
from ..models.sets import NaturalSet, PatternFamily
from .numtheory import Primorial, first_friable, primes, primorial

ALL_CONDITIONS = (1, 2, 3, 4, 5, 6)


def _singletons(n: int) -> List[Cell]:
    return [Cell((b,), 0) for b in range(1, n + 1)]


def _template(exponent_bound: int, d: int) -> List[int]:
    """a_d = {∏ p_i^{e_i} : 0 ≤ e_i < exponent_bound}"""
    base = primes(d)
    values = [prod(p ** e for p, e in zip(base, exps))
              for exps in product(range(exponent_bound), repeat=d)]
    return sorted(values)


def _finish(n: int, levels: List[List[Cell]], kind: GradingKind, parameter: int,
            name: str, **meta) -> Grading:
    for level in levels:
        level.sort(key=lambda cell: cell.elements)
    grading = Grading(n=n, levels=levels, kind=kind, parameter=parameter, name=name, meta=meta)
    logger.debug(f"分级 {name}(n={n}) 层大小: {level_sizes(grading)}")
    return grading


def build_gp_grading(n: int, k: int, max_level: Optional[int] = None) -> Grading:
    """
    等比数列的多尺度分级（扩张 k）

    𝓕_d = { 2^{k(ℓ−1)} b ∗ a_d : 2^{k(ℓ−1)} P_d^{k−1} ≤ n, b ≤ n/(P_d^{k−1} 2^{k(ℓ−1)}), (b, P_d) = 1 }

    Args:
        n: 区间上端
        k: 等比数列长度
        max_level: 最高层（1 为只取第一层）

    Returns:
        Grading对象
    """
    if n < 1 or k < 3:
        raise ValueError(f"要求 n ≥ 1 且 k ≥ 3: n={n}, k={k}")

    levels = [_singletons(n)]
    d = 1
    while primorial(d) ** (k - 1) <= n and (max_level is None or d <= max_level):
        p_d = Primorial.of(d)
        base = p_d.value ** (k - 1)
        template = _template(k, d)
        cells = []
        ell = 1
        while 2 ** (k * (ell - 1)) * base <= n:
            scale = 2 ** (k * (ell - 1))
            for b in range(1, n // (base * scale) + 1):
                if not p_d.coprime(b):
                    continue
                elements = tuple(scale * b * a for a in template)
                if elements[-1] <= n:
                    cells.append(Cell(elements, d, (('b', b), ('ell', ell), ('d', d))))
            ell += 1
        levels.append(cells)
        d += 1

    return _finish(n, levels, GradingKind.EXPANSION, k, "gp", k=k)


def build_brown_grading(n: int, k: int) -> Grading:
    """单尺度分级：𝓕_1 = { a ∗ {1, 2, …, 2^{k−1}} : a 为奇数, a ≤ n/2^{k−1} }"""
    if n < 1 or k < 3:
        raise ValueError(f"要求 n ≥ 1 且 k ≥ 3: n={n}, k={k}")
    top = 2 ** (k - 1)
    cells = [Cell(tuple(a * 2 ** i for i in range(k)), 1, (('b', a),))
             for a in range(1, n // top + 1, 2)]
    levels = [_singletons(n)]
    if cells:
        levels.append(cells)
    return _finish(n, levels, GradingKind.EXPANSION, k, "brown", k=k)


def build_prime_power_grading(n: int, p: int, k: int) -> Grading:
    """
    公比为 p 的幂的分级（增长 1）

    𝓕_i = { b ∗ {1, p, …, p^i} : (p, b) = 1, b ≤ n/p^i }

    Args:
        n: 区间上端
        p: 素数
        k: 等比数列长度（记录在 meta 中）

    Returns:
        Grading对象
    """
    if n < 1:
        raise ValueError(f"要求 n ≥ 1: {n}")
    levels = [_singletons(n)]
    i = 1
    while p ** i <= n:
        cells = [Cell(tuple(b * p ** j for j in range(i + 1)), i, (('b', b),))
                 for b in range(1, n // p ** i + 1) if b % p]
        levels.append(cells)
        i += 1
    return _finish(n, levels, GradingKind.GROWTH, 1, "prime-power", p=p, k=k)


def build_square_grading(n: int) -> Grading:
    """
    几何正方形的分级（扩张 2）

    𝓕_d = { b 4^i ∗ a_d : (b, P_d) = 1, b ≤ n/(P_d 4^i) }，a_d 为前 d 个素数的无平方因子积
    """
    if n < 1:
        raise ValueError(f"要求 n ≥ 1: {n}")
    levels = [_singletons(n)]
    d = 1
    while primorial(d) <= n:
        p_d = Primorial.of(d)
        template = _template(2, d)
        cells = []
        i = 0
        while p_d.value * 4 ** i <= n:
            scale = 4 ** i
            for b in range(1, n // (p_d.value * scale) + 1):
                if p_d.coprime(b):
                    cells.append(Cell(tuple(scale * b * a for a in template), d,
                                      (('b', b), ('i', i), ('d', d))))
            i += 1
        levels.append(cells)
        d += 1
    return _finish(n, levels, GradingKind.EXPANSION, 2, "square")


def build_friable_grading(n: int, d: int) -> Grading:
    """
    光滑数前缀的分级（增长 1）

    𝓕_i = { b ∗ {s_1, …, s_{i+1}} : (b, P_d) = 1, b ≤ n/s_{i+1} }
    """
    if n < 1 or d < 1:
        raise ValueError(f"要求 n ≥ 1 且 d ≥ 1: n={n}, d={d}")
    p_d = Primorial.of(d)
    levels = [_singletons(n)]
    s = first_friable(d, 2)
    i = 1
    while s[i] <= n:
        prefix = s[:i + 1]
        cells = [Cell(tuple(b * x for x in prefix), i, (('b', b),))
                 for b in range(1, n // s[i] + 1) if p_d.coprime(b)]
        levels.append(cells)
        i += 1
        if len(s) <= i:
            s = first_friable(d, 2 * len(s))
    return _finish(n, levels, GradingKind.GROWTH, 1, "friable", d=d)


# ----------------------------------------------------------------------
# 条件检查


def _owner_map(cells: Sequence[Cell]) -> Dict[int, int]:
    owner = {}
    for idx, cell in enumerate(cells):
        for x in cell.elements:
            owner.setdefault(x, idx)
    return owner


def _check_singletons(g: Grading) -> ConditionResult:
    expected = [(b,) for b in range(1, g.n + 1)]
    actual = sorted(cell.elements for cell in g.level(0))
    if actual == expected:
        return ConditionResult(1, True)
    extra = sorted(set(actual) - set(expected))
    missing = sorted(set(expected) - set(actual))
    return ConditionResult(1, False, (extra[:1], missing[:1]), "𝓕_0 不是 [n] 的全部单点集")


def _check_disjoint(g: Grading) -> ConditionResult:
    for i, cells in enumerate(g.levels):
        owner: Dict[int, Cell] = {}
        for cell in cells:
            if cell.elements[0] < 1 or cell.elements[-1] > g.n:
                return ConditionResult(2, False, (cell.elements, None), f"第{i}层单元越出 [1, {g.n}]")
            for x in cell.elements:
                if x in owner:
                    return ConditionResult(2, False, (owner[x].elements, cell.elements), f"第{i}层单元相交")
                owner[x] = cell
    return ConditionResult(2, True)


def _check_nested(g: Grading) -> ConditionResult:
    for i in range(g.depth):
        upper = g.level(i + 1)
        owner = _owner_map(upper)
        for cell in g.level(i):
            hit = {owner.get(x) for x in cell.elements}
            if hit - {None} and len(hit) > 1:
                other = upper[min(h for h in hit if h is not None)]
                return ConditionResult(3, False, (cell.elements, other.elements),
                                       f"第{i}层单元与第{i + 1}层单元既不包含也不相交")
    return ConditionResult(3, True)


def _primitive(elements: Tuple[int, ...]) -> Tuple[int, ...]:
    common = 0
    for x in elements:
        common = gcd(common, x)
    return tuple(x // common for x in elements)


def _check_ramsey(g: Grading, family: Optional[PatternFamily], check_ramsey: bool, solver) -> ConditionResult:
    if family is None:
        return ConditionResult(4, None, detail="未指定禁用族")
    for i, cells in enumerate(g.levels):
        if len(cells) < 2:
            continue
        if check_ramsey:
            if solver is None:
                raise ValueError("check_ramsey 需要提供求解器")
            first = cells[0]
            value = solver.g_value_of(family, NaturalSet.of(first.elements, g.n)).optimum
            for cell in cells[1:]:
                other = solver.g_value_of(family, NaturalSet.of(cell.elements, g.n)).optimum
                if other != value:
                    return ConditionResult(4, False, (first.elements, cell.elements),
                                           f"第{i}层 G 值不同: {value} ≠ {other}")
        else:
            shape = _primitive(cells[0].elements)
            for cell in cells[1:]:
                if _primitive(cell.elements) != shape:
                    return ConditionResult(4, False, (cells[0].elements, cell.elements),
                                           f"第{i}层单元不是同一模板的伸缩")
    return ConditionResult(4, True)


def _check_expansion(g: Grading) -> ConditionResult:
    if g.kind != GradingKind.EXPANSION:
        return ConditionResult(5, None, detail="增长型分级不适用")
    k = g.parameter
    for i in range(g.depth):
        lower = g.level(i)
        owner = _owner_map(lower)
        for cell in g.level(i + 1):
            members = set(cell.elements)
            parts = {owner.get(x) for x in cell.elements}
            if None in parts or len(parts) != k or any(not set(lower[p].elements) <= members for p in parts):
                return ConditionResult(5, False, (cell.elements, None),
                                       f"第{i + 1}层单元不是恰好 {k} 个第{i}层单元的不交并")
    return ConditionResult(5, True)


def _check_growth(g: Grading) -> ConditionResult:
    if g.kind != GradingKind.GROWTH:
        return ConditionResult(6, None, detail="扩张型分级不适用")
    r = g.parameter
    covered: set = set()
    for i in range(g.depth):
        lower = g.level(i)
        owner = _owner_map(lower)
        if i >= 1:
            covered.update(x for cell in lower for x in cell.elements)
        for cell in g.level(i + 1):
            members = set(cell.elements)
            found = False
            for idx in sorted({owner[x] for x in cell.elements if x in owner}):
                base = set(lower[idx].elements)
                extra = members - base
                if base <= members and len(extra) == r and not extra & covered:
                    found = True
                    break
            if not found:
                return ConditionResult(6, False, (cell.elements, None),
                                       f"第{i + 1}层单元不是第{i}层单元加 {r} 个新元素")
    return ConditionResult(6, True)


def verify_grading(g: Grading, family: Optional[PatternFamily] = None, check_ramsey: bool = False,
                   solver=None, conditions: Iterable[int] = ALL_CONDITIONS) -> GradingReport:
    """
    检查分级条件

    Args:
        g: 分级
        family: 禁用族（条件 (4) 使用）
        check_ramsey: 条件 (4) 是否对每个单元求解 G_𝒜（仅适合小 n）
        solver: PatternSolver，check_ramsey 时必需
        conditions: 需要检查的条件编号

    Returns:
        GradingReport对象，失败附带反例
    """
    checks = {
        1: lambda: _check_singletons(g),
        2: lambda: _check_disjoint(g),
        3: lambda: _check_nested(g),
        4: lambda: _check_ramsey(g, family, check_ramsey, solver),
        5: lambda: _check_expansion(g),
        6: lambda: _check_growth(g),
    }
    report = GradingReport()
    for condition in sorted(set(conditions)):
        if condition not in checks:
            raise ValueError(f"不支持的分级条件: {condition}")
        report.results[condition] = checks[condition]()
    for failure in report.failures():
        logger.debug(f"条件 ({failure.condition}) 不满足: {failure.detail}")
    return report


def partition_from_grading(g: Grading) -> PartitionView:
    """
    由分级导出划分：每个 b 取包含它的最高层单元 A_b

    Raises:
        GradingError: 分级不满足条件 (1)–(3)
    """
    report = verify_grading(g, conditions=(1, 2, 3))
    if not report.passed:
        failure = report.failures()[0]
        raise GradingError(f"分级不满足条件 ({failure.condition}): {failure.detail}")

    assigned: Dict[int, Tuple[Tuple[int, ...], int]] = {}
    for i in range(g.depth, -1, -1):
        for cell in g.level(i):
            for x in cell.elements:
                if x not in assigned:
                    assigned[x] = (cell.elements, i)

    unique = sorted(set(assigned.values()))
    alpha = [0] * (g.depth + 1)
    for _, level in unique:
        alpha[level] += 1
    return PartitionView(
        parts=[elements for elements, _ in unique],
        part_levels=[level for _, level in unique],
        alpha=alpha,
    )


def level_sizes(g: Grading) -> List[int]:
    """|𝓕_0|, |𝓕_1|, …"""
    return [len(level) for level in g.levels]


def algebra_identity_check(alpha: Sequence[int], R: Sequence, k: int,
                           kind: GradingKind = GradingKind.EXPANSION) -> bool:
    """
    精确检查计数恒等式

    扩张 k:  Σ α_i R_i = R_0 Σ k^i α_i − Σ_{i≥1} (k R_{i−1} − R_i) Σ_{j≥i} k^{j−i} α_j
    增长 r:  Σ α_i R_i = Σ_j α_j (R_0 + j r) − Σ_{i≥1} (r + R_{i−1} − R_i) Σ_{j≥i} α_j
    """
    if len(alpha) != len(R):
        raise GradingError(f"α 与 R 长度不一致: {len(alpha)} ≠ {len(R)}")
    if not alpha:
        return True
    alpha = [Fraction(a) for a in alpha]
    R = [Fraction(v) for v in R]
    size = len(alpha)
    lhs = sum(a * v for a, v in zip(alpha, R))

    if kind == GradingKind.EXPANSION:
        rhs = R[0] * sum(k ** i * alpha[i] for i in range(size))
        for i in range(1, size):
            tail = sum(k ** (j - i) * alpha[j] for j in range(i, size))
            rhs -= (k * R[i - 1] - R[i]) * tail
    else:
        rhs = sum(alpha[j] * (R[0] + j * k) for j in range(size))
        for i in range(1, size):
            tail = sum(alpha[j] for j in range(i, size))
            rhs -= (k + R[i - 1] - R[i]) * tail
    return lhs == rhs


def _coprime_count(m: int, d: int) -> int:
    """[1, m] 中与 P_d 互素的整数个数（容斥）"""
    total = 0
    base = primes(d)
    for mask in range(1 << d):
        divisor = prod(p for j, p in enumerate(base) if mask >> j & 1)
        sign = -1 if bin(mask).count("1") % 2 else 1
        total += sign * (m // divisor)
    return total


def gp_level_count(n: int, k: int, d: int, max_scale: Optional[int] = None) -> int:
    """
    不构造单元直接计算 build_gp_grading(n, k) 的 |𝓕_d|

    Args:
        n: 区间上端
        k: 等比数列长度
        d: 层号（≥ 1）
        max_scale: ℓ 的上限（可选，1 为单尺度）

    Returns:
        第 d 层的单元数
    """
    if d < 1:
        raise ValueError(f"层号需 d ≥ 1: {d}")
    base = primorial(d) ** (k - 1)
    count = 0
    ell = 1
    while 2 ** (k * (ell - 1)) * base <= n and (max_scale is None or ell <= max_scale):
        count += _coprime_count(n // (base * 2 ** (k * (ell - 1))), d)
        ell += 1
    return count
