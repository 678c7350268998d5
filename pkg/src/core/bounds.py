"""
上界计算模块
定理 1（扩张型）与定理 2（增长型）的精确有理数求值、各推论的渐近界、
有限 n 的分级界，以及 r_k(n) < n − ⌊n/k⌋ 的阈值搜索
"""

from fractions import Fraction
from math import ceil, floor
from typing import Callable, List, Optional, Sequence

from loguru import logger

from ..exceptions import BoundInputError
from ..models.grading import Grading, GradingKind
from ..models.records import BoundReport, BoundTerm, Quantity, TableFile, ThresholdResult
from ..models.sets import NaturalSet, PatternFamily
from .gradings import build_brown_grading, gp_level_count, level_sizes
from .numtheory import first_friable, primorial, primorial_phi

UP = "UP"
DOWN = "DOWN"


def decimal_render(value: Fraction, digits: int = 6, direction: str = UP) -> str:
    """
    有理数的定点小数表示，按指定方向舍入

    Args:
        value: 有理数
        digits: 小数位数（≥ 1）
        direction: UP 向上取整（上界仍然成立），DOWN 向下取整

    Returns:
        恰好 digits 位小数的字符串
    """
    if digits < 1:
        raise ValueError(f"小数位数需 ≥ 1: {digits}")
    if direction not in (UP, DOWN):
        raise ValueError(f"不支持的舍入方向: {direction}")

    scale = 10 ** digits
    scaled = Fraction(value) * scale
    q = ceil(scaled) if direction == UP else floor(scaled)
    sign = "-" if q < 0 else ""
    whole, frac = divmod(abs(q), scale)
    return f"{sign}{whole}.{frac:0{digits}d}"


def _report(terms: List[BoundTerm], depth: int, name: str, digits: int,
            integer_form: Optional[int] = None) -> BoundReport:
    value = 1 - sum((t.contribution for t in terms), Fraction(0))
    return BoundReport(
        value=value,
        terms=terms,
        depth=depth,
        decimal=decimal_render(value, digits, UP),
        integer_form=integer_form,
        name=name,
    )


def _check_lengths(level_sizes: Sequence[int], R: Sequence[int]) -> None:
    if len(level_sizes) != len(R):
        raise BoundInputError(f"层大小与 R 的长度不一致: {len(level_sizes)} ≠ {len(R)}")
    if not level_sizes:
        raise BoundInputError("层大小列表为空")


# ----------------------------------------------------------------------
# 有限 n 的定理界


def theorem1_bound(n: int, level_sizes: Sequence[int], R: Sequence[int], k: int,
                   digits: int = 6) -> BoundReport:
    """
    扩张 k 分级的界：G/n ≤ 1 − Σ_{i≥1} (k R_{i−1} − R_i) |𝓕_i| / n

    Args:
        n: 区间上端
        level_sizes: |𝓕_0|, |𝓕_1|, …
        R: R_0, R_1, …（R_i ≥ G_𝒜(f_i)）
        k: 扩张数

    Returns:
        BoundReport对象，integer_form 为 n − Σ (k R_{i−1} − R_i) |𝓕_i|
    """
    _check_lengths(level_sizes, R)
    if k < 2:
        raise BoundInputError(f"扩张数需 k ≥ 2: {k}")
    terms = []
    removed = 0
    for i in range(1, len(R)):
        coefficient = k * R[i - 1] - R[i]
        weight = Fraction(level_sizes[i], n)
        terms.append(BoundTerm(i, coefficient, weight, coefficient * weight))
        removed += coefficient * level_sizes[i]
    return _report(terms, len(R) - 1, f"theorem1(n={n},k={k})", digits, n - removed)


def theorem2_bound(n: int, level_sizes: Sequence[int], R: Sequence[int], r: int,
                   digits: int = 6) -> BoundReport:
    """
    增长 r 分级的界：G/n ≤ 1 − Σ_{i≥1} (r + R_{i−1} − R_i) |𝓕_i| / n

    Args:
        n: 区间上端
        level_sizes: |𝓕_0|, |𝓕_1|, …
        R: R_0, R_1, …
        r: 增长数

    Returns:
        BoundReport对象
    """
    _check_lengths(level_sizes, R)
    if r < 1:
        raise BoundInputError(f"增长数需 r ≥ 1: {r}")
    terms = []
    removed = 0
    for i in range(1, len(R)):
        coefficient = r + R[i - 1] - R[i]
        weight = Fraction(level_sizes[i], n)
        terms.append(BoundTerm(i, coefficient, weight, coefficient * weight))
        removed += coefficient * level_sizes[i]
    return _report(terms, len(R) - 1, f"theorem2(n={n},r={r})", digits, n - removed)


def cell_values(grading: Grading, family: PatternFamily, solver) -> List[int]:
    """每层取第一个单元求 G_𝒜，作为 R_i（条件 (4) 保证同层相等）"""
    values = []
    for i, level in enumerate(grading.levels):
        if not level:
            raise BoundInputError(f"第{i}层为空，无法取代表单元")
        cell = level[0]
        values.append(solver.g_value_of(family, NaturalSet.of(cell.elements, grading.n)).optimum)
    return values


def finite_theorem_bound(grading: Grading, family: PatternFamily, solver, digits: int = 6) -> BoundReport:
    """
    有限 n 的分级界，R_i 由求解器在代表单元上精确计算

    Args:
        grading: 分级
        family: 禁用族
        solver: PatternSolver

    Returns:
        BoundReport对象
    """
    R = cell_values(grading, family, solver)
    sizes = level_sizes(grading)
    if grading.kind == GradingKind.EXPANSION:
        report = theorem1_bound(grading.n, sizes, R, grading.parameter, digits)
    else:
        report = theorem2_bound(grading.n, sizes, R, grading.parameter, digits)
    report.name = f"{grading.name}/{family.label}(n={grading.n})"
    return report


def brown_bound(n: int, k: int, digits: int = 6) -> BoundReport:
    """单尺度分级的界：1 − ⌊n/2^k + 1/2⌋ / n"""
    sizes = level_sizes(build_brown_grading(n, k))
    R = [1, k - 1][:len(sizes)]
    report = theorem1_bound(n, sizes, R, k, digits)
    report.name = f"brown(n={n},k={k})"
    return report


def riddell_bound(n: int, k: int, digits: int = 6) -> BoundReport:
    """多尺度第一层的界，层大小按公式计数，适合大 n"""
    size = gp_level_count(n, k, 1) if 2 ** (k - 1) <= n else 0
    report = theorem1_bound(n, [n, size], [1, k - 1], k, digits)
    report.name = f"riddell(n={n},k={k})"
    return report


# ----------------------------------------------------------------------
# 渐近界


def resolve_table_values(table: TableFile, quantity_for: Callable[[int], Quantity],
                         depth: Optional[int] = None) -> List[int]:
    """
    从数值表取 d = 0..depth 的值

    只使用精确值或上界记录，不使用下界。depth 缺省为精确记录的最长连续前缀。

    Args:
        table: 数值表
        quantity_for: d -> Quantity
        depth: 截断深度

    Returns:
        [c_0, c_1, …, c_depth]
    """
    if depth is None:
        depth = -1
        while table.exact(quantity_for(depth + 1)) is not None:
            depth += 1
        if depth < 0:
            raise BoundInputError(f"数值表缺少 {quantity_for(0).label}")
    if depth < 0:
        raise BoundInputError(f"截断深度不能为负: {depth}")

    values = []
    for d in range(depth + 1):
        quantity = quantity_for(d)
        record = table.upper(quantity)
        if record is None:
            raise BoundInputError(f"数值表缺少 {quantity.label} 的精确值或上界")
        values.append(record.value)
    return values


def _expansion_asymptotic(values: Sequence[int], k: int, weight: Callable[[int], Fraction],
                          name: str, digits: int) -> BoundReport:
    terms = []
    for d in range(1, len(values)):
        coefficient = k * values[d - 1] - values[d]
        if coefficient < 0:
            logger.warning(f"{name} 第{d}项系数为负: {coefficient}")
        w = weight(d)
        terms.append(BoundTerm(d, coefficient, w, coefficient * w))
    return _report(terms, len(values) - 1, name, digits)


def _gp_weight(k: int) -> Callable[[int], Fraction]:
    factor = Fraction(2 ** k, 2 ** k - 1)
    return lambda d: factor * Fraction(primorial_phi(d), primorial(d) ** k)


def gp_int_asymptotic(k: int, table: TableFile, depth: Optional[int] = None, digits: int = 6) -> BoundReport:
    """
    整数公比等比数列：1 − (2^k/(2^k−1)) Σ (k c_{d−1,k} − c_{d,k}) φ(P_d)/P_d^k

    Args:
        k: 等比数列长度
        table: 含 c_{d,k} 的数值表
        depth: 截断深度
        digits: 小数位数

    Returns:
        BoundReport对象
    """
    values = resolve_table_values(table, lambda d: Quantity.dhj(d, k), depth)
    return _expansion_asymptotic(values, k, _gp_weight(k), f"gp-int(k={k})", digits)


def gp_rat_asymptotic(k: int, table: TableFile, depth: Optional[int] = None, digits: int = 6) -> BoundReport:
    """有理公比等比数列：同上，使用 Moser 数 c'_{d,k}"""
    values = resolve_table_values(table, lambda d: Quantity.moser(d, k), depth)
    return _expansion_asymptotic(values, k, _gp_weight(k), f"gp-rat(k={k})", digits)


def square_asymptotic(table: TableFile, depth: Optional[int] = None, digits: int = 6) -> BoundReport:
    """几何正方形：1 − (4/3) Σ (2 c_{d−1,2,2} − c_{d,2,2}) φ(P_d)/P_d²"""
    values = resolve_table_values(table, lambda d: Quantity.space(d, 2, 2), depth)

    def weight(d: int) -> Fraction:
        return Fraction(4, 3) * Fraction(primorial_phi(d), primorial(d) ** 2)

    return _expansion_asymptotic(values, 2, weight, "square", digits)


def _growth_asymptotic(R: Sequence[int], weight: Callable[[int], Fraction],
                       name: str, digits: int) -> BoundReport:
    terms = []
    for i in range(1, len(R)):
        coefficient = 1 + R[i - 1] - R[i]
        w = weight(i)
        terms.append(BoundTerm(i, coefficient, w, coefficient * w))
    return _report(terms, len(R) - 1, name, digits)


def prime_power_asymptotic(p: int, k: int, r_values: Sequence[int], depth: int, digits: int = 6) -> BoundReport:
    """
    公比为 p 的幂：1 − (1 − 1/p) Σ_{i=1}^{depth} (1 + R_{i−1} − R_i)/p^i，R_i = r_k(i+1)

    Args:
        p: 素数
        k: 等比数列长度
        r_values: r_k(0), r_k(1), …，至少到 r_k(depth+1)
        depth: 截断深度

    Returns:
        BoundReport对象
    """
    if depth < 0:
        raise BoundInputError(f"截断深度不能为负: {depth}")
    if len(r_values) < depth + 2:
        raise BoundInputError(f"需要 r_{k}(0..{depth + 1})，实际只有 {len(r_values)} 个值")
    R = [r_values[i + 1] for i in range(depth + 1)]
    factor = 1 - Fraction(1, p)
    return _growth_asymptotic(R, lambda i: factor / Fraction(p) ** i, f"prime-power(p={p},k={k})", digits)


def friable_prefix_values(d: int, depth: int, solver) -> List[int]:
    """R_0, …, R_depth，R_i 为 {s_1, …, s_{i+1}} 上的 G"""
    return [solver.friable_prefix_value(d, i) for i in range(depth + 1)]


def mcnew_asymptotic(d: int, R: Sequence[int], depth: int, digits: int = 6) -> BoundReport:
    """
    公比为 d-光滑数的3项等比数列：1 − (φ(P_d)/P_d) Σ_{i=1}^{depth} (1 + R_{i−1} − R_i)/s_{i+1}

    Args:
        d: 素数个数
        R: R_0, R_1, …，至少到 R_depth
        depth: 截断深度

    Returns:
        BoundReport对象
    """
    if depth < 0:
        raise BoundInputError(f"截断深度不能为负: {depth}")
    if len(R) < depth + 1:
        raise BoundInputError(f"需要 R_0..R_{depth}，实际只有 {len(R)} 个值")
    s = first_friable(d, depth + 1)
    factor = Fraction(primorial_phi(d), primorial(d))
    return _growth_asymptotic(list(R[:depth + 1]), lambda i: factor / s[i], f"mcnew(d={d})", digits)


# ----------------------------------------------------------------------
# 阈值搜索


def threshold_search(k: int, n_max: int, solver) -> ThresholdResult:
    """
    最小的 n ≤ n_max 使 r_k(n) < n − ⌊n/k⌋

    先判定是否存在规模 n − ⌊n/k⌋ 的自由集，只有不存在时才求 r_k(n)。

    Args:
        k: 等差数列长度（≥ 3）
        n_max: 搜索上限
        solver: PatternSolver

    Returns:
        ThresholdResult对象，未找到时 n 为 None
    """
    if k < 3 or n_max < 1:
        raise ValueError(f"要求 k ≥ 3 且 n_max ≥ 1: k={k}, n_max={n_max}")
    for n in range(1, n_max + 1):
        easy = n - n // k
        if solver.reaches_easy_ap_bound(k, n) is not None:
            continue
        value = solver.r_value(k, n)
        logger.info(f"r_{k}({n}) = {value} < {easy}")
        return ThresholdResult(k=k, n=n, r_value=value, easy_bound=easy)
    return ThresholdResult(k=k, n=None)
