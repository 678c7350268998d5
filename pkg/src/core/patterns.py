"""
禁用族实例枚举模块
把集合系统语言翻译为求解器输入：列出给定集合中包含的所有禁用子集
"""

from math import gcd, isqrt
from typing import Iterator, List, Tuple

from ..models.sets import NaturalSet, PatternFamily, PatternKind
from .numtheory import friable_numbers


def _all_in(terms: Tuple[int, ...], members: frozenset) -> bool:
    return all(t in members for t in terms)


def _iter_ap(k: int, members: frozenset, top: int) -> Iterator[Tuple[int, ...]]:
    for a in sorted(members):
        step = 1
        while a + (k - 1) * step <= top:
            terms = tuple(a + i * step for i in range(k))
            if _all_in(terms, members):
                yield terms
            step += 1


def _iter_ratio(k: int, members: frozenset, top: int, ratios) -> Iterator[Tuple[int, ...]]:
    """整数公比的k项等比数列，ratios 为升序公比序列"""
    for a in sorted(members):
        for r in ratios:
            if a * r ** (k - 1) > top:
                break
            terms = tuple(a * r ** i for i in range(k))
            if _all_in(terms, members):
                yield terms


def _integer_ratios(top: int) -> List[int]:
    return list(range(2, top + 1))


def _prime_power_ratios(p: int, top: int) -> List[int]:
    ratios = []
    r = p
    while r <= top:
        ratios.append(r)
        r *= p
    return ratios


def _iter_gp_rat(k: int, members: frozenset, top: int) -> Iterator[Tuple[int, ...]]:
    # a = m·p^{k−1}，各项 m·p^{k−1−i}·q^i，最大项 m·q^{k−1}
    q = 2
    while q ** (k - 1) <= top:
        for p in range(1, q):
            if gcd(p, q) != 1:
                continue
            m = 1
            while m * q ** (k - 1) <= top:
                terms = tuple(m * p ** (k - 1 - i) * q ** i for i in range(k))
                if _all_in(terms, members):
                    yield terms
                m += 1
        q += 1


def _iter_square(members: frozenset, top: int) -> Iterator[Tuple[int, ...]]:
    for a in sorted(members):
        r = 2
        while a * r * (r + 1) <= top:
            s = r + 1
            while a * r * s <= top:
                terms = (a, a * r, a * s, a * r * s)
                if _all_in(terms, members):
                    yield terms
                s += 1
            r += 1


def iter_instances(family: PatternFamily, ground: NaturalSet) -> Iterator[Tuple[int, ...]]:
    """
    惰性枚举 ground 中包含的禁用实例（可能重复、无序）

    Args:
        family: 禁用族
        ground: 基础集合

    Yields:
        实例的元素元组
    """
    members = ground.as_set()
    if not members:
        return
    top = ground.max
    k = family.k

    if family.kind == PatternKind.AP:
        yield from _iter_ap(k, members, top)
    elif family.kind == PatternKind.GP_INT:
        yield from _iter_ratio(k, members, top, _integer_ratios(top))
    elif family.kind == PatternKind.GP_RAT:
        yield from _iter_gp_rat(k, members, top)
    elif family.kind == PatternKind.GP_PRIME_POWER:
        yield from _iter_ratio(k, members, top, _prime_power_ratios(family.p, top))
    elif family.kind == PatternKind.GP_FRIABLE3:
        ratios = friable_numbers(family.d, max(1, isqrt(top)))[1:]
        yield from _iter_ratio(3, members, top, ratios)
    elif family.kind == PatternKind.GEOM_SQUARE:
        yield from _iter_square(members, top)
    else:
        raise ValueError(f"不支持的禁用族: {family.kind}")


def enumerate_instances(family: PatternFamily, ground: NaturalSet) -> List[NaturalSet]:
    """
    枚举 ground 中包含的全部禁用实例

    公比 r 与 1/r 给出同一集合，只出现一次；按排序后元素的字典序输出。

    Args:
        family: 禁用族
        ground: 基础集合

    Returns:
        实例列表
    """
    unique = {tuple(sorted(terms)) for terms in iter_instances(family, ground)}
    return [NaturalSet(terms, ground.ground_max) for terms in sorted(unique)]


def is_free(candidate: NaturalSet, family: PatternFamily) -> bool:
    """集合中不含任何禁用实例"""
    return next(iter_instances(family, candidate), None) is None


def lower_bound_square_free_set(n: int) -> NaturalSet:
    """(⌊n/6⌋, n] ∩ ℕ：不含几何正方形，基数 n − ⌊n/6⌋"""
    return NaturalSet(tuple(range(n // 6 + 1, n + 1)), n)
