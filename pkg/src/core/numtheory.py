"""
数论基础模块
素数、素数阶乘（primorial）、欧拉函数、p进赋值、光滑数枚举
"""

import heapq
from dataclasses import dataclass
from functools import lru_cache
from math import gcd, prod
from typing import List, Tuple

from sympy import isprime, multiplicity, prime, totient


@dataclass(frozen=True)
class Primorial:
    """P_d = 前 d 个素数之积"""
    d: int
    value: int

    @classmethod
    def of(cls, d: int) -> "Primorial":
        return cls(d, primorial(d))

    def coprime(self, b: int) -> bool:
        """(b, P_d) = 1"""
        return gcd(b, self.value) == 1


@lru_cache(maxsize=None)
def _first_primes(d: int) -> Tuple[int, ...]:
    return tuple(int(prime(i)) for i in range(1, d + 1))


def primes(d: int) -> List[int]:
    """
    前 d 个素数

    Args:
        d: 素数个数

    Returns:
        递增的素数列表
    """
    if d < 0:
        raise ValueError(f"素数个数不能为负: {d}")
    return list(_first_primes(d))


def primorial(d: int) -> int:
    """前 d 个素数之积，P_0 = 1"""
    return prod(primes(d))


def primorial_phi(d: int) -> int:
    """φ(P_d) = ∏(p_i − 1)，无需分解"""
    return prod(p - 1 for p in primes(d))


def euler_phi(m: int) -> int:
    """
    欧拉函数 φ(m)

    Args:
        m: 正整数

    Returns:
        [1, m] 中与 m 互素的整数个数
    """
    if m < 1:
        raise ValueError(f"欧拉函数要求 m ≥ 1: {m}")
    return int(totient(m))


def valuation(p: int, x: int) -> int:
    """
    p进赋值 v_p(x)

    Args:
        p: 素数
        x: 正整数

    Returns:
        满足 p^e | x 的最大 e
    """
    if x < 1:
        raise ValueError(f"赋值要求 x ≥ 1: {x}")
    if not isprime(p):
        raise ValueError(f"赋值的底数必须为素数: {p}")
    return int(multiplicity(p, x))


def friable_numbers(d: int, limit: int) -> List[int]:
    """
    素因子都在前 d 个素数中的自然数（含 1），不超过 limit

    用优先队列逐次乘上各素数生成，不做试除。

    Args:
        d: 素数个数
        limit: 上限

    Returns:
        升序列表
    """
    if d < 1 or limit < 1:
        raise ValueError(f"要求 d ≥ 1 且 limit ≥ 1: d={d}, limit={limit}")

    base = primes(d)
    heap = [1]
    seen = {1}
    result = []
    while heap:
        s = heapq.heappop(heap)
        result.append(s)
        for p in base:
            nxt = s * p
            if nxt <= limit and nxt not in seen:
                seen.add(nxt)
                heapq.heappush(heap, nxt)
    return result


def first_friable(d: int, count: int) -> List[int]:
    """前 count 个 d-光滑数 s_1 < s_2 < …"""
    limit = 2
    while True:
        values = friable_numbers(d, limit)
        if len(values) >= count:
            return values[:count]
        limit *= 2
