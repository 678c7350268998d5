"""
集合与禁用族的数据模型
"""

from dataclasses import dataclass
from enum import Enum
from typing import Dict, Iterable, Optional, Tuple

from sympy import isprime


@dataclass(frozen=True)
class NaturalSet:
    """[1, ground_max] 内的有限自然数集合"""
    elements: Tuple[int, ...]
    ground_max: int

    def __post_init__(self):
        ordered = tuple(sorted(set(self.elements)))
        object.__setattr__(self, 'elements', ordered)
        if ordered and (ordered[0] < 1 or ordered[-1] > self.ground_max):
            raise ValueError(f"元素超出区间 [1, {self.ground_max}]: {ordered}")

    @classmethod
    def interval(cls, n: int) -> "NaturalSet":
        """[n] = {1, ..., n}"""
        return cls(tuple(range(1, n + 1)), n)

    @classmethod
    def of(cls, values: Iterable[int], ground_max: Optional[int] = None) -> "NaturalSet":
        """由任意可迭代对象构造，ground_max 缺省取最大元素"""
        items = tuple(values)
        return cls(items, ground_max if ground_max is not None else max(items, default=0))

    @property
    def max(self) -> int:
        return self.elements[-1] if self.elements else 0

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, value) -> bool:
        return value in self.as_set()

    def as_set(self) -> frozenset:
        return frozenset(self.elements)

    def dilate(self, c: int) -> "NaturalSet":
        """伸缩 c∗X = {cx : x ∈ X}"""
        return NaturalSet(tuple(c * x for x in self.elements), self.ground_max * c)

    def to_dict(self) -> Dict:
        """转换为字典"""
        return {'elements': list(self.elements), 'ground_max': self.ground_max}


class PatternKind(Enum):
    """禁用族类型"""
    AP = "ap"                          # k项等差数列
    GP_INT = "gp-int"                  # 整数公比k项等比数列
    GP_RAT = "gp-rat"                  # 有理公比k项等比数列
    GEOM_SQUARE = "square"             # 几何正方形 {a, ar, as, ars}
    GP_PRIME_POWER = "pp-gp"           # 公比为 p 的幂
    GP_FRIABLE3 = "friable-gp3"        # 公比为 d-光滑数的3项等比数列


@dataclass(frozen=True)
class PatternFamily:
    """禁用族描述"""
    kind: PatternKind
    k: int = 3                          # 长度（AP/GP 类）
    p: Optional[int] = None             # 素数（GP_PRIME_POWER）
    d: Optional[int] = None             # 素数个数（GP_FRIABLE3）

    def __post_init__(self):
        if self.kind == PatternKind.AP and self.k < 2:
            raise ValueError(f"等差数列长度需 k ≥ 2: {self.k}")
        if self.kind in (PatternKind.GP_INT, PatternKind.GP_RAT, PatternKind.GP_PRIME_POWER) and self.k < 3:
            raise ValueError(f"等比数列长度需 k ≥ 3: {self.k}")
        if self.kind == PatternKind.GP_PRIME_POWER and (self.p is None or not isprime(self.p)):
            raise ValueError(f"公比底数必须为素数: {self.p}")
        if self.kind == PatternKind.GP_FRIABLE3:
            if self.d is None or self.d < 1:
                raise ValueError(f"光滑数素数个数需 d ≥ 1: {self.d}")
            object.__setattr__(self, 'k', 3)
        if self.kind == PatternKind.GEOM_SQUARE:
            object.__setattr__(self, 'k', 4)

    @classmethod
    def ap(cls, k: int) -> "PatternFamily":
        return cls(PatternKind.AP, k=k)

    @classmethod
    def gp_int(cls, k: int) -> "PatternFamily":
        return cls(PatternKind.GP_INT, k=k)

    @classmethod
    def gp_rat(cls, k: int) -> "PatternFamily":
        return cls(PatternKind.GP_RAT, k=k)

    @classmethod
    def geom_square(cls) -> "PatternFamily":
        return cls(PatternKind.GEOM_SQUARE)

    @classmethod
    def gp_prime_power(cls, p: int, k: int) -> "PatternFamily":
        return cls(PatternKind.GP_PRIME_POWER, k=k, p=p)

    @classmethod
    def gp_friable3(cls, d: int) -> "PatternFamily":
        return cls(PatternKind.GP_FRIABLE3, d=d)

    @property
    def label(self) -> str:
        if self.kind == PatternKind.GP_PRIME_POWER:
            return f"{self.kind.value}(p={self.p},k={self.k})"
        if self.kind == PatternKind.GP_FRIABLE3:
            return f"{self.kind.value}(d={self.d})"
        if self.kind == PatternKind.GEOM_SQUARE:
            return self.kind.value
        return f"{self.kind.value}(k={self.k})"

    def to_dict(self) -> Dict:
        """转换为字典"""
        return {'kind': self.kind.value, 'k': self.k, 'p': self.p, 'd': self.d}
