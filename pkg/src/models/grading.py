"""
分级相关数据模型
"""

from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, List, Optional, Tuple


class GradingKind(Enum):
    """分级类型"""
    EXPANSION = "expansion"   # 扩张 k：每个上层单元是恰好 k 个下层单元的不交并
    GROWTH = "growth"         # 增长 r：每个上层单元是一个下层单元加 r 个新元素


@dataclass(frozen=True)
class Cell:
    """分级中的一个单元 f_i ∈ 𝓕_i"""
    elements: Tuple[int, ...]
    level: int
    meta: Tuple[Tuple[str, int], ...] = ()   # 构造参数，如 (('b', 3), ('scale', 8))

    @property
    def params(self) -> Dict[str, int]:
        return dict(self.meta)

    def __len__(self) -> int:
        return len(self.elements)

    def to_dict(self) -> Dict:
        """转换为字典"""
        return {'elements': list(self.elements), 'level': self.level, 'meta': self.params}


@dataclass
class Grading:
    """[n] 的分级 𝓕_0, 𝓕_1, …, 𝓕_D"""
    n: int
    levels: List[List[Cell]]
    kind: GradingKind
    parameter: int                      # 扩张的 k 或增长的 r
    name: str = ""                      # 构造方式（gp / prime-power / square / friable）
    meta: Dict = field(default_factory=dict)

    @property
    def depth(self) -> int:
        """最高非空层的编号 D"""
        return len(self.levels) - 1

    def level(self, i: int) -> List[Cell]:
        """第 i 层，超过 D 的层为空"""
        return self.levels[i] if i < len(self.levels) else []

    def to_dict(self) -> Dict:
        """转换为字典"""
        return {
            'n': self.n,
            'kind': self.kind.value,
            'parameter': self.parameter,
            'name': self.name,
            'level_sizes': [len(level) for level in self.levels],
            'levels': [[cell.to_dict() for cell in level] for level in self.levels],
        }


@dataclass
class PartitionView:
    """由分级导出的划分 𝒫 = {A_b} 及计数 α_i"""
    parts: List[Tuple[int, ...]]
    part_levels: List[int]
    alpha: List[int]

    def to_dict(self) -> Dict:
        """转换为字典"""
        return {
            'parts': [list(p) for p in self.parts],
            'part_levels': self.part_levels,
            'alpha': self.alpha,
        }


@dataclass
class ConditionResult:
    """单个分级条件的检查结果；passed 为 None 表示不适用"""
    condition: int
    passed: Optional[bool]
    counterexample: Optional[Tuple] = None
    detail: str = ""

    def to_dict(self) -> Dict:
        """转换为字典"""
        return {
            'condition': self.condition,
            'passed': self.passed,
            'counterexample': self.counterexample,
            'detail': self.detail,
        }


@dataclass
class GradingReport:
    """分级条件 (1)–(6) 检查报告"""
    results: Dict[int, ConditionResult] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        """所有适用条件均通过"""
        return all(r.passed is not False for r in self.results.values())

    def __getitem__(self, condition: int) -> ConditionResult:
        return self.results[condition]

    def failures(self) -> List[ConditionResult]:
        return [r for r in self.results.values() if r.passed is False]

    def to_dict(self) -> Dict:
        """转换为字典"""
        return {str(c): r.to_dict() for c, r in sorted(self.results.items())}
