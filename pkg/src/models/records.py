"""
Ramsey 数值记录与界报告的数据模型
"""

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from ..exceptions import DuplicateRecordError, TableFormatError

TABLE_FORMAT_VERSION = "1.0"


class QuantityKind(Enum):
    """Ramsey 型数量的种类"""
    DHJ = "DHJ"                                   # c_{d,k}
    MOSER = "MOSER"                               # c'_{d,k}
    SPACE = "SPACE"                               # c_{d,s,k}
    R_AP = "R_AP"                                 # r_k(n)
    GP3_FRIABLE_PREFIX = "GP3_FRIABLE_PREFIX"     # R_i，光滑数前缀上的3项GP自由集


# 每种数量的参数名（顺序即序列化顺序）
QUANTITY_PARAMS = {
    QuantityKind.DHJ: ('d', 'k'),
    QuantityKind.MOSER: ('d', 'k'),
    QuantityKind.SPACE: ('d', 's', 'k'),
    QuantityKind.R_AP: ('k', 'n'),
    QuantityKind.GP3_FRIABLE_PREFIX: ('d', 'i'),
}


class RecordStatus(Enum):
    """记录状态"""
    EXACT = "EXACT"
    UPPER = "UPPER"
    LOWER = "LOWER"


class Provenance(Enum):
    """记录来源"""
    COMPUTED = "COMPUTED"
    LITERATURE = "LITERATURE"


@dataclass(frozen=True)
class Quantity:
    """一个 Ramsey 型数量，如 DHJ(4,3)"""
    kind: QuantityKind
    params: Tuple[int, ...]

    def __post_init__(self):
        expected = QUANTITY_PARAMS[self.kind]
        if len(self.params) != len(expected):
            raise ValueError(f"{self.kind.value} 需要参数 {expected}，实际为 {self.params}")
        if any(int(v) < 0 for v in self.params):
            raise ValueError(f"参数必须为非负整数: {self.params}")

    @classmethod
    def dhj(cls, d: int, k: int) -> "Quantity":
        return cls(QuantityKind.DHJ, (d, k))

    @classmethod
    def moser(cls, d: int, k: int) -> "Quantity":
        return cls(QuantityKind.MOSER, (d, k))

    @classmethod
    def space(cls, d: int, s: int, k: int) -> "Quantity":
        return cls(QuantityKind.SPACE, (d, s, k))

    @classmethod
    def r_ap(cls, k: int, n: int) -> "Quantity":
        return cls(QuantityKind.R_AP, (k, n))

    @classmethod
    def friable_prefix(cls, d: int, i: int) -> "Quantity":
        return cls(QuantityKind.GP3_FRIABLE_PREFIX, (d, i))

    @property
    def named_params(self) -> Dict[str, int]:
        return dict(zip(QUANTITY_PARAMS[self.kind], self.params))

    @property
    def label(self) -> str:
        """数学记号"""
        p = self.named_params
        if self.kind == QuantityKind.DHJ:
            return f"c_{{{p['d']},{p['k']}}}"
        if self.kind == QuantityKind.MOSER:
            return f"c'_{{{p['d']},{p['k']}}}"
        if self.kind == QuantityKind.SPACE:
            return f"c_{{{p['d']},{p['s']},{p['k']}}}"
        if self.kind == QuantityKind.R_AP:
            return f"r_{p['k']}({p['n']})"
        return f"R^({p['d']})_{p['i']}"


@dataclass(frozen=True)
class RamseyRecord:
    """数值记录（精确值 / 上界 / 下界）及来源"""
    quantity: Quantity
    value: int
    status: RecordStatus = RecordStatus.EXACT
    provenance: Provenance = Provenance.COMPUTED
    citation: str = ""
    note: str = ""

    @property
    def key(self) -> Tuple[Quantity, RecordStatus]:
        return (self.quantity, self.status)

    def to_dict(self) -> Dict:
        """转换为字典"""
        return {
            'kind': self.quantity.kind.value,
            'params': self.quantity.named_params,
            'value': self.value,
            'status': self.status.value,
            'provenance': self.provenance.value,
            'citation': self.citation,
            'note': self.note,
        }

    @classmethod
    def from_dict(cls, data: Dict, line: Optional[int] = None) -> "RamseyRecord":
        """从字典构造，字段错误时给出定位信息"""
        def require(name):
            if name not in data:
                raise TableFormatError("缺少必需字段", line=line, field=name)
            return data[name]

        try:
            kind = QuantityKind(require('kind'))
        except ValueError:
            raise TableFormatError(f"未知的数量类型: {data.get('kind')}", line=line, field='kind')

        params = require('params')
        names = QUANTITY_PARAMS[kind]
        if not isinstance(params, dict) or set(params) != set(names):
            raise TableFormatError(f"参数应为 {names}", line=line, field='params')

        value = require('value')
        if not isinstance(value, int) or isinstance(value, bool) or value < 0:
            raise TableFormatError(f"数值必须为非负整数: {value!r}", line=line, field='value')

        try:
            status = RecordStatus(data.get('status', 'EXACT'))
        except ValueError:
            raise TableFormatError(f"未知的状态: {data.get('status')}", line=line, field='status')
        try:
            provenance = Provenance(data.get('provenance', 'COMPUTED'))
        except ValueError:
            raise TableFormatError(f"未知的来源: {data.get('provenance')}", line=line, field='provenance')

        try:
            quantity = Quantity(kind, tuple(int(params[name]) for name in names))
        except (TypeError, ValueError) as e:
            raise TableFormatError(str(e), line=line, field='params')

        return cls(
            quantity=quantity,
            value=value,
            status=status,
            provenance=provenance,
            citation=str(data.get('citation', '')),
            note=str(data.get('note', '')),
        )


@dataclass
class TableFile:
    """数值表：版本号 + 记录列表"""
    records: List[RamseyRecord] = field(default_factory=list)
    version: str = TABLE_FORMAT_VERSION

    def __post_init__(self):
        seen = set()
        for record in self.records:
            if record.key in seen:
                raise DuplicateRecordError(
                    f"重复记录: {record.quantity.label} {record.status.value}")
            seen.add(record.key)

    def add(self, record: RamseyRecord) -> None:
        """添加记录，(quantity, status) 已存在时报错"""
        if self.get(record.quantity, record.status) is not None:
            raise DuplicateRecordError(f"重复记录: {record.quantity.label} {record.status.value}")
        self.records.append(record)

    def get(self, quantity: Quantity, status: RecordStatus) -> Optional[RamseyRecord]:
        for record in self.records:
            if record.quantity == quantity and record.status == status:
                return record
        return None

    def records_for(self, quantity: Quantity) -> List[RamseyRecord]:
        return [r for r in self.records if r.quantity == quantity]

    def exact(self, quantity: Quantity) -> Optional[RamseyRecord]:
        return self.get(quantity, RecordStatus.EXACT)

    def upper(self, quantity: Quantity) -> Optional[RamseyRecord]:
        """可用于界计算的记录：优先精确值，其次上界"""
        return self.exact(quantity) or self.get(quantity, RecordStatus.UPPER)

    def sorted_records(self) -> List[RamseyRecord]:
        """确定性顺序：按数量种类、参数、状态"""
        return sorted(self.records, key=lambda r: (r.quantity.kind.value, r.quantity.params, r.status.value))

    def to_dict(self) -> Dict:
        """转换为字典"""
        return {
            'version': self.version,
            'records': [r.to_dict() for r in self.sorted_records()],
        }


@dataclass(frozen=True)
class BoundTerm:
    """界中的一项：index 为层号 i 或维数 d"""
    index: int
    coefficient: int
    weight: Fraction
    contribution: Fraction

    def to_dict(self) -> Dict:
        return {
            'index': self.index,
            'coefficient': self.coefficient,
            'weight': f"{self.weight.numerator}/{self.weight.denominator}",
            'contribution': f"{self.contribution.numerator}/{self.contribution.denominator}",
        }


@dataclass
class BoundReport:
    """精确有理数上界及逐项分解"""
    value: Fraction
    terms: List[BoundTerm]
    depth: int
    decimal: str = ""
    direction: str = "UPPER"
    integer_form: Optional[int] = None     # 有限 n 时的整数形式 n − Σ…
    name: str = ""

    @property
    def lead(self) -> Fraction:
        """1 减去第一项"""
        first = self.terms[0].contribution if self.terms else Fraction(0)
        return 1 - first

    @property
    def remainder(self) -> Fraction:
        """其余各项之和，满足 value = lead − remainder"""
        return sum((t.contribution for t in self.terms[1:]), Fraction(0))

    def to_dict(self) -> Dict:
        """转换为字典"""
        return {
            'name': self.name,
            'value': f"{self.value.numerator}/{self.value.denominator}",
            'decimal': self.decimal,
            'direction': self.direction,
            'depth': self.depth,
            'integer_form': self.integer_form,
            'terms': [t.to_dict() for t in self.terms],
        }


@dataclass(frozen=True)
class ThresholdResult:
    """最小 n 使 r_k(n) < n − ⌊n/k⌋"""
    k: int
    n: Optional[int]
    r_value: Optional[int] = None
    easy_bound: Optional[int] = None

    @property
    def found(self) -> bool:
        return self.n is not None


class VerifyStatus(Enum):
    """复核结果"""
    OK = "ok"
    SKIPPED = "skipped"
    CONFLICT = "conflict"
    BUDGET = "budget"


@dataclass
class VerifyEntry:
    """一条记录的复核结果"""
    record: RamseyRecord
    status: VerifyStatus
    computed: Optional[int] = None
    detail: str = ""

    def to_dict(self) -> Dict:
        """转换为字典"""
        return {
            'quantity': self.record.quantity.label,
            'stored': self.record.value,
            'computed': self.computed,
            'status': self.status.value,
            'detail': self.detail,
        }
