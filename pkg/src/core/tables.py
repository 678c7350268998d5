"""
Ramsey 数值表模块
JSON 格式的持久化数值表：读写、冲突检测、按需计算与复核
"""

import json
import os
import re
import tempfile
from pathlib import Path
from typing import List, Optional

from loguru import logger

from ..exceptions import SolverBudgetExceeded, TableConflictError, TableFormatError
from ..models.records import (
    TABLE_FORMAT_VERSION, Provenance, Quantity, QuantityKind, RamseyRecord,
    RecordStatus, TableFile, VerifyEntry, VerifyStatus,
)

_KIND_KEY = re.compile(r'"kind"\s*:')


def _record_lines(text: str) -> List[int]:
    """每条记录 "kind" 键所在的行号，用于错误定位"""
    return [text.count("\n", 0, m.start()) + 1 for m in _KIND_KEY.finditer(text)]


def _check_intervals(table: TableFile) -> None:
    """同一数量的上界不小于下界，精确值落在两者之间"""
    for quantity in {r.quantity for r in table.records}:
        exact = table.get(quantity, RecordStatus.EXACT)
        upper = table.get(quantity, RecordStatus.UPPER)
        lower = table.get(quantity, RecordStatus.LOWER)
        if upper and lower and upper.value < lower.value:
            raise TableFormatError(f"{quantity.label} 的上界 {upper.value} 小于下界 {lower.value}", field='value')
        if exact and upper and exact.value > upper.value:
            raise TableFormatError(f"{quantity.label} 的精确值 {exact.value} 大于上界 {upper.value}", field='value')
        if exact and lower and exact.value < lower.value:
            raise TableFormatError(f"{quantity.label} 的精确值 {exact.value} 小于下界 {lower.value}", field='value')


def loads(text: str) -> TableFile:
    """
    解析数值表文本

    Raises:
        TableFormatError: JSON 或字段错误（附行号与字段名）
        DuplicateRecordError: 重复的 (quantity, status)
    """
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise TableFormatError(f"JSON 解析失败: {e.msg}", line=e.lineno)

    if not isinstance(data, dict):
        raise TableFormatError("顶层必须是对象", line=1)
    version = data.get('version')
    if version != TABLE_FORMAT_VERSION:
        raise TableFormatError(f"不支持的版本: {version!r}", field='version')
    items = data.get('records')
    if not isinstance(items, list):
        raise TableFormatError("缺少记录列表", field='records')

    lines = _record_lines(text)
    records = []
    for idx, item in enumerate(items):
        line = lines[idx] if idx < len(lines) else None
        if not isinstance(item, dict):
            raise TableFormatError("记录必须是对象", line=line)
        records.append(RamseyRecord.from_dict(item, line=line))

    table = TableFile(records=records, version=version)
    _check_intervals(table)
    return table


def dumps(table: TableFile) -> str:
    """序列化为确定性的 JSON 文本"""
    return json.dumps(table.to_dict(), ensure_ascii=False, indent=2) + "\n"


def load(path) -> TableFile:
    """
    读取数值表文件

    Args:
        path: 文件路径

    Returns:
        TableFile对象
    """
    path = Path(path)
    if not path.exists():
        raise FileNotFoundError(f"数值表不存在: {path}")
    with open(path, 'r', encoding='utf-8') as f:
        return loads(f.read())


def store(path, table: TableFile) -> None:
    """原子写入：先写同目录临时文件再替换"""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(prefix=path.name, suffix=".tmp", dir=path.parent)
    try:
        with os.fdopen(fd, 'w', encoding='utf-8') as f:
            f.write(dumps(table))
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.remove(tmp)
        raise


def conflicts(record: RamseyRecord, value: int) -> bool:
    """计算值 value 是否与已存记录矛盾"""
    if record.status == RecordStatus.EXACT:
        return record.value != value
    if record.status == RecordStatus.UPPER:
        return value > record.value
    return value < record.value


def search_vertices(quantity: Quantity) -> int:
    """计算该数量所需搜索的顶点数"""
    p = quantity.named_params
    if quantity.kind in (QuantityKind.DHJ, QuantityKind.MOSER, QuantityKind.SPACE):
        return p['k'] ** p['d']
    if quantity.kind == QuantityKind.R_AP:
        return p['n']
    return p['i'] + 1


class TableStore:
    """数值表服务：按需计算、冲突检测、自动保存"""

    def __init__(self, path, table: Optional[TableFile] = None, grid=None, solver=None,
                 autosave: bool = True, verify_max_vertices: int = 81):
        """
        初始化数值表服务

        Args:
            path: 数值表文件路径
            table: 已加载的数值表，缺省时从 path 读取
            grid: GridRamsey（计算 DHJ/MOSER/SPACE）
            solver: PatternSolver（计算 R_AP/GP3_FRIABLE_PREFIX）
            autosave: 新增记录后立即写回
            verify_max_vertices: 复核时跳过顶点数更大的数量
        """
        self.path = Path(path)
        self.table = table if table is not None else load(self.path)
        self.grid = grid
        self.solver = solver
        self.autosave = autosave
        self.verify_max_vertices = verify_max_vertices

    @classmethod
    def open(cls, path, bundled_path=None, **kwargs) -> "TableStore":
        """打开数值表；文件不存在时从内置表复制"""
        path = Path(path)
        if not path.exists() and bundled_path is not None:
            logger.info(f"数值表不存在，从内置表初始化: {path}")
            table = load(bundled_path)
            store(path, table)
            return cls(path, table, **kwargs)
        return cls(path, **kwargs)

    def save(self) -> None:
        store(self.path, self.table)

    def get(self, quantity: Quantity) -> Optional[RamseyRecord]:
        """精确值记录"""
        return self.table.exact(quantity)

    def compute(self, quantity: Quantity) -> int:
        """调用网格计算器或求解器计算精确值"""
        p = quantity.named_params
        if quantity.kind == QuantityKind.DHJ:
            return self._grid().dhj_number(p['d'], p['k'])
        if quantity.kind == QuantityKind.MOSER:
            return self._grid().moser_number(p['d'], p['k'])
        if quantity.kind == QuantityKind.SPACE:
            return self._grid().space_number(p['d'], p['s'], p['k'])
        if quantity.kind == QuantityKind.R_AP:
            return self._solver().r_value(p['k'], p['n'])
        if quantity.kind == QuantityKind.GP3_FRIABLE_PREFIX:
            return self._solver().friable_prefix_value(p['d'], p['i'])
        raise ValueError(f"不支持的数量类型: {quantity.kind}")

    def _grid(self):
        if self.grid is None:
            raise ValueError("数值表未配置网格计算器")
        return self.grid

    def _solver(self):
        if self.solver is None:
            raise ValueError("数值表未配置求解器")
        return self.solver

    def _check(self, quantity: Quantity, value: int) -> None:
        for record in self.table.records_for(quantity):
            if conflicts(record, value):
                raise TableConflictError(
                    f"{quantity.label} 计算值 {value} 与 {record.status.value} 记录 {record.value} "
                    f"（{record.provenance.value}）矛盾")

    def get_or_compute(self, quantity: Quantity, verify: bool = False) -> RamseyRecord:
        """
        取精确值；不存在时计算并以 COMPUTED 存入

        Args:
            quantity: 数量
            verify: 即使已有精确值也重新计算并比对

        Returns:
            RamseyRecord对象

        Raises:
            TableConflictError: 计算值与已存记录矛盾
            SolverBudgetExceeded: 求解超出预算（不写入任何记录）
        """
        existing = self.table.exact(quantity)
        if existing is not None and not verify:
            return existing

        value = self.compute(quantity)
        self._check(quantity, value)
        if existing is not None:
            return existing

        record = RamseyRecord(quantity=quantity, value=value, status=RecordStatus.EXACT,
                              provenance=Provenance.COMPUTED)
        self.table.add(record)
        logger.info(f"已计算并记录 {quantity.label} = {value}")
        if self.autosave:
            self.save()
        return record

    def values(self, quantities) -> List[int]:
        """依次取（或计算）一组数量的精确值"""
        return [self.get_or_compute(q).value for q in quantities]

    def merge(self, other: TableFile) -> int:
        """
        合并另一张表

        相同 (quantity, status) 的值必须一致；新记录须与已有区间相容。

        Returns:
            新增记录数
        """
        added = []
        for record in other.sorted_records():
            same = self.table.get(record.quantity, record.status)
            if same is not None:
                if same.value != record.value:
                    raise TableConflictError(
                        f"{record.quantity.label} {record.status.value}: 已有 {same.value}，导入 {record.value}")
                continue
            if record.status == RecordStatus.EXACT:
                self._check(record.quantity, record.value)
            added.append(record)

        merged = TableFile(records=self.table.records + added, version=self.table.version)
        try:
            _check_intervals(merged)
        except TableFormatError as e:
            raise TableConflictError(str(e))
        self.table = merged
        if added and self.autosave:
            self.save()
        logger.info(f"合并数值表：新增 {len(added)} 条记录")
        return len(added)

    def verify_all(self) -> List[VerifyEntry]:
        """重新计算所有精确记录并比对"""
        entries = []
        for record in self.table.sorted_records():
            if record.status != RecordStatus.EXACT:
                continue
            if search_vertices(record.quantity) > self.verify_max_vertices:
                entries.append(VerifyEntry(record, VerifyStatus.SKIPPED, detail="搜索空间过大"))
                continue
            try:
                value = self.compute(record.quantity)
            except SolverBudgetExceeded as e:
                entries.append(VerifyEntry(record, VerifyStatus.BUDGET, detail=str(e)))
                continue
            status = VerifyStatus.OK if value == record.value else VerifyStatus.CONFLICT
            if status == VerifyStatus.CONFLICT:
                logger.warning(f"{record.quantity.label} 复核不一致: 记录 {record.value}，计算 {value}")
            entries.append(VerifyEntry(record, status, computed=value))
        return entries
