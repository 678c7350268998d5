"""
异常定义
所有错误信息保持单行，便于命令行直接输出
"""


class ProscribeError(Exception):
    """基础异常"""


class SolverBudgetExceeded(ProscribeError, RuntimeError):
    """分支定界节点数超出预算"""

    def __init__(self, message: str, best_known: int = 0, nodes: int = 0):
        super().__init__(message)
        self.best_known = best_known
        self.nodes = nodes


class OracleCapExceeded(ProscribeError, ValueError):
    """穷举验证的顶点数超过上限"""


class TableFormatError(ProscribeError, ValueError):
    """数值表文件解析失败"""

    def __init__(self, message: str, line: int = None, field: str = None):
        location = []
        if line is not None:
            location.append(f"第{line}行")
        if field:
            location.append(f"字段'{field}'")
        prefix = f"{', '.join(location)}: " if location else ""
        super().__init__(f"{prefix}{message}")
        self.line = line
        self.field = field


class DuplicateRecordError(ProscribeError, ValueError):
    """同一 (quantity, status) 出现多条记录"""


class TableConflictError(ProscribeError, RuntimeError):
    """计算值与已存记录矛盾（通常意味着求解器错误）"""


class BoundInputError(ProscribeError, ValueError):
    """界计算的输入不完整或长度不一致"""


class GradingError(ProscribeError, ValueError):
    """分级不满足前置条件"""
