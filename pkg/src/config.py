"""
配置加载
YAML 配置 + .env 环境变量，${VAR} 占位符从环境变量展开
"""

import os
import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, Optional

import yaml
from dotenv import load_dotenv
from loguru import logger

PROJECT_ROOT = Path(__file__).resolve().parent.parent
DEFAULT_CONFIG_PATH = PROJECT_ROOT / "config" / "proscribe.yaml"

_PLACEHOLDER = re.compile(r"\$\{([A-Za-z_][A-Za-z0-9_]*)\}")


@dataclass
class SolverConfig:
    """求解器配置"""
    provider: str = "branch_bound"
    node_budget: int = 10 ** 9
    threads: int = 0
    oracle_cap: int = 24
    split_depth: int = 4
    parallel_min_vertices: int = 48

    @property
    def worker_count(self) -> int:
        """实际并行进程数"""
        return self.threads if self.threads > 0 else (os.cpu_count() or 1)


@dataclass
class TableConfig:
    """数值表配置"""
    path: str = ""
    default_path: str = "data/default_table.json"
    cache_path: str = "data/cache/ramsey_table.json"
    verify_max_vertices: int = 81

    def resolve_path(self, override: Optional[str] = None) -> Path:
        """
        解析数值表路径

        优先级：命令行 > 环境变量 PROSCRIBE_TABLE > 缓存路径
        """
        candidate = override or os.environ.get("PROSCRIBE_TABLE") or self.path or self.cache_path
        return _project_path(candidate)

    @property
    def bundled_path(self) -> Path:
        return _project_path(self.default_path)


@dataclass
class BoundsConfig:
    """界计算配置"""
    digits: int = 6
    prime_power_depth: int = 40
    square_depth: int = 5
    mcnew_depth: int = 12


@dataclass
class AppConfig:
    """完整配置"""
    solver: SolverConfig = field(default_factory=SolverConfig)
    table: TableConfig = field(default_factory=TableConfig)
    bounds: BoundsConfig = field(default_factory=BoundsConfig)
    log_level: str = "INFO"


def _project_path(value: str) -> Path:
    path = Path(value)
    return path if path.is_absolute() else PROJECT_ROOT / path


def _expand(value: Any) -> Any:
    """递归展开 ${VAR} 占位符，未设置的变量展开为空串"""
    if isinstance(value, str):
        return _PLACEHOLDER.sub(lambda m: os.environ.get(m.group(1), ""), value)
    if isinstance(value, dict):
        return {key: _expand(item) for key, item in value.items()}
    if isinstance(value, list):
        return [_expand(item) for item in value]
    return value


def _section(cls, data: Dict) -> Any:
    known = {name: data[name] for name in cls.__dataclass_fields__ if name in data}
    return cls(**known)


def load_config(path: Optional[str] = None) -> AppConfig:
    """
    加载配置文件

    Args:
        path: 配置文件路径，默认 config/proscribe.yaml

    Returns:
        AppConfig对象
    """
    load_dotenv()

    config_path = Path(path) if path else DEFAULT_CONFIG_PATH
    if not config_path.exists():
        logger.warning(f"配置文件不存在，使用默认配置: {config_path}")
        return AppConfig()

    with open(config_path, 'r', encoding='utf-8') as f:
        raw = yaml.safe_load(f) or {}

    data = _expand(raw)
    return AppConfig(
        solver=_section(SolverConfig, data.get('solver') or {}),
        table=_section(TableConfig, data.get('table') or {}),
        bounds=_section(BoundsConfig, data.get('bounds') or {}),
        log_level=(data.get('logging') or {}).get('level', "INFO"),
    )
