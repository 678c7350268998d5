"""结果输出模块"""

from .formatter import TextFormatter, format_fraction, format_set

__all__ = ['TextFormatter', 'format_fraction', 'format_set']
