"""
禁用子集极值计算工具
Exact bounds for sets avoiding proscribed subsets (geometric progressions, geometric squares)
"""

__version__ = "0.1.0"
__author__ = "Proscribe Team"
