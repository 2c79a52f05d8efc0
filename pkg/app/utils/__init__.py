"""
工具模块初始化
"""
from .cache import cached, clear_cache, cache_size

__all__ = ['cached', 'clear_cache', 'cache_size']
