"""
缓存工具模块 - 精确值的内存缓存
"""
import threading
from functools import wraps
from typing import Any, Callable, Dict, Hashable, Optional


def _freeze(value: Any) -> Hashable:
    if isinstance(value, (list, tuple)):
        return tuple(_freeze(v) for v in value)
    return value


class SimpleCache:
    """简单的内存缓存类（线程安全，值不过期）"""

    def __init__(self, max_entries: int = 100_000):
        self._cache: Dict[Hashable, Any] = {}
        self._lock = threading.Lock()
        self.max_entries = max_entries

    @staticmethod
    def _make_key(func_name: str, args: tuple, kwargs: dict) -> Hashable:
        """生成缓存键（列表参数转为元组）"""
        return (func_name, _freeze(args), _freeze(tuple(sorted(kwargs.items()))))

    def get(self, key: Hashable) -> Optional[Any]:
        """获取缓存值"""
        with self._lock:
            return self._cache.get(key)

    def set(self, key: Hashable, value: Any):
        """设置缓存值，超出容量时整体清空"""
        with self._lock:
            if len(self._cache) >= self.max_entries:
                self._cache.clear()
            self._cache[key] = value

    def clear(self):
        """清空缓存"""
        with self._lock:
            self._cache.clear()

    def __len__(self) -> int:
        return len(self._cache)


# 全局缓存实例
_cache = SimpleCache()


def cached(func: Callable) -> Callable:
    """
    缓存装饰器，用于纯函数（结果只依赖参数）

    使用示例:
        @cached
        def monomial_integral(alpha, beta, n):
            ...
    """
    @wraps(func)
    def wrapper(*args, **kwargs):
        cache_key = _cache._make_key(func.__qualname__, args, kwargs)

        cached_value = _cache.get(cache_key)
        if cached_value is not None:
            return cached_value

        result = func(*args, **kwargs)
        _cache.set(cache_key, result)
        return result
    return wrapper


def clear_cache():
    """清空所有缓存"""
    _cache.clear()


def cache_size() -> int:
    """当前缓存条目数"""
    return len(_cache)
