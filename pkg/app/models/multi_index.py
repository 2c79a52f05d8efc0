"""
多重指标工具
"""
import math
from typing import Iterable, Iterator, List, Optional, Tuple

from app.errors import InvalidInputError

MultiIndex = Tuple[int, ...]


def as_multi_index(exponents: Iterable[int], n: Optional[int] = None) -> MultiIndex:
    """
    校验并规范化多重指标

    Args:
        exponents: 非负整数序列
        n: 期望长度（环境维数），None 表示不检查

    Returns:
        整数元组
    """
    alpha = tuple(int(a) for a in exponents)
    if any(a < 0 for a in alpha):
        raise InvalidInputError(f"多重指标含负分量: {alpha}")
    if n is not None and len(alpha) != n:
        raise InvalidInputError(f"多重指标长度 {len(alpha)} 与维数 {n} 不符")
    return alpha


def degree(alpha: MultiIndex) -> int:
    return sum(alpha)


def factorial(alpha: MultiIndex) -> int:
    """α! = Π α_i!"""
    result = 1
    for a in alpha:
        result *= math.factorial(a)
    return result


def graded_key(alpha: MultiIndex) -> Tuple[int, Tuple[int, ...]]:
    """分次字典序：先比次数，同次数时 z_1 的指数大者在前"""
    return degree(alpha), tuple(-a for a in alpha)


def add(alpha: MultiIndex, beta: MultiIndex) -> MultiIndex:
    return tuple(a + b for a, b in zip(alpha, beta))


def unit(i: int, n: int) -> MultiIndex:
    """第 i 个坐标的单位指标 e_i"""
    return tuple(1 if j == i else 0 for j in range(n))


def _compositions(total: int, parts: int) -> Iterator[MultiIndex]:
    if parts == 1:
        yield (total,)
        return
    for first in range(total, -1, -1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def multi_indices_of_degree(k: int, n: int) -> List[MultiIndex]:
    """所有 |α| = k 的指标，按分次字典序"""
    return sorted(_compositions(k, n), key=graded_key)


def multi_indices_up_to(m: int, n: int) -> List[MultiIndex]:
    """所有 |α| <= m 的指标，按分次字典序，个数为 C(n+m, n)"""
    result: List[MultiIndex] = []
    for k in range(m + 1):
        result.extend(multi_indices_of_degree(k, n))
    return result


def multi_indices_between(low: int, high: int, n: int) -> List[MultiIndex]:
    """所有 low <= |α| <= high 的指标"""
    result: List[MultiIndex] = []
    for k in range(max(low, 0), high + 1):
        result.extend(multi_indices_of_degree(k, n))
    return result
