"""
Szegő 核函数的有限线性组合 Σ c_j S_n(·, z_j)
"""
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from app.errors import InvalidInputError
from app.models.points import as_ball_array, check_distinct


@dataclass(frozen=True, eq=False)
class KernelCombo:
    """核组合：points 为 (m, n) 数组，coeffs 为长度 m 的系数"""

    points: np.ndarray
    coeffs: np.ndarray

    def __init__(self, points: Sequence, coeffs: Sequence[complex]):
        array = as_ball_array(points)
        check_distinct(array)
        c = np.asarray(coeffs, dtype=complex).reshape(-1)
        if c.shape[0] != array.shape[0]:
            raise InvalidInputError(f"系数个数 {c.shape[0]} 与节点个数 {array.shape[0]} 不符")
        array.setflags(write=False)
        c.setflags(write=False)
        object.__setattr__(self, "points", array)
        object.__setattr__(self, "coeffs", c)

    @property
    def dimension(self) -> int:
        return self.points.shape[1]

    def is_zero(self) -> bool:
        return not np.any(self.coeffs)
