"""
单位球与单位球面上的点
"""
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from app.errors import InvalidInputError

SPHERE_TOL = 1e-12


def _as_coords(coords: Iterable[complex]) -> np.ndarray:
    array = np.asarray(list(coords) if not isinstance(coords, np.ndarray) else coords, dtype=complex)
    if array.ndim != 1 or array.size == 0:
        raise InvalidInputError("点坐标必须是非空一维序列")
    array = array.copy()
    array.setflags(write=False)
    return array


@dataclass(frozen=True, eq=False)
class BallPoint:
    """开单位球 𝔹ⁿ 中的点，Σ|z_i|² < 1"""

    coords: np.ndarray

    def __init__(self, coords: Iterable[complex]):
        array = _as_coords(coords)
        norm2 = float(np.sum(np.abs(array) ** 2))
        if not norm2 < 1.0:
            raise InvalidInputError(f"点不在开单位球内: ‖z‖² = {norm2}")
        object.__setattr__(self, "coords", array)

    @property
    def dimension(self) -> int:
        return self.coords.shape[0]

    @property
    def norm2(self) -> float:
        return float(np.sum(np.abs(self.coords) ** 2))


@dataclass(frozen=True, eq=False)
class SpherePoint:
    """单位球面 𝕊ⁿ 上的点，|Σ|ζ_i|² - 1| <= 1e-12"""

    coords: np.ndarray

    def __init__(self, coords: Iterable[complex]):
        array = _as_coords(coords)
        norm2 = float(np.sum(np.abs(array) ** 2))
        if abs(norm2 - 1.0) > SPHERE_TOL:
            raise InvalidInputError(f"点不在单位球面上: ‖ζ‖² = {norm2}")
        object.__setattr__(self, "coords", array)

    @property
    def dimension(self) -> int:
        return self.coords.shape[0]


def as_ball_array(points: Sequence, n: int = None) -> np.ndarray:
    """
    将点序列转为 (m, n) 复数组并校验都在开球内

    Args:
        points: BallPoint 或坐标序列组成的序列
        n: 期望维数

    Returns:
        (m, n) 复数组
    """
    rows = [p.coords if isinstance(p, BallPoint) else BallPoint(p).coords for p in points]
    if not rows:
        raise InvalidInputError("点集不能为空")
    dims = {row.shape[0] for row in rows}
    if len(dims) != 1:
        raise InvalidInputError(f"点的维数不一致: {sorted(dims)}")
    if n is not None and dims != {n}:
        raise InvalidInputError(f"点的维数应为 {n}")
    return np.vstack(rows)


def check_distinct(points: np.ndarray) -> None:
    """节点必须两两不同"""
    m = points.shape[0]
    for i in range(m):
        for j in range(i + 1, m):
            if np.array_equal(points[i], points[j]):
                raise InvalidInputError(f"节点 {i} 与 {j} 重合")
