"""
插值数据与单变量有理函数
"""
from dataclasses import dataclass
from typing import Any, Dict, Sequence

import numpy as np

from app.errors import InvalidInputError
from app.models.points import as_ball_array, check_distinct
from app.models.poly import ComplexPoly

BOUNDARY_GRID = 4096


@dataclass(frozen=True, eq=False)
class InterpolationData:
    """
    插值数据 (Z, W)

    严格模式要求 |w_i| < 1；relaxed 模式允许 |w_i| <= 1，仅用于范数和可行性计算。
    """

    points: np.ndarray
    values: np.ndarray
    relaxed: bool = False

    def __init__(self, points: Sequence, values: Sequence[complex], relaxed: bool = False):
        array = as_ball_array(points)
        check_distinct(array)
        w = np.asarray(values, dtype=complex).reshape(-1)
        if w.shape[0] != array.shape[0]:
            raise InvalidInputError(f"取值个数 {w.shape[0]} 与节点个数 {array.shape[0]} 不符")
        moduli = np.abs(w)
        if relaxed:
            if np.any(moduli > 1.0):
                raise InvalidInputError("relaxed 模式下要求 |w_i| <= 1")
        elif np.any(moduli >= 1.0):
            raise InvalidInputError("要求 |w_i| < 1（可使用 relaxed 模式）")
        array.setflags(write=False)
        w.setflags(write=False)
        object.__setattr__(self, "points", array)
        object.__setattr__(self, "values", w)
        object.__setattr__(self, "relaxed", bool(relaxed))

    @property
    def dimension(self) -> int:
        return self.points.shape[1]

    @property
    def size(self) -> int:
        return self.points.shape[0]

    def scaled(self, factor: complex) -> "InterpolationData":
        return InterpolationData(self.points, factor * self.values, relaxed=self.relaxed)


@dataclass(frozen=True, eq=False)
class RationalFn1D:
    """φ = numerator / denominator，分母在闭单位圆盘上无零点"""

    numerator: ComplexPoly
    denominator: ComplexPoly

    def __post_init__(self):
        if self.numerator.dimension != 1 or self.denominator.dimension != 1:
            raise InvalidInputError("有理函数的分子分母必须是一元多项式")
        if self.denominator.is_zero():
            raise InvalidInputError("分母不能为零多项式")

    def evaluate(self, z) -> np.ndarray:
        points = np.asarray(z, dtype=complex)[..., None]
        return self.numerator.evaluate(points) / self.denominator.evaluate(points)

    def __call__(self, z: complex) -> complex:
        return complex(self.evaluate(complex(z)))

    def denominator_roots(self) -> np.ndarray:
        coeffs = self.denominator.to_coefficients()
        if coeffs.shape[0] <= 1:
            return np.zeros(0, dtype=complex)
        return np.roots(coeffs[::-1])

    def denominator_nonvanishing(self, grid: int = BOUNDARY_GRID) -> bool:
        """边界网格上分母远离零，且所有根在闭圆盘之外"""
        circle = np.exp(2j * np.pi * np.arange(grid) / grid)
        boundary_min = float(np.min(np.abs(self.denominator.evaluate(circle[:, None]))))
        roots = self.denominator_roots()
        outside = bool(np.all(np.abs(roots) > 1.0)) if roots.size else True
        return boundary_min > 0.0 and outside

    def boundary_sup(self, grid: int = BOUNDARY_GRID) -> float:
        circle = np.exp(2j * np.pi * np.arange(grid) / grid)
        return float(np.max(np.abs(self.evaluate(circle))))

    def to_payload(self) -> Dict[str, Any]:
        return {
            "numerator": [[c.real, c.imag] for c in self.numerator.to_coefficients()],
            "denominator": [[c.real, c.imag] for c in self.denominator.to_coefficients()],
        }
