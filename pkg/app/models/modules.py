"""
有限维商模的表示与压缩算子
"""
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Tuple, Union

import numpy as np

from app.models.multi_index import MultiIndex


@dataclass(frozen=True, eq=False)
class KernelSpan:
    """Q_Z = span{S_n(·, z_i)}：节点、Gram 矩阵及其下三角 Cholesky 因子"""

    points: np.ndarray
    gram: np.ndarray
    factor: np.ndarray

    @property
    def dimension(self) -> int:
        return self.points.shape[0]


@dataclass(frozen=True, eq=False)
class PolySpace:
    """Q_m = {deg p <= m}：分次字典序单项式基及其精确范数"""

    m: int
    n: int
    basis: Tuple[MultiIndex, ...]
    norms2: Tuple[Fraction, ...]
    norms: np.ndarray

    @property
    def dimension(self) -> int:
        return len(self.basis)


QuotientModuleRep = Union[KernelSpan, PolySpace]


@dataclass(frozen=True, eq=False)
class CompressedOp:
    """
    模映射在给定基下的矩阵

    PolySpace 上使用正交规范化单项式基 e_α = z^α/‖z^α‖；KernelSpan 上使用原始核基，
    内积由 module.gram 给出。node_values 记录 S_φ 在节点上的取值 φ(z_i)（仅核基）。
    """

    module: QuotientModuleRep
    matrix: np.ndarray
    node_values: Optional[np.ndarray] = None

    @property
    def dimension(self) -> int:
        return self.matrix.shape[0]

    @property
    def orthonormal(self) -> bool:
        return isinstance(self.module, PolySpace)

    def __matmul__(self, other: "CompressedOp") -> "CompressedOp":
        values = None
        if self.node_values is not None and other.node_values is not None:
            values = self.node_values * other.node_values
        return CompressedOp(self.module, self.matrix @ other.matrix, values)


def basis_labels(module: PolySpace) -> List[List[int]]:
    return [list(alpha) for alpha in module.basis]
