"""
多元复系数多项式（稀疏表示：多重指标 -> 系数）
"""
from numbers import Number
from typing import Dict, Iterable, List, Mapping, Optional, Tuple, Union

import numpy as np

from app.errors import InvalidInputError
from app.models import multi_index as mi
from app.models.multi_index import MultiIndex


class ComplexPoly:
    """
    ℂ[z_1, ..., z_n] 中的多项式

    terms 不保存零系数；所有指标长度均为 dimension。零多项式的次数记为 -1。
    """

    __slots__ = ("dimension", "_terms")

    def __init__(self, dimension: int, terms: Optional[Mapping[Iterable[int], complex]] = None):
        if dimension < 1:
            raise InvalidInputError(f"维数必须 >= 1，收到 {dimension}")
        self.dimension = int(dimension)
        self._terms: Dict[MultiIndex, complex] = {}
        for exponents, coeff in (terms or {}).items():
            alpha = mi.as_multi_index(exponents, self.dimension)
            value = self._terms.get(alpha, 0j) + complex(coeff)
            if value == 0:
                self._terms.pop(alpha, None)
            else:
                self._terms[alpha] = value

    # ---- 构造 ----

    @classmethod
    def zero(cls, dimension: int) -> "ComplexPoly":
        return cls(dimension)

    @classmethod
    def constant(cls, dimension: int, value: complex) -> "ComplexPoly":
        return cls(dimension, {(0,) * dimension: value})

    @classmethod
    def monomial(cls, alpha: Iterable[int], coeff: complex = 1.0) -> "ComplexPoly":
        alpha = tuple(alpha)
        return cls(len(alpha), {alpha: coeff})

    @classmethod
    def coordinate(cls, i: int, dimension: int) -> "ComplexPoly":
        """坐标函数 z_{i+1}"""
        return cls.monomial(mi.unit(i, dimension))

    @classmethod
    def from_coefficients(cls, coeffs: Iterable[complex]) -> "ComplexPoly":
        """一元多项式，系数按升幂排列"""
        return cls(1, {(k,): c for k, c in enumerate(coeffs)})

    # ---- 基本属性 ----

    def items(self) -> List[Tuple[MultiIndex, complex]]:
        """按分次字典序返回 (指标, 系数)"""
        return sorted(self._terms.items(), key=lambda kv: mi.graded_key(kv[0]))

    @property
    def degree(self) -> int:
        if not self._terms:
            return -1
        return max(mi.degree(alpha) for alpha in self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return self.degree <= 0

    def coefficient(self, alpha: Iterable[int]) -> complex:
        return self._terms.get(tuple(alpha), 0j)

    def coefficient_l1(self) -> float:
        """Σ|a_α|，是单位球上 sup|p| 的上界"""
        return float(sum(abs(c) for c in self._terms.values()))

    def to_coefficients(self) -> np.ndarray:
        """一元多项式的升幂系数数组"""
        if self.dimension != 1:
            raise InvalidInputError("只有一元多项式可以转为系数数组")
        coeffs = np.zeros(max(self.degree, 0) + 1, dtype=complex)
        for (k,), c in self._terms.items():
            coeffs[k] = c
        return coeffs

    # ---- 运算 ----

    def _check_dimension(self, other: "ComplexPoly"):
        if other.dimension != self.dimension:
            raise InvalidInputError(f"多项式维数不一致: {self.dimension} 与 {other.dimension}")

    def __add__(self, other: Union["ComplexPoly", Number]) -> "ComplexPoly":
        if isinstance(other, Number):
            other = ComplexPoly.constant(self.dimension, complex(other))
        self._check_dimension(other)
        result = ComplexPoly(self.dimension, self._terms)
        for alpha, c in other._terms.items():
            value = result._terms.get(alpha, 0j) + c
            if value == 0:
                result._terms.pop(alpha, None)
            else:
                result._terms[alpha] = value
        return result

    __radd__ = __add__

    def __neg__(self) -> "ComplexPoly":
        return self.scale(-1.0)

    def __sub__(self, other: Union["ComplexPoly", Number]) -> "ComplexPoly":
        return self + (-other)

    def __rsub__(self, other: Number) -> "ComplexPoly":
        return (-self) + other

    def scale(self, factor: complex) -> "ComplexPoly":
        return ComplexPoly(self.dimension, {a: factor * c for a, c in self._terms.items()})

    def __mul__(self, other: Union["ComplexPoly", Number]) -> "ComplexPoly":
        if isinstance(other, Number):
            return self.scale(complex(other))
        self._check_dimension(other)
        product: Dict[MultiIndex, complex] = {}
        for a0, c0 in self._terms.items():
            for a1, c1 in other._terms.items():
                alpha = mi.add(a0, a1)
                product[alpha] = product.get(alpha, 0j) + c0 * c1
        return ComplexPoly(self.dimension, product)

    __rmul__ = __mul__

    def truncate(self, m: int) -> "ComplexPoly":
        """保留 |α| <= m 的项"""
        return ComplexPoly(self.dimension, {a: c for a, c in self._terms.items() if mi.degree(a) <= m})

    # ---- 求值 ----

    def evaluate(self, points) -> np.ndarray:
        """
        在点集上求值

        Args:
            points: 形状 (..., n) 的复数组，或单个点

        Returns:
            形状 (...) 的复数组
        """
        z = np.asarray(points, dtype=complex)
        if z.shape[-1] != self.dimension:
            raise InvalidInputError(f"点的维数 {z.shape[-1]} 与多项式维数 {self.dimension} 不符")
        result = np.zeros(z.shape[:-1], dtype=complex)
        if not self._terms:
            return result
        top = [max(alpha[i] for alpha in self._terms) for i in range(self.dimension)]
        powers = []
        for i in range(self.dimension):
            table = [np.ones(z.shape[:-1], dtype=complex)]
            for _ in range(top[i]):
                table.append(table[-1] * z[..., i])
            powers.append(table)
        for alpha, c in self.items():
            term = np.full(z.shape[:-1], c, dtype=complex)
            for i, a in enumerate(alpha):
                if a:
                    term = term * powers[i][a]
            result += term
        return result

    def __call__(self, point) -> complex:
        return complex(self.evaluate(np.asarray(point, dtype=complex)))

    # ---- 比较 ----

    def allclose(self, other: "ComplexPoly", tol: float = 1e-12) -> bool:
        self._check_dimension(other)
        keys = set(self._terms) | set(other._terms)
        return all(abs(self.coefficient(a) - other.coefficient(a)) <= tol for a in keys)

    def __eq__(self, other) -> bool:
        if not isinstance(other, ComplexPoly):
            return NotImplemented
        return self.dimension == other.dimension and self._terms == other._terms

    def __hash__(self):
        return hash((self.dimension, frozenset(self._terms.items())))

    def __repr__(self) -> str:
        if not self._terms:
            return f"ComplexPoly(n={self.dimension}, 0)"
        body = " + ".join(f"({c:.6g})z^{alpha}" for alpha, c in self.items())
        return f"ComplexPoly(n={self.dimension}, {body})"
