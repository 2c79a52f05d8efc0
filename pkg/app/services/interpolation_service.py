"""
插值服务 - ψ_{Z,W}、Pick 矩阵、Pick 常数与 Schur 递推插值
"""
import logging
import math
from typing import Optional, Tuple

import numpy as np

from app.config import Settings
from app.errors import DegeneratePickError, InvalidInputError, NumericalError
from app.models.interpolation import InterpolationData, RationalFn1D
from app.models.kernel import KernelCombo
from app.models.poly import ComplexPoly
from app.services.quotient_service import QuotientService
from app.utils.linalg import bisect_min_scale, congruence, hermitize, is_psd, min_eigenvalue, reciprocal_condition

logger = logging.getLogger(__name__)

# 严格可行性阈值：min eig > STRICTNESS * trace
STRICTNESS = 1e-9
NODE_RESIDUAL = 1e-8
BOUNDARY_SLACK = 1e-6


def _require_disc(data: InterpolationData):
    if data.dimension != 1:
        raise InvalidInputError(f"该操作只适用于 n = 1，收到 n = {data.dimension}")


class InterpolationService:
    """Nevanlinna–Pick 插值"""

    def __init__(self, settings: Settings):
        self.settings = settings
        self.quotient = QuotientService(settings)

    # ---- ψ_{Z,W} ----

    def solve_psi(self, data: InterpolationData) -> KernelCombo:
        """
        ψ_{Z,W} = Σ c_j S_n(·, z_j)，G c = W

        Args:
            data: 插值数据

        Returns:
            在节点上插值 W 的核组合
        """
        module = self.quotient.build_qz(data.points)
        return self.quotient.project_qz(data.values, module)

    def psi_from_module_map(self, data: InterpolationData) -> KernelCombo:
        """ψ = X_{Z,W}(P_{Q_Z} 1)"""
        module = self.quotient.build_qz(data.points)
        unit = self.quotient.project_qz(np.ones(data.size), module)
        op = self.quotient.compress_on_qz(data.values, module)
        return KernelCombo(module.points, op.matrix @ unit.coeffs)

    # ---- n = 1 的 Pick 理论 ----

    def pick_matrix(self, data: InterpolationData) -> np.ndarray:
        """[(1 - w_i w̄_j) / (1 - z_i z̄_j)]"""
        _require_disc(data)
        z = data.points[:, 0]
        w = data.values
        matrix = (1.0 - np.outer(w, w.conj())) / (1.0 - np.outer(z, z.conj()))
        return hermitize(matrix)

    def pick_min_eigenvalue(self, data: InterpolationData) -> float:
        return min_eigenvalue(self.pick_matrix(data))

    def pick_feasible(self, data: InterpolationData, tol: Optional[float] = None) -> bool:
        """Pick 矩阵半正定（最小特征值 >= -tol）"""
        tol = self.settings.tol_psd if tol is None else tol
        return self.pick_min_eigenvalue(data) >= -tol

    def pick_constant(self, data: InterpolationData, tol: Optional[float] = None) -> float:
        """
        t* = min{‖φ‖_∞ : φ(z_i) = w_i}

        二分求最小 t 使 [(t² - w_i w̄_j) / (1 - z_i z̄_j)] 半正定。

        Args:
            data: n = 1 的插值数据
            tol: 二分容差（对 t 的绝对容差）

        Returns:
            Pick 常数
        """
        _require_disc(data)
        tol = self.settings.tol_bisect if tol is None else tol
        z = data.points[:, 0]
        w = data.values
        kernel = hermitize(1.0 / (1.0 - np.outer(z, z.conj())))
        factor = self.quotient.build_qz(data.points).factor
        outer = np.outer(w, w.conj())
        kappa = 1.0 / max(reciprocal_condition(kernel), np.finfo(float).tiny)
        upper = float(np.max(np.abs(w))) * math.sqrt(kappa) + 1.0

        def feasible(t: float) -> bool:
            return is_psd(congruence((t * t - outer) * kernel, factor), self.settings.tol_psd)

        return bisect_min_scale(feasible, upper, tol, self.settings.max_bisect_iter)

    # ---- Schur 递推 ----

    def schur_interpolant(self, data: InterpolationData) -> RationalFn1D:
        """
        严格可行数据的有理插值函数（逐点约化的 Schur 递推）

        Raises:
            DegeneratePickError: Pick 矩阵退化（有限 Blaschke 积情形，不在处理范围内）
            NumericalError: 结果未通过残差或边界检查
        """
        _require_disc(data)
        if np.any(np.abs(data.values) >= 1.0):
            raise InvalidInputError("Schur 递推要求 |w_i| < 1")
        pick = self.pick_matrix(data)
        smallest = min_eigenvalue(pick)
        threshold = STRICTNESS * float(np.trace(pick).real)
        if smallest <= threshold:
            raise DegeneratePickError(
                f"Pick 矩阵不是严格正定的（最小特征值 {smallest:.3e}），"
                "解为有限 Blaschke 积，请使用秩亏情形的专门方法",
                min_eigenvalue=smallest,
            )

        numerator, denominator = self._reduce(data.points[:, 0], data.values)
        phi = RationalFn1D(numerator, denominator)

        residual = float(np.max(np.abs(phi.evaluate(data.points[:, 0]) - data.values)))
        if residual > NODE_RESIDUAL:
            raise NumericalError(f"Schur 插值节点残差 {residual:.3e} 超限")
        if not phi.denominator_nonvanishing():
            raise NumericalError("Schur 插值的分母在闭圆盘上有零点")
        sup = phi.boundary_sup()
        if sup > 1.0 + BOUNDARY_SLACK:
            raise NumericalError(f"Schur 插值边界 sup {sup:.12g} 超过 1")
        logger.debug("schur interpolant: residual %.3e, boundary sup %.15g", residual, sup)
        return phi

    def _reduce(self, z: np.ndarray, w: np.ndarray) -> Tuple[ComplexPoly, ComplexPoly]:
        """剥离第一个节点：φ = (w₁ + b φ₁) / (1 + w̄₁ b φ₁)，b(z) = (z - z₁)/(1 - z̄₁ z)"""
        if z.shape[0] == 1:
            return ComplexPoly.constant(1, w[0]), ComplexPoly.constant(1, 1.0)

        z1, w1 = z[0], w[0]
        rest = z[1:]
        blaschke = (rest - z1) / (1.0 - np.conj(z1) * rest)
        reduced = (w[1:] - w1) / (1.0 - np.conj(w1) * w[1:]) / blaschke
        if np.any(np.abs(reduced) >= 1.0):
            raise DegeneratePickError("约化后的取值模长 >= 1，数据不是严格可行的")

        inner_num, inner_den = self._reduce(rest, reduced)
        shift = ComplexPoly.from_coefficients([-z1, 1.0])
        denom_factor = ComplexPoly.from_coefficients([1.0, -np.conj(z1)])
        numerator = denom_factor * inner_den * w1 + shift * inner_num
        denominator = denom_factor * inner_den + shift * inner_num * np.conj(w1)
        return numerator, denominator
