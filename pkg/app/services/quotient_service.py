"""
商模服务 - Q_Z、Q_m、正交投影与压缩乘法算子
"""
import logging
import math
from typing import Sequence, Union

import numpy as np
from scipy import linalg

from app.config import Settings
from app.errors import ConsistencyError, InvalidInputError, NumericalError
from app.models import multi_index as mi
from app.models.interpolation import InterpolationData
from app.models.kernel import KernelCombo
from app.models.modules import CompressedOp, KernelSpan, PolySpace
from app.models.points import as_ball_array
from app.models.poly import ComplexPoly
from app.services.hardy_service import HardyService
from app.services.sphere_service import monomial_integral, to_float
from app.utils.linalg import bisect_min_scale, congruence, is_psd, reciprocal_condition

logger = logging.getLogger(__name__)

# 投影残差（相对）上限
PROJECTION_RESIDUAL = 1e-10
# 两条范数路径的一致性要求
ROUTE_AGREEMENT = 1e-8
ROUTE_FAILURE = 1e-6


class QuotientService:
    """有限维商模上的模映射"""

    def __init__(self, settings: Settings):
        self.settings = settings
        self.hardy = HardyService(settings)

    # ---- 构造 ----

    def build_qz(self, points: Sequence) -> KernelSpan:
        """Q_Z = span{S_n(·, z_i)}"""
        gram, factor = self.hardy.gram_factor(points)
        array = as_ball_array(points)
        array.setflags(write=False)
        return KernelSpan(points=array, gram=gram, factor=factor)

    def build_qm(self, m: int, n: int) -> PolySpace:
        """Q_m = {deg p <= m}，维数 C(n+m, n)"""
        if m < 0 or n < 1:
            raise InvalidInputError(f"要求 m >= 0 且 n >= 1，收到 m={m}, n={n}")
        basis = tuple(mi.multi_indices_up_to(m, n))
        norms2 = tuple(monomial_integral(alpha, alpha, n) for alpha in basis)
        norms = np.sqrt(np.array([to_float(v) for v in norms2]))
        norms.setflags(write=False)
        return PolySpace(m=m, n=n, basis=basis, norms2=norms2, norms=norms)

    # ---- 投影 ----

    def project_qz(self, values: Sequence[complex], module: KernelSpan) -> KernelCombo:
        """
        P_{Q_Z} f = Σ c_j k_{z_j}，其中 G c = (f(z_i))

        Args:
            values: f 在节点上的取值
            module: Q_Z

        Returns:
            核组合
        """
        v = np.asarray(values, dtype=complex).reshape(-1)
        if v.shape[0] != module.dimension:
            raise InvalidInputError(f"取值个数 {v.shape[0]} 与节点个数 {module.dimension} 不符")
        coeffs = linalg.cho_solve((module.factor, True), v)
        residual = float(np.linalg.norm(module.gram @ coeffs - v))
        scale = max(float(np.linalg.norm(v)), float(np.linalg.norm(module.gram, 2) * np.linalg.norm(coeffs)))
        if scale > 0 and residual > PROJECTION_RESIDUAL * scale:
            raise NumericalError(f"Gram 方程求解失败，相对残差 {residual / scale:.3e}")
        return KernelCombo(module.points, coeffs)

    def project_qm(self, p: ComplexPoly, m: int) -> ComplexPoly:
        """Q_m^⊥ = J_{m+1}，投影即截去次数 > m 的项"""
        return p.truncate(m)

    def coordinates(self, p: ComplexPoly, module: PolySpace) -> np.ndarray:
        """P_{Q_m} p 在正交规范基 e_α 下的坐标"""
        if p.dimension != module.n:
            raise InvalidInputError("多项式维数与商模不符")
        return np.array([p.coefficient(alpha) for alpha in module.basis], dtype=complex) * module.norms

    # ---- 压缩算子 ----

    def compress_on_qm(self, p: ComplexPoly, module: PolySpace) -> CompressedOp:
        """
        S_p = P_{Q_m} T_p|_{Q_m} 在 e_α 基下的矩阵

        entry(γ, β) = ⟨p z^β, z^γ⟩ / (‖z^β‖ ‖z^γ‖)
        """
        if p.dimension != module.n:
            raise InvalidInputError("多项式维数与商模不符")
        size = module.dimension
        matrix = np.zeros((size, size), dtype=complex)
        monomials = [ComplexPoly.monomial(alpha) for alpha in module.basis]
        for col, beta in enumerate(module.basis):
            image = p * monomials[col]
            for row, gamma in enumerate(module.basis):
                if mi.degree(gamma) < mi.degree(beta):
                    continue
                value = self.hardy.h2_inner(image, monomials[row])
                if value:
                    matrix[row, col] = value / (module.norms[col] * module.norms[row])
        matrix.setflags(write=False)
        return CompressedOp(module=module, matrix=matrix)

    def compress_on_qz(self, phi_values: Sequence[complex], module: KernelSpan) -> CompressedOp:
        """
        S_φ 在核基下的矩阵 A = G⁻¹ diag(φ(z_i)) G

        其 Gram 伴随 G⁻¹ A* G = diag(conj φ(z_i))，即 S_φ* k_{z_i} = conj(φ(z_i)) k_{z_i}。
        """
        phi = np.asarray(phi_values, dtype=complex).reshape(-1)
        if phi.shape[0] != module.dimension:
            raise InvalidInputError(f"取值个数 {phi.shape[0]} 与节点个数 {module.dimension} 不符")
        matrix = linalg.cho_solve((module.factor, True), phi[:, None] * module.gram)
        matrix.setflags(write=False)
        phi.setflags(write=False)
        return CompressedOp(module=module, matrix=matrix, node_values=phi)

    def compress_poly_on_qz(self, p: ComplexPoly, module: KernelSpan) -> CompressedOp:
        """多项式乘子 p 在 Q_Z 上的压缩"""
        return self.compress_on_qz(p.evaluate(module.points), module)

    def module_map(self, points: Union[InterpolationData, Sequence], values: Sequence[complex] = None) -> CompressedOp:
        """X_{Z,W}：X* k_{z_i} = w̄_i k_{z_i}"""
        if isinstance(points, InterpolationData):
            points, values = points.points, points.values
        if values is None:
            raise InvalidInputError("缺少插值取值 W")
        return self.compress_on_qz(values, self.build_qz(points))

    def gram_adjoint(self, op: CompressedOp) -> np.ndarray:
        """模内积下的伴随矩阵"""
        if op.orthonormal:
            return op.matrix.conj().T
        module = op.module
        return linalg.cho_solve((module.factor, True), op.matrix.conj().T @ module.gram)

    # ---- 范数 ----

    def _gram_route(self, op: CompressedOp) -> float:
        if op.dimension == 0:
            return 0.0
        if op.orthonormal:
            return float(linalg.svdvals(op.matrix)[0])
        factor = op.module.factor
        left = factor.conj().T @ op.matrix
        # X = left · L^{-*}  <=>  L X* = left*
        whitened = linalg.solve_triangular(factor, left.conj().T, lower=True).conj().T
        return float(linalg.svdvals(whitened)[0])

    def psd_route(self, module: KernelSpan, values: np.ndarray) -> float:
        """最小 t >= 0 使 [(t² - w_i w̄_j) S_n(z_i, z_j)] 半正定"""
        gram = module.gram
        outer = np.outer(values, values.conj())
        kappa = 1.0 / max(reciprocal_condition(gram), np.finfo(float).tiny)
        upper = float(np.max(np.abs(values))) * math.sqrt(kappa) + 1.0

        # 在 Gram 合同变换后的坐标中判定，容差与 G 的条件数无关
        def feasible(t: float) -> bool:
            return is_psd(congruence((t * t - outer) * gram, module.factor), self.settings.tol_psd)

        return bisect_min_scale(feasible, upper, self.settings.tol_bisect, self.settings.max_bisect_iter)

    def gram_operator_norm(self, op: CompressedOp) -> float:
        """
        模内积意义下的算子范数

        正交规范基取最大奇异值；核基取 L* A L^{-*} 的最大奇异值。
        带节点取值的算子同时用半正定二分计算，两者须一致。

        Raises:
            ConsistencyError: 两条路径相差超过 1e-6
        """
        norm = self._gram_route(op)
        if op.node_values is None or op.orthonormal:
            return norm
        alternative = self.psd_route(op.module, op.node_values)
        gap = abs(norm - alternative)
        if gap > ROUTE_FAILURE:
            raise ConsistencyError(
                f"算子范数两条路径不一致: 奇异值 {norm:.12g}, 半正定二分 {alternative:.12g}",
                gram_route=norm,
                psd_route=alternative,
            )
        if gap > ROUTE_AGREEMENT:
            logger.warning("operator norm routes differ by %.3e", gap)
        return norm
