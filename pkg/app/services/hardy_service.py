"""
Hardy 空间 H²(𝔹ⁿ) 服务 - Szegő 核、内积与 Gram 矩阵
"""
import logging
from typing import Sequence, Tuple, Union

import numpy as np

from app.config import Settings
from app.errors import InvalidInputError
from app.models.kernel import KernelCombo
from app.models.points import BallPoint, as_ball_array, check_distinct
from app.models.poly import ComplexPoly
from app.services.sphere_service import kernel_taylor_coefficient, monomial_integral, to_float
from app.utils.linalg import cholesky_lower, hermitize

logger = logging.getLogger(__name__)


def szego_matrix(left: np.ndarray, right: np.ndarray, n: int) -> np.ndarray:
    """[S_n(l_i, r_j)]，⟨l, r⟩ = Σ l_k r̄_k"""
    inner = left @ right.conj().T
    return 1.0 / (1.0 - inner) ** n


class HardyService:
    """H²(𝔹ⁿ) 上的精确计算"""

    def __init__(self, settings: Settings):
        self.settings = settings

    def szego_kernel(
        self,
        z: Union[BallPoint, Sequence[complex]],
        w: Union[BallPoint, Sequence[complex]],
        n: int = None,
    ) -> complex:
        """
        S_n(z, w) = 1 / (1 - ⟨z, w⟩)ⁿ

        Args:
            z: 开球中的点
            w: 开球中的点
            n: 维数，默认取点的维数

        Returns:
            复数值
        """
        zp = z if isinstance(z, BallPoint) else BallPoint(z)
        wp = w if isinstance(w, BallPoint) else BallPoint(w)
        n = zp.dimension if n is None else n
        if zp.dimension != n or wp.dimension != n:
            raise InvalidInputError("点的维数与 n 不符")
        return complex(1.0 / (1.0 - np.vdot(wp.coords, zp.coords)) ** n)

    def h2_inner(self, p: ComplexPoly, q: ComplexPoly) -> complex:
        """⟨p, q⟩ = Σ_α a_α conj(b_α) ∫|ζ^α|² dσ"""
        if p.dimension != q.dimension:
            raise InvalidInputError(f"多项式维数不一致: {p.dimension} 与 {q.dimension}")
        n = p.dimension
        total = 0j
        for alpha, a in p.items():
            b = q.coefficient(alpha)
            if b:
                total += a * b.conjugate() * to_float(monomial_integral(alpha, alpha, n))
        return total

    def kernel_gram(self, points: Sequence) -> np.ndarray:
        """
        Gram 矩阵 [S_n(z_i, z_j)]

        Raises:
            IllConditionedError: 节点数值上重合
        """
        gram, _ = self.gram_factor(points)
        return gram

    def gram_factor(self, points: Sequence) -> Tuple[np.ndarray, np.ndarray]:
        """Gram 矩阵及其下三角 Cholesky 因子 L（G = L L*）"""
        array = as_ball_array(points)
        check_distinct(array)
        n = array.shape[1]
        gram = hermitize(szego_matrix(array, array, n))
        factor = cholesky_lower(gram, self.settings.gram_rcond_min)
        gram.setflags(write=False)
        factor.setflags(write=False)
        return gram, factor

    def eval_kernel_combo(self, f: KernelCombo, z) -> Union[complex, np.ndarray]:
        """
        f(z) = Σ_j c_j S_n(z, z_j)

        Args:
            f: 核组合
            z: 单个点或 (k, n) 点阵

        Returns:
            复数或复数组
        """
        array = np.asarray(z.coords if isinstance(z, BallPoint) else z, dtype=complex)
        single = array.ndim == 1
        pts = np.atleast_2d(array)
        if pts.shape[1] != f.dimension:
            raise InvalidInputError("点的维数与核组合不符")
        values = szego_matrix(pts, f.points, f.dimension) @ f.coeffs
        return complex(values[0]) if single else values

    def kernel_combo_inner(self, f: KernelCombo, g: KernelCombo) -> complex:
        """⟨Σ c_j k_{z_j}, Σ d_i k_{w_i}⟩ = Σ c_j conj(d_i) S_n(w_i, z_j)"""
        if f.dimension != g.dimension:
            raise InvalidInputError("核组合维数不一致")
        kernel = szego_matrix(g.points, f.points, f.dimension)
        return complex(g.coeffs.conj() @ kernel @ f.coeffs)

    def kernel_combo_norm2(self, f: KernelCombo) -> float:
        return float(self.kernel_combo_inner(f, f).real)

    def reproduce(self, p: ComplexPoly, w: Union[BallPoint, Sequence[complex]]) -> complex:
        """
        通过核的幂级数展开计算 ⟨p, S_n(·, w)⟩，应等于 p(w)

        S_n(·, w) 的 z^α 系数为 c_α w̄^α，只需展开到 deg p。
        """
        point = w if isinstance(w, BallPoint) else BallPoint(w)
        n = p.dimension
        if point.dimension != n:
            raise InvalidInputError("点的维数与多项式不符")
        total = 0j
        for alpha, a in p.items():
            w_alpha = complex(np.prod(point.coords ** np.asarray(alpha)))
            kernel_coeff = to_float(kernel_taylor_coefficient(alpha, n)) * w_alpha.conjugate()
            total += a * kernel_coeff.conjugate() * to_float(monomial_integral(alpha, alpha, n))
        return total
