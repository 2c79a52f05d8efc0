"""
球面积分服务 - 精确单项式积分与 Monte Carlo 积分
"""
import logging
import math
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from typing import Callable, List, Optional, Sequence, Tuple, Union

import numpy as np

from app.config import Settings
from app.errors import InvalidInputError, PrecisionError
from app.models import multi_index as mi
from app.models.multi_index import MultiIndex
from app.models.points import BallPoint, SpherePoint
from app.models.poly import ComplexPoly
from app.models.results import Estimate, Method, NormOrder
from app.utils.cache import cached

logger = logging.getLogger(__name__)

# 每个随机块的样本数；样本 i 只依赖 (seed, i, n)
SAMPLE_BLOCK = 65_536

# (count, mean, M2)
_Moments = Tuple[int, float, float]


@cached
def monomial_integral(alpha: MultiIndex, beta: MultiIndex, n: int) -> Fraction:
    """
    ∫_{𝕊ⁿ} ζ^α ζ̄^β dσ 的精确有理值

    α ≠ β 时为 0，否则为 (n-1)! α! / (n-1+|α|)!。
    """
    alpha = mi.as_multi_index(alpha, n)
    beta = mi.as_multi_index(beta, n)
    if n < 1:
        raise InvalidInputError("维数必须 >= 1")
    if alpha != beta:
        return Fraction(0)
    return Fraction(math.factorial(n - 1) * mi.factorial(alpha), math.factorial(n - 1 + mi.degree(alpha)))


def kernel_taylor_coefficient(alpha: MultiIndex, n: int) -> Fraction:
    """S_n(z, w) = Σ_α c_α z^α w̄^α 中的 c_α = (n-1+|α|)! / ((n-1)! α!)"""
    return 1 / monomial_integral(alpha, alpha, n)


def to_float(value: Fraction) -> float:
    """精确有理数转浮点；溢出或下溢为 0 时拒绝"""
    try:
        result = float(value)
    except OverflowError:
        raise PrecisionError(f"有理数超出浮点表示范围: {value}")
    if result == 0.0 and value != 0:
        raise PrecisionError("有理数下溢为 0，拒绝舍入")
    if math.isinf(result):
        raise PrecisionError("有理数超出浮点表示范围")
    return result


def _block_points(n: int, seed: int, block: int, size: int) -> np.ndarray:
    """第 block 个块的前 size 个样本（计数器式 Philox，key = (block, seed)）"""
    generator = np.random.Generator(np.random.Philox(key=(block << 64) | seed))
    normals = generator.standard_normal((size, 2 * n))
    z = normals[:, :n] + 1j * normals[:, n:]
    return z / np.linalg.norm(z, axis=1, keepdims=True)


def _block_sizes(count: int) -> List[int]:
    full, rest = divmod(count, SAMPLE_BLOCK)
    return [SAMPLE_BLOCK] * full + ([rest] if rest else [])


def _combine(a: _Moments, b: _Moments) -> _Moments:
    """Chan 合并公式"""
    na, mean_a, m2_a = a
    nb, mean_b, m2_b = b
    total = na + nb
    delta = mean_b - mean_a
    mean = mean_a + delta * nb / total
    m2 = m2_a + m2_b + delta * delta * na * nb / total
    return total, mean, m2


def _pairwise(items: Sequence, combine: Callable):
    """固定形状的二叉归约树，与线程数无关"""
    if len(items) == 1:
        return items[0]
    middle = len(items) // 2
    return combine(_pairwise(items[:middle], combine), _pairwise(items[middle:], combine))


class SphereService:
    """𝕊ⁿ 上关于归一化面积测度 σ 的积分"""

    def __init__(self, settings: Settings):
        self.settings = settings

    # ---- 精确部分 ----

    def monomial_integral(self, alpha: Sequence[int], beta: Sequence[int], n: int) -> Fraction:
        """
        单项式积分的精确值

        Args:
            alpha: 多重指标 α
            beta: 多重指标 β
            n: 环境维数

        Returns:
            Fraction
        """
        if len(alpha) != n or len(beta) != n:
            raise InvalidInputError(f"多重指标长度与维数 {n} 不符")
        return monomial_integral(tuple(alpha), tuple(beta), n)

    def monomial_integral_value(self, alpha: Sequence[int], beta: Sequence[int], n: int) -> float:
        return to_float(self.monomial_integral(alpha, beta, n))

    # ---- 采样 ----

    def _map_blocks(self, fn: Callable[[int, int], object], count: int) -> list:
        sizes = _block_sizes(count)
        tasks = list(enumerate(sizes))
        if self.settings.workers == 1 or len(tasks) == 1:
            return [fn(block, size) for block, size in tasks]
        with ThreadPoolExecutor(max_workers=self.settings.workers) as pool:
            return list(pool.map(lambda task: fn(*task), tasks))

    def sample_sphere(self, n: int, count: int, seed: Optional[int] = None) -> np.ndarray:
        """
        σ-均匀分布的球面样本

        Args:
            n: 维数
            count: 样本数
            seed: 64 位种子，默认取配置

        Returns:
            (count, n) 复数组，是 (n, count, seed) 的纯函数
        """
        if n < 1 or count < 1:
            raise InvalidInputError("要求 n >= 1 且 count >= 1")
        seed = self.settings.seed if seed is None else int(seed)
        if not 0 <= seed < 2**64:
            raise InvalidInputError("seed 必须是 64 位无符号整数")
        blocks = self._map_blocks(lambda block, size: _block_points(n, seed, block, size), count)
        return np.vstack(blocks)

    def monte_carlo(
        self,
        integrand: Callable[[np.ndarray], np.ndarray],
        n: int,
        samples: Optional[int] = None,
        seed: Optional[int] = None,
    ) -> Estimate:
        """
        实值被积函数的 Monte Carlo 均值

        Args:
            integrand: 将 (k, n) 点阵映射为 (k,) 实数组
            n: 维数
            samples: 样本数，默认取配置
            seed: 种子，默认取配置

        Returns:
            Estimate(method=MonteCarlo)
        """
        samples = self.settings.mc_samples if samples is None else int(samples)
        seed = self.settings.seed if seed is None else int(seed)
        if samples < 1:
            raise InvalidInputError("样本数必须 >= 1")

        def block_moments(block: int, size: int) -> _Moments:
            values = np.asarray(integrand(_block_points(n, seed, block, size)), dtype=float)
            mean = float(np.mean(values))
            return size, mean, float(np.sum((values - mean) ** 2))

        count, mean, m2 = _pairwise(self._map_blocks(block_moments, samples), _combine)
        variance = m2 / (count - 1) if count > 1 else 0.0
        std_error = math.sqrt(max(variance, 0.0) / count)
        return Estimate(value=mean, std_error=std_error, samples=count, method=Method.MONTE_CARLO)

    # ---- 网格 ----

    def circle_grid(self, points: Optional[int] = None) -> np.ndarray:
        """单位圆上 N 个等距点，形状 (N, 1)"""
        size = self.settings.grid_points_per_dim if points is None else int(points)
        return np.exp(2j * np.pi * np.arange(size) / size)[:, None]

    def boundary_grid(self, n: int, points: Optional[int] = None) -> np.ndarray:
        """
        估计 sup 范数用的球面点集

        n = 1 为等距圆周网格；n >= 2 为确定性球面样本加上各坐标圆周。
        """
        if n == 1:
            return self.circle_grid(points)
        per_circle = self.settings.grid_points_per_dim if points is None else int(points)
        circle = np.exp(2j * np.pi * np.arange(per_circle) / per_circle)
        axes = []
        for i in range(n):
            ring = np.zeros((per_circle, n), dtype=complex)
            ring[:, i] = circle
            axes.append(ring)
        cloud = self.sample_sphere(n, self.settings.sphere_grid_points, self.settings.seed + 1)
        return np.vstack(axes + [cloud])

    # ---- 范数 ----

    def poly_sphere_norm(self, p: ComplexPoly, order: Union[NormOrder, str]) -> Estimate:
        """
        多项式在 𝕊ⁿ 上的 L1 / L2 / Linf 范数

        L2 精确；L1 为 Monte Carlo；Linf 为网格最大值（sup 的下估计）。
        """
        order = NormOrder(order)
        if p.is_zero():
            raise InvalidInputError("零多项式没有可用的范数估计")
        n = p.dimension

        if p.is_constant():
            return Estimate(value=abs(p.coefficient((0,) * n)), std_error=0.0, samples=0, method=Method.EXACT)

        if order == NormOrder.L2:
            return Estimate(value=math.sqrt(self.l2_norm_squared(p)), std_error=0.0, samples=0, method=Method.EXACT)

        if order == NormOrder.L1:
            return self.monte_carlo(lambda pts: np.abs(p.evaluate(pts)), n)

        grid = self.boundary_grid(n)
        value = float(np.max(np.abs(p.evaluate(grid))))
        return Estimate(value=value, std_error=0.0, samples=grid.shape[0], method=Method.GRID, lower_bound=True)

    def l2_norm_squared(self, p: ComplexPoly) -> float:
        """‖p‖₂² = Σ |a_α|² ∫|ζ^α|² dσ"""
        n = p.dimension
        return float(sum(abs(c) ** 2 * to_float(monomial_integral(alpha, alpha, n)) for alpha, c in p.items()))

    # ---- Poisson 核 ----

    def poisson_kernel(self, z: Union[BallPoint, Sequence[complex]], zeta, n: Optional[int] = None):
        """
        P(z, ζ) = (1 - ‖z‖²)ⁿ / |1 - ⟨z, ζ⟩|^{2n}

        Args:
            z: 开球中的点
            zeta: SpherePoint 或形状 (..., n) 的球面点阵
            n: 维数，默认取 z 的维数

        Returns:
            正实数或实数组
        """
        point = z if isinstance(z, BallPoint) else BallPoint(z)
        n = point.dimension if n is None else n
        if point.dimension != n:
            raise InvalidInputError(f"点的维数 {point.dimension} 与 n = {n} 不符")
        zeta_arr = zeta.coords if isinstance(zeta, SpherePoint) else np.asarray(zeta, dtype=complex)
        if zeta_arr.shape[-1] != n:
            raise InvalidInputError("ζ 的维数与 z 不符")
        inner = zeta_arr.conj() @ point.coords
        value = (1.0 - point.norm2) ** n / np.abs(1.0 - inner) ** (2 * n)
        return float(value) if np.ndim(value) == 0 else value

    def poisson_mean(self, z: Union[BallPoint, Sequence[complex]]) -> Estimate:
        """P(z, ·) 在 𝕊ⁿ 上的 Monte Carlo 均值（理论值为 1）"""
        point = z if isinstance(z, BallPoint) else BallPoint(z)
        return self.monte_carlo(lambda pts: self.poisson_kernel(point, pts), point.dimension)
