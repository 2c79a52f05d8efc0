"""
线性代数工具 - Cholesky 分解、半正定判定与二分搜索
"""
import logging
from typing import Callable

import numpy as np
from scipy import linalg
from scipy.linalg import lapack

from app.errors import IllConditionedError

logger = logging.getLogger(__name__)


def hermitize(matrix: np.ndarray) -> np.ndarray:
    """由上三角重建精确 Hermite 矩阵（对角线取实部）"""
    upper = np.triu(matrix, 1)
    result = upper + upper.conj().T
    result[np.diag_indices_from(result)] = np.real(np.diag(matrix))
    return result


def cholesky_lower(matrix: np.ndarray, rcond_min: float) -> np.ndarray:
    """
    Hermite 正定矩阵的下三角 Cholesky 分解

    Args:
        matrix: Hermite 矩阵
        rcond_min: 倒条件数下限

    Returns:
        下三角因子 L，满足 matrix = L L*

    Raises:
        IllConditionedError: 分解失败（带出错主元）或条件数过差
    """
    factor, info = lapack.zpotrf(np.asarray(matrix, dtype=complex), lower=1, clean=1)
    if info > 0:
        raise IllConditionedError(
            f"Gram 矩阵不是正定的，第 {info} 个主元失败（节点数值上重合）",
            pivot=int(info),
        )
    if info < 0:
        raise IllConditionedError(f"Cholesky 参数非法: {info}")

    rcond = reciprocal_condition(matrix)
    if rcond < rcond_min:
        raise IllConditionedError(
            f"Gram 矩阵病态，倒条件数 {rcond:.3e} < {rcond_min:.1e}",
            pivot=int(np.argmin(np.abs(np.diag(factor)))) + 1,
            rcond=float(rcond),
        )
    return np.tril(factor)


def reciprocal_condition(matrix: np.ndarray) -> float:
    """2-范数意义下的倒条件数"""
    eigenvalues = linalg.eigvalsh(matrix)
    top = float(np.max(np.abs(eigenvalues)))
    if top == 0.0:
        return 0.0
    return float(np.min(eigenvalues)) / top


def min_eigenvalue(matrix: np.ndarray) -> float:
    """Hermite 矩阵的最小特征值"""
    return float(linalg.eigvalsh(matrix)[0])


def is_psd(matrix: np.ndarray, tol_rel: float) -> bool:
    """最小特征值 >= -tol_rel * max|entry| 视为半正定"""
    scale = float(np.max(np.abs(matrix))) if matrix.size else 0.0
    return min_eigenvalue(matrix) >= -tol_rel * scale


def bisect_min_scale(
    feasible: Callable[[float], bool],
    upper: float,
    tol: float,
    max_iter: int,
) -> float:
    """
    在 [0, upper] 上二分求最小可行 t（可行性关于 t 单调）

    Args:
        feasible: 可行性判定
        upper: 已知可行的上端点
        tol: 区间宽度容差
        max_iter: 最大迭代次数

    Returns:
        可行端点 hi
    """
    lo, hi = 0.0, float(upper)
    if feasible(lo):
        return lo
    for _ in range(max_iter):
        if hi - lo <= tol:
            break
        mid = 0.5 * (lo + hi)
        if feasible(mid):
            hi = mid
        else:
            lo = mid
    logger.debug("bisection finished with bracket [%.17g, %.17g]", lo, hi)
    return hi


def congruence(matrix: np.ndarray, factor: np.ndarray) -> np.ndarray:
    """L⁻¹ M L^{-*}，与 M 同为（非）半正定"""
    half = linalg.solve_triangular(factor, matrix, lower=True)
    return hermitize(linalg.solve_triangular(factor, half.conj().T, lower=True))
