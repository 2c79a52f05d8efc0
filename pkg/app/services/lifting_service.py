"""
提升判定服务 - 扰动判定、算子范数下界、sup 范数上界与距离区间
"""
import logging
import math
from typing import List, Optional, Sequence, Tuple, Union

import cvxpy as cp
import numpy as np
from scipy import linalg

from app.config import Settings
from app.errors import ConsistencyError, InvalidInputError, SolverError
from app.models import multi_index as mi
from app.models.interpolation import InterpolationData, RationalFn1D
from app.models.kernel import KernelCombo
from app.models.modules import KernelSpan, PolySpace, QuotientModuleRep
from app.models.multi_index import MultiIndex
from app.models.poly import ComplexPoly
from app.models.results import (
    LiftCheck,
    LiftReport,
    NormOrder,
    PolyVerdict,
    SupnormResult,
    UnitLiftResult,
    Verdict,
)
from app.services.hardy_service import HardyService
from app.services.interpolation_service import InterpolationService
from app.services.quotient_service import QuotientService
from app.services.sphere_service import SphereService

logger = logging.getLogger(__name__)

# n >= 2 时网格 sup 的启发式膨胀系数
HEURISTIC_INFLATION = 1.02
# 低于该值的范数视为 0，对应距离记为 +∞
NORM_EPSILON = 1e-14
PERTURBATION_TOL = 1e-8
NORMALIZATION_TOL = 1e-10
# 浮点舍入的下限，避免 |p| ≡ 1 时的误判
ROUNDING_FLOOR = 1e-12
# 见证多项式中视为 0 的系数
COEFF_CLEANUP = 1e-12

_SOLVERS = ("CLARABEL", "ECOS", "SCS")

Evaluable = Union[KernelCombo, ComplexPoly, RationalFn1D]


def coefficient_l1_bound(q: ComplexPoly) -> float:
    """Σ|a_α| >= sup_{𝔹ⁿ} |q|"""
    return q.coefficient_l1()


def monomial_matrix(points: np.ndarray, basis: Sequence[MultiIndex]) -> np.ndarray:
    """[z_s^α]，行对应点，列对应指标"""
    return np.column_stack([ComplexPoly.monomial(alpha).evaluate(points) for alpha in basis])


class LiftingService:
    """模映射的提升判定"""

    def __init__(self, settings: Settings):
        self.settings = settings
        self.sphere = SphereService(settings)
        self.hardy = HardyService(settings)
        self.quotient = QuotientService(settings)
        self.interpolation = InterpolationService(settings)

    # ---- 扰动判定 ----

    def _values_at(self, f: Evaluable, points: np.ndarray) -> np.ndarray:
        if isinstance(f, KernelCombo):
            return self.hardy.eval_kernel_combo(f, points)
        if isinstance(f, RationalFn1D):
            if points.shape[1] != 1:
                raise InvalidInputError("一元有理函数只能在 n = 1 的节点上求值")
            return f.evaluate(points[:, 0])
        return f.evaluate(points)

    def perturbation_check(
        self,
        psi: Evaluable,
        phi: Evaluable,
        module: QuotientModuleRep,
        tol: Optional[float] = None,
    ) -> bool:
        """
        判定 ψ - φ ∈ Q^⊥

        Q_Z 上等价于 φ 与 ψ 在节点处取值相同；Q_m 上等价于 ψ - φ 没有次数 <= m 的项。

        Args:
            psi: ψ（核组合或多项式）
            phi: 候选提升符号
            module: 商模
            tol: 容差

        Returns:
            是否属于 Q^⊥
        """
        tol = PERTURBATION_TOL if tol is None else tol
        if isinstance(module, KernelSpan):
            gap = self._values_at(psi, module.points) - self._values_at(phi, module.points)
            return bool(np.max(np.abs(gap)) <= tol)
        if not isinstance(psi, ComplexPoly) or not isinstance(phi, ComplexPoly):
            raise InvalidInputError("Q_m 上的扰动判定需要多项式系数")
        low = (psi - phi).truncate(module.m)
        return all(abs(c) <= tol for _, c in low.items())

    # ---- 必要条件 ----

    def lift_necessary_check(self, data: InterpolationData) -> LiftCheck:
        """‖X_{Z,W}‖ <= 1 是存在压缩提升的必要条件"""
        opnorm = self.quotient.gram_operator_norm(self.quotient.module_map(data))
        return LiftCheck(opnorm=opnorm, passed=opnorm <= 1.0 + self.settings.tol_psd)

    # ---- 多项式的 L1/L2 判据 ----

    def unit_l2_lift_test(self, p: ComplexPoly, m: int) -> UnitLiftResult:
        """
        ‖p‖₂ = 1 时，S_p 在 Q_m 上可提升当且仅当 ‖p‖₁ = 1，即 |p| ≡ 1

        Raises:
            InvalidInputError: p 未归一化或 m < deg p
        """
        if p.is_zero():
            raise InvalidInputError("零多项式无法归一化")
        if m < p.degree:
            raise InvalidInputError(f"要求 m >= deg p = {p.degree}")
        l2 = math.sqrt(self.sphere.l2_norm_squared(p))
        if abs(l2 - 1.0) > NORMALIZATION_TOL:
            raise InvalidInputError(f"要求 ‖p‖₂ = 1，实际为 {l2:.15g}", l2=l2)

        l1 = self.sphere.poly_sphere_norm(p, NormOrder.L1)
        grid = self.sphere.boundary_grid(p.dimension)
        deviation = float(np.max(np.abs(np.abs(p.evaluate(grid)) - 1.0)))

        spread = 3.0 * l1.std_error
        if l1.value >= 1.0 - spread - ROUNDING_FLOOR and deviation <= self.settings.unimodular_tol:
            verdict = PolyVerdict.LIFT
        elif l1.value + spread < 1.0 - ROUNDING_FLOOR:
            verdict = PolyVerdict.NO_LIFT
        else:
            verdict = PolyVerdict.UNDETERMINED
        logger.info("unit L2 lift test: l1=%.12g ± %.3g, verdict %s", l1.value, l1.std_error, verdict.value)
        return UnitLiftResult(l1=l1, verdict=verdict, max_deviation=deviation, l2=l2)

    # ---- sup 范数上界 ----

    def inflation(self, n: int) -> Tuple[float, bool]:
        """
        网格 sup 的膨胀系数及是否为严格上界

        n = 1 取 1/cos(π D / N)（D 为配置的最大次数）；n >= 2 取 1.02，仅为启发式。
        """
        explicit = self.settings.inflation_factor
        if n == 1:
            size = self.settings.grid_points_per_dim
            top = self.settings.max_degree
            if size <= 2 * top:
                raise InvalidInputError(f"圆周网格点数 {size} 必须大于 2 × max_degree = {2 * top}")
            bernstein = 1.0 / math.cos(math.pi * top / size)
            if explicit is None:
                return bernstein, True
            return explicit, explicit >= bernstein
        if explicit is None:
            return HEURISTIC_INFLATION, False
        return explicit, False

    def _check_degree(self, degree: int):
        if degree < 0:
            raise InvalidInputError("次数必须 >= 0")
        if degree > self.settings.max_degree:
            raise InvalidInputError(f"次数 {degree} 超过 max_degree = {self.settings.max_degree}")

    def _solve_minimax(self, values: np.ndarray, directions: np.ndarray) -> np.ndarray:
        """min_y max_s |values_s + (directions y)_s|，返回最优 y"""
        y = cp.Variable(directions.shape[1], complex=True)
        t = cp.Variable()
        problem = cp.Problem(cp.Minimize(t), [cp.abs(values + directions @ y) <= t])
        installed = set(cp.installed_solvers())
        for name in _SOLVERS:
            if name not in installed:
                continue
            try:
                problem.solve(solver=name)
            except cp.error.SolverError as e:
                logger.debug("solver %s failed: %s", name, e)
                continue
            if problem.status in (cp.OPTIMAL, cp.OPTIMAL_INACCURATE) and y.value is not None:
                logger.debug("solver %s status %s, t=%.12g", name, problem.status, t.value)
                return np.asarray(y.value, dtype=complex)
        raise SolverError(f"minimax 求解失败，状态: {problem.status}")

    def _best_representative(
        self,
        n: int,
        basis: List[MultiIndex],
        base: np.ndarray,
        directions: np.ndarray,
        degree: int,
    ) -> SupnormResult:
        """在仿射族 base + directions·y 中求网格 sup 最小的多项式"""
        grid = self.sphere.boundary_grid(n)
        evaluation = monomial_matrix(grid, basis)
        coeffs = base.copy()
        if directions.shape[1] > 0 and np.any(evaluation @ base):
            coeffs = base + directions @ self._solve_minimax(evaluation @ base, evaluation @ directions)
        coeffs = np.where(np.abs(coeffs) <= COEFF_CLEANUP, 0.0, coeffs)
        witness = ComplexPoly(n, dict(zip(basis, coeffs)))
        grid_value = float(np.max(np.abs(evaluation @ coeffs)))
        factor, certified = self.inflation(n)
        return SupnormResult(
            value=factor * grid_value,
            grid_value=grid_value,
            inflation=factor,
            degree=degree,
            grid_size=grid.shape[0],
            witness=witness,
            certified=certified,
        )

    def _minimal_degree(self, data: InterpolationData, start: int) -> Optional[int]:
        for candidate in range(start, self.settings.max_degree + 1):
            system = monomial_matrix(data.points, mi.multi_indices_up_to(candidate, data.dimension))
            if np.linalg.matrix_rank(system) == data.size:
                return candidate
        return None

    def min_supnorm_upper(self, data: InterpolationData, degree: int) -> SupnormResult:
        """
        min{max_grid |q| : deg q <= d, q(z_i) = w_i} 乘以膨胀系数

        插值约束通过特解加零空间参数化精确满足。

        Raises:
            InvalidInputError: 次数 d 下约束不可行（附最小可行次数）
            SolverError: 求解器未收敛
        """
        self._check_degree(degree)
        n = data.dimension
        basis = mi.multi_indices_up_to(degree, n)
        system = monomial_matrix(data.points, basis)
        base, *_ = linalg.lstsq(system, data.values)
        residual = float(np.linalg.norm(system @ base - data.values))
        if residual > 1e-10 * max(1.0, float(np.linalg.norm(data.values))):
            hint = self._minimal_degree(data, degree + 1)
            raise InvalidInputError(
                f"次数 {degree} 下插值约束不可行",
                minimal_feasible_degree=hint,
            )
        directions = linalg.null_space(system)
        result = self._best_representative(n, basis, base, directions, degree)

        # 消去求解器误差，使节点插值精确成立
        coeffs = np.array([result.witness.coefficient(alpha) for alpha in basis])
        correction, *_ = linalg.lstsq(system, data.values - system @ coeffs)
        if np.any(correction):
            coeffs = coeffs + correction
            witness = ComplexPoly(n, dict(zip(basis, coeffs)))
            grid = self.sphere.boundary_grid(n)
            grid_value = float(np.max(np.abs(witness.evaluate(grid))))
            result = SupnormResult(
                value=result.inflation * grid_value,
                grid_value=grid_value,
                inflation=result.inflation,
                degree=degree,
                grid_size=result.grid_size,
                witness=witness,
                certified=result.certified,
            )
        return result

    def poly_min_supnorm_upper(self, p: ComplexPoly, m: int, degree: int) -> SupnormResult:
        """min{max_grid |q| : q - p ∈ Q_m^⊥, deg q <= d}，自由项为 m < |β| <= d 的单项式"""
        self._check_degree(degree)
        n = p.dimension
        top = max(degree, m)
        basis = mi.multi_indices_up_to(top, n)
        psi = p.truncate(m)
        base = np.array([psi.coefficient(alpha) for alpha in basis], dtype=complex)
        free = [i for i, alpha in enumerate(basis) if mi.degree(alpha) > m]
        directions = np.zeros((len(basis), len(free)), dtype=complex)
        for col, row in enumerate(free):
            directions[row, col] = 1.0
        return self._best_representative(n, basis, base, directions, degree)

    # ---- 报告 ----

    def _assemble(
        self,
        opnorm: float,
        upper: SupnormResult,
        psi_norm2: Optional[float],
        extras: dict,
    ) -> LiftReport:
        tol = self.settings.solver_tol
        if opnorm > upper.value + tol:
            raise ConsistencyError(
                f"区间夹逼失败: 算子范数 {opnorm:.12g} > sup 上界 {upper.value:.12g}",
                opnorm_lower=opnorm,
                supnorm_upper=upper.value,
            )
        lower_distance = math.inf if upper.value < NORM_EPSILON else 1.0 / upper.value
        upper_distance = math.inf if opnorm < NORM_EPSILON else 1.0 / opnorm

        if upper.value <= 1.0 + tol:
            verdict = Verdict.FEASIBLE
        elif opnorm > 1.0 + self.settings.tol_psd:
            verdict = Verdict.INFEASIBLE
        else:
            verdict = Verdict.UNDETERMINED

        extras = dict(extras, degree=upper.degree, grid_size=upper.grid_size, inflation=upper.inflation,
                      grid_supnorm=upper.grid_value)
        return LiftReport(
            opnorm_lower=opnorm,
            supnorm_upper=upper.value,
            distance_bracket=(lower_distance, upper_distance),
            verdict=verdict,
            witness=upper.witness,
            witness_coefficient_l1=coefficient_l1_bound(upper.witness),
            certified=upper.certified,
            psi_norm2=psi_norm2,
            extras=extras,
        )

    def distance_report(self, data: InterpolationData, degree: int) -> LiftReport:
        """
        插值问题的双侧区间：dist = 1/‖X_Q‖ ∈ [1/sup 上界, 1/算子范数]

        Args:
            data: 插值数据
            degree: 代表元多项式的最大次数

        Returns:
            LiftReport
        """
        check = self.lift_necessary_check(data)
        upper = self.min_supnorm_upper(data, degree)
        psi = self.interpolation.solve_psi(data)
        report = self._assemble(
            check.opnorm,
            upper,
            self.hardy.kernel_combo_norm2(psi),
            {"necessary_condition_pass": check.passed},
        )
        logger.info("distance report: opnorm=%.12g supnorm=%.12g verdict=%s",
                    report.opnorm_lower, report.supnorm_upper, report.verdict.value)
        return report

    def poly_module_report(self, p: ComplexPoly, m: int, degree: int) -> LiftReport:
        """S_p 在 Q_m 上的双侧区间（代表元为 p + J_{m+1} 中次数 <= d 的多项式）"""
        if m < 0:
            raise InvalidInputError("m 必须 >= 0")
        module = self.quotient.build_qm(m, p.dimension)
        opnorm = self.quotient.gram_operator_norm(self.quotient.compress_on_qm(p, module))
        upper = self.poly_min_supnorm_upper(p, m, degree)
        psi = p.truncate(m)
        psi_norm2 = self.sphere.l2_norm_squared(psi) if not psi.is_zero() else 0.0
        return self._assemble(
            opnorm,
            upper,
            psi_norm2,
            {"module_dimension": module.dimension, "coefficient_l1": coefficient_l1_bound(psi)},
        )
