"""
命令分发服务 - CLI 与 HTTP 接口共用
"""
import json
import logging
from typing import Any, Callable, Dict, List, Optional, Sequence, Union

import numpy as np
from pydantic import ValidationError

from app.config import Settings
from app.errors import DegeneratePickError, InvalidInputError, NumericalError
from app.models.modules import basis_labels
from app.models.results import NormOrder
from app.models.schemas import ProblemFile
from app.services.hardy_service import HardyService
from app.services.interpolation_service import InterpolationService
from app.services.lifting_service import LiftingService
from app.services.quotient_service import QuotientService
from app.services.sphere_service import SphereService, to_float

logger = logging.getLogger(__name__)

COMMANDS = ("pick", "interpolate", "lift-check", "poly-lift-test", "integrate", "compress")


def validation_details(errors: Sequence[Dict[str, Any]]) -> List[Dict[str, Any]]:
    """pydantic 错误列表 -> 可序列化的 {loc, msg}"""
    return [{"loc": [str(part) for part in err["loc"]], "msg": err["msg"]} for err in errors]


class ProblemService:
    """解析问题文件、合并配置并调用对应的计算服务"""

    def __init__(self, settings: Settings):
        self.settings = settings

    # ---- 输入 ----

    @staticmethod
    def parse(raw: Union[str, bytes, Dict[str, Any]]) -> ProblemFile:
        """
        校验问题文件

        Raises:
            InvalidInputError: JSON 无法解析或不符合模型
        """
        try:
            payload = json.loads(raw) if isinstance(raw, (str, bytes)) else raw
            return ProblemFile.model_validate(payload)
        except json.JSONDecodeError as e:
            raise InvalidInputError(f"JSON 解析失败: {e.msg}", line=e.lineno, column=e.colno)
        except ValidationError as e:
            raise InvalidInputError("问题文件不符合模型", errors=validation_details(e.errors()))

    def resolve_settings(
        self,
        problem: ProblemFile,
        seed: Optional[int] = None,
        samples: Optional[int] = None,
        tol: Optional[float] = None,
        grid: Optional[int] = None,
    ) -> Settings:
        """优先级：命令行参数 > 文件中的 config > 环境变量与默认值"""
        flags = {
            "seed": seed,
            "mc_samples": samples,
            "tol_psd": tol,
            "tol_bisect": tol,
            "grid_points_per_dim": grid,
        }
        try:
            return self.settings.with_overrides(**problem.config.as_overrides()).with_overrides(**flags)
        except ValidationError as e:
            raise InvalidInputError("配置覆盖项不合法", errors=validation_details(e.errors()))

    # ---- 分发 ----

    def run(self, command: str, problem: ProblemFile, degree: Optional[int] = None, **flags) -> Dict[str, Any]:
        """
        执行一条命令

        Args:
            command: pick / interpolate / lift-check / poly-lift-test / integrate / compress
            problem: 已校验的问题文件
            degree: 代表元多项式的次数（覆盖文件中的 degree）
            **flags: seed / samples / tol / grid

        Returns:
            结果字典（由 encode_json 序列化）
        """
        handlers: Dict[str, Callable[[ProblemFile, Settings, Optional[int]], Dict[str, Any]]] = {
            "pick": self._pick,
            "interpolate": self._interpolate,
            "lift-check": self._lift_check,
            "poly-lift-test": self._poly_lift_test,
            "integrate": self._integrate,
            "compress": self._compress,
        }
        if command not in handlers:
            raise InvalidInputError(f"未知命令: {command}", commands=list(COMMANDS))
        settings = self.resolve_settings(problem, **flags)
        degree = problem.degree if degree is None else degree
        logger.info("running %s (seed=%d, samples=%d)", command, settings.seed, settings.mc_samples)
        try:
            result = handlers[command](problem, settings, degree)
        except np.linalg.LinAlgError as e:
            raise NumericalError(f"线性代数计算失败: {e}")
        return {"command": command, **result}

    @staticmethod
    def _require(value, name: str):
        if value is None:
            raise InvalidInputError(f"缺少字段: {name}")
        return value

    def _pick(self, problem: ProblemFile, settings: Settings, degree: Optional[int]) -> Dict[str, Any]:
        data = self._require(problem.data, "data").to_data()
        service = InterpolationService(settings)
        matrix = service.pick_matrix(data)
        return {
            "feasible": service.pick_feasible(data),
            "pick_constant": service.pick_constant(data),
            "min_eigenvalue": service.pick_min_eigenvalue(data),
            "matrix": matrix,
        }

    def _interpolate(self, problem: ProblemFile, settings: Settings, degree: Optional[int]) -> Dict[str, Any]:
        data = self._require(problem.data, "data").to_data()
        service = InterpolationService(settings)
        hardy = HardyService(settings)
        psi = service.solve_psi(data)
        residual = float(np.max(np.abs(hardy.eval_kernel_combo(psi, data.points) - data.values)))
        result: Dict[str, Any] = {
            "psi_coeffs": psi.coeffs,
            "residual": residual,
            "psi_norm2": hardy.kernel_combo_norm2(psi),
            "schur_witness": None,
        }
        if data.dimension != 1:
            return result
        if np.any(np.abs(data.values) >= 1.0):
            result["schur_status"] = "boundary_values"
            return result
        try:
            phi = service.schur_interpolant(data)
        except DegeneratePickError as e:
            result["schur_status"] = e.reason
            return result
        witness = phi.to_payload()
        witness["residual"] = float(np.max(np.abs(phi.evaluate(data.points[:, 0]) - data.values)))
        witness["boundary_sup"] = phi.boundary_sup()
        result["schur_witness"] = witness
        return result

    def _lift_check(self, problem: ProblemFile, settings: Settings, degree: Optional[int]) -> Dict[str, Any]:
        service = LiftingService(settings)
        if problem.data is not None:
            data = problem.data.to_data()
            if degree is None:
                degree = min(settings.max_degree, data.size + 1)
            return service.distance_report(data, degree).to_payload()
        p = self._require(problem.polynomial, "data 或 polynomial").to_poly()
        m = p.degree if problem.m is None else problem.m
        if degree is None:
            degree = min(settings.max_degree, max(m + 2, p.degree))
        return service.poly_module_report(p, max(m, 0), degree).to_payload()

    def _poly_lift_test(self, problem: ProblemFile, settings: Settings, degree: Optional[int]) -> Dict[str, Any]:
        p = self._require(problem.polynomial, "polynomial").to_poly()
        m = max(p.degree, 0) if problem.m is None else problem.m
        return LiftingService(settings).unit_l2_lift_test(p, m).to_payload()

    def _integrate(self, problem: ProblemFile, settings: Settings, degree: Optional[int]) -> Dict[str, Any]:
        sphere = SphereService(settings)
        if problem.monomial is not None:
            alpha, beta = problem.monomial.alpha, problem.monomial.beta
            exact = sphere.monomial_integral(alpha, beta, len(alpha))
            return {
                "value": to_float(exact) if exact else 0.0,
                "exact": f"{exact.numerator}/{exact.denominator}",
                "std_error": 0.0,
                "samples": 0,
                "method": "Exact",
                "lower_bound": False,
            }
        p = self._require(problem.polynomial, "monomial 或 polynomial").to_poly()
        order = problem.norm or NormOrder.L2
        return {"norm": order.value, **sphere.poly_sphere_norm(p, order).to_payload()}

    def _compress(self, problem: ProblemFile, settings: Settings, degree: Optional[int]) -> Dict[str, Any]:
        p = self._require(problem.polynomial, "polynomial").to_poly()
        m = max(p.degree, 0) if problem.m is None else problem.m
        quotient = QuotientService(settings)
        module = quotient.build_qm(m, p.dimension)
        op = quotient.compress_on_qm(p, module)
        return {
            "m": m,
            "dimension": module.dimension,
            "basis": basis_labels(module),
            "matrix": op.matrix,
            "opnorm": quotient.gram_operator_norm(op),
        }
