"""
异常定义模块
"""
from typing import Any, Dict, Optional


class HardyError(Exception):
    """所有库异常的基类"""

    reason = "error"
    exit_code = 1

    def __init__(self, message: str, **details: Any):
        super().__init__(message)
        self.message = message
        self.details = details

    def to_payload(self) -> Dict[str, Any]:
        payload: Dict[str, Any] = {"reason": self.reason, "message": self.message}
        payload.update(self.details)
        return payload


class InvalidInputError(HardyError):
    """输入数据不合法"""

    reason = "invalid_input"
    exit_code = 2


class NumericalError(HardyError):
    """数值计算失败"""

    reason = "numerical_failure"
    exit_code = 3


class IllConditionedError(NumericalError):
    """Gram 矩阵病态（节点数值上重合）"""

    reason = "ill_conditioned"

    def __init__(self, message: str, pivot: Optional[int] = None, rcond: Optional[float] = None):
        super().__init__(message, pivot=pivot, rcond=rcond)
        self.pivot = pivot
        self.rcond = rcond


class SolverError(NumericalError):
    """凸优化求解器未收敛"""

    reason = "solver_failure"


class DegeneratePickError(NumericalError):
    """Pick 矩阵退化，Schur 递推不适用"""

    reason = "degenerate_pick"


class ConsistencyError(NumericalError):
    """两条计算路径结果不一致"""

    reason = "internal_consistency"


class PrecisionError(NumericalError):
    """精确有理数无法表示为浮点数"""

    reason = "precision_overflow"
