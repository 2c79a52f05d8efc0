"""
计算结果类型
"""
import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, Optional, Tuple

from app.errors import InvalidInputError
from app.models.poly import ComplexPoly
from app.utils.serialization import complex_pair


class Method(str, Enum):
    EXACT = "Exact"
    MONTE_CARLO = "MonteCarlo"
    GRID = "Grid"


class NormOrder(str, Enum):
    L1 = "L1"
    L2 = "L2"
    LINF = "Linf"


class Verdict(str, Enum):
    FEASIBLE = "Feasible"
    INFEASIBLE = "Infeasible"
    UNDETERMINED = "Undetermined"


class PolyVerdict(str, Enum):
    LIFT = "Lift"
    NO_LIFT = "NoLift"
    UNDETERMINED = "Undetermined"


def poly_payload(p: Optional[ComplexPoly]) -> Optional[Dict[str, Any]]:
    """多项式的 JSON 结构"""
    if p is None:
        return None
    return {
        "dimension": p.dimension,
        "terms": [{"exponents": list(alpha), "coeff": complex_pair(c)} for alpha, c in p.items()],
    }


@dataclass(frozen=True)
class Estimate:
    """
    积分或范数的估计值；lower_bound 表示网格给出的是下估计

    只约束单向：Exact 时 std_error 必须为 0。Grid 估计同样记 std_error = 0，
    样本方差为 0 的 Monte Carlo 估计也可以为 0，因此 std_error = 0 不代表 Exact。
    """

    value: float
    std_error: float
    samples: int
    method: Method
    lower_bound: bool = False

    def __post_init__(self):
        if self.std_error < 0 or math.isnan(self.std_error):
            raise InvalidInputError("std_error 必须非负")
        if self.method == Method.EXACT and self.std_error != 0:
            raise InvalidInputError("精确结果的 std_error 必须为 0")

    def to_payload(self) -> Dict[str, Any]:
        return {
            "value": self.value,
            "std_error": self.std_error,
            "samples": self.samples,
            "method": self.method.value,
            "lower_bound": self.lower_bound,
        }


@dataclass(frozen=True)
class LiftCheck:
    """必要条件 ‖X‖ <= 1 的检查结果"""

    opnorm: float
    passed: bool

    def to_payload(self) -> Dict[str, Any]:
        return {"opnorm": self.opnorm, "pass": self.passed}


@dataclass(frozen=True)
class SupnormResult:
    """极小 sup 范数代表元"""

    value: float
    grid_value: float
    inflation: float
    degree: int
    grid_size: int
    witness: ComplexPoly
    certified: bool

    def to_payload(self) -> Dict[str, Any]:
        return {
            "value": self.value,
            "grid_value": self.grid_value,
            "inflation": self.inflation,
            "degree": self.degree,
            "grid_size": self.grid_size,
            "certified": self.certified,
            "witness": poly_payload(self.witness),
        }


@dataclass(frozen=True)
class UnitLiftResult:
    """‖p‖₂ = 1 时 S_p 的提升判定"""

    l1: Estimate
    verdict: PolyVerdict
    max_deviation: float
    l2: float

    def to_payload(self) -> Dict[str, Any]:
        return {
            "verdict": self.verdict.value,
            "l1": self.l1.to_payload(),
            "l2": self.l2,
            "max_unimodular_deviation": self.max_deviation,
        }


@dataclass(frozen=True)
class LiftReport:
    """算子范数下界、sup 范数上界与距离区间"""

    opnorm_lower: float
    supnorm_upper: float
    distance_bracket: Tuple[float, float]
    verdict: Verdict
    witness: Optional[ComplexPoly] = None
    witness_coefficient_l1: Optional[float] = None
    certified: bool = True
    psi_norm2: Optional[float] = None
    extras: Dict[str, Any] = field(default_factory=dict)

    def to_payload(self) -> Dict[str, Any]:
        payload = {
            "opnorm_lower": self.opnorm_lower,
            "supnorm_upper": self.supnorm_upper,
            "distance_bracket": list(self.distance_bracket),
            "verdict": self.verdict.value,
            "upper_bound_kind": "certified" if self.certified else "heuristic upper bound",
            "witness": poly_payload(self.witness),
            "witness_coefficient_l1": self.witness_coefficient_l1,
        }
        if self.psi_norm2 is not None:
            payload["psi_norm2"] = self.psi_norm2
        payload.update(self.extras)
        return payload
