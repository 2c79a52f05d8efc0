"""
问题文件与请求体的数据模型
"""
from typing import Any, Dict, List, Optional, Tuple, Union

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from app.models.interpolation import InterpolationData
from app.models.poly import ComplexPoly
from app.models.results import NormOrder

SCHEMA_VERSION = "1"

# 实数或 [re, im]
ComplexValue = Union[float, Tuple[float, float]]


def to_complex(value: ComplexValue) -> complex:
    if isinstance(value, (tuple, list)):
        return complex(value[0], value[1])
    return complex(value)


class TermSchema(BaseModel):
    """多项式的一项"""
    exponents: List[int]
    coeff: ComplexValue

    @field_validator("exponents")
    @classmethod
    def _nonnegative(cls, v: List[int]) -> List[int]:
        if not v:
            raise ValueError("exponents 不能为空")
        if any(a < 0 for a in v):
            raise ValueError("exponents 必须非负")
        return v


class PolySchema(BaseModel):
    """多项式：terms 为 {exponents, coeff} 列表"""
    dimension: Optional[int] = Field(default=None, ge=1)
    terms: List[TermSchema]

    @model_validator(mode="after")
    def _consistent(self) -> "PolySchema":
        lengths = {len(t.exponents) for t in self.terms}
        if self.dimension is not None:
            lengths.add(self.dimension)
        if len(lengths) > 1:
            raise ValueError(f"多项式各项的维数不一致: {sorted(lengths)}")
        if not lengths:
            raise ValueError("空多项式需要给出 dimension")
        return self

    @property
    def n(self) -> int:
        if self.dimension is not None:
            return self.dimension
        return len(self.terms[0].exponents)

    def to_poly(self) -> ComplexPoly:
        terms: Dict[Tuple[int, ...], complex] = {}
        for term in self.terms:
            alpha = tuple(term.exponents)
            terms[alpha] = terms.get(alpha, 0j) + to_complex(term.coeff)
        return ComplexPoly(self.n, terms)


class InterpolationSchema(BaseModel):
    """插值数据：每个节点是坐标列表，坐标与取值为实数或 [re, im]"""
    points: List[List[ComplexValue]] = Field(min_length=1)
    values: List[ComplexValue]
    relaxed: bool = False

    @model_validator(mode="after")
    def _consistent(self) -> "InterpolationSchema":
        dims = {len(p) for p in self.points}
        if 0 in dims:
            raise ValueError("节点坐标不能为空")
        if len(dims) != 1:
            raise ValueError(f"节点维数不一致: {sorted(dims)}")
        if len(self.values) != len(self.points):
            raise ValueError(f"取值个数 {len(self.values)} 与节点个数 {len(self.points)} 不符")
        return self

    def to_data(self) -> InterpolationData:
        points = [[to_complex(c) for c in p] for p in self.points]
        return InterpolationData(points, [to_complex(w) for w in self.values], relaxed=self.relaxed)


class MonomialSchema(BaseModel):
    """∫ ζ^α ζ̄^β dσ 的请求"""
    alpha: List[int]
    beta: List[int]

    @model_validator(mode="after")
    def _consistent(self) -> "MonomialSchema":
        if len(self.alpha) != len(self.beta) or not self.alpha:
            raise ValueError("alpha 与 beta 的长度必须相同且非零")
        if any(a < 0 for a in self.alpha + self.beta):
            raise ValueError("多重指标必须非负")
        return self


class ConfigOverrides(BaseModel):
    """问题文件中的配置覆盖项"""
    model_config = ConfigDict(extra="forbid")

    seed: Optional[int] = None
    mc_samples: Optional[int] = None
    workers: Optional[int] = None
    grid_points_per_dim: Optional[int] = None
    sphere_grid_points: Optional[int] = None
    tol_psd: Optional[float] = None
    tol_bisect: Optional[float] = None
    max_bisect_iter: Optional[int] = None
    solver_tol: Optional[float] = None
    unimodular_tol: Optional[float] = None
    gram_rcond_min: Optional[float] = None
    inflation_factor: Optional[float] = None
    max_degree: Optional[int] = None

    def as_overrides(self) -> Dict[str, Any]:
        return self.model_dump(exclude_none=True)


class ProblemFile(BaseModel):
    """
    命令输入

    pick / interpolate 使用 data；lift-check 使用 data 或 (polynomial, m)；
    poly-lift-test 与 compress 使用 polynomial 和 m；integrate 使用 monomial 或 (polynomial, norm)。
    """
    model_config = ConfigDict(extra="forbid")

    version: str = SCHEMA_VERSION
    data: Optional[InterpolationSchema] = None
    polynomial: Optional[PolySchema] = None
    m: Optional[int] = Field(default=None, ge=0)
    degree: Optional[int] = Field(default=None, ge=0)
    norm: Optional[NormOrder] = None
    monomial: Optional[MonomialSchema] = None
    config: ConfigOverrides = Field(default_factory=ConfigOverrides)

    @field_validator("version")
    @classmethod
    def _supported(cls, v: str) -> str:
        if v != SCHEMA_VERSION:
            raise ValueError(f"不支持的版本: {v}")
        return v


class CommandResponse(BaseModel):
    """HTTP 响应信封"""
    data: Optional[Dict[str, Any]] = None
    error: Optional[Dict[str, Any]] = None
